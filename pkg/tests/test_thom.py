import random
from fractions import Fraction

import pytest

from kgroth.algebra import LaurentPolynomial, alpha, beta, epsilon, sigma
from kgroth.algebra.variables import abar, bbar
from kgroth.errors import LeadingTermViolationError, MalformedInputError
from kgroth.grothendieck import GExpansion, jacobi_trudi, straighten
from kgroth.grothendieck.expansion import expand_in_partitions
from kgroth.grothendieck.permutations import partitions_in_box
from kgroth.thom import (
    CoeffTable, D_coeff, DEFAULT_CONVENTION, ThomInstance, calibrate, d3_table, d_coeff, d_oracle,
    evaluate_expansion, inverted_g, ktp_a2, ktp_a2_minimal, ktp_a2_stable, ktp_a3, ktp_sigma_r,
    leading_term, localization_vs_residue, monomial_symmetric, remainder_identity_check, ronga_tp,
    sign_report,
)
from kgroth.thom.a2 import _pq
from kgroth.thom.a3 import row_polynomials
from kgroth.thom.cohomology import cohomological_value, random_point, supersymmetry_check

from conftest import ONE, A, B

EQ4_L0 = {(1, 1): 1, (2,): 2, (2, 1): -2, (3,): -1, (3, 1): 1}


def test_instance():
    assert ThomInstance(2, 5).l == 3
    with pytest.raises(MalformedInputError):
        ThomInstance(3, 2)
    with pytest.raises(MalformedInputError):
        ThomInstance(0, 2)


def test_inverted_g():
    e1 = LaurentPolynomial.gen(epsilon(1))
    assert inverted_g((1,), ThomInstance(1, 1)) == ONE - e1 * B(1, -1)


# --- Sigma^r ------------------------------------------------------------------------------


@pytest.mark.parametrize("r,a,b", [(1, 1, 1), (1, 1, 2), (2, 2, 2), (2, 3, 4), (1, 4, 4)])
def test_porteous(r, a, b):
    inst = ThomInstance(a, b)
    assert ktp_sigma_r(r, inst) == inverted_g((r + inst.l,) * r, inst)


def test_sigma_bounds():
    with pytest.raises(MalformedInputError):
        ktp_sigma_r(3, ThomInstance(2, 2))


# --- A2 ---------------------------------------------------------------------------------------


def test_ktp_a2_l0_line():
    inst = ThomInstance(1, 1)
    assert ktp_a2(inst) == evaluate_expansion(GExpansion(EQ4_L0), inst)


def test_ktp_a2_stable_at_2_3():
    inst = ThomInstance(2, 3)
    assert ktp_a2(inst) == evaluate_expansion(ktp_a2_stable(1, 5), inst)


def test_order_sensitivity():
    inst = ThomInstance(2, 2)
    assert ktp_a2(inst, swap_order=True) != ktp_a2(inst)


def test_d_coeff_examples():
    assert d_coeff(0, -1) == 1
    assert d_coeff(1, -1) == -2 and d_coeff(1, -2) == 2
    assert d_coeff(4, -3) == 13 and d_coeff(3, -4) == 8 and d_coeff(5, -4) == 38
    assert d_coeff(3, 0) == 0 and d_coeff(-1, -1) == 0 and d_coeff(0, -5) == 0


def test_d_oracle():
    table = d_oracle(10)
    for r in range(11):
        for s in range(-25, 3):
            assert table[(r, s)] == d_coeff(r, s)
    for r in range(1, 11):
        assert sum(v for (rr, _), v in table.items() if rr == r) == 0
    assert {s for (r, s) in table.entries if r == 0} == {-1}


def test_d_sign_law():
    for r in range(12):
        for s in range(-r - 1, 0):
            c = d_coeff(r, s)
            assert c == 0 or (c > 0) == ((r + s + 1) % 2 == 0)


def test_D_coeff_examples():
    assert D_coeff(2, -2, 0) == -1
    assert D_coeff(3, -3, 1) == -4
    assert D_coeff(2, -2, 1) == -5
    with pytest.raises(MalformedInputError):
        D_coeff(5, -2, 1)
    with pytest.raises(MalformedInputError):
        D_coeff(2, -4, 1)
    with pytest.raises(MalformedInputError):
        D_coeff(3, -1, 2)
    # the stable sum runs to -floor(r/2); the extra entries are zero
    assert all(d_coeff(r, -(r // 2)) == 0 for r in range(1, 20, 2))


def test_minimal_expansions():
    assert ktp_a2_minimal(0) == EQ4_L0
    assert ktp_a2_minimal(1).get((6, 1)) == -1
    assert ktp_a2_minimal(1) == {(2, 2): 1, (3, 1): 2, (4,): 4, (3, 2): -2, (4, 1): -5, (5,): -4,
                                 (4, 2): 1, (5, 1): 4, (6,): 1, (6, 1): -1}
    assert ktp_a2_minimal(2).get((7, 1)) == 13


@pytest.mark.parametrize("l", [0, 1, 2])
def test_stable_straightens_to_minimal(l):
    assert ktp_a2_stable(l, 2 * l + 3).straightened() == ktp_a2_minimal(l)
    assert ktp_a2_minimal(l).is_partition_keyed


@pytest.mark.parametrize("l", [0, 1])
def test_stable_partial_sums_vanish(l):
    for r in range(2 * l + 3, 2 * l + 7):
        part = GExpansion({(r + l + 1, s + l + 2): d_coeff(r, s) for s in range(-r - 1, -(r // 2) + 1)})
        assert part.straightened() == GExpansion()


def test_stable_needs_large_N():
    with pytest.raises(MalformedInputError):
        ktp_a2_stable(1, 4)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 2), (1, 3), (2, 4), (3, 4)])
def test_minimal_evaluates_to_residue(a, b):
    inst = ThomInstance(a, b)
    assert evaluate_expansion(ktp_a2_minimal(inst.l), inst) == ktp_a2(inst)


def test_remainder_polynomials():
    from kgroth.algebra import z

    v = LaurentPolynomial.gen(z(2))
    assert _pq(0, v) == (ONE, ONE)
    assert _pq(1, v) == (ONE + v, ONE * 2)


@pytest.mark.parametrize("N", range(7))
def test_remainder_identity(N):
    rep = remainder_identity_check(N)
    assert rep.holds and rep.defect.is_zero()


def test_remainder_bound():
    with pytest.raises(MalformedInputError):
        remainder_identity_check(7)


def test_sign_report():
    for l in range(4):
        assert sign_report(ktp_a2_minimal(l)).passed
    for l in range(2):
        assert sign_report(ktp_a2_stable(l, 2 * l + 3)).passed
    bad = sign_report(GExpansion({(2, 2): -1}))
    assert not bad.passed and bad.violations == [((2, 2), -1)]
    with pytest.raises(MalformedInputError):
        sign_report(GExpansion({(1, 1, 1): 1}))


def test_coeff_table_json():
    t = d_oracle(1)
    assert t.to_json_obj() == [{"r": 0, "s": -1, "value": 1}, {"r": 1, "s": -2, "value": 2},
                               {"r": 1, "s": -1, "value": -2}]
    assert str(d_oracle(4)).splitlines()[1].split() == ["-1", "1", "-2", "1"]


# --- A3 ---------------------------------------------------------------------------------------


def test_ktp_a3_is_polynomial_with_leading_order():
    inst = ThomInstance(2, 2)
    f = ktp_a3(inst)
    point = random_point(inst, random.Random(5))
    order, value = leading_term(f, 3, point)
    assert order == 3 and value != 0


def test_ktp_a3_bound():
    with pytest.raises(MalformedInputError):
        ktp_a3(ThomInstance(5, 5))


def test_a3_supersymmetry():
    rng = random.Random(8)
    assert supersymmetry_check(ktp_a3, ThomInstance(3, 3), rng)
    assert supersymmetry_check(ktp_a2, ThomInstance(2, 3), rng)


def test_d3_table():
    t = d3_table((4, (-6, 3), None))
    # corner: the product of the two base cases d_{0,-1} = 1
    assert t[(0, -1, -2)] == d_coeff(0, -1) ** 2 == 1
    # setting z3 = 0 leaves 1/(1 - z2/z1^2): summing out t recovers d_{r,s}
    marg = {}
    for (r, s, _), v in t.items():
        marg[(r, s)] = marg.get((r, s), 0) + v
    for r in range(5):
        for s in range(-6, 4):
            assert marg.get((r, s), 0) == d_coeff(r, s)
    for r in range(1, 5):
        assert sum(v for (rr, _, _), v in t.items() if rr == r) == 0


def test_d3_window():
    full = d3_table((2, (-3, 1), None))
    part = d3_table((2, (-3, 1), (-3, -2)))
    assert all(k[2] in (-3, -2) for k in part.entries)
    assert all(full[k] == v for k, v in part.items())


# --- localization --------------------------------------------------------------------------------


def test_localization_examples():
    assert localization_vs_residue(1, 2, ONE).fixed_point_sum == 1
    assert localization_vs_residue(1, 3, LaurentPolynomial.gen(sigma(1))).holds
    s1s2 = LaurentPolynomial.gen(sigma(1)) * LaurentPolynomial.gen(sigma(2))
    assert localization_vs_residue(2, 3, s1s2).holds
    assert localization_vs_residue(2, 4, monomial_symmetric((2, 1), 2)).holds


def test_localization_rejects_foreign_variables():
    with pytest.raises(MalformedInputError):
        localization_vs_residue(1, 2, LaurentPolynomial.gen(sigma(2)))


# --- cohomological limits --------------------------------------------------------------------------


def test_ronga():
    assert ronga_tp(0, 2, 2) == jacobi_trudi((1, 1), 2, 2) + jacobi_trudi((2,), 2, 2) * 2
    assert ronga_tp(1, 2, 2) == (jacobi_trudi((2, 2), 2, 2) + jacobi_trudi((3, 1), 2, 2) * 2
                                 + jacobi_trudi((4,), 2, 2) * 4)
    assert ronga_tp(2, 1, 2) == (jacobi_trudi((3, 3), 1, 2) + jacobi_trudi((4, 2), 1, 2) * 2
                                 + jacobi_trudi((5, 1), 1, 2) * 4 + jacobi_trudi((6,), 1, 2) * 8)


def test_leading_term_examples():
    assert leading_term(ONE, 0, {}) == (0, 1)
    point = {abar(1): Fraction(2), bbar(1): Fraction(3)}
    f = ktp_a2(ThomInstance(1, 1))
    assert leading_term(f, 2, point) == (2, cohomological_value(ronga_tp(0, 1, 1), point))
    # G_1 = 1 - 1/a1 with a1 = exp(t abar1): t abar1 + O(t^2)
    assert leading_term(ONE - A(1, -1), 1, {abar(1): Fraction(2)}) == (1, 2)


def test_leading_term_violation():
    with pytest.raises(LeadingTermViolationError):
        leading_term(ONE - A(1, -1), 2, {abar(1): Fraction(2)})


def test_calibration_is_frozen():
    assert calibrate() == DEFAULT_CONVENTION


@pytest.mark.parametrize("l", [0, 1, 2])
def test_cohomological_consistency(l):
    rng = random.Random(l)
    inst = ThomInstance(2, 2 + l)
    f = ktp_a2(inst)
    tp = ronga_tp(l, 2, 2 + l)
    for _ in range(3):
        point = random_point(inst, rng)
        assert leading_term(f, 2 * l + 2, point) == (2 * l + 2, cohomological_value(tp, point))


# --- A3 against the d_{r,s,t} table -----------------------------------------------------------


def _vanishes(lam, inst):
    return len(lam) > inst.a and lam[inst.a] > inst.b


def _predicted(l, D, inst):
    """Straighten sum d_{r,s,t} G_{r+l+1, s+l+2, t+l+3} and keep the partitions of degree <= D.

    Straightening never lowers the degree and never lowers the first entry, so only
    r <= D-l-1 and s with s+l+2 <= 0 or r+s+2l+3 <= D can reach degree D.
    """
    from kgroth.algebra.variables import x

    acc = GExpansion()
    for r, row in row_polynomials(D - l - 1, D).items():
        p = r + l + 1
        for s, poly in row.items():
            if s + l + 2 > 0 and p + s + l + 2 > D:
                continue
            for mono, c in poly.items():
                acc = acc + straighten((p, s + l + 2, mono.get(x(3), 0) + l + 3)).scale(c)
    return GExpansion({k: v for k, v in acc.items() if sum(k) <= D and not _vanishes(k, inst)})


def _expand_a3(inst, cols):
    bind = {epsilon(i): (1, {alpha(i): -1}) for i in range(1, inst.a + 1)}
    bind.update({beta(j): (1, {beta(j): -1}) for j in range(1, inst.b + 1)})
    f = ktp_a3(inst).subs_monomial(bind)
    basis = [lam for lam in partitions_in_box(3, cols) if not _vanishes(lam, inst)]
    return expand_in_partitions(f, inst.a, inst.b, basis)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 2)])
def test_a3_box_expansion_matches_table(a, b):
    inst = ThomInstance(a, b)
    e = _expand_a3(inst, 6)
    for D in range(3, 7):
        assert _predicted(0, D, inst) == GExpansion({k: v for k, v in e.items() if sum(k) <= D})


@pytest.mark.parametrize("a,b", [(2, 3), (1, 2), (3, 3)])
def test_a3_table_sum_reproduces_residue(a, b):
    # the degree-filtered sum stops growing well before degree 3l+14 here
    inst = ThomInstance(a, b)
    e = _predicted(inst.l, 3 * inst.l + 14, inst)
    assert evaluate_expansion(e, inst) == ktp_a3(inst)
    assert min(sum(k) for k in e) == 3 * (inst.l + 1)
