import random

import pytest

from kgroth.algebra import LaurentPolynomial, alpha, beta, epsilon, tau
from kgroth.errors import (
    BoxTooSmallError, IndependenceError, MalformedInputError, NonTerminationError, SizeLimitError,
)
from kgroth.grothendieck import (
    GExpansion, Permutation, expand_in_G_basis, g_residue, grassmannian_perm, groth_recursive,
    isobaric_divided_difference, jacobi_trudi, multiply_G, partitions_in_box, schur_residue,
    straighten, symmetrization_formula, truncated_stable,
)
from kgroth.grothendieck.divided import grassmannian_truncated, groth_via_dominant
from kgroth.grothendieck.schur import schur_c
from kgroth.thom import ThomInstance, ktp_a2
from kgroth.algebra.variables import abar, bbar

from conftest import ONE, A, B


def _f(j, i):
    return ONE - B(j) * A(i, -1)


# --- permutations --------------------------------------------------------------------


def test_permutation_basics():
    w = Permutation.parse("132")
    assert w == Permutation.parse("1,3,2") == Permutation([1, 3, 2, 4])
    assert w.length() == 1
    assert Permutation.parse("321").length() == 3
    with pytest.raises(MalformedInputError):
        Permutation.parse("112")


def test_grassmannian_perm_examples():
    assert grassmannian_perm((1,), 1) == Permutation([2, 1])
    assert grassmannian_perm((2, 1), 2) == Permutation([2, 4, 1, 3])
    assert grassmannian_perm((), 1) == Permutation([1])
    with pytest.raises(MalformedInputError):
        grassmannian_perm((2, 1), 1)


# --- divided differences -----------------------------------------------------------------


def test_divided_difference_examples():
    assert isobaric_divided_difference(ONE, 1) == ONE
    sym = A(1) * A(2) + A(1) + A(2)
    assert isobaric_divided_difference(sym, 1) == sym
    g321 = groth_recursive(Permutation.parse("321"))
    assert isobaric_divided_difference(g321, 1) == _f(1, 1) * _f(1, 2)


def test_s3_list():
    assert groth_recursive(Permutation.parse("123")) == ONE
    assert str(groth_recursive(Permutation.parse("132"))) == "1 - b1*b2*a1^-1*a2^-1"
    assert groth_recursive(Permutation.parse("312")) == _f(1, 1) * _f(2, 1)
    assert groth_recursive(Permutation.parse("321")) == _f(1, 1) * _f(2, 1) * _f(1, 2)


def test_recursion_bound():
    with pytest.raises(SizeLimitError):
        groth_recursive(Permutation.parse("1234567"))


def test_truncated_stable_examples():
    assert truncated_stable(Permutation.parse("21"), 1, 1) == ONE - B(1) * A(1, -1)
    assert truncated_stable(Permutation.parse("21"), 1, 0) == ONE - A(1, -1)
    assert truncated_stable(Permutation.parse("1"), 2, 3) == ONE


@pytest.mark.parametrize("lam,k,l", [((1,), 1, 1), ((2, 1), 2, 1), ((2, 2), 1, 2), ((3, 1), 2, 2)])
def test_truncation_paths_agree(lam, k, l):
    # the closed-form Grassmannian route against the generic divided-difference route
    p = len(lam)
    m = k + l
    w = grassmannian_perm(lam, p)
    assert grassmannian_truncated(lam, p + m, k, l) == groth_via_dominant(w.shifted(m), k, l)


def test_non_grassmannian_truncation():
    w = Permutation.parse("1432")
    assert truncated_stable(w, 1, 1) == truncated_stable(w, 1, 1, m=3)


# --- residue g ------------------------------------------------------------------------------


def test_g_residue_examples():
    assert g_residue((1,), 1, 1) == ONE - B(1) * A(1, -1)
    assert g_residue((0, 0), 2, 1) == ONE
    assert g_residue((2, 1), 2, 0) == symmetrization_formula((2, 1), 2)


def test_symmetrization_examples():
    assert symmetrization_formula((), 1) == ONE
    assert symmetrization_formula((1,), 1) == ONE - A(1, -1)
    assert symmetrization_formula((1, 1), 2) == g_residue((1, 1), 2, 0)


@pytest.mark.parametrize("lam", [lam for lam in partitions_in_box(3, 3) if len(lam) == 3])
@pytest.mark.parametrize("k", [1, 2])
def test_vanishing_below_length(lam, k):
    assert g_residue(lam, k, 0).is_zero()


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_g_q_minus_one_q(q):
    assert g_residue((q - 1, q), 2, 2) == g_residue((q, q), 2, 2)


@pytest.mark.parametrize("seed", range(4))
def test_supersymmetry(seed):
    rng = random.Random(seed)
    lam = rng.choice(list(partitions_in_box(2, 3)))
    k, l = rng.randint(1, 3), rng.randint(1, 3)
    T = (1, {tau(): 1})
    got = g_residue(lam, k, l).subs_monomial({alpha(k): T, beta(l): T})
    assert got == g_residue(lam, k - 1, l - 1)


def test_reduction_by_argument_one():
    g = g_residue((2, 1), 2, 2)
    assert g.subs({alpha(2): 1}) == g_residue((2, 1), 1, 2)
    assert g.subs({beta(2): 1}) == g_residue((2, 1), 2, 1)


def test_symmetry_in_each_alphabet():
    g = g_residue((2, 1), 3, 2)
    assert g.swap(alpha(1), alpha(3)) == g
    assert g.swap(beta(1), beta(2)) == g


# --- straightening and expansions ----------------------------------------------------------


def test_straighten_examples():
    assert straighten((3, 1)) == {(3, 1): 1}
    assert straighten((3, -2)) == {(3,): 1}
    assert straighten((1, 2)) == {(2, 2): 1}


def test_straighten_fuel():
    with pytest.raises(NonTerminationError) as e:
        straighten((0, 4, 4), fuel=1)
    assert e.value.sequence


@pytest.mark.parametrize("seed", range(6))
def test_straightening_compatibility(seed):
    rng = random.Random(seed)
    I = tuple(rng.randint(-2, 4) for _ in range(rng.randint(1, 3)))
    want = straighten(I).evaluate(lambda lam: g_residue(lam, 2, 2))
    assert g_residue(I, 2, 2) == want


def test_expand_basis_element():
    assert expand_in_G_basis(g_residue((2, 1), 3, 0), 3, 0, (2, 2)) == {(2, 1): 1}


def test_expand_product_example():
    f = g_residue((2,), 3, 0) ** 2
    want = {(2, 2): 1, (3, 1): 1, (4,): 1, (3, 2): -1, (4, 1): -1}
    assert expand_in_G_basis(f, 3, 0, (2, 4)) == want
    assert multiply_G((2,), (2,), 3, 0) == want


def test_expand_ktp_a2_gives_minimal_line():
    f = ktp_a2(ThomInstance(2, 2))
    bind = {v: (1, {v: -1}) for v in (beta(1), beta(2))}
    bind.update({epsilon(i): (1, {alpha(i): -1}) for i in (1, 2)})
    got = expand_in_G_basis(f.subs_monomial(bind), 2, 2, (2, 3))
    assert got == {(1, 1): 1, (2,): 2, (2, 1): -2, (3,): -1, (3, 1): 1}


def test_expand_errors():
    with pytest.raises(BoxTooSmallError):
        expand_in_G_basis(g_residue((3,), 2, 0), 2, 0, (1, 2))
    with pytest.raises(IndependenceError):
        expand_in_G_basis(g_residue((1,), 1, 0), 1, 0, (2, 1))


def test_multiply_examples():
    assert multiply_G((), (2, 1), 2, 1) == {(2, 1): 1}
    e = multiply_G((1,), (1,), 2, 1)
    back = e.evaluate(lambda lam: g_residue(lam, 2, 1))
    assert back == g_residue((1,), 2, 1) ** 2


def test_gexpansion_rendering():
    e = GExpansion({(2, 2): 1, (3, 1): 1, (4,): 1, (3, 2): -1, (4, 1): -1})
    assert str(e) == "G[2,2] + G[3,1] - G[3,2] + G[4] - G[4,1]"
    assert GExpansion.from_json(e.to_json()) == e
    assert e.to_latex() == r"\big(G_{2,2}+G_{3,1}+G_4\big)-\big(G_{3,2}+G_{4,1}\big)"


# --- Schur -----------------------------------------------------------------------------------


def test_schur_examples():
    Ab, Bb = LaurentPolynomial.gen(abar(1)), LaurentPolynomial.gen(bbar(1))
    B2 = LaurentPolynomial.gen(bbar(2))
    assert schur_residue((), 1, 1) == ONE
    assert schur_residue((1,), 1, 1) == Bb - Ab
    c = schur_c(2, 1, 2)
    assert jacobi_trudi((), 2, 1) == ONE
    assert jacobi_trudi((1, 1), 2, 1) == c[1] ** 2 - c[2]
    # with only target roots c_k = e_k, so s_2 = e_2 and s_{1,1} = h_2
    assert schur_residue((2,), 0, 2) == jacobi_trudi((2,), 0, 2) == Bb * B2
    assert schur_residue((1, 1), 0, 2) == jacobi_trudi((1, 1), 0, 2) == Bb ** 2 + Bb * B2 + B2 ** 2


@pytest.mark.parametrize("lam", list(partitions_in_box(3, 3)))
def test_schur_residue_equals_jacobi_trudi(lam):
    for k in range(3):
        for l in range(3):
            assert schur_residue(lam, k, l) == jacobi_trudi(lam, k, l)
