"""The acceptance checks, shared by ``kgroth verify`` and the test suite."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra.laurent import LaurentPolynomial
from .algebra.variables import alpha, beta, z
from .grothendieck import divided, expansion, gpoly
from .grothendieck.straighten import straighten
from .grothendieck.permutations import Permutation, grassmannian_perm, partitions_in_box
from .residue import Integrand, residue_zero_infinity
from .thom import a2, a3, cohomology, localization, sigma
from .thom.common import ThomInstance


@dataclass(frozen=True)
class Check:
    number: int
    title: str
    limit: float  # seconds
    fast: bool
    run: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class Outcome:
    check: Check
    passed: bool
    elapsed: float
    detail: str

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        over = "" if self.elapsed <= self.check.limit else f" (over the {self.check.limit:g} s limit)"
        tail = f": {self.detail}" if self.detail else ""
        return (f"[{status}] criterion {self.check.number:2d} {self.check.title} "
                f"{self.elapsed:.2f} s{over}{tail}")


# --- criterion bodies ----------------------------------------------------------

def _s3_table() -> dict[str, LaurentPolynomial]:
    """The S3 list, multiplied out from its factored form."""
    A = {i: LaurentPolynomial.gen(alpha(i), -1) for i in (1, 2)}
    B = {j: LaurentPolynomial.gen(beta(j)) for j in (1, 2)}
    one = LaurentPolynomial.constant(1)

    def f(j, i):
        return one - B[j] * A[i]

    return {
        "321": f(1, 1) * f(2, 1) * f(1, 2),
        "231": f(1, 1) * f(1, 2),
        "312": f(1, 1) * f(2, 1),
        "213": f(1, 1),
        "132": one - B[1] * B[2] * A[1] * A[2],
        "123": one,
    }


def _s3() -> tuple[bool, str]:
    bad = [w for w, want in _s3_table().items()
           if str(divided.groth_recursive(Permutation.parse(w))) != str(want)]
    return not bad, f"mismatch for {bad}" if bad else "six polynomials match"


def _g_equals_G() -> tuple[bool, str]:
    bad = []
    for lam in partitions_in_box(3, 3):
        w = grassmannian_perm(lam, max(len(lam), 1))
        if gpoly.g_residue(lam, 3, 3) != divided.truncated_stable(w, 3, 3):
            bad.append(lam)
    return not bad, f"mismatch for {bad}" if bad else "20 partitions"


def _symmetrization() -> tuple[bool, str]:
    bad = [lam for lam in partitions_in_box(3, 3)
           if gpoly.symmetrization_formula(lam, 3) != gpoly.g_residue(lam, 3, 0)]
    return not bad, f"mismatch for {bad}" if bad else "20 partitions"


PRODUCT_22 = {(2, 2): 1, (3, 1): 1, (4,): 1, (3, 2): -1, (4, 1): -1}


def _product() -> tuple[bool, str]:
    got = expansion.multiply_G((2,), (2,), 3, 0)
    return got == PRODUCT_22, str(got)


# the grid of d_{r,s}: rows s = -1..-6, columns r
D_GRID = {
    -1: {0: 1, 1: -2, 2: 1},
    -2: {1: 2, 2: -5, 3: 4, 4: -1},
    -3: {2: 4, 3: -12, 4: 13, 5: -6, 6: 1},
    -4: {3: 8, 4: -28, 5: 38, 6: -25, 7: 8, 8: -1},
    -5: {4: 16, 5: -64, 6: 104},
    -6: {5: 32},
}


def _grid() -> tuple[bool, str]:
    for s, row in D_GRID.items():
        for r, v in row.items():
            if a2.d_coeff(r, s) != v:
                return False, f"d_{{{r},{s}}} = {a2.d_coeff(r, s)}, grid has {v}"
    oracle = a2.d_oracle(10)
    for r in range(11):
        for s in range(-2 * r - 4, 3):
            if a2.d_coeff(r, s) != oracle[(r, s)]:
                return False, f"closed form and oracle differ at ({r}, {s})"
    for r in range(1, 11):
        if sum(v for (rr, _), v in oracle.items() if rr == r):
            return False, f"row sum nonzero at r = {r}"
    return True, "grid, oracle and row sums"


EQ4 = {
    0: {(1, 1): 1, (2,): 2, (2, 1): -2, (3,): -1, (3, 1): 1},
    1: {(2, 2): 1, (3, 1): 2, (4,): 4, (3, 2): -2, (4, 1): -5, (5,): -4,
        (4, 2): 1, (5, 1): 4, (6,): 1, (6, 1): -1},
    2: {(3, 3): 1, (4, 2): 2, (5, 1): 4, (6,): 8, (4, 3): -2, (5, 2): -5, (6, 1): -12, (7,): -12,
        (5, 3): 1, (6, 2): 4, (7, 1): 13, (8,): 6, (7, 2): -1, (8, 1): -6, (9,): -1, (9, 1): 1},
}


def _minimal() -> tuple[bool, str]:
    bad = [l for l, want in EQ4.items() if a2.ktp_a2_minimal(l) != want]
    return not bad, f"mismatch for l in {bad}" if bad else "l = 0, 1, 2"


STABLE_CASES = [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 3)]


def _stable() -> tuple[bool, str]:
    bad = []
    for a, b in STABLE_CASES:
        inst = ThomInstance(a, b)
        e = a2.ktp_a2_stable(inst.l, 2 * inst.l + 3)
        if a2.evaluate_expansion(e, inst) != a2.ktp_a2(inst):
            bad.append((a, b))
    return not bad, f"mismatch for {bad}" if bad else f"{len(STABLE_CASES)} instances"


def _porteous() -> tuple[bool, str]:
    bad = []
    for a in range(1, 5):
        for b in range(a, 5):
            inst = ThomInstance(a, b)
            for r in (1, 2):
                if r <= a and sigma.ktp_sigma_r(r, inst) != sigma.porteous_g(r, inst):
                    bad.append((r, a, b))
    return not bad, f"mismatch for (r, a, b) in {bad}" if bad else "r = 1, 2 and a <= b <= 4"


def _signs() -> tuple[bool, str]:
    cases = [("minimal", l, a2.ktp_a2_minimal(l)) for l in range(4)]
    cases += [("stable", l, a2.ktp_a2_stable(l, 2 * l + 3)) for l in range(3)]
    bad = [(kind, l) for kind, l, e in cases if not a2.sign_report(e).passed]
    return not bad, f"violations in {bad}" if bad else "7 expansions"


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        if v and abs(v) <= 5:
            return v


def _vanishing(instances: int = 100, seed: int = 41) -> tuple[bool, str]:
    rng = random.Random(seed)
    Z = LaurentPolynomial.gen(z(1))
    for n in range(instances):
        r = rng.randint(0, 2)
        s = rng.randint(r + 2, 5)
        power = rng.randint(0, s - r - 2)
        num = Z ** power
        for _ in range(r):
            num = num * (Z - _nonzero(rng))
        factors = [(Z - _nonzero(rng), -1) for _ in range(s)]
        res = residue_zero_infinity(Integrand(num, factors), z(1))
        if not res.is_zero():
            return False, f"instance {n}: r={r}, s={s}, a={power} gave {res}"
    return True, f"{instances} instances"


def _localization() -> tuple[bool, str]:
    count = 0
    for r in (1, 2):
        for w in range(r, 5):
            for mu in partitions_in_box(r, 3):
                if sum(mu) > 3:
                    continue
                rep = localization.localization_vs_residue(r, w, localization.monomial_symmetric(mu, r))
                count += 1
                if not rep.holds:
                    return False, f"r={r}, w={w}, g=m_{list(mu)}"
    return True, f"{count} cases"


def _cohomology(seed: int = 12) -> tuple[bool, str]:
    conv = cohomology.calibrate()
    rng = random.Random(seed)
    for l in range(3):
        inst = ThomInstance(2, 2 + l)
        f = a2.ktp_a2(inst)
        tp = cohomology.ronga_tp(l, inst.a, inst.b)
        for _ in range(5):
            point = cohomology.random_point(inst, rng)
            got = cohomology.leading_term(f, 2 * (l + 1), point, conv)
            want = (2 * (l + 1), cohomology.cohomological_value(tp, point))
            if got != want:
                return False, f"l={l}: leading term {got}, Ronga gives {want}"
    return True, f"convention {conv}"


def _a3(seed: int = 3) -> tuple[bool, str]:
    rng = random.Random(seed)
    for a, b in [(2, 2), (3, 3)]:
        inst = ThomInstance(a, b)
        f = a3.ktp_a3(inst)
        point = cohomology.random_point(inst, rng)
        order, _ = cohomology.leading_term(f, 3 * (inst.l + 1), point)
        if order != 3 * (inst.l + 1):
            return False, f"({a},{b}): leading order {order}"
        for _ in range(3):
            if not cohomology.supersymmetry_check(a3.ktp_a3, inst, rng):
                return False, f"({a},{b}): supersymmetry fails"
    return True, "(2,2) and (3,3)"


def _remainder() -> tuple[bool, str]:
    bad = [N for N in range(7) if not a2.remainder_identity_check(N).holds]
    return not bad, f"fails for N in {bad}" if bad else "N = 0..6"


def _straightening(count: int = 50, seed: int = 15) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(count):
        I = tuple(rng.randint(-2, 4) for _ in range(rng.randint(1, 3)))
        e = straighten(I)
        want = e.evaluate(lambda lam: gpoly.g_residue(lam, 3, 3))
        if gpoly.g_residue(I, 3, 3) != want:
            return False, f"mismatch for {list(I)}"
    return True, f"{count} sequences"


CHECKS = [
    Check(1, "S3 Grothendieck table", 1, True, _s3),
    Check(2, "residue g equals stable G (3x3 box, k=l=3)", 120, True, _g_equals_G),
    Check(3, "symmetrization formula (3x3 box)", 30, True, _symmetrization),
    Check(4, "product G_2 * G_2", 10, True, _product),
    Check(5, "d coefficient grid and oracle", 5, True, _grid),
    Check(6, "minimal A2 expansions", 5, True, _minimal),
    Check(7, "stable A2 expansion equals residue", 600, False, _stable),
    Check(8, "Giambelli-Thom-Porteous", 120, False, _porteous),
    Check(9, "alternating signs", 10, True, _signs),
    Check(10, "residue vanishing at 0 and infinity", 30, True, _vanishing),
    Check(11, "localization push-forward", 120, True, _localization),
    Check(12, "cohomological limit against Ronga", 300, False, _cohomology),
    Check(13, "A3 sanity", 600, False, _a3),
    Check(14, "remainder identity", 60, False, _remainder),
    Check(15, "straightening compatibility", 300, False, _straightening),
]


def clear_caches() -> None:
    """Forget memoized results so each check is timed from scratch."""
    for f in (gpoly._g_cached, divided._groth_from_top, a2._ktp_a2, a3._ktp_a3, sigma._ktp_sigma):
        f.cache_clear()


def run_check(check: Check) -> Outcome:
    clear_caches()
    t0 = time.perf_counter()
    try:
        ok, detail = check.run()
    except Exception as e:  # a crash is a failure of that check
        ok, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - t0
    return Outcome(check, ok and elapsed <= check.limit, elapsed, detail)


def run_suite(suite: str, emit: Callable[[str], None] = print) -> bool:
    """Run the fast or full suite, one line per check; True iff all pass."""
    if suite not in ("fast", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    ok = True
    for check in CHECKS:
        if suite == "fast" and not check.fast:
            continue
        out = run_check(check)
        emit(out.line)
        ok = ok and out.passed
    return ok
