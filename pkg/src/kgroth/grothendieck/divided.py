"""Divided differences and the recursive Grothendieck polynomials."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from ..algebra.laurent import LaurentPolynomial, slot_exponent, SLOT_BITS
from ..algebra.ratfunc import RationalFunction, normalize
from ..algebra.series import binomial
from ..algebra.variables import Variable, alpha, beta
from ..errors import ConsistencyError, MalformedInputError, SizeLimitError, StabilizationMismatchError
from ..residue import debug_mode
from .permutations import Permutation, from_code

_ONE = LaurentPolynomial.constant(1)
_ZERO = LaurentPolynomial()

RECURSION_BOUND = 6
TRUNCATION_BOUND = 8
GRASSMANNIAN_BOUND = 16


def _pi_laurent(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """Isobaric divided difference on a Laurent polynomial, monomial by monomial."""
    sx, sy = alpha(i).slot, alpha(i + 1).slot
    ux, uy = 1 << (SLOT_BITS * sx), 1 << (SLOT_BITS * sy)
    out: dict[int, object] = {}
    for m, c in f.terms.items():
        a, b = slot_exponent(m, sx), slot_exponent(m, sy)
        rest = m - a * ux - b * uy
        if a >= b:
            lo, hi, sign = b, a, 1
        elif a == b - 1:
            continue
        else:
            lo, hi, sign = a + 1, b - 1, -1
        # sum_{j=0}^{hi-lo} x^(lo+j) y^(hi-j)
        for j in range(hi - lo + 1):
            k = rest + (lo + j) * ux + (hi - j) * uy
            v = out.get(k, 0) + sign * c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return LaurentPolynomial(out)


def isobaric_divided_difference(f, i: int):
    """pi_i(f) = (a_i f - a_{i+1} s_i f) / (a_i - a_{i+1})."""
    if i < 1:
        raise MalformedInputError("divided difference index must be positive")
    if isinstance(f, LaurentPolynomial) or not isinstance(f, RationalFunction):
        return _pi_laurent(LaurentPolynomial.coerce(f), i)
    if f.den.is_monomial():
        return _pi_laurent(f.to_laurent(), i)
    x, y = alpha(i), alpha(i + 1)
    X, Y = LaurentPolynomial.gen(x), LaurentPolynomial.gen(y)
    sf = RationalFunction(f.num.swap(x, y), f.den.swap(x, y))
    return normalize((f * X - sf * Y) / RationalFunction(X - Y))


def divide_by_difference(f: LaurentPolynomial, u: Variable, c) -> LaurentPolynomial:
    """Exact quotient f / (u - c) with c free of u (synthetic division)."""
    c = LaurentPolynomial.coerce(c)
    if f.is_zero():
        return f
    parts = f.by_degree(u)
    lo, hi = min(parts), max(parts)
    q = _ZERO
    out: dict[int, LaurentPolynomial] = {}
    for d in range(hi, lo, -1):
        q = parts.get(d, _ZERO) + c * q
        out[d - 1] = q
    rem = parts.get(lo, _ZERO) + c * q
    if not rem.is_zero():
        raise ConsistencyError(f"{u} - ({c}) does not divide the polynomial")
    acc = _ZERO
    for d, p in out.items():
        if not p.is_zero():
            acc = acc + p.shift(u, d)
    return acc


def dominant_groth(code: Sequence[int], l: int | None = None) -> LaurentPolynomial:
    """Groth polynomial of the dominant permutation with weakly decreasing Lehmer code.

    Equals prod_i prod_{j <= c_i} (1 - b_j/a_i); with ``l`` given, b_j = 1 for j > l.
    """
    acc = _ONE
    for i, c in enumerate(code, start=1):
        ai = LaurentPolynomial.gen(alpha(i), -1)
        for j in range(1, c + 1):
            bj = LaurentPolynomial.gen(beta(j)) if l is None or j <= l else _ONE
            acc = acc * (_ONE - bj * ai)
    return acc


def longest_groth(n: int) -> LaurentPolynomial:
    return dominant_groth(list(range(n - 1, -1, -1)))


def _check_size(w: Permutation, bound: int):
    if len(w) > bound:
        raise SizeLimitError(f"permutation in S_{len(w)} exceeds the recursion bound {bound}")


@lru_cache(maxsize=4096)
def _groth_from_top(images: tuple[int, ...], rightmost: bool) -> LaurentPolynomial:
    w = Permutation(images)
    asc = w.ascents()
    if not asc:
        return longest_groth(len(images))
    i = asc[-1] if rightmost else asc[0]
    return _pi_laurent(_groth_from_top(w.times_s(i).images, rightmost), i)


def groth_recursive(w: Permutation, bound: int = RECURSION_BOUND) -> LaurentPolynomial:
    """Groth_w from the longest permutation via pi_i along a reduced path."""
    if not isinstance(w, Permutation):
        w = Permutation(w)
    _check_size(w, bound)
    out = _groth_from_top(w.images, False)
    if debug_mode.get():
        other = _groth_from_top(w.images, True)
        if other != out:
            raise ConsistencyError(f"two reduced paths disagree for {w}")
    return out


def path_to_dominant(w: Permutation) -> tuple[list[int], tuple[int, ...]]:
    """Ascent indices i_1, i_2, ... and the dominant code reached.

    Groth_w = pi_{i_1} pi_{i_2} ... Groth_dom.
    """
    c = list(w.code())
    steps = []
    while True:
        i = next((i for i in range(len(c) - 1) if c[i] < c[i + 1]), None)
        if i is None:
            break
        c[i], c[i + 1] = c[i + 1] + 1, c[i]
        steps.append(i + 1)
    return steps, tuple(c)


def groth_via_dominant(w: Permutation, k: int | None = None, l: int | None = None) -> LaurentPolynomial:
    """Groth_w from a dominant permutation above w, with the truncation applied lazily.

    With ``k``/``l`` given, a_i = 1 for i > k and b_j = 1 for j > l; each
    a_q is set to 1 as soon as no remaining divided difference touches it.
    """
    steps, code = path_to_dominant(w)
    f = dominant_groth(code, l)
    order = list(reversed(steps))
    n = len(code)
    last_use = {}
    for t, i in enumerate(order):
        last_use[i] = t
        last_use[i + 1] = t
    if k is not None:
        idle = {q: (1, {}) for q in range(k + 1, n + 1) if q not in last_use}
        f = f.subs_monomial({alpha(q): v for q, v in idle.items()})
    for t, i in enumerate(order):
        f = _pi_laurent(f, i)
        if k is not None:
            done = {alpha(q): (1, {}) for q in (i, i + 1) if q > k and last_use[q] == t}
            if done:
                f = f.subs_monomial(done)
    return f


# --- truncation -----------------------------------------------------------


def _psi(i: int, r: int, c: int, l: int, v: Variable) -> LaurentPolynomial:
    """v^(r-i) prod_{j<=min(c,l)} (1 - b_j/v) (1 - 1/v)^(c-l)_+ ."""
    a_inv = LaurentPolynomial.gen(v, -1)
    f = LaurentPolynomial.gen(v, r - i)
    for j in range(1, min(c, l) + 1):
        f = f * (_ONE - LaurentPolynomial.gen(beta(j)) * a_inv)
    if c > l:
        f = f * (_ONE - a_inv) ** (c - l)
    return f


def _taylor_at_one(i: int, r: int, c: int, l: int, n: int) -> list[LaurentPolynomial]:
    """First n Taylor coefficients at v = 1 of psi_i.

    psi_i(1+h) = h^e (1+h)^(r-i-e-d) prod_{j<=d} ((1-b_j) + h) with d = min(c,l), e = (c-l)_+.
    """
    d = min(c, l)
    e = max(0, c - l)
    p = r - i - e - d
    # (1+h)^p as a list
    ser = [LaurentPolynomial.constant(binomial(p, t)) for t in range(n)]
    for j in range(1, d + 1):
        lin = [_ONE - LaurentPolynomial.gen(beta(j)), _ONE]
        ser = [sum((ser[t - s] * lin[s] for s in range(2) if 0 <= t - s), _ZERO) for t in range(n)]
    return [ser[t - e] if t >= e else _ZERO for t in range(n)]


def _det(matrix: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant by Laplace expansion along columns, memoized on row sets."""
    n = len(matrix)
    if n == 0:
        return _ONE
    memo: dict[tuple[int, ...], LaurentPolynomial] = {}

    def minor(rows: tuple[int, ...]) -> LaurentPolynomial:
        # rows are matched with the last len(rows) columns
        if not rows:
            return _ONE
        if rows in memo:
            return memo[rows]
        col = n - len(rows)
        acc = _ZERO
        for pos, r in enumerate(rows):
            e = matrix[r][col]
            if e.is_zero():
                continue
            sub = minor(rows[:pos] + rows[pos + 1:])
            if sub.is_zero():
                continue
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        memo[rows] = acc
        return acc

    return minor(tuple(range(n)))


def grassmannian_truncated(lam: Sequence[int], r: int, k: int, l: int) -> LaurentPolynomial:
    """Groth_{w_lam} in S with descent at r, truncated at a_i = 1 (i > k), b_j = 1 (j > l).

    Uses pi_{w0(r)} f = det[psi_i(a_j)] / prod_{i<j}(a_i - a_j) for the
    dominant product f = prod_i psi-type factors, and takes the confluent
    limit a_{k+1}, ..., a_r -> 1 column by column.
    """
    lam = list(lam) + [0] * (r - len(lam))
    if len(lam) > r:
        raise MalformedInputError("partition longer than the descent position")
    codes = [lam[i - 1] + r - i for i in range(1, r + 1)]
    kk = min(k, r)
    n = r - kk
    taylor = [_taylor_at_one(i, r, codes[i - 1], l, n) for i in range(1, r + 1)]
    # column reduction: psi_i(a) - sum_m T_m (a-1)^m is divisible by (a-1)^n
    rem_cols: list[list[LaurentPolynomial]] = []
    for j in range(1, kk + 1):
        v = alpha(j)
        a_minus_1 = LaurentPolynomial.gen(v) - _ONE
        col = []
        for i in range(1, r + 1):
            f = _psi(i, r, codes[i - 1], l, v)
            pw = _ONE
            for m in range(n):
                if not taylor[i - 1][m].is_zero():
                    f = f - taylor[i - 1][m] * pw
                pw = pw * a_minus_1
            for _ in range(n):
                f = divide_by_difference(f, v, 1)
            col.append(f)
        rem_cols.append(col)
    # Laplace expansion along the k symbolic columns
    num = _ZERO
    rows = list(range(r))
    base_sign = sum(range(1, kk + 1))
    for S in itertools.combinations(rows, kk):
        rest = [i for i in rows if i not in S]
        numeric = _det([[taylor[i][m] for m in range(n)] for i in rest])
        if numeric.is_zero():
            continue
        sym = _ZERO
        for perm in itertools.permutations(range(kk)):
            sgn = _perm_sign(perm)
            term = _ONE
            for j, pi in enumerate(perm):
                term = term * rem_cols[j][S[pi]]
                if term.is_zero():
                    break
            sym = sym - term if sgn < 0 else sym + term
        if sym.is_zero():
            continue
        sign = -1 if (sum(s + 1 for s in S) + base_sign) % 2 else 1
        num = num + sym * numeric * sign
    if (n * (n - 1) // 2) % 2:
        num = -num
    for i in range(1, kk + 1):
        for j in range(i + 1, kk + 1):
            num = divide_by_difference(num, alpha(i), LaurentPolynomial.gen(alpha(j)))
    return num


def _perm_sign(perm: Sequence[int]) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _truncated_once(w: Permutation, k: int, l: int, m: int, bound: int) -> LaurentPolynomial:
    g = w.grassmannian_data()
    if g is not None:
        lam, p = g
        if not lam:
            return _ONE
        r = p + m
        if r > GRASSMANNIAN_BOUND:
            raise SizeLimitError(f"descent position {r} exceeds {GRASSMANNIAN_BOUND}")
        return grassmannian_truncated(lam, r, k, l)
    big = w.shifted(m)
    if len(big) > bound:
        raise SizeLimitError(f"1^{m} x w lies in S_{len(big)}, beyond the bound {bound}")
    return groth_via_dominant(big, k, l)


def truncated_stable(w: Permutation, k: int, l: int, m: int | None = None,
                     bound: int = TRUNCATION_BOUND, check: bool = True) -> LaurentPolynomial:
    """G_w^{k,l}: Groth_{1^m x w} with a_i = 1 (i > k) and b_j = 1 (j > l).

    m defaults to k + l; the result is recomputed at m + 1 and compared.
    """
    if not isinstance(w, Permutation):
        w = Permutation(w)
    if k < 0 or l < 0:
        raise MalformedInputError("k and l must be nonnegative")
    if m is None:
        m = k + l
    out = _truncated_once(w, k, l, m, bound)
    if check:
        again = _truncated_once(w, k, l, m + 1, bound + 1)
        if again != out:
            raise StabilizationMismatchError(f"G_{w}^{{{k},{l}}} differs between m={m} and m={m + 1}")
    return out
