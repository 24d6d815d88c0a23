"""Gaussian binomials, two q-trinomial families, and the bounded identities.

Everything here is exact polynomial arithmetic: operands carry an
``exact`` flag asserting no truncation ever happened, and comparisons are
full polynomial equality.  Exponents stay on the half grid, so the
q^(n^2/2) prefactors are plain integer shifts; substituting q -> q^2 is
an exponent doubling, never a re-expansion.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .series import (
    FactorSpec,
    TruncSeries,
    at_order,
    inv_poch_finite,
    inv_poch_infinite,
    monomial,
    one,
    poch_finite,
    poly_mul,
    poly_sum,
    scale_exponents,
    series_diff,
)

__all__ = [
    "q_binomial",
    "t_warnaar",
    "t_ab",
    "u_tilde",
    "u_of",
    "poly_equal",
    "lhs_4_15",
    "rhs_4_15",
    "identity_4_15",
    "lhs_4_20",
    "rhs_4_20",
    "identity_4_20",
    "limit_4_9",
    "limit_4_10",
    "limit_4_17",
    "limit_4_18",
    "stabilized",
]


@lru_cache(maxsize=None)
def q_binomial(top: int, bottom: int, step2: int = 2) -> TruncSeries:
    """Gaussian binomial [top choose bottom] in q^(step2/2), exact.

    Zero outside 0 <= bottom <= top.  Computed as the factor product
    divided term-by-term by (1 - x^i); the divisions are exact, which the
    trailing-remainder check enforces.
    """
    if bottom < 0 or bottom > top:
        return TruncSeries({}, 1)
    bottom = min(bottom, top - bottom)  # symmetry keeps the arrays short
    if bottom == 0:
        return one(1)
    deg = bottom * (top - bottom)
    coeffs = [0] * (deg + 1)
    coeffs[0] = 1
    cur = 0
    for i in range(1, bottom + 1):
        d = top - bottom + i
        cur += d
        for j in range(min(cur, deg), d - 1, -1):
            coeffs[j] -= coeffs[j - d]
    for i in range(1, bottom + 1):
        # divide in place by (1 - x^i); ascending order keeps it exact
        for j in range(i, deg + 1):
            coeffs[j] += coeffs[j - i]
    assert sum(coeffs) == comb(top, bottom)  # q=1 specialization
    terms = {(u * step2, 0, 0): c for u, c in enumerate(coeffs) if c}
    return TruncSeries(terms, deg * step2 + 1, exact=True)


def _shifted(poly: TruncSeries, e2: int) -> TruncSeries:
    if not poly.terms:
        return TruncSeries({}, 1)
    out = {(k + e2, dz, dw): c for (k, dz, dw), c in poly.terms.items()}
    return TruncSeries(out, poly.order2 + e2, exact=poly.exact)


def t_warnaar(l: int, m: int, a: int, b: int) -> TruncSeries:
    """Refined q-trinomial at base q; exponents n^2/2 live on the half grid."""
    if l < 0 or m < 0:
        raise ValueError("l, m must be nonnegative")
    parts = []
    for n in range(0, l + 1):
        if (n + l - a) % 2 != 0:
            continue
        h = (l - a - n) // 2
        f1 = q_binomial(m, n)
        f2 = q_binomial(m + b + h, m + b)
        f3 = q_binomial(m - b + (l + a - n) // 2, m - b)
        if not (f1.terms and f2.terms and f3.terms):
            continue
        parts.append(_shifted(poly_mul(poly_mul(f1, f2), f3), n * n))
    return poly_sum(parts)


def t_ab(l: int, a: int) -> TruncSeries:
    if l < 0:
        raise ValueError("l must be nonnegative")
    parts = []
    for n in range(0, l + 1):
        if (n + l - a) % 2 != 0:
            continue
        f1 = q_binomial(l, n)
        f2 = q_binomial(l - n, (l - a - n) // 2)
        if not (f1.terms and f2.terms):
            continue
        parts.append(_shifted(poly_mul(f1, f2), n * n))
    return poly_sum(parts)


def u_tilde(l: int, m: int, a: int, b: int) -> TruncSeries:
    return poly_sum([t_warnaar(l, m, a, b), t_warnaar(l, m, a + 1, b)])


def u_of(l: int, a: int) -> TruncSeries:
    return poly_sum([t_ab(l, a), t_ab(l, a + 1)])


def poly_equal(a: TruncSeries, b: TruncSeries):
    """None when equal as exact polynomials, else the first mismatch."""
    if not (a.exact and b.exact):
        raise ValueError("poly_equal needs exact operands")
    target = max(a.max_e2(), b.max_e2()) + 2
    return series_diff(at_order(a, target), at_order(b, target))


# -- the doubly bounded identity and its m -> infinity form -------------


def _n_vectors(k: int, n1_cap: int):
    """Weakly decreasing (N_1.. N_k) with N_1 <= n1_cap."""

    def rec(prefix, cap):
        if len(prefix) == k:
            yield prefix
            return
        for v in range(cap, -1, -1):
            yield from rec(prefix + (v,), v)

    yield from rec((), n1_cap)


def lhs_4_15(k: int, l: int, m: int) -> TruncSeries:
    parts = []
    for nvec in _n_vectors(k, m):
        small = [nvec[i] - nvec[i + 1] for i in range(k - 1)] + [nvec[-1]]
        nk = small[-1]
        total = sum(nvec)
        head = q_binomial(l + m - nvec[0], m - nvec[0], step2=4)
        if not head.terms:
            continue
        term = head
        dead = False
        run = 0
        for j in range(k - 1):
            run += nvec[j]
            fj = q_binomial(l - run + small[j], small[j], step2=4)
            if not fj.terms:
                dead = True
                break
            term = poly_mul(term, fj)
        if dead:
            continue
        for s in range(0, nk + 1):
            f4 = q_binomial(nk + (l - 1 - total - s) // 2, nk, step2=8)
            fs = q_binomial(nk, s, step2=4)
            if not (f4.terms and fs.terms):
                continue
            e2 = 2 * (sum(v * v for v in nvec) + s * s + 2 * nk)
            parts.append(_shifted(poly_mul(poly_mul(term, f4), fs), e2))
    return poly_sum(parts)


def _rhs_hierarchy(k: int, piece) -> TruncSeries:
    """Sum the alternating j-series; stop after two all-zero |j| levels.

    piece(j) returns the exact polynomial for one j.  The closure rule is
    asserted, not assumed: both levels beyond the last contributing one
    are checked to vanish identically.
    """
    parts = []
    zero_levels = 0
    t = 0
    while zero_levels < 2:
        js = [0] if t == 0 else [t, -t]
        level = [piece(j) for j in js]
        if all(not p.terms for p in level):
            zero_levels += 1
        else:
            zero_levels = 0
            parts.extend(level)
        t += 1
        assert t < 200, "j-sum failed to close"
    return poly_sum(parts)


def rhs_4_15(k: int, l: int, m: int) -> TruncSeries:
    def piece(j: int) -> TruncSeries:
        u1 = scale_exponents(u_tilde(l, m, 2 * (k + 2) * j + 1, 2 * j), 2)
        u2 = scale_exponents(u_tilde(l, m, 2 * (k + 2) * j + k + 1, 2 * j + 1), 2)
        e1 = 2 * ((4 * k + 8) * j * j + 4 * j)
        e2 = 2 * ((4 * k + 8) * j * j + 4 * (k + 1) * j + k)
        return poly_sum([_shifted(u1, e1), _shifted(u2, e2).scale(-1)])

    return _rhs_hierarchy(k, piece)


def identity_4_15(k: int, l: int, m: int):
    return poly_equal(lhs_4_15(k, l, m), rhs_4_15(k, l, m))


def lhs_4_20(k: int, l: int) -> TruncSeries:
    parts = []
    cap = max(l, 0) if k > 1 else max(l - 1, 0)
    for nvec in _n_vectors(k, cap):
        small = [nvec[i] - nvec[i + 1] for i in range(k - 1)] + [nvec[-1]]
        nk = small[-1]
        total = sum(nvec)
        term = one(1)
        dead = False
        run = 0
        for j in range(k - 1):
            run += nvec[j]
            fj = q_binomial(l - run + small[j], small[j], step2=4)
            if not fj.terms:
                dead = True
                break
            term = poly_mul(term, fj)
        if dead:
            continue
        for s in range(0, nk + 1):
            f4 = q_binomial(nk + (l - 1 - total - s) // 2, nk, step2=8)
            fs = q_binomial(nk, s, step2=4)
            if not (f4.terms and fs.terms):
                continue
            e2 = 2 * (sum(v * v for v in nvec) + s * s + 2 * nk)
            parts.append(_shifted(poly_mul(poly_mul(term, f4), fs), e2))
    return poly_sum(parts)


def rhs_4_20(k: int, l: int) -> TruncSeries:
    def piece(j: int) -> TruncSeries:
        u1 = scale_exponents(u_of(l, 2 * (k + 2) * j + 1), 2)
        u2 = scale_exponents(u_of(l, 2 * (k + 2) * j + k + 1), 2)
        e1 = 2 * ((4 * k + 8) * j * j + 4 * j)
        e2 = 2 * ((4 * k + 8) * j * j + 4 * (k + 1) * j + k)
        return poly_sum([_shifted(u1, e1), _shifted(u2, e2).scale(-1)])

    return _rhs_hierarchy(k, piece)


def identity_4_20(k: int, l: int):
    return poly_equal(lhs_4_20(k, l), rhs_4_20(k, l))


# -- limit / stabilization checks ---------------------------------------


def stabilized(values, target: TruncSeries):
    """Index where two consecutive values equal each other and the target.

    values is an iterable of series already truncated to a common order2;
    returns the first such index or None.
    """
    prev = None
    for idx, v in enumerate(values):
        if prev is not None and prev == v and v == target:
            return idx - 1
        prev = v
    return None


def limit_4_9(m: int, order2: int, search: int = 0) -> bool:
    """[n, m] -> 1/(q)_m as n grows."""
    target = inv_poch_finite(FactorSpec(1, 2, 2), m, order2=order2)
    hi = search or m + order2 // 2 + 3
    vals = (at_order(q_binomial(n, m), order2) for n in range(m, hi))
    return stabilized(vals, target) is not None


def limit_4_10(j: int, order2: int, search: int = 0) -> bool:
    """[2n, n+j] -> 1/(q)_infinity as n grows."""
    target = inv_poch_infinite(FactorSpec(1, 2, 2), order2=order2)
    hi = search or abs(j) + order2 // 2 + 3
    vals = (at_order(q_binomial(2 * n, n + j), order2) for n in range(abs(j), hi))
    return stabilized(vals, target) is not None


def limit_4_17(m: int, a: int, b: int, order2: int, search: int = 0) -> bool:
    """u_tilde(l, m, a, b) -> (-sqrt q)_m / (q)_{2m} * [2m, m+b] as l grows."""
    lead = poch_finite(FactorSpec(-1, 1, 2), m, order2=order2)
    lead = lead * inv_poch_finite(FactorSpec(1, 2, 2), 2 * m, order2=order2)
    target = lead * at_order(q_binomial(2 * m, m + b), order2)
    hi = search or order2 + 4
    vals = (at_order(u_tilde(l, m, a, b), order2) for l in range(hi))
    return stabilized(vals, target) is not None


def limit_4_18(l: int, a: int, b: int, order2: int, search: int = 0) -> bool:
    """t_warnaar(l, m, a, b) -> t_ab(l, a) / (q)_l as m grows."""
    target = at_order(t_ab(l, a), order2) * inv_poch_finite(
        FactorSpec(1, 2, 2), l, order2=order2
    )
    hi = search or order2 // 2 + l + 4
    vals = (at_order(t_warnaar(l, m, a, b), order2) for m in range(hi))
    return stabilized(vals, target) is not None
