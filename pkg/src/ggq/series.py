"""Exact truncated power series in q^(1/2) with two marker variables.

Coefficients are exact Python integers, so there is no overflow and no
rounding anywhere.  Exponents of q are stored in half-integer units
("e2"): ``e2 == 2`` means q, ``e2 == 1`` means q^(1/2).  Working on the
half grid keeps every exponent integral, including q^(n^2/2) terms and
shifted products such as (-q^(1/2); q)_n.

Two marker variables z and w ride along with nonnegative degrees
(dz, dw).  They are never inverted and never substituted with negative
powers; specializations that would need q^(-1) are done upstream, on
closed-form summands, before a series is ever built.

A series carries its truncation bound ``order2``: terms with e2 >=
order2 are unknown and silently dropped by the ring operations.  The
``exact`` flag stays True only while no term has ever been dropped, so
polynomial pipelines can assert that nothing was truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

Key = tuple[int, int, int]

__all__ = [
    "FactorSpec",
    "TruncSeries",
    "monomial",
    "zero",
    "one",
    "truncate",
    "lift",
    "at_order",
    "scale_exponents",
    "shift_exponents",
    "poly_mul",
    "poly_sum",
    "series_diff",
    "q_coefficients",
    "collapse_zw",
    "zw_slice",
    "poch_finite",
    "poch_infinite",
    "poch_product",
    "inv_poch_finite",
    "inv_poch_infinite",
    "reciprocal",
    "jacobi_theta",
    "jacobi_sides",
    "jacobi_check",
]


@dataclass(frozen=True, slots=True)
class FactorSpec:
    """Family of factors (1 - sign * q^((e2 + j*step2)/2) z^dz w^dw), j = 0, 1, ...

    ``sign=+1`` gives the plain product (x; .)_n, ``sign=-1`` encodes the
    negated argument (-x; .)_n, i.e. factors (1 + ...).
    """

    sign: int
    e2: int
    step2: int
    dz: int = 0
    dw: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.e2 < 0:
            raise ValueError("negative q-exponent in factor")
        if self.step2 <= 0:
            raise ValueError("step2 must be positive")
        if self.dz < 0 or self.dw < 0:
            raise ValueError("marker degrees must be nonnegative")


class TruncSeries:
    """Sparse exact series {(e2, dz, dw): coeff}, truncated at q^(order2/2)."""

    __slots__ = ("terms", "order2", "exact", "_uni")

    def __init__(self, terms: dict[Key, int], order2: int, exact: bool = True):
        if order2 <= 0:
            raise ValueError("order2 must be positive")
        uni = True
        for (e2, dz, dw), c in terms.items():
            if e2 < 0:
                raise ValueError(f"negative q-exponent e2={e2}")
            if dz < 0 or dw < 0:
                raise ValueError("negative marker degree")
            if e2 >= order2:
                raise ValueError(f"term e2={e2} at or beyond order2={order2}")
            if dz + dw > order2:
                raise ValueError("marker degree exceeds truncation order")
            if c == 0:
                raise ValueError("explicit zero coefficient")
            if dz or dw:
                uni = False
        self.terms = terms
        self.order2 = order2
        self.exact = exact
        self._uni = uni

    # -- basic protocol -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = monomial(other, 0, order2=self.order2)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order2 == other.order2 and self.terms == other.terms

    __hash__ = None  # mutable dict inside; identity hashing would mislead

    def __repr__(self) -> str:
        if not self.terms:
            return f"<series 0 (order2={self.order2})>"
        bits = []
        for (e2, dz, dw), c in sorted(self.terms.items())[:8]:
            mono = []
            if e2:
                mono.append(f"q^{e2 // 2}" if e2 % 2 == 0 else f"q^({e2}/2)")
            if dz:
                mono.append(f"z^{dz}" if dz > 1 else "z")
            if dw:
                mono.append(f"w^{dw}" if dw > 1 else "w")
            head = "*".join(mono) if mono else "1"
            bits.append(f"{c}*{head}" if mono else str(c))
        more = " + ..." if len(self.terms) > 8 else ""
        return f"<series {' + '.join(bits)}{more} (order2={self.order2})>"

    # -- inspection -----------------------------------------------------

    def coeff(self, e2: int, dz: int = 0, dw: int = 0) -> int:
        """Coefficient at q^(e2/2) z^dz w^dw; asking beyond order2 is a bug."""
        if e2 >= self.order2:
            raise ValueError(f"coefficient e2={e2} beyond truncation order2={self.order2}")
        return self.terms.get((e2, dz, dw), 0)

    def q_coeff(self, n: int) -> int:
        return self.coeff(2 * n)

    def max_e2(self) -> int:
        """Largest stored exponent, -1 for the zero series."""
        return max((k[0] for k in self.terms), default=-1)

    @property
    def is_univariate(self) -> bool:
        return self._uni

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "TruncSeries":
        return TruncSeries({k: -c for k, c in self.terms.items()}, self.order2, self.exact)

    def scale(self, c: int) -> "TruncSeries":
        if c == 0:
            return TruncSeries({}, self.order2, self.exact)
        return TruncSeries({k: c * v for k, v in self.terms.items()}, self.order2, self.exact)

    def __add__(self, other) -> "TruncSeries":
        if isinstance(other, int):
            other = monomial(other, 0, order2=self.order2)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order2 = min(self.order2, other.order2)
        out: dict[Key, int] = {}
        dropped = False
        for src in (self.terms, other.terms):
            for k, c in src.items():
                if k[0] >= order2:
                    dropped = True
                    continue
                acc = out.get(k, 0) + c
                if acc:
                    out[k] = acc
                elif k in out:
                    del out[k]
        exact = self.exact and other.exact and not dropped
        return TruncSeries(out, order2, exact)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, int):
            other = monomial(other, 0, order2=self.order2)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order2 = min(self.order2, other.order2)
        if not self.terms or not other.terms:
            return TruncSeries({}, order2, self.exact and other.exact)
        small = len(self.terms) * len(other.terms) <= 400
        if self._uni and other._uni and not small:
            terms, dropped = _mul_univariate(self.terms, other.terms, order2)
        else:
            terms, dropped = _mul_sparse(self.terms, other.terms, order2)
        exact = self.exact and other.exact and not dropped
        return TruncSeries(terms, order2, exact)

    def __rmul__(self, other):
        return self.__mul__(other)


# -- multiplication kernels ---------------------------------------------


def _mul_sparse(a: dict[Key, int], b: dict[Key, int], order2: int):
    if len(a) > len(b):
        a, b = b, a
    out: dict[Key, int] = {}
    dropped = False
    for (ea, za, wa), ca in a.items():
        for (eb, zb, wb), cb in b.items():
            e2 = ea + eb
            if e2 >= order2:
                dropped = True
                continue
            k = (e2, za + zb, wa + wb)
            acc = out.get(k, 0) + ca * cb
            if acc:
                out[k] = acc
            elif k in out:
                del out[k]
    return out, dropped


def _dense(terms: dict[Key, int]) -> list[int]:
    top = max(k[0] for k in terms)
    arr = [0] * (top + 1)
    for (e2, _, _), c in terms.items():
        arr[e2] = c
    return arr


def _pack(arr: list[int], width: int) -> int:
    buf = bytearray(len(arr) * width)
    for i, c in enumerate(arr):
        if c:
            buf[i * width : (i + 1) * width] = c.to_bytes(width, "little")
    return int.from_bytes(bytes(buf), "little")


def _unpack(val: int, nslots: int, width: int) -> list[int]:
    raw = val.to_bytes(nslots * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(nslots)
    ]


def _mul_univariate(a: dict[Key, int], b: dict[Key, int], order2: int):
    # Kronecker-substitution convolution: pack coefficients into one big
    # integer per sign component and let bignum multiplication do the work.
    # Exact for arbitrary coefficient sizes because the slot width is
    # derived from the actual operands.
    fa = _dense(a)
    fb = _dense(b)
    la, lb = len(fa), len(fb)
    dropped = (la - 1) + (lb - 1) >= order2
    res_len = min(la + lb - 1, order2)
    maxa = max(abs(c) for c in fa)
    maxb = max(abs(c) for c in fb)
    nbits = maxa.bit_length() + maxb.bit_length() + min(la, lb).bit_length() + 2
    width = (nbits + 7) // 8
    ap = _pack([c if c > 0 else 0 for c in fa], width)
    an = _pack([-c if c < 0 else 0 for c in fa], width)
    bp = _pack([c if c > 0 else 0 for c in fb], width)
    bn = _pack([-c if c < 0 else 0 for c in fb], width)
    pos = ap * bp + an * bn
    neg = ap * bn + an * bp
    nslots = la + lb
    pvals = _unpack(pos, nslots, width) if pos else [0] * nslots
    nvals = _unpack(neg, nslots, width) if neg else [0] * nslots
    out: dict[Key, int] = {}
    for e2 in range(res_len):
        c = pvals[e2] - nvals[e2]
        if c:
            out[(e2, 0, 0)] = c
    return out, dropped


# -- constructors and reshaping -----------------------------------------


def monomial(c: int, e2: int, dz: int = 0, dw: int = 0, *, order2: int) -> TruncSeries:
    """c * q^(e2/2) z^dz w^dw, or the zero series if e2 falls past order2."""
    if e2 < 0:
        raise ValueError("negative q-exponent")
    if c == 0:
        return TruncSeries({}, order2)
    if e2 >= order2:
        # the term exists but cannot be represented: honest exact=False
        return TruncSeries({}, order2, exact=False)
    return TruncSeries({(e2, dz, dw): c}, order2)


def zero(order2: int) -> TruncSeries:
    return TruncSeries({}, order2)


def one(order2: int) -> TruncSeries:
    return monomial(1, 0, order2=order2)


def truncate(s: TruncSeries, order2: int) -> TruncSeries:
    """Forget everything at or above the new, not larger, bound."""
    if order2 > s.order2:
        raise ValueError("truncate cannot raise order2; use lift")
    kept = {k: c for k, c in s.terms.items() if k[0] < order2}
    exact = s.exact and len(kept) == len(s.terms)
    return TruncSeries(kept, order2, exact)


def lift(s: TruncSeries, order2: int) -> TruncSeries:
    """Re-tag an exact polynomial with a larger truncation bound.

    Only legal when nothing was ever dropped, otherwise the extra range
    would claim knowledge we do not have.
    """
    if order2 < s.order2 and s.max_e2() < order2:
        # shrinking onto an exact polynomial that fits is harmless
        return TruncSeries(dict(s.terms), order2, s.exact)
    if order2 < s.order2:
        raise ValueError("cannot shrink below stored exponents; use truncate")
    if order2 > s.order2 and not s.exact:
        raise ValueError("cannot lift a series that has dropped terms")
    return TruncSeries(dict(s.terms), order2, s.exact)


def at_order(s: TruncSeries, order2: int) -> TruncSeries:
    """Truncate or lift so the result has exactly the requested order2."""
    if order2 <= s.order2:
        return truncate(s, order2)
    return lift(s, order2)


def scale_exponents(s: TruncSeries, factor: int) -> TruncSeries:
    """Substitute q -> q^factor by scaling the half-exponent grid."""
    if factor <= 0:
        raise ValueError("factor must be positive")
    terms = {(e2 * factor, dz, dw): c for (e2, dz, dw), c in s.terms.items()}
    return TruncSeries(terms, s.order2 * factor, s.exact)


def shift_exponents(s: TruncSeries, e2: int) -> TruncSeries:
    """Multiply by q^(e2/2), growing order2 so nothing falls off."""
    if e2 < 0:
        raise ValueError("negative shift")
    terms = {(k + e2, dz, dw): c for (k, dz, dw), c in s.terms.items()}
    return TruncSeries(terms, s.order2 + e2, s.exact)


def poly_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Exact polynomial product; operands must not have dropped terms."""
    if not (a.exact and b.exact):
        raise ValueError("poly_mul needs exact operands")
    if not a.terms or not b.terms:
        return TruncSeries({}, 1)
    target = a.max_e2() + b.max_e2() + 1
    out = lift(a, max(target, a.order2)) * lift(b, max(target, b.order2))
    out = at_order(out, target)
    if not out.exact:
        raise AssertionError("polynomial product dropped terms")
    return out


def poly_sum(parts: Iterable[TruncSeries]) -> TruncSeries:
    """Exact sum of polynomials at a shared, sufficient order2."""
    parts = list(parts)
    if not parts:
        return TruncSeries({}, 1)
    target = max(max(p.max_e2() + 1, 1) for p in parts)
    acc = TruncSeries({}, target)
    for p in parts:
        if not p.exact:
            raise ValueError("poly_sum needs exact operands")
        acc = acc + at_order(p, target)
    return acc


def series_diff(got: TruncSeries, want: TruncSeries) -> Optional[tuple[Key, int, int]]:
    """First differing key through the common truncation range.

    Returns (key, expected, got) sorted by (e2, dz, dw), or None.
    """
    bound = min(got.order2, want.order2)
    keys = {k for k in got.terms if k[0] < bound} | {k for k in want.terms if k[0] < bound}
    for k in sorted(keys):
        a = got.terms.get(k, 0)
        b = want.terms.get(k, 0)
        if a != b:
            return (k, b, a)
    return None


def q_coefficients(s: TruncSeries, n_max: int) -> list[int]:
    """[coeff of q^0, ..., coeff of q^n_max] along the pure-q axis."""
    if 2 * n_max >= s.order2:
        raise ValueError("q_coefficients beyond truncation order")
    return [s.terms.get((2 * n, 0, 0), 0) for n in range(n_max + 1)]


def collapse_zw(s: TruncSeries) -> TruncSeries:
    """Substitute z = w = 1, folding marker degrees into the q-axis."""
    out: dict[Key, int] = {}
    for (e2, _, _), c in s.terms.items():
        k = (e2, 0, 0)
        acc = out.get(k, 0) + c
        if acc:
            out[k] = acc
        elif k in out:
            del out[k]
    return TruncSeries(out, s.order2, s.exact)


def zw_slice(s: TruncSeries, dz: Optional[int] = None, dw: Optional[int] = None) -> TruncSeries:
    """Sub-series with the given marker degree(s), degrees kept in place."""
    out = {
        k: c
        for k, c in s.terms.items()
        if (dz is None or k[1] == dz) and (dw is None or k[2] == dw)
    }
    return TruncSeries(out, s.order2, False)


# -- Pochhammer products ------------------------------------------------


def _factor(f: FactorSpec, j: int, order2: int) -> TruncSeries:
    return one(order2) - monomial(f.sign, f.e2 + j * f.step2, f.dz, f.dw, order2=order2)


def poch_finite(f: FactorSpec, n: int, *, order2: int) -> TruncSeries:
    """Product of the first n factors of the family."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = one(order2)
    for j in range(n):
        acc = acc * _factor(f, j, order2)
    return acc


def poch_infinite(f: FactorSpec, *, order2: int) -> TruncSeries:
    """Infinite product, truncated: factors beyond order2 are identically 1.

    Rejects f.e2 == 0 with no marker degree: that first factor never
    leaves the constant range, so the product has no term-by-term limit.
    """
    if f.e2 == 0 and f.dz == 0 and f.dw == 0:
        raise ValueError("infinite product needs a positive exponent or a marker")
    acc = one(order2)
    j = 0
    while f.e2 + j * f.step2 < order2:
        acc = acc * _factor(f, j, order2)
        j += 1
    acc.exact = False
    return acc


def poch_product(specs: Iterable[FactorSpec], *, order2: int) -> TruncSeries:
    acc = one(order2)
    for f in specs:
        acc = acc * poch_infinite(f, order2=order2)
    acc.exact = False
    return acc


@lru_cache(maxsize=None)
def inv_poch_finite(f: FactorSpec, n: int, *, order2: int) -> TruncSeries:
    """Cached 1 / (first n factors). Constant term of the product is 1."""
    return reciprocal(poch_finite(f, n, order2=order2))


@lru_cache(maxsize=None)
def inv_poch_infinite(f: FactorSpec, *, order2: int) -> TruncSeries:
    return reciprocal(poch_infinite(f, order2=order2))


# -- reciprocal ---------------------------------------------------------


def reciprocal(s: TruncSeries) -> TruncSeries:
    """1/s for unit constant term (+1 or -1); division is otherwise undefined.

    Every non-constant term must carry at least q^(1/2), else the
    expansion would not terminate degree by degree.
    """
    c0 = s.terms.get((0, 0, 0), 0)
    if c0 not in (1, -1):
        raise ValueError("reciprocal needs constant term +1 or -1")
    for (e2, dz, dw) in s.terms:
        if e2 == 0 and (dz or dw):
            raise ValueError("reciprocal: marker term with no q power")
    if s.is_univariate:
        return _reciprocal_univariate(s, c0)
    # graded geometric expansion: s = c0 (1 - u), u has min e2 >= 1
    u = one(s.order2) - s.scale(c0)
    acc = one(s.order2)
    powu = one(s.order2)
    for _ in range(s.order2):
        powu = powu * u
        if not powu:
            break
        acc = acc + powu
    out = acc.scale(c0)
    out.exact = False
    return out


def _reciprocal_univariate(s: TruncSeries, c0: int) -> TruncSeries:
    order2 = s.order2
    sv = [0] * order2
    for (e2, _, _), c in s.terms.items():
        sv[e2] = c
    rv = [0] * order2
    rv[0] = c0
    support = sorted(e2 for (e2, _, _) in s.terms if e2 > 0)
    for j in range(1, order2):
        acc = 0
        for i in support:
            if i > j:
                break
            acc += sv[i] * rv[j - i]
        if acc:
            rv[j] = -c0 * acc
    out = {(e2, 0, 0): c for e2, c in enumerate(rv) if c}
    return TruncSeries(out, order2, False)


# -- bilateral theta and the triple product -----------------------------


def _zspec(zspec) -> tuple[int, int]:
    if len(zspec) == 2:
        sign, e2 = zspec
    elif len(zspec) == 4:
        sign, e2, dz, dw = zspec
        if dz or dw:
            raise ValueError("bilateral sum cannot raise markers to negative powers")
    else:
        raise ValueError("zspec must be (sign, e2) or (sign, e2, dz, dw)")
    if sign not in (1, -1):
        raise ValueError("zspec sign must be +1 or -1")
    return sign, e2


def _theta_exponent(n: int, e2z: int) -> int:
    return 2 * n * n + n * e2z


def _theta_min(e2z: int) -> int:
    n0 = -e2z // 4
    return min(_theta_exponent(n, e2z) for n in range(n0 - 2, n0 + 3))


def jacobi_theta(zspec, *, order2: int) -> TruncSeries:
    """Bilateral sum of sign^n q^(n^2 + n*e2z/2) over all integers n.

    The specialization must keep every exponent nonnegative; shifted
    cases are handled by jacobi_sides, which normalizes both sides.
    """
    sign, e2z = _zspec(zspec)
    if _theta_min(e2z) < 0:
        raise ValueError("specialization produces negative q-exponents")
    terms: dict[Key, int] = {}
    for direction in (0, 1):
        n = 0 if direction == 0 else -1
        step = 1 if direction == 0 else -1
        while True:
            t = _theta_exponent(n, e2z)
            if t >= order2:
                # quadratic growth: once past in this direction, stay past
                if abs(n) > abs(e2z) + 2:
                    break
                n += step
                continue
            k = (t, 0, 0)
            c = terms.get(k, 0) + (sign if n % 2 else 1)
            if c:
                terms[k] = c
            elif k in terms:
                del terms[k]
            n += step
    return TruncSeries(terms, order2, False)


def jacobi_sides(zspec, *, order2: int) -> tuple[TruncSeries, TruncSeries]:
    """Normalized (theta, product) pair for the triple-product comparison.

    Both sides are multiplied by the q-power that clears any negative
    exponents introduced by the z-specialization, so they can be compared
    on the nonnegative grid.
    """
    sign_z, e2z = _zspec(zspec)
    mu = _theta_min(e2z)

    # product side (q^2; q^2) (-qz; q^2) (-q/z; q^2), peeling nonpositive
    # exponents from the -q/z chain: (1 - s q^(-c/2)) = -s q^(-c/2) (1 - s q^(c/2))
    mult = 1
    shift = 0
    extras: list[tuple[int, int]] = []  # (sign, e2) single factors
    s_a = -sign_z
    e2a = 2 - e2z
    while e2a <= 0 and mult != 0:
        if e2a < 0:
            c = -e2a
            mult *= -s_a
            shift += c
            extras.append((s_a, c))
        else:
            mult *= 1 - s_a
        e2a += 4
    n0 = max(-mu, shift, 0)

    lhs_terms: dict[Key, int] = {}
    n = -e2z // 4
    for direction in (0, 1):
        m = n if direction == 0 else n - 1
        step = 1 if direction == 0 else -1
        while True:
            t = _theta_exponent(m, e2z) + n0
            if t >= order2:
                if abs(m - n) > abs(e2z) + order2:
                    break
                if _theta_exponent(m, e2z) > order2 + abs(mu):
                    break
            else:
                k = (t, 0, 0)
                c = lhs_terms.get(k, 0) + (sign_z if m % 2 else 1)
                if c:
                    lhs_terms[k] = c
                elif k in lhs_terms:
                    del lhs_terms[k]
            m += step
    lhs = TruncSeries(lhs_terms, order2, False)

    inner = order2 - (n0 - shift)
    if mult == 0 or inner <= 0:
        rhs = TruncSeries({}, order2, False)
        return lhs, rhs
    prod = poch_infinite(FactorSpec(1, 4, 4), order2=inner)
    prod = prod * poch_infinite(FactorSpec(-sign_z, 2 + e2z, 4), order2=inner)
    for s_x, c in extras:
        prod = prod * (one(inner) - monomial(s_x, c, order2=inner))
    if e2a > 0:
        prod = prod * poch_infinite(FactorSpec(s_a, e2a, 4), order2=inner)
    rhs = shift_exponents(prod.scale(mult), n0 - shift)
    rhs = at_order(rhs, order2)
    rhs.exact = False
    return lhs, rhs


def jacobi_check(zspec, *, order2: int) -> bool:
    lhs, rhs = jacobi_sides(zspec, order2=order2)
    return series_diff(lhs, rhs) is None
