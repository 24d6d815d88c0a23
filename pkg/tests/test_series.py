"""Ring laws, truncation coherence, and frozen expansions for the series kernel."""

import pytest
from hypothesis import given, settings, strategies as st

from ggq.series import (
    FactorSpec,
    TruncSeries,
    at_order,
    collapse_zw,
    inv_poch_finite,
    inv_poch_infinite,
    jacobi_check,
    jacobi_theta,
    lift,
    monomial,
    one,
    poch_finite,
    poch_infinite,
    poch_product,
    poly_mul,
    q_coefficients,
    reciprocal,
    scale_exponents,
    series_diff,
    shift_exponents,
    truncate,
    zero,
    zw_slice,
)

ORD = 24

_keys = st.tuples(st.integers(0, ORD - 1), st.integers(0, 3), st.integers(0, 3))
_coeffs = st.integers(-9, 9).filter(bool)
small_series = st.dictionaries(_keys, _coeffs, max_size=8).map(
    lambda t: TruncSeries(t, ORD)
)

# enough terms to push multiplication onto the packed-integer path
_uni_keys = st.tuples(st.integers(0, 59), st.just(0), st.just(0))
fat_univariate = st.dictionaries(_uni_keys, st.integers(-99, 99).filter(bool), min_size=21, max_size=45).map(
    lambda t: TruncSeries(t, 60)
)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero(ORD) == a
    assert a * one(ORD) == a
    assert a - a == zero(ORD)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series)
def test_truncation_is_a_ring_morphism(a, b):
    half = ORD // 2
    assert truncate(a * b, half) == truncate(a, half) * truncate(b, half)
    assert truncate(a + b, half) == truncate(a, half) + truncate(b, half)


def _naive_mul(a, b, order2):
    out = {}
    for (ea, za, wa), ca in a.terms.items():
        for (eb, zb, wb), cb in b.terms.items():
            if ea + eb < order2:
                k = (ea + eb, za + zb, wa + wb)
                out[k] = out.get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


@settings(max_examples=40, deadline=None)
@given(fat_univariate, fat_univariate)
def test_packed_multiplication_matches_schoolbook(a, b):
    assert (a * b).terms == _naive_mul(a, b, 60)


@settings(max_examples=30, deadline=None)
@given(small_series, small_series)
def test_sparse_multiplication_matches_schoolbook(a, b):
    assert (a * b).terms == _naive_mul(a, b, ORD)


def test_validation():
    with pytest.raises(ValueError):
        TruncSeries({(0, 0, 0): 0}, 4)
    with pytest.raises(ValueError):
        TruncSeries({(4, 0, 0): 1}, 4)
    with pytest.raises(ValueError):
        TruncSeries({(-2, 0, 0): 1}, 4)
    with pytest.raises(ValueError):
        monomial(1, -2, order2=4)
    with pytest.raises(ValueError):
        zero(4).coeff(7)


def test_monomial_exactness_edge():
    # an invisible nonzero term must poison exactness, an actual zero must not
    assert monomial(1, 5, order2=5).exact is False
    assert monomial(0, 99, order2=5).exact is True
    assert monomial(1, 4, order2=5).exact is True


def test_lift_and_truncate():
    s = one(6) + monomial(1, 4, order2=6)
    up = lift(s, 30)
    assert up.order2 == 30 and up.terms == s.terms
    with pytest.raises(ValueError):
        lift(truncate(poch_infinite(FactorSpec(1, 2, 2), order2=20), 10), 40)
    # shrinking onto a fitting polynomial is allowed
    assert lift(s, 5).order2 == 5
    assert at_order(up, 6) == s


def test_exponent_reshaping():
    s = one(10) + monomial(-1, 3, order2=10)
    assert scale_exponents(s, 2).terms == {(0, 0, 0): 1, (6, 0, 0): -1}
    assert scale_exponents(s, 2).order2 == 20
    assert shift_exponents(s, 5).terms == {(5, 0, 0): 1, (8, 0, 0): -1}
    assert shift_exponents(s, 5).order2 == 15


def test_squaring_drops_past_the_bound():
    s = one(12) + monomial(1, 6, order2=12)
    sq = s * s
    assert sq.terms == {(0, 0, 0): 1, (6, 0, 0): 2}  # q^6 fell off
    assert sq.exact is False
    exact_sq = poly_mul(s, s)
    assert exact_sq.terms == {(0, 0, 0): 1, (6, 0, 0): 2, (12, 0, 0): 1}
    assert exact_sq.exact is True


# -- frozen expansions --------------------------------------------------

Q = FactorSpec(1, 2, 2)


def test_euler_products():
    assert q_coefficients(poch_infinite(Q, order2=14), 6) == [1, -1, -1, 0, 0, 1, 0]
    assert q_coefficients(inv_poch_infinite(Q, order2=14), 6) == [1, 1, 2, 3, 5, 7, 11]
    assert poch_infinite(Q, order2=3).terms == {(0, 0, 0): 1, (2, 0, 0): -1}
    assert poch_infinite(FactorSpec(-1, 8, 8), order2=12).terms == {
        (0, 0, 0): 1,
        (8, 0, 0): 1,
    }


def test_infinite_product_rejects_constant_factor():
    with pytest.raises(ValueError):
        poch_infinite(FactorSpec(1, 0, 2), order2=10)


def test_poch_finite_recurrence():
    for f in (Q, FactorSpec(-1, 1, 2), FactorSpec(-1, 2, 4, 1), FactorSpec(1, 4, 4)):
        for n in range(10):
            grown = poch_finite(f, n, order2=40) * (
                one(40) - monomial(f.sign, f.e2 + n * f.step2, f.dz, f.dw, order2=40)
            )
            assert grown == poch_finite(f, n + 1, order2=40)


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(1, 19), st.just(0), st.just(0)), _coeffs, max_size=6))
def test_reciprocal_inverts(tail):
    s = TruncSeries({(0, 0, 0): 1, **tail}, 20)
    assert s * reciprocal(s) == one(20)


def test_reciprocal_involution():
    s = poch_finite(FactorSpec(-1, 2, 4), 3, order2=40)
    assert series_diff(reciprocal(reciprocal(s)), s) is None


def test_reciprocal_needs_unit_constant():
    with pytest.raises(ValueError):
        reciprocal(monomial(2, 0, order2=8))


def test_inverse_pochhammer_consistency():
    for f in (Q, FactorSpec(1, 4, 4), FactorSpec(-1, 2, 4)):
        for n in (0, 1, 4):
            assert poch_finite(f, n, order2=50) * inv_poch_finite(f, n, order2=50) == one(50)
        assert poch_infinite(f, order2=50) * inv_poch_infinite(f, order2=50) == one(50)


def test_marker_tools():
    s = monomial(3, 2, 1, 0, order2=9) + monomial(4, 4, 0, 2, order2=9) + one(9)
    assert collapse_zw(s).terms == {(0, 0, 0): 1, (2, 0, 0): 3, (4, 0, 0): 4}
    assert zw_slice(s, dw=2).terms == {(4, 0, 2): 4}
    assert zw_slice(s, dz=0, dw=0).terms == {(0, 0, 0): 1}


def test_series_diff_reports_smallest_key():
    a = one(10) + monomial(2, 4, order2=10)
    b = one(10) + monomial(3, 4, order2=10) + monomial(1, 6, order2=10)
    assert series_diff(a, b) == ((4, 0, 0), 3, 2)
    assert series_diff(a, a) is None


def test_theta_expansion():
    got = q_coefficients(jacobi_theta((1, 0), order2=21), 10)
    assert got == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0]


@pytest.mark.parametrize("zspec", [(1, 0), (-1, 0), (1, 2), (1, 6)])
def test_triple_product(zspec):
    assert jacobi_check(zspec, order2=121)


def test_theta_rejects_unnormalizable_input():
    with pytest.raises(ValueError):
        jacobi_theta((1, 6), order2=40)  # negative exponents before normalization


def test_product_shorthand():
    lhs = poch_product([Q, FactorSpec(1, 4, 4)], order2=30)
    rhs = poch_infinite(Q, order2=30) * poch_infinite(FactorSpec(1, 4, 4), order2=30)
    assert lhs == rhs
