"""Gaussian binomials, refined trinomials, and their limiting behavior."""

from math import comb

import pytest
from hypothesis import given, strategies as st

from ggq.series import TruncSeries, at_order, monomial, poly_mul, poly_sum
from ggq.trinomials import (
    identity_4_15,
    identity_4_20,
    limit_4_9,
    limit_4_10,
    limit_4_17,
    limit_4_18,
    poly_equal,
    q_binomial,
    stabilized,
    t_ab,
    t_warnaar,
    u_of,
    u_tilde,
)


def test_frozen_small_binomial():
    assert sorted(q_binomial(4, 2).terms.items()) == [
        ((0, 0, 0), 1),
        ((2, 0, 0), 1),
        ((4, 0, 0), 2),
        ((6, 0, 0), 1),
        ((8, 0, 0), 1),
    ]


def test_binomial_vanishing_conventions():
    assert q_binomial(4, -1).terms == {}
    assert q_binomial(4, 5).terms == {}
    assert q_binomial(0, 0).terms == {(0, 0, 0): 1}


@given(st.integers(1, 12), st.integers(0, 12))
def test_binomial_pascal_and_symmetry(n, k):
    lhs = q_binomial(n, k)
    q_pow = monomial(1, 2 * k, order2=2 * k + 1)
    rhs = poly_sum(
        [q_binomial(n - 1, k - 1), poly_mul(q_pow, q_binomial(n - 1, k))]
    )
    assert poly_equal(lhs, rhs) is None
    assert poly_equal(lhs, q_binomial(n, n - k)) is None
    assert sum(lhs.terms.values()) == comb(n, k)


def test_refined_trinomial_base_cases():
    assert sorted(t_warnaar(1, 1, 1, 0).terms.items()) == [
        ((0, 0, 0), 1),
        ((2, 0, 0), 1),
    ]
    assert t_ab(1, 1).terms == {(0, 0, 0): 1}
    assert t_warnaar(2, 0, 3, 0).terms == {}  # a out of reach


def test_u_forms_are_adjacent_sums():
    a = u_tilde(3, 2, 1, 0)
    b = poly_sum([t_warnaar(3, 2, 1, 0), t_warnaar(3, 2, 2, 0)])
    assert poly_equal(a, b) is None
    assert poly_equal(u_of(3, 1), poly_sum([t_ab(3, 1), t_ab(3, 2)])) is None


def test_doubly_bounded_identity_grid():
    for k in (1, 2):
        for l in range(5):
            for m in range(5):
                assert identity_4_15(k, l, m) is None


def test_singly_bounded_identity_grid():
    for k in (1, 2):
        for l in range(7):
            assert identity_4_20(k, l) is None


def test_poly_equal_needs_exact():
    inexact = at_order(q_binomial(4, 2), 4)
    with pytest.raises(ValueError):
        poly_equal(inexact, q_binomial(4, 2))


def test_stabilized_index():
    t = q_binomial(2, 1)
    assert stabilized([q_binomial(3, 1), t, t, t], t) == 1
    assert stabilized([q_binomial(3, 1), t], t) is None
    assert stabilized([], t) is None


ORDER2 = 81


def test_limits():
    for m in range(5):
        assert limit_4_9(m, ORDER2)
    for j in range(3):
        assert limit_4_10(j, ORDER2)
    assert limit_4_17(0, 1, 0, ORDER2)
    assert limit_4_17(2, 1, 0, ORDER2)
    for b in (-1, 0, 1, 2):
        assert limit_4_18(3, 1, b, ORDER2)
