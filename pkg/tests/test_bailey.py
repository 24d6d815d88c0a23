"""Bailey pair seed, lattice step, closed iterate, and the finite identity."""

import pytest

from ggq.bailey import (
    BaileyPair,
    finite_identity_4_7,
    iterate_closed,
    pair_mismatch,
    seed_E4,
    step,
    verify_pair,
)

ORDER2 = 80


def test_seed_satisfies_defining_relation():
    p = seed_E4(6, ORDER2)
    assert p.n_max == 6
    assert pair_mismatch(p) is None
    assert verify_pair(p)


def test_step_preserves_relation():
    p = seed_E4(6, ORDER2)
    for _ in range(3):
        p = step(p)
        assert verify_pair(p)


def test_closed_iterate_matches_stepping():
    base = seed_E4(5, ORDER2)
    walked = base
    for k in range(1, 4):
        walked = step(walked)
        closed = iterate_closed(base, k)
        assert closed.alpha == walked.alpha
        assert closed.beta == walked.beta


def test_pair_length_mismatch_rejected():
    p = seed_E4(2, 40)
    with pytest.raises(ValueError):
        BaileyPair(p.alpha, p.beta[:-1], 40)


def test_finite_identity_grid():
    for n in range(6):
        for k in range(1, 3):
            assert finite_identity_4_7(n, k, ORDER2) is None


def test_finite_identity_detects_damage():
    # sanity on the checker itself: shrinking n on one side must show up
    from ggq.bailey import lhs_4_7, rhs_4_7
    from ggq.series import series_diff

    assert series_diff(lhs_4_7(3, 2, 60), rhs_4_7(4, 2, 60)) is not None
