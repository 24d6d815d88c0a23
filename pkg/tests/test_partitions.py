"""Enumeration, chain statistics, weighted families, counting functions."""

import pytest
from hypothesis import given, settings, strategies as st

from ggq.partitions import (
    MOD8_CONFIG,
    P_CONFIG,
    Chain,
    Partition,
    ResidueFamilyConfig,
    VARIANTS,
    chains,
    count_g,
    count_gg,
    count_p,
    count_q,
    count_residue_family,
    count_thm1_side,
    count_thm2_sides,
    enumerate_members,
    enumerate_partitions,
    interp_config,
    is_gollnitz_gordon,
    membership_and_weight,
    stat_s,
    stat_t,
    weighted_count,
)
from ggq.series import FactorSpec, inv_poch_finite, q_coefficients, reciprocal, poch_product


def test_partition_basics():
    p = Partition((2, 5, 8))
    assert p.sigma == 15 and p.nu == 3 and p.lam == 2 and p.big_lam == 8
    empty = Partition()
    assert empty.sigma == 0 and empty.nu == 0
    assert empty.lam is None and empty.big_lam is None
    with pytest.raises(ValueError):
        Partition((3, 1))
    with pytest.raises(ValueError):
        Partition((0,))


def test_enumeration_is_exhaustive_and_ordered():
    # unrestricted enumeration must hit the classical partition numbers
    classical = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [len(enumerate_partitions(n)) for n in range(11)] == classical
    got = enumerate_partitions(5)
    assert got == sorted(got)
    assert all(p.sigma == 5 for p in got)


def test_extend_sees_the_prefix():
    seen = []

    def ext(prefix, p):
        seen.append((prefix, p))
        return True

    enumerate_partitions(3, extend=ext)
    assert ((), 3) in seen and ((1,), 2) in seen


def test_chains_decomposition():
    assert chains(Partition((1, 3, 6, 8, 13))) == [
        Chain((1, 3)),
        Chain((6, 8)),
        Chain((13,)),
    ]
    assert chains(Partition()) == []
    c = Chain((6, 8))
    assert c.parity == "even" and c.lam == 6 and len(c) == 2
    with pytest.raises(ValueError):
        chains(Partition((1, 2)))


def test_chain_runs_are_parity_homogeneous():
    for n in range(1, 25):
        for pi in enumerate_partitions(n, extend=lambda pre, p: not pre or p - pre[-1] >= 2):
            for ch in chains(pi):
                assert len({x % 2 for x in ch.parts}) == 1
                diffs = {b - a for a, b in zip(ch.parts, ch.parts[1:])}
                assert diffs <= {2}


def test_statistics():
    pi = Partition((2, 5, 8))
    assert stat_t(pi, 8) == 1 and stat_s(pi, 8) == 1
    assert stat_t(pi, 2) == 0
    with pytest.raises(ValueError):
        stat_t(pi, 4)


def test_gollnitz_gordon_predicate():
    assert is_gollnitz_gordon(Partition((1, 5, 7)))
    assert not is_gollnitz_gordon(Partition((1, 2)))
    assert not is_gollnitz_gordon(Partition((2, 4)))  # even needs gap > 2
    assert is_gollnitz_gordon(Partition((3, 5)))  # odd may sit at gap 2
    assert is_gollnitz_gordon(Partition())


def test_membership_weight_is_power_of_two():
    for n in range(30):
        for pi in enumerate_members("S", n):
            w = membership_and_weight("S", pi)
            assert w is not None and w & (w - 1) == 0


def test_membership_rejects_non_gg_input():
    with pytest.raises(ValueError):
        membership_and_weight("S", Partition((1, 2)))


def test_weight_counts_qualifying_chains():
    # (5,) is a single odd chain with least part 5 == 2*0+1 (mod 4): weight 2
    assert membership_and_weight("S", Partition((5,))) == 2
    # (1,) fails the chain_min bound: weight 1
    assert membership_and_weight("S", Partition((1,))) == 1
    # an even part matching the parity rule contributes no factor
    assert membership_and_weight("S", Partition((4,))) == 1


def test_variant_table():
    assert set(VARIANTS) == {"S", "Sstar"}
    assert VARIANTS["S"].even_offset == 0 and VARIANTS["Sstar"].even_offset == 2


def test_weighted_counts_frozen():
    assert [weighted_count("S", n) for n in range(8)] == [1, 1, 0, 1, 2, 2, 1, 2]
    assert [weighted_count("Sstar", n) for n in range(8)] == [1, 1, 1, 2, 1, 2, 3, 3]


def test_count_q_frozen():
    assert [count_q(1, n) for n in range(5)] == [1, 0, 1, 1, 1]
    assert [count_q(3, n) for n in range(7)] == [1, 1, 1, 1, 1, 2, 3]
    assert [count_q(2, n) for n in range(7)] == [1, 1, 0, 1, 2, 2, 1]
    assert [count_q(0, n) for n in range(7)] == [1, 1, 1, 2, 1, 2, 3]
    with pytest.raises(ValueError):
        count_q(4, 1)


def test_count_q_against_product():
    # distinct parts avoiding one residue class mod 4: a three-factor product
    for i in range(4):
        specs = [
            FactorSpec(-1, 2 * r, 8) for r in (1, 2, 3, 4) if r % 4 != i % 4
        ]
        coeffs = q_coefficients(poch_product(specs, order2=81), 40)
        assert coeffs == [count_q(i, n) for n in range(41)], f"i={i}"


def test_gg_counts():
    assert [count_gg(n) for n in range(8)] == [1, 1, 1, 1, 2, 2, 2, 3]
    assert [count_gg(n, 3) for n in range(8)] == [1, 0, 0, 1, 1, 1, 1, 1]


def test_thm1_and_thm2_sides_frozen():
    assert count_thm1_side(1, 4) == 1
    assert count_thm2_sides(1, 0) == (1, 1)
    assert count_thm2_sides(3, 5) == (1, 1)
    with pytest.raises(ValueError):
        count_thm1_side(2, 4)


def test_residue_family_machinery():
    cfg = ResidueFamilyConfig(4, frozenset({1, 2}))
    assert cfg.permits(5) and not cfg.permits(4)
    assert count_residue_family(cfg, 3) == 2  # 1+1+1 and 1+2; 3 itself is excluded
    with pytest.raises(ValueError):
        ResidueFamilyConfig(4, frozenset({7}))
    with pytest.raises(ValueError):
        ResidueFamilyConfig(0, frozenset())


def test_mod8_families_match_products():
    # 1/((q^a;q^8)(q^4;q^8)(q^b;q^8)) expands to the residue counts
    for i, (a, b) in ((1, (1, 7)), (3, (3, 5))):
        prod = reciprocal(
            poch_product(
                [FactorSpec(1, 2 * a, 16), FactorSpec(1, 8, 16), FactorSpec(1, 2 * b, 16)],
                order2=81,
            )
        )
        want = [count_residue_family(MOD8_CONFIG[i], n) for n in range(41)]
        assert q_coefficients(prod, 40) == want


def test_p_and_g_frozen():
    frozen = [1, 0, 0, 1, 1, 0, 0, 1, 2, 1, 0, 2]
    assert [count_p(n) for n in range(12)] == frozen
    assert [count_g(n) for n in range(12)] == frozen


def test_p_config_distinctness_bites():
    # 3 may not repeat (3 mod 6 in the distinct set) but 4 may
    assert count_residue_family(P_CONFIG, 6) == 0  # 3+3 excluded
    assert count_residue_family(P_CONFIG, 8) == 2  # 4+4 and 8


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6, 7, 8])
def test_interp_config_is_well_formed(k):
    cfg = interp_config(k)
    assert all(r % 4 != 2 for r in cfg.allowed)
    assert 0 not in cfg.allowed
    if k % 2 == 1:
        assert cfg.modulus == 4 * k + 8
        assert all(r % (2 * k + 4) not in {k, k + 4} for r in cfg.allowed)
    else:
        assert cfg.modulus == 2 * k + 4
    if k % 4 == 0:
        assert not cfg.distinct_residues


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 26))
def test_q2_equals_weighted_s(n):
    assert weighted_count("S", n) == count_q(2, n)
