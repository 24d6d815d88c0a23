"""Round trips and worked examples for the staged partition bijection."""

import pytest

from ggq.bijection import (
    MarkedPartition,
    SplitPair,
    TriplePartition,
    euler_add,
    euler_subtract,
    ferrers_graph,
    ferrers_merge,
    ferrers_split,
    identify,
    redistribute,
    redistribute_inverse,
    split_pairs,
    trace_pipeline,
    triple_inverse,
    triple_map,
    triple_partitions,
)
from ggq.partitions import (
    Partition,
    count_q,
    enumerate_members,
    membership_and_weight,
    weighted_count,
)

SIGMA = 28  # exhaustive round-trip bound for this module's own suite


def all_choices(m: MarkedPartition):
    k = len(m.marks)
    for bits in range(1 << k):
        yield tuple(bool(bits >> j & 1) for j in range(k))


def test_staircase_pair():
    assert euler_subtract(Partition((3, 5, 8))) == Partition((3, 3, 4))
    assert euler_add(Partition((3, 3, 4))) == Partition((3, 5, 8))
    with pytest.raises(ValueError):
        euler_subtract(Partition((3, 4)))
    for n in range(20):
        for pi in enumerate_members("S", n):
            assert euler_add(euler_subtract(pi)) == pi


def test_identify_worked_example():
    m = identify(Partition((5,)))
    assert m.marks == frozenset({5})
    assert m.choice_count() == 1


def test_identify_mark_count_matches_weight():
    for n in range(SIGMA + 1):
        for pi in enumerate_members("S", n):
            m = identify(pi)
            assert 1 << len(m.marks) == membership_and_weight("S", pi)


def test_identify_rejects_bad_parity():
    with pytest.raises(ValueError):
        identify(Partition((1, 4, 9, 11)))  # the 4 sits at the wrong parity


def test_redistribute_single_mark():
    m = identify(Partition((5,)))
    keep = redistribute(m, (False,))
    move = redistribute(m, (True,))
    assert keep == SplitPair(Partition((5,)), Partition())
    assert move == SplitPair(Partition(), Partition((5,)))


def test_redistribute_roundtrip_exhaustive():
    for n in range(SIGMA + 1):
        for pi in enumerate_members("S", n):
            m = identify(pi)
            for choice in all_choices(m):
                pair = redistribute(m, choice)
                assert pair.sigma == n
                assert redistribute_inverse(pair) == (m, choice)


def test_pair_roundtrip_exhaustive():
    for n in range(SIGMA + 1):
        for pair in split_pairs(n):
            m, choice = redistribute_inverse(pair)
            assert redistribute(m, choice) == pair


def test_split_pair_validation():
    with pytest.raises(ValueError):
        SplitPair(Partition((2,)), Partition())  # even part in pi1
    with pytest.raises(ValueError):
        SplitPair(Partition(), Partition((5, 7)))  # pi2 gap < 4
    with pytest.raises(ValueError):
        SplitPair(Partition((1,)), Partition((4,)))  # 1 <= 2*nu(pi2)
    SplitPair(Partition((5,)), Partition())  # fine


def test_ferrers_worked_example():
    pi2 = Partition((5, 15, 24, 29))
    rows = ferrers_graph(pi2)
    assert [sum(r) for r in rows] == [5, 15, 24, 29]
    # exactly the one-footed columns feed the odd pile
    pi3, pi4 = ferrers_split(pi2)
    assert pi3 == Partition((4, 12, 20, 24))
    assert pi4 == Partition((1, 5, 7))
    assert ferrers_merge(pi3, pi4) == pi2


def test_ferrers_merge_split_roundtrip():
    for n in range(SIGMA + 1):
        for t in triple_partitions(n):
            assert ferrers_split(ferrers_merge(t.pi3, t.pi4)) == (t.pi3, t.pi4)


def test_ferrers_graph_structure():
    # odd rows end in a single 1, the column above each 1 carries 2s,
    # everything else is a 4; row sums give back the parts
    for n in range(SIGMA + 1):
        for pair in split_pairs(n):
            if not pair.pi2.parts:
                continue
            rows = ferrers_graph(pair.pi2)
            one_cols = set()
            for row, p in zip(rows, pair.pi2.parts):
                assert sum(row) == p
                assert set(row) <= {1, 2, 4}
                if p % 2:
                    assert row.count(1) == 1 and row[-1] == 1
                    one_cols.add(len(row) - 1)
                else:
                    assert 1 not in row
                assert {c for c, v in enumerate(row) if v == 2} == {
                    c for c in one_cols if c < len(row) - (1 if p % 2 else 0)
                }


def test_triple_validation():
    with pytest.raises(ValueError):
        TriplePartition(Partition(), Partition((3,)), Partition())  # pi3 not mult of 4
    with pytest.raises(ValueError):
        TriplePartition(Partition(), Partition((4,)), Partition((3,)))  # pi4 too big
    TriplePartition(Partition(), Partition((4,)), Partition((1,)))


def test_triple_map_single_mark():
    m = identify(Partition((5,)))
    t0 = triple_map(m, (False,))
    assert (t0.pi1, t0.pi3, t0.pi4) == (Partition((5,)), Partition(), Partition())
    t1 = triple_map(m, (True,))
    assert (t1.pi1, t1.pi3, t1.pi4) == (Partition(), Partition((4,)), Partition((1,)))


def test_triple_roundtrip_exhaustive():
    for n in range(SIGMA + 1):
        for pi in enumerate_members("S", n):
            m = identify(pi)
            for choice in all_choices(m):
                t = triple_map(m, choice)
                assert t.sigma == n
                assert triple_inverse(t) == (m, choice)
        for t in triple_partitions(n):
            m, choice = triple_inverse(t)
            assert triple_map(m, choice) == t


def test_cardinalities_frozen_and_cross():
    assert [len(split_pairs(n)) for n in range(8)] == [1, 1, 0, 1, 2, 2, 1, 2]
    for n in range(SIGMA + 1):
        assert len(split_pairs(n)) == weighted_count("S", n)
        assert len(triple_partitions(n)) == len(split_pairs(n))
        assert len(triple_partitions(n)) == count_q(2, n)


def test_trace_stages():
    stages = trace_pipeline(Partition((5,)), (True,))
    names = [s for s, _ in stages]
    assert names == [
        "member",
        "marks",
        "choice",
        "euler-subtracted",
        "pi1",
        "pi2",
        "graph",
        "pi3",
        "pi4",
    ]
    rendered = dict(stages)
    assert rendered["member"] == "5"
    assert rendered["pi3"] == "4" and rendered["pi4"] == "1"
