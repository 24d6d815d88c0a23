"""The combinatorial pipeline behind the weighted count.

Stages, each invertible:

    member  --identify-->  marked partition
            --redistribute (one bit per mark)-->  (pi1, pi2)
            --ferrers_split on pi2-->  (pi3, pi4)

A member is a Gollnitz-Gordon partition whose even parts b satisfy
b == 2t(b) (mod 4).  Marks sit on the least parts of qualifying odd
chains; each mark contributes a factor 2 to the weight, realized here as
a free routing choice.  The final triples (pi1, pi3, pi4) carry no
parity conditions at all, which is what ties the weighted count to the
distinct-part counting function.

Inverses recompute rather than remember: the choice bits are recovered
from which pile holds the subtracted value, and every inverse asserts
the forward map reproduces its input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partitions import (
    Partition,
    chains,
    enumerate_members,
    enumerate_partitions,
    is_gollnitz_gordon,
    membership_and_weight,
    VARIANTS,
)

__all__ = [
    "MarkedPartition",
    "SplitPair",
    "TriplePartition",
    "euler_subtract",
    "euler_add",
    "identify",
    "redistribute",
    "redistribute_inverse",
    "ferrers_graph",
    "ferrers_split",
    "ferrers_merge",
    "triple_map",
    "triple_inverse",
    "split_pairs",
    "triple_partitions",
    "trace_pipeline",
]

_S = VARIANTS["S"]


@dataclass(frozen=True)
class MarkedPartition:
    base: Partition
    marks: frozenset[int]  # part values carrying a tilde

    def choice_count(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class SplitPair:
    pi1: Partition
    pi2: Partition

    def __post_init__(self):
        p2 = self.pi2.parts
        tmap = _t_within(p2)
        last_odd = None
        for a, b in zip(p2, p2[1:]):
            if b - a < 4:
                raise ValueError("pi2 parts must differ by >= 4")
        for p in p2:
            if p % 2 == 1:
                if p < 5:
                    raise ValueError("odd parts of pi2 must be >= 5")
                if last_odd is not None and p - last_odd < 6:
                    raise ValueError("odd parts of pi2 must differ by >= 6")
                last_odd = p
                if (p - 2 * tmap[p]) % 4 != 1:
                    raise ValueError("odd part parity condition fails")
            else:
                if (p - 2 * tmap[p]) % 4 != 0:
                    raise ValueError("even part parity condition fails")
        bound = 2 * self.pi2.nu
        seen = set()
        for p in self.pi1.parts:
            if p % 2 == 0 or p <= bound or p in seen:
                raise ValueError("pi1 must be distinct odds above 2*nu(pi2)")
            seen.add(p)

    @property
    def sigma(self) -> int:
        return self.pi1.sigma + self.pi2.sigma


@dataclass(frozen=True)
class TriplePartition:
    pi1: Partition
    pi3: Partition
    pi4: Partition

    def __post_init__(self):
        prev = 0
        for p in self.pi3.parts:
            if p % 4 != 0 or p <= prev:
                raise ValueError("pi3 must be distinct multiples of 4")
            prev = p
        bound = 2 * self.pi3.nu
        prev = 0
        for p in self.pi4.parts:
            if p % 2 == 0 or p <= prev:
                raise ValueError("pi4 must be distinct odd parts")
            prev = p
        if self.pi4.parts and self.pi4.parts[-1] >= bound:
            raise ValueError("largest part of pi4 must be < 2*nu(pi3)")
        prev = 0
        for p in self.pi1.parts:
            if p % 2 == 0 or p <= prev or p <= bound:
                raise ValueError("pi1 must be distinct odds above 2*nu(pi3)")
            prev = p

    @property
    def sigma(self) -> int:
        return self.pi1.sigma + self.pi3.sigma + self.pi4.sigma


def _t_within(parts: tuple[int, ...]) -> dict[int, int]:
    # number of odd parts strictly below each part, inside this tuple
    out: dict[int, int] = {}
    odd = 0
    for p in parts:
        out[p] = odd
        if p % 2 == 1:
            odd += 1
    return out


# -- staircase ----------------------------------------------------------


def euler_subtract(pi: Partition) -> Partition:
    """b_k -> b_k - 2(k-1); needs gaps >= 2 so the result stays sorted."""
    parts = pi.parts
    for a, b in zip(parts, parts[1:]):
        if b - a < 2:
            raise ValueError("needs gaps >= 2")
    return Partition(tuple(p - 2 * k for k, p in enumerate(parts)))


def euler_add(pi_star: Partition) -> Partition:
    """Inverse staircase; accepts any non-decreasing input."""
    return Partition(tuple(p + 2 * k for k, p in enumerate(pi_star.parts)))


# -- identification and redistribution ----------------------------------


def identify(pi: Partition) -> MarkedPartition:
    """Mark the least parts of qualifying odd chains of a member."""
    w = membership_and_weight("S", pi)
    if w is None:
        raise ValueError("partition fails the even-part parity condition")
    odd_below: dict[int, int] = {}
    odd = 0
    for p in pi.parts:
        odd_below[p] = odd
        if p % 2 == 1:
            odd += 1
    marks = set()
    for ch in chains(pi):
        lam = ch.lam
        if (
            ch.parity == "odd"
            and lam >= _S.chain_min
            and (lam - 2 * odd_below[lam]) % 4 == _S.chain_offset
        ):
            marks.add(lam)
    assert 2 ** len(marks) == w
    return MarkedPartition(pi, frozenset(marks))


def redistribute(m: MarkedPartition, choice: tuple[bool, ...]) -> SplitPair:
    """Split the de-staircased parts into two piles and re-staircase.

    One bit per mark, ascending mark order; True routes the mark's
    subtracted value to the pi2 pile.  Unmarked odd values always go to
    pi1's pile, everything even to pi2's.
    """
    marks = sorted(m.marks)
    if len(choice) != len(marks):
        raise ValueError("one choice bit per mark required")
    to_pile2 = {v for v, bit in zip(marks, choice) if bit}
    star = euler_subtract(m.base).parts
    pile1: list[int] = []
    pile2: list[int] = []
    for k, b in enumerate(m.base.parts):
        v = star[k]
        if b % 2 == 0:
            pile2.append(v)
        elif b in to_pile2:
            pile2.append(v)
        else:
            pile1.append(v)
    pile1.sort()
    pile2.sort()
    n2 = len(pile2)
    pi2 = Partition(tuple(v + 2 * k for k, v in enumerate(pile2)))
    pi1 = Partition(tuple(v + 2 * (n2 + k) for k, v in enumerate(pile1)))
    pair = SplitPair(pi1, pi2)
    assert pair.sigma == m.base.sigma
    return pair


def redistribute_inverse(pair: SplitPair) -> tuple[MarkedPartition, tuple[bool, ...]]:
    """Recover the marked member and its routing bits.

    The piles are de-staircased and merged; marks are recomputed from the
    reassembled member, and each bit is read off from which pile holds
    the mark's subtracted value.  Equal subtracted values all come from
    one chain, and only a chain's least part can be marked, so the
    multiset lookup is unambiguous.
    """
    n2 = pair.pi2.nu
    star2 = [p - 2 * k for k, p in enumerate(pair.pi2.parts)]
    star1 = [p - 2 * (n2 + k) for k, p in enumerate(pair.pi1.parts)]
    if any(v <= 0 for v in star1) or any(v <= 0 for v in star2):
        raise ValueError("piles do not de-staircase to positive values")
    merged = sorted(star1 + star2)
    base = euler_add(Partition(tuple(merged)))
    if not is_gollnitz_gordon(base):
        raise ValueError("merged partition is not Gollnitz-Gordon")
    m = identify(base)
    star = euler_subtract(base).parts
    star_of = dict(zip(base.parts, star))
    budget: dict[int, int] = {}
    for v in star2:
        if v % 2 == 1:
            budget[v] = budget.get(v, 0) + 1
    bits = []
    for mark in sorted(m.marks):
        v = star_of[mark]
        if budget.get(v, 0) > 0:
            budget[v] -= 1
            bits.append(True)
        else:
            bits.append(False)
    bits = tuple(bits)
    if redistribute(m, bits) != pair:
        raise ValueError("not in the image of the redistribution map")
    return m, bits


# -- weighted Ferrers graph ---------------------------------------------


def ferrers_graph(pi2: Partition) -> list[list[int]]:
    """Node-weight rows (ascending part order) with entries 4, 2, or 1.

    Row for odd part f has (3+f+2t(f))/4 nodes ending in a 1; row for
    even part e has (e+2t(e))/4 nodes.  The column over each 1 (rows of
    larger parts) is weighted 2, the rest 4.  Row sums reproduce parts.
    """
    parts = pi2.parts
    tmap = _t_within(parts)
    lengths = []
    for p in parts:
        num = 3 + p + 2 * tmap[p] if p % 2 else p + 2 * tmap[p]
        if num % 4 != 0:
            raise ValueError("row length is not integral; parity condition broken")
        lengths.append(num // 4)
    for a, b in zip(lengths, lengths[1:]):
        if b <= a:
            raise ValueError("row lengths must strictly increase")
    one_cols = {lengths[i] - 1 for i, p in enumerate(parts) if p % 2 == 1}
    rows = []
    for i, p in enumerate(parts):
        row = []
        for c in range(lengths[i]):
            if p % 2 == 1 and c == lengths[i] - 1:
                row.append(1)
            elif c in one_cols and c < lengths[i] - 1:
                row.append(2)
            else:
                row.append(4)
        assert sum(row) == p
        rows.append(row)
    return rows


def ferrers_split(pi2: Partition) -> tuple[Partition, Partition]:
    """Extract the 1-footed columns as pi4; the all-4 remainder is pi3."""
    if not pi2.parts:
        return Partition(), Partition()
    rows = ferrers_graph(pi2)
    nrows = len(rows)
    one_cols = []  # (column index, bottom row index)
    for i, row in enumerate(rows):
        if row[-1] == 1:
            one_cols.append((len(row) - 1, i))
    pi4_parts = []
    for c, i in one_cols:
        col = [rows[j][c] for j in range(i, nrows)]
        assert col[0] == 1 and all(x == 2 for x in col[1:])
        pi4_parts.append(sum(col))
    pi3_parts = []
    drop = {c for c, _ in one_cols}
    for row in rows:
        kept = [w for c, w in enumerate(row) if c not in drop]
        assert all(w == 4 for w in kept)
        pi3_parts.append(sum(kept))
    pi3 = Partition(tuple(pi3_parts))
    pi4 = Partition(tuple(sorted(pi4_parts)))
    assert pi3.sigma + pi4.sigma == pi2.sigma
    assert pi3.nu == pi2.nu
    assert not pi4.parts or pi4.parts[-1] < 2 * pi2.nu
    return pi3, pi4


def ferrers_merge(pi3: Partition, pi4: Partition) -> Partition:
    """Reattach the 2-modular columns; inverse of ferrers_split."""
    nu = pi3.nu
    prev = 0
    for p in pi3.parts:
        if p % 4 != 0 or p <= prev:
            raise ValueError("pi3 must be distinct multiples of 4")
        prev = p
    odd_rows = set()
    for p in pi4.parts:
        if p % 2 == 0 or p >= 2 * nu:
            raise ValueError("pi4 parts must be odd and < 2*nu(pi3)")
        i = nu - 1 - (p - 1) // 2
        if i in odd_rows:
            raise ValueError("pi4 parts must be distinct")
        odd_rows.add(i)
    parts = []
    t = 0
    for i, g in enumerate(pi3.parts):
        parts.append(g + 2 * t + (1 if i in odd_rows else 0))
        if i in odd_rows:
            t += 1
    pi2 = Partition(tuple(parts))
    if ferrers_split(pi2) != (pi3, pi4):
        raise ValueError("not in the image of the split map")
    return pi2


# -- full pipeline ------------------------------------------------------


def triple_map(m: MarkedPartition, choice: tuple[bool, ...]) -> TriplePartition:
    pair = redistribute(m, choice)
    pi3, pi4 = ferrers_split(pair.pi2)
    t = TriplePartition(pair.pi1, pi3, pi4)
    assert t.sigma == m.base.sigma
    return t


def triple_inverse(t: TriplePartition) -> tuple[MarkedPartition, tuple[bool, ...]]:
    pi2 = ferrers_merge(t.pi3, t.pi4)
    return redistribute_inverse(SplitPair(t.pi1, pi2))


# -- enumeration of the target objects ----------------------------------


def _distinct_odds(n: int, min_part: int) -> list[Partition]:
    def ext(prefix, p):
        return p % 2 == 1 and p >= min_part and (not prefix or p > prefix[-1])

    return enumerate_partitions(n, extend=ext)


def _pi2_family(n: int) -> list[Partition]:
    def ext(prefix, p):
        if prefix and p - prefix[-1] < 4:
            return False
        t = sum(1 for x in prefix if x % 2 == 1)
        if p % 2 == 1:
            if p < 5 or (p - 2 * t) % 4 != 1:
                return False
            last_odd = next((x for x in reversed(prefix) if x % 2 == 1), None)
            if last_odd is not None and p - last_odd < 6:
                return False
        elif (p - 2 * t) % 4 != 0:
            return False
        return True

    return enumerate_partitions(n, extend=ext)


@lru_cache(maxsize=None)
def split_pairs(n: int) -> tuple[SplitPair, ...]:
    out = []
    for s2 in range(n + 1):
        for pi2 in _pi2_family(s2):
            bound = 2 * pi2.nu
            for pi1 in _distinct_odds(n - s2, bound + 1):
                out.append(SplitPair(pi1, pi2))
    return tuple(out)


@lru_cache(maxsize=None)
def triple_partitions(n: int) -> tuple[TriplePartition, ...]:
    def mult4(prefix, p):
        return p % 4 == 0 and (not prefix or p > prefix[-1])

    out = []
    for s3 in range(n + 1):
        for pi3 in enumerate_partitions(s3, extend=mult4):
            nu = pi3.nu
            for s4 in range(n - s3 + 1):
                for pi4 in _distinct_odds(s4, 1):
                    if pi4.parts and pi4.parts[-1] >= 2 * nu:
                        continue
                    for pi1 in _distinct_odds(n - s3 - s4, 2 * nu + 1):
                        out.append(TriplePartition(pi1, pi3, pi4))
    return tuple(out)


def trace_pipeline(pi: Partition, choice: tuple[bool, ...]) -> list[tuple[str, str]]:
    """Stage-by-stage rendering of one run, for the CLI trace mode."""
    m = identify(pi)
    star = euler_subtract(pi)
    pair = redistribute(m, choice)
    pi3, pi4 = ferrers_split(pair.pi2)
    rows = ferrers_graph(pair.pi2) if pair.pi2.parts else []
    stages = [
        ("member", _fmt(pi.parts)),
        ("marks", _fmt(sorted(m.marks))),
        ("choice", "".join("2" if b else "1" for b in choice) or "-"),
        ("euler-subtracted", _fmt(star.parts)),
        ("pi1", _fmt(pair.pi1.parts)),
        ("pi2", _fmt(pair.pi2.parts)),
        ("graph", " / ".join("".join(str(w) for w in row) for row in rows) or "-"),
        ("pi3", _fmt(pi3.parts)),
        ("pi4", _fmt(pi4.parts)),
    ]
    back_m, back_bits = triple_inverse(TriplePartition(pair.pi1, pi3, pi4))
    assert back_m == m and back_bits == tuple(choice)
    return stages


def _fmt(parts) -> str:
    return "+".join(str(p) for p in parts) if parts else "0"
