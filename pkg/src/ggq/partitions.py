"""Partitions with ascending parts, constrained enumeration, and counting.

Parts are kept in ascending order throughout.  "Parity" of a part means
its residue class mod 4, not mod 2; all parity predicates below are
written mod 4 explicitly.

The enumeration backbone is a depth-first search over ascending parts.
Family constraints are supplied as an ``extend(prefix, p)`` callback that
sees the whole prefix, so gap and statistic conditions prune branches as
early as possible; n <= 60 exhaustive runs finish in well under a second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

__all__ = [
    "Partition",
    "Chain",
    "ResidueFamilyConfig",
    "WeightVariant",
    "VARIANTS",
    "enumerate_partitions",
    "chains",
    "stat_t",
    "stat_s",
    "is_gollnitz_gordon",
    "membership_and_weight",
    "weighted_count",
    "count_q",
    "count_thm1_side",
    "count_thm2_sides",
    "count_gg",
    "count_g",
    "count_p",
    "count_residue_family",
    "interp_config",
    "P_CONFIG",
    "MOD8_CONFIG",
]


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        last = 0
        for p in self.parts:
            if p <= 0:
                raise ValueError("parts must be positive")
            if p < last:
                raise ValueError("parts must ascend")
            last = p

    @property
    def sigma(self) -> int:
        return sum(self.parts)

    @property
    def nu(self) -> int:
        return len(self.parts)

    @property
    def lam(self) -> Optional[int]:
        """Least part, None for the empty partition."""
        return self.parts[0] if self.parts else None

    @property
    def big_lam(self) -> Optional[int]:
        return self.parts[-1] if self.parts else None

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class Chain:
    """Maximal run of parts differing by exactly 2; parity-homogeneous."""

    parts: tuple[int, ...]

    @property
    def lam(self) -> int:
        return self.parts[0]

    @property
    def parity(self) -> str:
        return "odd" if self.parts[0] % 2 else "even"

    def __len__(self) -> int:
        return len(self.parts)


ExtendFn = Callable[[tuple[int, ...], int], bool]
AcceptFn = Callable[[tuple[int, ...]], bool]


def enumerate_partitions(
    n: int,
    extend: Optional[ExtendFn] = None,
    accept: Optional[AcceptFn] = None,
) -> list[Partition]:
    """All partitions of n passing the filters, ascending-lexicographic.

    extend(prefix, p) is consulted before appending p (p >= last part is
    already guaranteed); accept sees the completed tuple.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: list[Partition] = []

    def rec(prefix: tuple[int, ...], remaining: int, lo: int):
        if remaining == 0:
            if accept is None or accept(prefix):
                out.append(Partition(prefix))
            return
        for p in range(lo, remaining + 1):
            if extend is None or extend(prefix, p):
                rec(prefix + (p,), remaining - p, p)

    rec((), n, 1)
    return out


def chains(pi: Partition) -> list[Chain]:
    """Chain decomposition; defined only for gap >= 2 partitions."""
    parts = pi.parts
    for a, b in zip(parts, parts[1:]):
        if b - a < 2:
            raise ValueError("chain decomposition needs gaps >= 2")
    out: list[Chain] = []
    run: list[int] = []
    for p in parts:
        if run and p - run[-1] == 2:
            run.append(p)
        else:
            if run:
                out.append(Chain(tuple(run)))
            run = [p]
    if run:
        out.append(Chain(tuple(run)))
    return out


def stat_t(pi: Partition, b: int) -> int:
    """Number of odd parts below b; b must be a part."""
    if b not in pi.parts:
        raise ValueError(f"{b} is not a part")
    return sum(1 for p in pi.parts if p < b and p % 2 == 1)


def stat_s(pi: Partition, b: int) -> int:
    if b not in pi.parts:
        raise ValueError(f"{b} is not a part")
    return sum(1 for p in pi.parts if p < b and p % 2 == 0)


def is_gollnitz_gordon(pi: Partition) -> bool:
    """Gaps >= 2, strictly more than 2 above any even part."""
    parts = pi.parts
    for a, b in zip(parts, parts[1:]):
        d = b - a
        if d < 2 or (d == 2 and b % 2 == 0):
            return False
    return True


# -- weighted families (mod-4 parity conditions on even parts) ----------


@dataclass(frozen=True)
class WeightVariant:
    """Even-part condition b == 2t(b)+even_offset (mod 4); a chain gets
    weight 2 when odd, least part >= chain_min, and least part ==
    2t+chain_offset (mod 4)."""

    name: str
    even_offset: int
    chain_min: int
    chain_offset: int


VARIANTS = {
    "S": WeightVariant("S", 0, 5, 1),
    "Sstar": WeightVariant("Sstar", 2, 3, 3),
}


def membership_and_weight(variant: str, pi: Partition) -> Optional[int]:
    """Weight of a member partition, or None if the parity test fails.

    Input must be Gollnitz-Gordon; anything else is a usage error.
    """
    v = VARIANTS[variant]
    if not is_gollnitz_gordon(pi):
        raise ValueError("not a Gollnitz-Gordon partition")
    odd_seen = 0
    tmap: dict[int, int] = {}
    for p in pi.parts:
        tmap[p] = odd_seen
        if p % 2 == 1:
            odd_seen += 1
    for p in pi.parts:
        if p % 2 == 0 and (p - 2 * tmap[p]) % 4 != v.even_offset:
            return None
    weight = 1
    for ch in chains(pi):
        if (
            ch.parity == "odd"
            and ch.lam >= v.chain_min
            and (ch.lam - 2 * tmap[ch.lam]) % 4 == v.chain_offset
        ):
            weight *= 2
    return weight


def _member_extend(variant: str) -> ExtendFn:
    v = VARIANTS[variant]

    def ext(prefix: tuple[int, ...], p: int) -> bool:
        if prefix:
            d = p - prefix[-1]
            if d < 2 or (d == 2 and p % 2 == 0):
                return False
        if p % 2 == 0:
            t = sum(1 for x in prefix if x % 2 == 1)
            if (p - 2 * t) % 4 != v.even_offset:
                return False
        return True

    return ext


def enumerate_members(variant: str, n: int) -> list[Partition]:
    """All weighted-family members of n (S or Sstar)."""
    return enumerate_partitions(n, extend=_member_extend(variant))


@lru_cache(maxsize=None)
def weighted_count(variant: str, n: int) -> int:
    total = 0
    for pi in enumerate_members(variant, n):
        w = membership_and_weight(variant, pi)
        assert w is not None  # enumeration already pruned on parity
        total += w
    return total


# -- counting functions -------------------------------------------------


@lru_cache(maxsize=None)
def count_q(i: int, n: int) -> int:
    """Partitions of n into distinct parts with no part == i (mod 4)."""
    if i not in (0, 1, 2, 3):
        raise ValueError("i must be 0..3")

    def ext(prefix, p):
        return p % 4 != i and (not prefix or p > prefix[-1])

    return len(enumerate_partitions(n, extend=ext))


@lru_cache(maxsize=None)
def count_thm1_side(i: int, n: int) -> int:
    """Gaps >= 2, strict above odd parts, smallest part > (4-i)/2."""
    if i not in (1, 3):
        raise ValueError("i must be 1 or 3")
    min_part = 2 if i == 1 else 1

    def ext(prefix, p):
        if p < min_part:
            return False
        if prefix:
            d = p - prefix[-1]
            if d < 2 or (d == 2 and p % 2 == 1):
                return False
        return True

    return len(enumerate_partitions(n, extend=ext))


@lru_cache(maxsize=None)
def count_gg(n: int, min_part: int = 1) -> int:
    def ext(prefix, p):
        if p < min_part:
            return False
        if prefix:
            d = p - prefix[-1]
            if d < 2 or (d == 2 and p % 2 == 0):
                return False
        return True

    return len(enumerate_partitions(n, extend=ext))


def count_thm2_sides(i: int, n: int) -> tuple[int, int]:
    """(residue-side count, gap-side count) for the mod-8 theorem."""
    if i not in (1, 3):
        raise ValueError("i must be 1 or 3")
    residue = count_residue_family(MOD8_CONFIG[i], n)
    return residue, count_gg(n, min_part=i)


@lru_cache(maxsize=None)
def count_g(n: int) -> int:
    """Distinct parts, no consecutive gap == 1 (mod 4), and the k-th
    smallest part b satisfies b == 1+2k+2s(b) (odd) or 2+2k+2s(b) (even),
    mod 4 with k counted from 1."""

    def ext(prefix, p):
        k = len(prefix) + 1
        if prefix:
            if p <= prefix[-1] or (p - prefix[-1]) % 4 == 1:
                return False
        s = sum(1 for x in prefix if x % 2 == 0)
        want = (1 if p % 2 else 2) + 2 * k + 2 * s
        return (p - want) % 4 == 0

    return len(enumerate_partitions(n, extend=ext))


@dataclass(frozen=True)
class ResidueFamilyConfig:
    """Parts restricted to residues mod `modulus`; parts whose residue mod
    `sub_modulus` lands in `distinct_residues` may not repeat."""

    modulus: int
    allowed: frozenset[int]
    distinct_residues: frozenset[int] = field(default_factory=frozenset)
    sub_modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        if not all(0 <= r < self.modulus for r in self.allowed):
            raise ValueError("allowed residues out of range")
        sub = self.sub_modulus if self.sub_modulus is not None else self.modulus
        if sub <= 0 or not all(0 <= r < sub for r in self.distinct_residues):
            raise ValueError("distinct residues out of range")

    def permits(self, p: int) -> bool:
        return p % self.modulus in self.allowed

    def must_be_distinct(self, p: int) -> bool:
        sub = self.sub_modulus if self.sub_modulus is not None else self.modulus
        return p % sub in self.distinct_residues


@lru_cache(maxsize=None)
def count_residue_family(cfg: ResidueFamilyConfig, n: int) -> int:
    def ext(prefix, p):
        if not cfg.permits(p):
            return False
        if prefix and p == prefix[-1] and cfg.must_be_distinct(p):
            return False
        return True

    return len(enumerate_partitions(n, extend=ext))


# parts == +-3, +-4 (mod 12), those == 3 (mod 6) distinct
P_CONFIG = ResidueFamilyConfig(12, frozenset({3, 4, 8, 9}), frozenset({3}), 6)

# parts == +-i, 4 (mod 8), repetition allowed
MOD8_CONFIG = {
    1: ResidueFamilyConfig(8, frozenset({1, 4, 7})),
    3: ResidueFamilyConfig(8, frozenset({3, 4, 5})),
}


@lru_cache(maxsize=None)
def count_p(n: int) -> int:
    return count_residue_family(P_CONFIG, n)


def interp_config(k: int) -> ResidueFamilyConfig:
    """Residue-family reading of the level-k product side.

    k odd: modulus 4k+8, drop residues == 2 (mod 4), == +-k (mod 2k+4),
    and 0; parts == k+2 (mod 2k+4) distinct.  k == 2 (mod 4): modulus
    2k+4, drop == 2 (mod 4) and 0; parts == +-k/2 (mod k+2) distinct.
    k == 0 (mod 4): modulus 2k+4, drop == 2 (mod 4), 0, and +-k; no
    distinctness.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2 == 1:
        m = 4 * k + 8
        half = 2 * k + 4
        allowed = frozenset(
            r
            for r in range(1, m)
            if r % 4 != 2 and r % half not in {k, k + 4}
        )
        return ResidueFamilyConfig(m, allowed, frozenset({k + 2}), half)
    m = 2 * k + 4
    if k % 4 == 2:
        allowed = frozenset(r for r in range(1, m) if r % 4 != 2)
        return ResidueFamilyConfig(
            m, allowed, frozenset({k // 2, k // 2 + 2}), k + 2
        )
    allowed = frozenset(
        r for r in range(1, m) if r % 4 != 2 and r not in {k, k + 4}
    )
    return ResidueFamilyConfig(m, allowed)
