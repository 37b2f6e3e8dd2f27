"""Integer partitions with min/max part, size, difference, and congruence
constraints, generated in reverse-lexicographic order (largest part first).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class PartitionConstraint:
    min_part: int = 1
    max_part: object = None  # None = unbounded
    min_size: int = 0
    max_size: object = None
    min_difference: int = 0  # consecutive parts differ by >= this
    congruence: object = None  # (modulus, frozenset of residues)
    allowed_parts: object = None  # frozenset or None
    distinct: bool = False

    def __post_init__(self):
        if self.max_part is not None and self.max_part < self.min_part:
            raise ValueError("max_part < min_part")
        if self.max_size is not None and self.max_size < self.min_size:
            raise ValueError("max_size < min_size")
        if self.congruence is not None:
            m, residues = self.congruence
            object.__setattr__(
                self, "congruence", (int(m), frozenset(r % m for r in residues))
            )
        if self.allowed_parts is not None:
            object.__setattr__(self, "allowed_parts", frozenset(self.allowed_parts))

    def effective_difference(self):
        return max(self.min_difference, 1 if self.distinct else 0)

    def part_ok(self, p):
        if p < self.min_part:
            return False
        if self.max_part is not None and p > self.max_part:
            return False
        if self.congruence is not None:
            m, residues = self.congruence
            if p % m not in residues:
                return False
        if self.allowed_parts is not None and p not in self.allowed_parts:
            return False
        return True


UNCONSTRAINED = PartitionConstraint()


def partitions(k, constraint: PartitionConstraint = UNCONSTRAINED):
    """All constrained partitions of k as descending tuples, reverse-lex order.

    partitions(0) is [()] when the empty partition meets the size bounds.
    """
    if k < 0:
        return []
    c = constraint or UNCONSTRAINED
    diff = c.effective_difference()
    out = []

    def gen(remaining, cap, acc):
        if remaining == 0:
            if len(acc) >= c.min_size:
                out.append(tuple(acc))
            return
        if c.max_size is not None and len(acc) >= c.max_size:
            return
        top = min(remaining, cap)
        for p in range(top, c.min_part - 1, -1):
            if not c.part_ok(p):
                continue
            acc.append(p)
            gen(remaining - p, p - diff, acc)
            acc.pop()

    gen(k, k if c.max_part is None else min(k, c.max_part), [])
    return out


def frequency(partition):
    """{part: multiplicity} for a descending partition tuple."""
    d = {}
    for p in partition:
        d[p] = d.get(p, 0) + 1
    return d


@lru_cache(maxsize=None)
def partitions_cached(k, constraint: PartitionConstraint = UNCONSTRAINED):
    return tuple(partitions(k, constraint))
