"""Exact counting, enumeration and unranking of distinct-parts partitions.

Everything here is brute-force ground truth for the probabilistic modules:
arbitrary-precision counts, lexicographic enumeration, bijective unranking
and the exact finite-n distribution of the centered statistic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .partition import Partition, from_parts, reciprocal_sum_exact

COUNT_CAP = 20000
ENUM_CAP = 80

# lazily extended coefficient list of prod_k (1 + q^k); _d_table[m] = d(m)
_d_table: List[int] = [1]
_d_built_to = 0


def count_d(n: int, cap: int = COUNT_CAP) -> int:
    """Number d(n) of partitions of n into distinct parts (exact integer)."""
    global _d_built_to
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"n={n} exceeds counting cap {cap}")
    if n > _d_built_to:
        c = _d_table
        c.extend([0] * (n - _d_built_to))
        # redo the DP from scratch; part k contributes to weights >= k
        for m in range(1, n + 1):
            c[m] = 0
        for k in range(1, n + 1):
            for m in range(n, k - 1, -1):
                c[m] += c[m - k]
        _d_built_to = n
    return _d_table[n]


@dataclass
class CountTable:
    """c[m][j] = number of distinct-parts partitions of m with parts <= j."""

    n: int
    table: List[List[int]]

    @classmethod
    def build(cls, n: int) -> "CountTable":
        if n > ENUM_CAP:
            raise ValueError(f"n={n} exceeds enumeration cap {ENUM_CAP}")
        c = [[0] * (n + 1) for _ in range(n + 1)]
        for j in range(n + 1):
            c[0][j] = 1
        for m in range(1, n + 1):
            for j in range(1, n + 1):
                c[m][j] = c[m][j - 1]
                if m >= j:
                    c[m][j] += c[m - j][j - 1]
        return cls(n=n, table=c)

    def count(self, m: int, j: int) -> int:
        return self.table[m][j]


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every distinct-parts partition of n once, in lexicographic
    order of the (decreasing) part lists."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUM_CAP:
        raise ValueError(f"n={n} exceeds enumeration cap {ENUM_CAP}")

    def rec(remaining: int, max_part: int, prefix: List[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield from_parts(prefix)
            return
        # smallest admissible leading part first => lexicographic order
        lo = _min_leading_part(remaining)
        for first in range(lo, min(remaining, max_part) + 1):
            prefix.append(first)
            yield from rec(remaining - first, first - 1, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def _min_leading_part(remaining: int) -> int:
    # the leading part must leave a representable remainder with smaller
    # distinct parts; 1+2+...+(first-1) >= remaining - first is necessary
    # and sufficient, so solve first*(first+1)/2 >= remaining
    lo = math.isqrt(2 * remaining)
    while lo * (lo + 1) // 2 < remaining:
        lo += 1
    return lo


def unrank(n: int, r: int) -> Partition:
    """The r-th partition (0-based) of enumerate_partitions(n).

    Follows the bounded-parts counting recurrence, deciding at each step
    whether the current largest allowed part is used.
    """
    d = count_d(n) if n <= COUNT_CAP else None
    if r < 0 or (d is not None and r >= d):
        raise ValueError(f"rank {r} out of range [0, {d}) for n={n}")
    ct = CountTable.build(n)
    parts: List[int] = []
    remaining = n
    max_part = n
    rank = int(r)
    while remaining > 0:
        first = _min_leading_part(remaining)
        while True:
            # partitions of `remaining` with leading part exactly `first`:
            # partitions of remaining-first into distinct parts <= first-1
            block = ct.count(remaining - first, min(first - 1, n))
            if rank < block:
                break
            rank -= block
            first += 1
            if first > min(remaining, max_part):
                raise ValueError(f"rank {r} out of range for n={n}")
        parts.append(first)
        remaining -= first
        max_part = first - 1
    return from_parts(parts)


@dataclass(frozen=True)
class ExactDistribution:
    """Atoms (statistic value, exact probability) of the centered statistic
    under the uniform measure on distinct-parts partitions of n."""

    n: int
    atoms: Tuple[Tuple[float, Fraction], ...]

    def total_probability(self) -> Fraction:
        return sum((pr for _, pr in self.atoms), Fraction(0))

    def cdf(self, x: float) -> float:
        return float(sum((pr for v, pr in self.atoms if v <= x), Fraction(0)))

    def cdf_left(self, x: float) -> float:
        return float(sum((pr for v, pr in self.atoms if v < x), Fraction(0)))


def exact_statistic_distribution(n: int) -> ExactDistribution:
    """Exact law of 2S - log(sqrt(3n)) over all partitions of n.

    Ties are merged on the exact rational reciprocal sum, not on floats.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUM_CAP:
        raise ValueError(f"n={n} exceeds enumeration cap {ENUM_CAP}")
    counts: Dict[Fraction, int] = {}
    total = 0
    for p in enumerate_partitions(n):
        s = reciprocal_sum_exact(p)
        counts[s] = counts.get(s, 0) + 1
        total += 1
    center = 0.5 * math.log(3.0 * n)
    atoms = sorted(
        (2.0 * float(s) - center, Fraction(c, total)) for s, c in counts.items()
    )
    return ExactDistribution(n=n, atoms=tuple(atoms))
