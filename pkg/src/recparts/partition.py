"""Distinct-parts partitions and the reciprocal-parts statistic."""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple


@dataclass(frozen=True)
class Partition:
    """A partition into distinct parts, stored strictly decreasing.

    `parts` is immutable; `weight` is the sum of parts.  Part multiplicities
    are 0/1, so membership of a size k is just `k in set(parts)`.
    """

    parts: Tuple[int, ...]
    weight: int

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicity(self, k: int) -> int:
        """0/1 indicator of part size k."""
        i = bisect_right(self._ascending(), k)
        return 1 if i > 0 and self._ascending()[i - 1] == k else 0

    def _ascending(self) -> Tuple[int, ...]:
        return self.parts[::-1]


def from_parts(parts: Iterable[int]) -> Partition:
    """Validate and build a Partition from a part list.

    Parts must be strictly decreasing positive integers.  Raises ValueError
    with a diagnostic naming the offending pair otherwise.
    """
    ps = tuple(int(p) for p in parts)
    for i, p in enumerate(ps):
        if p <= 0:
            raise ValueError(f"non-positive part {p} at position {i}")
        if i > 0:
            if p == ps[i - 1]:
                raise ValueError(f"repeated part {p}")
            if p > ps[i - 1]:
                raise ValueError(f"parts out of order: {ps[i-1]} before {p}")
    return Partition(parts=ps, weight=sum(ps))


def _kahan_sum(terms: Iterable[float]) -> float:
    total = 0.0
    c = 0.0
    for x in terms:
        y = x - c
        t = total + y
        c = (t - total) - y
        total = t
    return total


def reciprocal_sum(p: Partition) -> float:
    """Sum of 1/part over all parts, compensated, largest parts first."""
    return _kahan_sum(1.0 / part for part in p.parts)


def reciprocal_sum_exact(p: Partition) -> Fraction:
    """Exact rational reciprocal sum, intended for small oracle partitions."""
    return sum((Fraction(1, part) for part in p.parts), Fraction(0))


def centered_statistic(p: Partition, n: int) -> float:
    """2*S(p) - log(sqrt(3n)).

    `n` is passed explicitly: callers center free-mode samples by the
    realized weight and exact-mode samples by the target size.
    """
    if n < 1:
        raise ValueError(f"centering size must be >= 1, got {n}")
    return 2.0 * reciprocal_sum(p) - 0.5 * math.log(3.0 * n)


def shape_function(p: Partition, t: float) -> int:
    """Number of parts with size <= t (right-continuous step function)."""
    if t < 0:
        raise ValueError(f"shape function argument must be >= 0, got {t}")
    return bisect_right(p._ascending(), t)


def integer_root(n: int, r: int) -> int:
    """floor(n**(1/r)) computed exactly with integer arithmetic."""
    if n < 0 or r < 1:
        raise ValueError("integer_root needs n >= 0, r >= 1")
    if n == 0:
        return 0
    k = max(1, int(round(n ** (1.0 / r))))
    while k ** r > n:
        k -= 1
    while (k + 1) ** r <= n:
        k += 1
    return k


@dataclass(frozen=True)
class RangeThresholds:
    """The small/medium/large split points floor(n^(1/5)) and floor(n^(1/3))."""

    k_n: int
    K_n: int

    @classmethod
    def for_size(cls, n: int) -> "RangeThresholds":
        if n < 1:
            raise ValueError("thresholds need n >= 1")
        return cls(k_n=integer_root(n, 5), K_n=integer_root(n, 3))


def range_sums(p: Partition, n: int) -> Tuple[float, float, float]:
    """Reciprocal partial sums over part sizes in [1,k_n], (k_n,K_n], (K_n,n].

    The three components sum to reciprocal_sum(p) up to rounding.
    """
    thr = RangeThresholds.for_size(n)
    if p.parts and p.parts[0] > n:
        raise ValueError(f"part {p.parts[0]} exceeds n={n}")
    small = _kahan_sum(1.0 / part for part in p.parts if part <= thr.k_n)
    medium = _kahan_sum(1.0 / part for part in p.parts if thr.k_n < part <= thr.K_n)
    large = _kahan_sum(1.0 / part for part in p.parts if thr.K_n < part)
    return small, medium, large


def harmonic_number(m: int) -> float:
    """H_m = sum_{k<=m} 1/k."""
    return _kahan_sum(1.0 / k for k in range(m, 0, -1))
