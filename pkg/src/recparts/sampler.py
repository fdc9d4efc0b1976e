"""Boltzmann sampling of distinct-parts partitions.

Free mode includes each part size k independently with probability
q^k/(1+q^k) at q = exp(-pi/sqrt(12 n)); exact mode rejects until the
realized weight equals n, which conditions the free law back to the
uniform measure on distinct-parts partitions of n.

Reproducibility contract: every draw index i under seed s uses its own
PCG64 generator keyed by the SeedSequence entropy (s, i).  Batch results
therefore do not depend on how draws are split across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from .partition import Partition


class BudgetExhaustedError(RuntimeError):
    """Exact-mode rejection ran out of attempts."""


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    mode: str = "free"  # "free" | "exact"
    truncation_tail: float = 1e-12
    rejection_budget: int = 10**7
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode not in ("free", "exact"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (0.0 < self.truncation_tail < 1.0):
            raise ValueError("truncation_tail must lie in (0, 1)")
        if self.rejection_budget < 1:
            raise ValueError("rejection_budget must be >= 1")


@dataclass
class SampleBatch:
    partitions: List[Partition]
    config: SamplerConfig
    attempts_used: int = 0


def q_of_n(n: int) -> float:
    """The Boltzmann parameter exp(-pi/sqrt(12 n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.exp(-math.pi / math.sqrt(12.0 * n))


def truncation_cutoff(q: float, tail: float) -> int:
    """Smallest K with sum_{k>K} q^k/(1+q^k) <= tail.

    Uses the geometric bound q^(K+1)/(1-q) on the omitted inclusion mass.
    """
    if not (0.0 < q < 1.0):
        raise ValueError("q must lie in (0, 1)")
    K = max(0, math.ceil(math.log(tail * (1.0 - q)) / math.log(q)) - 1)
    while q ** (K + 1) / (1.0 - q) > tail:
        K += 1
    return K


def inclusion_probabilities(cfg: SamplerConfig) -> np.ndarray:
    """Vector of q^k/(1+q^k) for k = 1..cutoff.

    In exact mode the cutoff is additionally clamped to n: any draw
    containing a part > n is rejected anyway, so skipping those parts
    leaves the conditioned law untouched and only lowers the rejection
    rate.
    """
    q = q_of_n(cfg.n)
    kmax = truncation_cutoff(q, cfg.truncation_tail)
    if cfg.mode == "exact":
        kmax = min(kmax, cfg.n)
    k = np.arange(1, kmax + 1, dtype=np.float64)
    qk = q**k
    return qk / (1.0 + qk)


def _rng_for_draw(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, index))))


def _free_from_rng(probs: np.ndarray, rng: np.random.Generator) -> Partition:
    included = np.nonzero(rng.random(probs.size) < probs)[0] + 1
    parts = tuple(int(v) for v in included[::-1])
    return Partition(parts=parts, weight=int(included.sum()))


def sample_free(cfg: SamplerConfig, rng: np.random.Generator) -> Partition:
    """One free Boltzmann draw; part sizes included independently."""
    return _free_from_rng(inclusion_probabilities(cfg), rng)


# attempts vectorized per block to keep the rejection loop off the Python
# fast path; block size is part of the determinism contract
_EXACT_BLOCK = 64


def _exact_from_rng(
    probs: np.ndarray, n: int, budget: int, rng: np.random.Generator
) -> Tuple[Partition, int]:
    k = np.arange(1, probs.size + 1)
    attempts = 0
    while attempts < budget:
        block = min(_EXACT_BLOCK, budget - attempts)
        hits = rng.random((block, probs.size)) < probs
        weights = hits @ k
        match = np.nonzero(weights == n)[0]
        if match.size:
            attempts += int(match[0]) + 1
            row = hits[match[0]]
            included = k[row]
            parts = tuple(int(v) for v in included[::-1])
            return Partition(parts=parts, weight=n), attempts
        attempts += block
    raise BudgetExhaustedError(
        f"no weight-{n} draw within {budget} attempts"
    )


def sample_exact(cfg: SamplerConfig, rng: np.random.Generator) -> Partition:
    """Rejection-sample a uniform distinct-parts partition of exactly n."""
    probs = inclusion_probabilities(replace(cfg, mode="exact"))
    p, _ = _exact_from_rng(probs, cfg.n, cfg.rejection_budget, rng)
    return p


def _batch_slice(args) -> Tuple[List[Partition], int]:
    cfg, lo, hi = args
    probs = inclusion_probabilities(cfg)
    out: List[Partition] = []
    attempts = 0
    for i in range(lo, hi):
        rng = _rng_for_draw(cfg.seed, i)
        if cfg.mode == "free":
            out.append(_free_from_rng(probs, rng))
        else:
            p, a = _exact_from_rng(probs, cfg.n, cfg.rejection_budget, rng)
            out.append(p)
            attempts += a
    return out, attempts


def sample_batch(cfg: SamplerConfig, count: int, workers: int = 1) -> SampleBatch:
    """Draw `count` partitions; result is identical for any worker count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if workers <= 1 or count < 4 * workers:
        parts, attempts = _batch_slice((cfg, 0, count))
        return SampleBatch(partitions=parts, config=cfg, attempts_used=attempts)
    bounds = np.linspace(0, count, workers + 1, dtype=int)
    jobs = [(cfg, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_batch_slice, jobs))
    parts = [p for chunk, _ in results for p in chunk]
    attempts = sum(a for _, a in results)
    return SampleBatch(partitions=parts, config=cfg, attempts_used=attempts)


def expected_weight(q: float) -> float:
    """Mean realized weight sum_k k q^k/(1+q^k) of a free draw."""
    if not (0.0 < q < 1.0):
        raise ValueError("q must lie in (0, 1)")
    total = 0.0
    k = 1
    while True:
        qk = q**k
        term = k * qk / (1.0 + qk)
        total += term
        if term < 1e-16 * max(total, 1e-300):
            return total
        k += 1


def weight_variance(q: float) -> float:
    """Variance sum_k k^2 q^k/(1+q^k)^2 of the free-draw weight."""
    if not (0.0 < q < 1.0):
        raise ValueError("q must lie in (0, 1)")
    total = 0.0
    k = 1
    while True:
        qk = q**k
        term = k * k * qk / (1.0 + qk) ** 2
        total += term
        if term < 1e-16 * max(total, 1e-300):
            return total
        k += 1
