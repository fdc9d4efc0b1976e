"""The random harmonic sum H = sum_k eps_k/k with fair random signs.

Provides Monte Carlo draws, the characteristic function prod cos(t/k),
and density/CDF curves by Fourier inversion.  The first `cf_terms` signs
are kept exactly; the truncated tail (variance pi^2/6 - sum_{k<=K} 1/k^2)
is absorbed as a Gaussian factor in the inversion integrand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

PI_SQ_OVER_6 = math.pi * math.pi / 6.0

# fixed Monte Carlo chunk size; part of the determinism contract
_MC_CHUNK = 8192


def variance_partial(K: int) -> float:
    """sum_{k<=K} 1/k^2."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if K == 0:
        return 0.0
    k = np.arange(1, K + 1, dtype=np.float64)
    return float(np.sum(1.0 / (k * k)[::-1]))


@dataclass(frozen=True)
class HModelConfig:
    cf_terms: int = 200
    integration_limit: float = 60.0
    grid_step: float = 0.005
    grid_halfwidth: float = 6.0
    # override for the Gaussian tail correction; None means the exact
    # remainder pi^2/6 - sum_{k<=cf_terms} 1/k^2
    tail_variance_override: float | None = None

    def __post_init__(self) -> None:
        if self.cf_terms < 1:
            raise ValueError("cf_terms must be >= 1")
        if self.integration_limit <= 0 or self.grid_step <= 0:
            raise ValueError("integration_limit and grid_step must be positive")

    @property
    def tail_variance(self) -> float:
        if self.tail_variance_override is not None:
            return self.tail_variance_override
        return max(0.0, PI_SQ_OVER_6 - variance_partial(self.cf_terms))


@dataclass
class DistributionCurve:
    """Uniform-grid tabulation of a density or CDF."""

    grid: np.ndarray
    values: np.ndarray
    kind: str  # "density" | "cdf"

    def __call__(self, x) -> np.ndarray:
        lo, hi = (0.0, 0.0) if self.kind == "density" else (0.0, 1.0)
        return np.interp(x, self.grid, self.values, left=lo, right=hi)


def sample_H(K: int, rng: np.random.Generator) -> float:
    """One draw of the K-term sign sum sum_{k<=K} eps_k/k."""
    if K < 1:
        raise ValueError("K must be >= 1")
    signs = 2.0 * rng.integers(0, 2, size=K) - 1.0
    return float(signs @ (1.0 / np.arange(1, K + 1)))


def sample_H_batch(K: int, count: int, seed: int) -> np.ndarray:
    """`count` draws of the K-term sign sum.

    Chunk c of size _MC_CHUNK uses generator entropy (seed, c), so the
    result is independent of any outer parallelization.
    """
    invk = 1.0 / np.arange(1, K + 1, dtype=np.float64)
    out = np.empty(count)
    for c, lo in enumerate(range(0, count, _MC_CHUNK)):
        hi = min(lo + _MC_CHUNK, count)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, c))))
        signs = rng.integers(0, 2, size=(hi - lo, K), dtype=np.int8)
        out[lo:hi] = (2.0 * signs - 1.0) @ invk
    return out


def char_fn(t, K: int):
    """prod_{k<=K} cos(t/k), vectorized over t."""
    if K < 1:
        raise ValueError("K must be >= 1")
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.ones_like(ts)
    for k in range(1, K + 1):
        out *= np.cos(ts / k)
    return out if np.ndim(t) else float(out[0])


def _inversion_weights(cfg: HModelConfig, intervals: int) -> Tuple[np.ndarray, np.ndarray]:
    """Simpson nodes on [0, T] and quadrature weights times the damped
    characteristic function."""
    t = np.linspace(0.0, cfg.integration_limit, intervals + 1)
    w = char_fn(t, cfg.cf_terms) * np.exp(-0.5 * cfg.tail_variance * t * t)
    simp = np.ones(intervals + 1)
    simp[1:-1:2] = 4.0
    simp[2:-1:2] = 2.0
    simp *= cfg.integration_limit / intervals / 3.0
    return t, w * simp


def _grid(cfg: HModelConfig) -> np.ndarray:
    half = int(round(cfg.grid_halfwidth / cfg.grid_step))
    return np.arange(-half, half + 1) * cfg.grid_step


def _invert(cfg: HModelConfig, kind: str) -> DistributionCurve:
    xs = _grid(cfg)
    prev = None
    intervals = 1024
    while intervals <= 1 << 20:
        t, wt = _inversion_weights(cfg, intervals)
        vals = np.empty_like(xs)
        for lo in range(0, xs.size, 256):
            xb = xs[lo : lo + 256, None]
            if kind == "density":
                vals[lo : lo + 256] = (np.cos(xb * t) @ wt) / math.pi
            else:
                kern = np.empty((xb.size, t.size))
                kern[:, 0] = xb[:, 0]  # sin(xt)/t -> x as t -> 0
                kern[:, 1:] = np.sin(xb * t[1:]) / t[1:]
                vals[lo : lo + 256] = 0.5 + (kern @ wt) / math.pi
        if prev is not None and np.max(np.abs(vals - prev)) < 1e-8:
            return DistributionCurve(grid=xs, values=vals, kind=kind)
        prev = vals
        intervals *= 2
    raise RuntimeError("Simpson refinement did not converge")


def density(cfg: HModelConfig = HModelConfig()) -> DistributionCurve:
    """Density of H on the config grid by cosine-transform inversion."""
    return _invert(cfg, "density")


def cdf(cfg: HModelConfig = HModelConfig()) -> DistributionCurve:
    """CDF of H on the config grid; F(0) = 1/2 by construction."""
    return _invert(cfg, "cdf")
