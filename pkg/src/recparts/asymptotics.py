"""Closed-form limit objects: the limit shape, the Mellin-transform
constant and the range centerings.

The scaling constant is A = sqrt(12)/pi.  The limit shape is
L(t) = A log(2/(1+exp(-t/A))); the centering constant for the large-part
range is f(0) = log(pi/2) - gamma, recovered here both by quadrature of
the defining integrals and by the closed form -1/s + 2 Gamma(s) eta(s).
"""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.integrate import quad

from .oracle import count_d
from .partition import RangeThresholds
from .sampler import q_of_n

# fixed literals, independent of any library's internals
GAMMA = 0.57721566490153286060651209
PI = 3.14159265358979323846264338

A = math.sqrt(12.0) / PI
L_INFINITY = A * math.log(2.0)


def limit_shape(t: float) -> float:
    """L(t) = A log(2/(1+exp(-t/A))), the rescaled Young-diagram profile."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return A * (math.log(2.0) - np.logaddexp(0.0, -t / A))


def limit_shape_derivative(t: float) -> float:
    """L'(t) = exp(-t/A)/(1+exp(-t/A)), decreasing from 1/2 to 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    e = math.exp(-t / A)
    return e / (1.0 + e)


def eta(s: float, tol: float = 1e-12) -> float:
    """Dirichlet eta sum_{k>=1} (-1)^(k-1) k^(-s), accelerated.

    Cohen-Rodriguez Villegas-Zagier acceleration of the alternating
    series; converges geometrically for all s > 0.
    """
    if s <= 0:
        raise ValueError("eta series evaluated only for s > 0")
    n = 24
    est = prev = math.inf
    while abs(est - prev) > tol or math.isinf(est):
        prev = est
        d = (3.0 + math.sqrt(8.0)) ** n
        d = (d + 1.0 / d) / 2.0
        b, c, total = -1.0, -d, 0.0
        for k in range(n):
            c = b - c
            total += c * (k + 1) ** (-s)
            b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
        est = total / d
        n *= 2
    return est


def f_closed(s: float) -> float:
    """-1/s + 2 Gamma(s) eta(s), valid for s > 0."""
    if s <= 0:
        raise ValueError("closed form valid only for s > 0")
    return -1.0 / s + 2.0 * math.gamma(s) * eta(s)


def _integrand_small(t: float, s: float) -> float:
    # (2 e^-t/(1+e^-t) - 1) t^(s-1); the parenthesis is -t/2 + O(t^3)
    e = math.exp(-t)
    core = 2.0 * e / (1.0 + e) - 1.0
    return core * t ** (s - 1.0)


def _integrand_large(t: float, s: float) -> float:
    e = math.exp(-t)
    return 2.0 * e / (1.0 + e) * t ** (s - 1.0)


def f_quadrature(s: float) -> float:
    """The defining two-piece integral for f(s), s > -1, by adaptive
    quadrature.  At s = 0 the first integrand is continuous (limit -1/2)."""
    if s <= -1:
        raise ValueError("f(s) defined for s > -1")
    lo, err_lo = quad(
        _integrand_small, 0.0, 1.0, args=(s,), epsabs=1e-13, epsrel=1e-12, limit=200
    )
    # integrand < 1e-18 beyond t ~ 50 for the s of interest
    hi, err_hi = quad(
        _integrand_large, 1.0, 60.0, args=(s,), epsabs=1e-13, epsrel=1e-12, limit=200
    )
    if err_lo + err_hi > 1e-8:
        raise RuntimeError(f"quadrature error {err_lo + err_hi:.2e} too large")
    return lo + hi


MELLIN_CONSTANT = math.log(PI / 2.0) - GAMMA  # f(0)


def range_means(n: int) -> Tuple[float, float, float, float]:
    """Centerings (small, medium, large) of the three reciprocal ranges
    and their total log(sqrt(3n)).

    Signs follow the decomposition in which the three centerings
    telescope exactly: (log k_n + gamma) + log(K_n/k_n)
    + (log(sqrt(3n)/K_n) - gamma) = log(sqrt(3n)).
    """
    if n < 32:
        raise ValueError("range centerings need n >= 32 (so k_n >= 2)")
    thr = RangeThresholds.for_size(n)
    total = 0.5 * math.log(3.0 * n)
    small = math.log(thr.k_n) + GAMMA
    medium = math.log(thr.K_n / thr.k_n)
    large = total - math.log(thr.K_n) - GAMMA
    return small, medium, large, total


def bernoulli_range_stats(n: int) -> Tuple[float, float]:
    """Mean and variance of sum 2 B_k / k over the medium range
    k_n < k <= K_n, with B_k Bernoulli(q^k/(1+q^k))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    thr = RangeThresholds.for_size(n)
    if thr.K_n <= thr.k_n:
        return 0.0, 0.0
    q = q_of_n(n)
    k = np.arange(thr.k_n + 1, thr.K_n + 1, dtype=np.float64)
    p = q**k / (1.0 + q**k)
    mean = float(np.sum(2.0 * p / k))
    var = float(np.sum(4.0 * p * (1.0 - p) / (k * k)))
    return mean, var


def log_d_growth(n: int) -> Tuple[float, float]:
    """(log d(n), 2 sqrt(n)/A): exact log-count vs leading asymptotic."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return float(math.log(count_d(n)) if n else 0.0), 2.0 * math.sqrt(n) / A
