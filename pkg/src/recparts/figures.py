"""Matplotlib renderings of the two reference figures.

Figure paths are chosen by extension (.svg, .png, .pdf); everything is
rendered off-screen via the Agg backend.
"""
from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .asymptotics import limit_shape
from .harmonic import DistributionCurve
from .partition import Partition


def histogram_figure(
    values: np.ndarray,
    curve: DistributionCurve,
    path: str,
    bins: int = 80,
    title: str = "",
) -> None:
    """Histogram of centered statistics with the H density overlaid."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(values, bins=bins, density=True, color="#607fa6", edgecolor="white", lw=0.3)
    ax.plot(curve.grid, curve.values, color="crimson", lw=1.6)
    ax.set_xlabel("centered reciprocal-parts statistic")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def shape_figure(
    partitions: Sequence[Partition], n: int, path: str, title: str = ""
) -> None:
    """Rescaled Young-diagram profiles with the limit shape band
    L(t) +- n^(-1/4)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    t_max = 0.0
    for p in partitions:
        sq = math.sqrt(p.weight if p.weight > 0 else n)
        asc = np.array(p.parts[::-1], dtype=np.float64)
        ts = np.concatenate([[0.0], asc / sq, [asc[-1] / sq * 1.15 if asc.size else 1.0]])
        phi = np.concatenate([[0.0], np.arange(1, asc.size + 1) / sq, [asc.size / sq]])
        ax.step(ts, phi, where="post", color="black", lw=0.7, alpha=0.8)
        t_max = max(t_max, ts[-1])
    grid = np.linspace(0.0, max(t_max, 4.0), 400)
    L = np.array([limit_shape(t) for t in grid])
    band = n ** (-0.25)
    ax.plot(grid, L + band, color="crimson", lw=1.2)
    ax.plot(grid, L - band, color="crimson", lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("rescaled part count")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def curve_figure(curves: Sequence[DistributionCurve], path: str, title: str = "") -> None:
    """Plot density/CDF curves of the harmonic-sum model."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for curve in curves:
        ax.plot(curve.grid, curve.values, lw=1.4, label=curve.kind)
    ax.set_xlabel("x")
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
