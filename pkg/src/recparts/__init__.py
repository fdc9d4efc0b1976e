"""Reciprocal-parts statistics of random distinct-parts partitions."""

__version__ = "0.1.0"

from .partition import (  # noqa: F401
    Partition,
    RangeThresholds,
    centered_statistic,
    from_parts,
    range_sums,
    reciprocal_sum,
    shape_function,
)
from .sampler import SamplerConfig, q_of_n, sample_batch  # noqa: F401
