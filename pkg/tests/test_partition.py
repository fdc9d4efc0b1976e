import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recparts.partition import (
    RangeThresholds,
    centered_statistic,
    from_parts,
    harmonic_number,
    integer_root,
    range_sums,
    reciprocal_sum,
    reciprocal_sum_exact,
    shape_function,
)

distinct_parts = st.sets(st.integers(1, 200), max_size=25).map(
    lambda s: sorted(s, reverse=True)
)


class TestFromParts:
    def test_empty(self):
        assert from_parts([]).weight == 0

    def test_direct_sum(self):
        p = from_parts([3, 2, 1])
        assert p.weight == 6
        assert p.parts == (3, 2, 1)

    def test_repeated_part_rejected(self):
        with pytest.raises(ValueError, match="repeated part"):
            from_parts([2, 2, 1])

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError, match="non-positive"):
            from_parts([3, 0])

    def test_out_of_order_rejected(self):
        with pytest.raises(ValueError, match="out of order"):
            from_parts([1, 2])

    @given(distinct_parts)
    def test_multiplicity_weight_identity(self, parts):
        p = from_parts(parts)
        assert sum(k * p.multiplicity(k) for k in range(1, 201)) == p.weight


class TestReciprocalSum:
    def test_empty(self):
        assert reciprocal_sum(from_parts([])) == 0.0

    def test_unit(self):
        assert reciprocal_sum(from_parts([1])) == 1.0

    def test_direct(self):
        assert reciprocal_sum(from_parts([3, 2, 1])) == pytest.approx(11 / 6, abs=1e-15)

    @given(distinct_parts)
    def test_matches_exact_rational(self, parts):
        p = from_parts(parts)
        assert reciprocal_sum(p) == pytest.approx(float(reciprocal_sum_exact(p)), abs=1e-12)

    @given(distinct_parts.filter(lambda ps: ps))
    def test_bounds(self, parts):
        p = from_parts(parts)
        s = reciprocal_sum(p)
        ell = len(p)
        assert s >= ell / p.parts[0] - 1e-12
        assert s <= harmonic_number(ell) + 1e-12


class TestCenteredStatistic:
    def test_two_one(self):
        p = from_parts([2, 1])
        assert centered_statistic(p, 3) == pytest.approx(3 - math.log(3), abs=1e-12)

    def test_single(self):
        assert centered_statistic(from_parts([1]), 1) == pytest.approx(
            2 - math.log(math.sqrt(3)), abs=1e-12
        )

    def test_empty(self):
        assert centered_statistic(from_parts([]), 1) == pytest.approx(
            -math.log(math.sqrt(3)), abs=1e-12
        )

    def test_zero_n_rejected(self):
        with pytest.raises(ValueError):
            centered_statistic(from_parts([1]), 0)


class TestShapeFunction:
    def test_examples(self):
        p = from_parts([5, 3, 1])
        assert shape_function(p, 0) == 0
        assert shape_function(p, 3) == 2
        assert shape_function(p, 100) == 3

    @given(distinct_parts, st.floats(0, 250))
    def test_nondecreasing_and_saturates(self, parts, t):
        p = from_parts(parts)
        assert shape_function(p, t) <= shape_function(p, t + 1)
        if parts:
            assert shape_function(p, parts[0]) == len(parts)


class TestIntegerRoot:
    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_exact_floors(self, r):
        for n in list(range(1, 2000)) + [10**5, 10**6, 32**5, 32**5 - 1]:
            k = integer_root(n, r)
            assert k**r <= n < (k + 1) ** r

    def test_thresholds(self):
        thr = RangeThresholds.for_size(100)
        assert (thr.k_n, thr.K_n) == (2, 4)
        thr = RangeThresholds.for_size(10**5)
        assert (thr.k_n, thr.K_n) == (10, 46)


class TestRangeSums:
    def test_example_n100(self):
        p = from_parts([90, 6, 3, 1])
        small, medium, large = range_sums(p, 100)
        assert small == pytest.approx(1.0, abs=1e-15)
        assert medium == pytest.approx(1 / 3, abs=1e-15)
        assert large == pytest.approx(1 / 6 + 1 / 90, abs=1e-15)

    def test_empty(self):
        assert range_sums(from_parts([]), 10) == (0.0, 0.0, 0.0)

    def test_collapsed_ranges(self):
        assert range_sums(from_parts([1]), 1) == (1.0, 0.0, 0.0)

    def test_part_exceeding_n_rejected(self):
        with pytest.raises(ValueError, match="exceeds"):
            range_sums(from_parts([101]), 100)

    @given(distinct_parts, st.integers(1, 4))
    @settings(max_examples=60)
    def test_components_sum_to_total(self, parts, scale):
        p = from_parts(parts)
        n = max(200 * scale, 1)
        total = reciprocal_sum(p)
        assert sum(range_sums(p, n)) == pytest.approx(total, rel=1e-12, abs=1e-15)
