"""Interval sets and exact autocorrelation."""

import random
from fractions import Fraction as F

import pytest

from speclab.domain import (
    EXACT,
    FLOAT,
    autocorrelation,
    build_interval_set,
)
from speclab.errors import (
    EmptyInput,
    FloatModeUnsupported,
    MeasureNotOne,
    OverlappingIntervals,
)


def overlap_oracle(intervals, t):
    """Independent overlap measure: |Ω ∩ (Ω+t)| by direct intersection."""
    total = F(0)
    for a1, b1 in intervals:
        for a2, b2 in intervals:
            lo = max(a1, a2 + t)
            hi = min(b1, b2 + t)
            if hi > lo:
                total += hi - lo
    return total


def random_interval_set(rng, max_n=4, denom=12):
    """Random disjoint rational union, normalized to measure 1."""
    n = rng.randint(1, max_n)
    cursor = F(rng.randint(-8, 8), denom)
    pairs = []
    for _ in range(n):
        width = F(rng.randint(1, 10), denom)
        pairs.append((cursor, cursor + width))
        cursor += width + F(rng.randint(1, 8), denom)
    return build_interval_set(pairs, normalize=True)


class TestBuild:
    def test_unit_interval(self):
        om = build_interval_set([(F(-1, 2), F(1, 2))])
        assert om.measure == 1 and om.n == 1 and om.diameter == 1 and om.q == 2

    def test_two_intervals(self):
        om = build_interval_set([(0, F(1, 2)), (1, F(3, 2))])
        assert om.measure == 1 and om.n == 2
        assert om.diameter == F(3, 2) and om.q == 2

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingIntervals):
            build_interval_set([(0, F(1, 2)), (F(1, 4), 1)])

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            build_interval_set([])

    def test_measure_must_be_one_without_normalize(self):
        with pytest.raises(MeasureNotOne):
            build_interval_set([(0, F(1, 2))])

    def test_normalize_rescales(self):
        om = build_interval_set([(0, F(1, 2))], normalize=True)
        assert om.measure == 1 and om.intervals == ((F(0), F(1)),)

    def test_normalize_idempotent_on_measure_one(self):
        pairs = [(0, F(1, 2)), (1, F(3, 2))]
        om = build_interval_set(pairs, normalize=True)
        assert om.intervals == build_interval_set(pairs).intervals

    def test_shared_endpoint_merges(self):
        om = build_interval_set([(0, F(1, 2)), (F(1, 2), 1)])
        assert om.n == 1 and om.intervals == ((F(0), F(1)),)

    def test_unsorted_input_sorted(self):
        om = build_interval_set([(1, F(3, 2)), (0, F(1, 2))])
        assert om.intervals[0][0] == 0

    def test_float_mode(self):
        om = build_interval_set([(0.0, 0.5), (1.0, 1.5)], mode=FLOAT)
        assert om.mode == FLOAT and om.n == 2
        with pytest.raises(FloatModeUnsupported):
            om.q
        with pytest.raises(FloatModeUnsupported):
            autocorrelation(om)


class TestAutocorrelation:
    def test_unit_triangle(self):
        om = build_interval_set([(F(-1, 2), F(1, 2))])
        A = autocorrelation(om)
        assert A(0) == 1
        assert A(F(1, 2)) == F(1, 2)
        assert A(F(1, 4)) == F(3, 4)  # max(0, 1 - |t|)

    def test_value_one_at_origin(self):
        for pairs in [[(0, 1)], [(0, F(1, 2)), (1, F(3, 2))]]:
            assert autocorrelation(build_interval_set(pairs))(0) == 1

    def test_two_interval_values(self):
        om = build_interval_set([(0, F(1, 2)), (1, F(3, 2))])
        A = autocorrelation(om)
        assert A(F(1, 2)) == 0
        assert A(1) == F(1, 2)
        assert A(F(3, 2)) == 0

    def test_matches_overlap_oracle_exactly(self):
        rng = random.Random(20240801)
        for _ in range(20):
            om = random_interval_set(rng)
            A = autocorrelation(om)
            d = om.diameter
            for _ in range(50):
                t = F(rng.randint(-int(2 * d * 24), int(2 * d * 24)), 24)
                assert A(t) == overlap_oracle(om.intervals, t)

    def test_symmetry_bounds_support(self):
        rng = random.Random(7)
        for _ in range(10):
            om = random_interval_set(rng)
            A = autocorrelation(om)
            d = om.diameter
            for _ in range(25):
                t = F(rng.randint(0, int(2 * d * 24)), 24)
                v = A(t)
                assert v == A(-t)
                assert 0 <= v <= 1
                if t >= d:
                    assert v == 0


class TestPiecewiseLinear:
    def test_interpolation(self):
        A = autocorrelation(build_interval_set([(0, 1)]))
        assert A(F(1, 4)) == F(3, 4)

    def test_zero_outside_support(self):
        A = autocorrelation(build_interval_set([(0, 1)]))
        assert A(5) == 0 and A(-5) == 0 and A(1) == 0

    def test_symmetry_left_of_origin(self):
        A = autocorrelation(build_interval_set([(F(-1, 2), F(1, 2))]))
        assert A(F(-1, 2)) == F(1, 2)

    def test_edges_are_zero(self):
        A = autocorrelation(build_interval_set([(0, F(1, 2)), (1, F(3, 2))]))
        assert A.values[0] == 0 and A.values[-1] == 0
        assert A.breakpoints[0] == -F(3, 2) and A.breakpoints[-1] == F(3, 2)
