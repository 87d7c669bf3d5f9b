"""Exact interval-union sets and their autocorrelation.

The central object is :class:`IntervalSet`: a finite union of disjoint open
intervals on the real line with total length 1, carried either with exact
rational endpoints (the certified path) or with float endpoints (exploratory
only).  The autocorrelation ``A(t) = |set ∩ (set + t)|`` of an exact set is a
piecewise-linear function with rational breakpoints and is computed exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import EmptyInput, FloatModeUnsupported, MeasureNotOne, OverlappingIntervals

Rat = Fraction
Endpoint = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class IntervalSet:
    """Sorted disjoint open intervals; immutable after construction.

    ``mode`` is ``"exact"`` (Fraction endpoints, exact operations available)
    or ``"float"`` (double endpoints, certification disabled).  ``q`` is the
    least common denominator of all endpoints in exact mode, None otherwise.
    """

    intervals: tuple[tuple[Endpoint, Endpoint], ...]
    mode: str

    @property
    def n(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> Endpoint:
        return sum((b - a) for a, b in self.intervals)

    @property
    def diameter(self) -> Endpoint:
        return self.intervals[-1][1] - self.intervals[0][0]

    @property
    def q(self) -> int:
        if self.mode != EXACT:
            raise FloatModeUnsupported("q is defined only for exact-rational sets")
        dens = [x.denominator for a, b in self.intervals for x in (a, b)]
        return lcm(*dens)

    @property
    def endpoints(self) -> tuple[Endpoint, ...]:
        return tuple(x for ab in self.intervals for x in ab)

    def __iter__(self):
        return iter(self.intervals)

    def __repr__(self) -> str:
        parts = " ∪ ".join(f"({a},{b})" for a, b in self.intervals)
        return f"IntervalSet[{self.mode}] {parts}"


def build_interval_set(
    raw: Iterable[tuple[Endpoint, Endpoint]],
    normalize: bool = False,
    mode: str = EXACT,
) -> IntervalSet:
    """Validate, sort and merge endpoint pairs into an :class:`IntervalSet`.

    Intervals sharing a single endpoint are merged (the shared boundary has
    measure zero).  Without ``normalize`` the total length must be exactly 1;
    with it, all endpoints are scaled by 1/measure.
    """
    pairs = list(raw)
    if not pairs:
        raise EmptyInput("at least one interval is required")
    if mode == EXACT:
        pairs = [(Fraction(a), Fraction(b)) for a, b in pairs]
    elif mode == FLOAT:
        pairs = [(float(a), float(b)) for a, b in pairs]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for a, b in pairs:
        if not a < b:
            raise OverlappingIntervals(f"empty or reversed interval ({a}, {b})")
    pairs.sort()
    merged: list[list[Endpoint]] = [list(pairs[0])]
    for a, b in pairs[1:]:
        if a < merged[-1][1]:
            raise OverlappingIntervals(
                f"({a}, {b}) overlaps ({merged[-1][0]}, {merged[-1][1]})"
            )
        if a == merged[-1][1]:
            merged[-1][1] = b
        else:
            merged.append([a, b])
    total = sum(b - a for a, b in merged)
    if normalize:
        if mode == EXACT:
            merged = [[a / total, b / total] for a, b in merged]
        else:
            merged = [[a / total, b / total] for a, b in merged]
    else:
        ok = (total == 1) if mode == EXACT else abs(total - 1.0) < 1e-12
        if not ok:
            raise MeasureNotOne(
                f"total length is {total}, not 1 (pass normalize=True to rescale)"
            )
    return IntervalSet(tuple((a, b) for a, b in merged), mode)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function, identically 0 outside its support.

    Breakpoints are strictly increasing; the first and last values are 0.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        assert len(self.breakpoints) == len(self.values) >= 2
        assert all(
            a < b for a, b in zip(self.breakpoints, self.breakpoints[1:])
        ), "breakpoints must be strictly increasing"
        assert self.values[0] == 0 and self.values[-1] == 0

    def __call__(self, t) -> Fraction:
        """Exact value by linear interpolation; 0 outside the support."""
        t = Fraction(t)
        bps = self.breakpoints
        if t <= bps[0] or t >= bps[-1]:
            # at the edge breakpoints the value is 0 anyway
            if t == bps[0] or t == bps[-1]:
                return Fraction(0)
            return Fraction(0)
        i = bisect.bisect_right(bps, t) - 1
        t0, t1 = bps[i], bps[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]


def _overlap_measure(omega: IntervalSet, t: Fraction) -> Fraction:
    """Exact measure of omega ∩ (omega + t)."""
    total = Fraction(0)
    for a1, b1 in omega.intervals:
        for a2, b2 in omega.intervals:
            lo = max(a1, a2 + t)
            hi = min(b1, b2 + t)
            if hi > lo:
                total += hi - lo
    return total


def autocorrelation(omega: IntervalSet) -> PiecewiseLinear:
    """Exact autocorrelation A(t) = |omega ∩ (omega+t)| as a PiecewiseLinear.

    A is even, A(0) = 1, and supp A ⊆ [−diameter, diameter].  The slope of A
    can only change where an endpoint of the shifted set crosses an endpoint
    of the fixed set, so all breakpoints are pairwise endpoint differences.
    """
    if omega.mode != EXACT:
        raise FloatModeUnsupported("autocorrelation requires exact endpoints")
    eps = omega.endpoints
    candidates = sorted({e1 - e2 for e1 in eps for e2 in eps})
    values = [_overlap_measure(omega, t) for t in candidates]
    # drop interior breakpoints where the two adjacent segments are collinear
    keep = [0]
    for i in range(1, len(candidates) - 1):
        t0, t1, t2 = candidates[keep[-1]], candidates[i], candidates[i + 1]
        v0, v1, v2 = values[keep[-1]], values[i], values[i + 1]
        if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
            keep.append(i)
    keep.append(len(candidates) - 1)
    return PiecewiseLinear(
        tuple(candidates[i] for i in keep), tuple(values[i] for i in keep)
    )
