"""Gap alphabet: min gap δ, constructive max-gap bound Δ, symbols Σ, and the
spectral gap of the autocorrelation.

Δ is derived from the decay majorant M(t) = min(1, C/t²), C = n²/π²: if a
point x were at distance ≥ h from every element of a set Λ that tiles |F|²
at level 1 with min gap δ, ordering Λ by distance from x gives

    1 = Σ_λ |F|²(x−λ) ≤ 2·[M(h) + (1/δ)·∫_h^∞ M] = 2·[C/h² + C/(δh)]

for h ≥ √C.  Whenever the right side is < 1 this is a contradiction, so no
gap can exceed Δ = 2h* with h* the least such h.  See docs/derivations.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .domain import EXACT, IntervalSet, PiecewiseLinear, autocorrelation
from .enclosure import Enclosure
from .errors import FloatModeUnsupported, GapBoundConflict
from .fourier import decay_majorant
from .zeros import ZeroSet, zero_set


@dataclass(frozen=True)
class Alphabet:
    """Σ = Z ∩ (0, Δ]: every admissible successive gap of a spectrum."""

    symbols: tuple[Enclosure, ...]
    delta: Enclosure
    Delta: float

    @property
    def k(self) -> int:
        return len(self.symbols)

    def __repr__(self) -> str:
        vals = ", ".join(f"{float(s):.6g}" for s in self.symbols)
        return f"Alphabet(k={self.k}, δ≈{float(self.delta):.6g}, Δ={self.Delta:.6g}, Σ=[{vals}])"


@dataclass(frozen=True)
class SpectralGapInfo:
    """First positive zero a of the autocorrelation: A > 0 on [0, a)."""

    a: Fraction


def min_gap(zs: ZeroSet) -> Enclosure:
    """Least element of Z ∩ (0, ∞): gaps of any spectrum are ≥ this."""
    return zs.fundamental[0]


def _gap_predicate(C: float, delta_lo: float, h: float) -> float:
    return 2.0 * (C / (h * h) + C / (delta_lo * h))


def max_gap_bound(omega: IntervalSet, zs: ZeroSet | None = None) -> float:
    """Constructive Δ: no spectrum of omega has a successive gap above Δ.

    h* is the least h ≥ √C with 2(C/h² + C/(δh)) < 1, found by bisection to
    relative precision 1e−6 and rounded up (a larger Δ only enlarges Σ, so
    rounding up preserves soundness).  δ enters via a certified lower bound.
    """
    if zs is None:
        zs = zero_set(omega)
    C = decay_majorant(omega).C
    delta_lo = float(min_gap(zs).interval(128)[0])
    lo = math.sqrt(C)
    if _gap_predicate(C, delta_lo, lo) < 1.0:
        hi = lo
    else:
        hi = lo
        while _gap_predicate(C, delta_lo, hi) >= 1.0:
            hi *= 2.0
        for _ in range(200):
            mid = (lo + hi) / 2.0
            if _gap_predicate(C, delta_lo, mid) < 1.0:
                hi = mid
            else:
                lo = mid
            if (hi - lo) <= 1e-6 * hi:
                break
    h_star = hi * (1.0 + 1e-6)
    Delta = 2.0 * h_star
    if Delta < delta_lo:
        raise GapBoundConflict(
            f"max-gap bound {Delta:.6g} fell below the min gap {delta_lo:.6g}: "
            "no admissible gap exists, so this set has no spectrum"
        )
    return Delta


def build_alphabet(omega: IntervalSet, zs: ZeroSet | None = None) -> Alphabet:
    """Σ = all zeros in (0, Δ], sorted ascending; δ is the first symbol."""
    if zs is None:
        zs = zero_set(omega)
    Delta = max_gap_bound(omega, zs)
    symbols = tuple(zs.enumerate_up_to(Delta))
    return Alphabet(symbols=symbols, delta=symbols[0], Delta=Delta)


def spectral_gap(omega: IntervalSet, A: PiecewiseLinear | None = None) -> SpectralGapInfo:
    """First positive zero of the autocorrelation A.

    A ≥ 0 and is piecewise linear, so its first zero is a breakpoint with
    value 0; if A stays positive inside the support the zero sits at the
    support edge, i.e. a = diameter.
    """
    if omega.mode != EXACT:
        raise FloatModeUnsupported("spectral gap needs the exact autocorrelation")
    if A is None:
        A = autocorrelation(omega)
    for t, v in zip(A.breakpoints, A.values):
        if t > 0 and v == 0:
            return SpectralGapInfo(a=t)
    return SpectralGapInfo(a=Fraction(omega.diameter))
