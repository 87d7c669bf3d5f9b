"""Deciders for candidate spectra.

Orthogonality: all pairwise differences of the candidate lie in {0} ∪ Z.
Packing: sampled max of Σ_λ |F|²(x−λ) (an orthogonal family cannot exceed 1).
Completeness (periodic candidates only): the finite dual criterion

    A(k/T) · P(k/T) = 0   for all integers 0 < |k| ≤ T·diameter,

with A the exact autocorrelation and P(ξ) = Σ_j e^{2πiξℓ_j}.  For periodic
Λ = Tℤ + {ℓ_j} the transform of δ_Λ is the weighted comb (1/T)·Σ_k
conj(P)(k/T)·δ_{k/T}, so the tiling condition Σ|F|²(x−λ) = 1 transforms to
A·δ̂_Λ = δ_0; the k = 0 weight is automatically 1 (A(0) = 1 and the offset
count is T) and every other k must kill A(k/T)·P(k/T).  Since supp A ⊆
[−diameter, diameter], only finitely many k are in play.  Full derivation in
docs/derivations.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from mpmath import iv, mp

from .domain import EXACT, IntervalSet, PiecewiseLinear, autocorrelation
from .enclosure import Enclosure, RationalEnclosure, combine
from .errors import FloatModeUnsupported, IncommensurableGrid, WindowTooSmall
from .fourier import power_spectrum_grid, tail_point_bound
from .polynomial import IntPolynomial, cyclotomic, divmod_exact
from .zeros import NO, UNDECIDED, ZeroSet, zero_set
from .alphabet import min_gap

DUAL_TOL = 1e-10

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"

CONFIRMED = "spectrum-confirmed"
REFUTED = "refuted"


def _fmt(x) -> str:
    """Exact 'p/q' for rationals; shortest float repr otherwise."""
    if isinstance(x, Enclosure):
        ex = x.exact()
        if ex is not None:
            x = ex
        else:
            return repr(float(x))
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return repr(float(x))


@dataclass(frozen=True)
class PeriodicSpectrum:
    """Λ = Tℤ + {ℓ_1, …, ℓ_T}: integer period plus T offsets in [0, T)."""

    T: int
    offsets: tuple[Enclosure, ...]

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("period must be a positive integer")
        if len(self.offsets) != self.T:
            raise ValueError(
                f"{len(self.offsets)} offsets for period {self.T}: a density-1 "
                "periodic set has exactly T offsets per period"
            )
        vals = [float(o) for o in self.offsets]
        if any(b - a <= 0 for a, b in zip(vals, vals[1:])):
            raise ValueError("offsets must be strictly increasing")
        if vals and (vals[0] < 0 or vals[-1] >= self.T):
            raise ValueError("offsets must lie in [0, T)")

    @classmethod
    def from_rationals(cls, T: int, offsets: Sequence[Union[int, Fraction]]):
        return cls(T, tuple(RationalEnclosure(Fraction(o)) for o in offsets))

    def translated(self, c: Fraction) -> "PeriodicSpectrum":
        """Shift all offsets by c modulo T and re-sort (same spectrum set)."""
        moved = []
        for o in self.offsets:
            ex = o.exact()
            if ex is None:
                raise ValueError("translation helper needs rational offsets")
            moved.append((ex + c) % self.T)
        return self.from_rationals(self.T, sorted(moved))

    def points_in(self, lo: float, hi: float) -> list[Enclosure]:
        """All elements of the set within [lo, hi], sorted."""
        out = []
        k_lo = math.floor(lo / self.T) - 1
        k_hi = math.ceil(hi / self.T) + 1
        for k in range(k_lo, k_hi + 1):
            for o in self.offsets:
                v = combine([(1, o)]) + Fraction(k * self.T)
                fv = float(v)
                if lo - 1e-12 <= fv <= hi + 1e-12:
                    out.append(v)
        out.sort(key=float)
        return out

    def __repr__(self) -> str:
        offs = ", ".join(_fmt(o) for o in self.offsets)
        return f"PeriodicSpectrum(T={self.T}, offsets=[{offs}])"


@dataclass(frozen=True)
class Witness:
    """Self-contained refutation evidence, recheckable in isolation."""

    kind: str  # "difference" | "dual" | "multiplicity"
    detail: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "detail": dict(self.detail)}


@dataclass(frozen=True)
class CheckResult:
    status: str
    witness: Optional[Witness] = None
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness else None,
            "info": dict(self.info),
        }


@dataclass(frozen=True)
class VerificationReport:
    orthogonality: CheckResult
    packing: CheckResult
    completeness: CheckResult
    overall: str
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "orthogonality": self.orthogonality.to_dict(),
            "packing": self.packing.to_dict(),
            "completeness": self.completeness.to_dict(),
            "overall": self.overall,
            "reason": self.reason,
        }


def check_orthogonality(
    omega: IntervalSet, zs: ZeroSet, candidate
) -> CheckResult:
    """Λ − Λ ⊆ {0} ∪ Z, decided via certified membership.

    A finite window tests every pairwise difference.  A periodic candidate
    tests one representative per residue class of ℓ_j − ℓ_i + Tℤ modulo q
    (finitely many: T and q are integers), which covers the full difference
    set by q-periodicity of Z.
    """
    if isinstance(candidate, PeriodicSpectrum):
        pairs = _periodic_difference_reps(candidate, zs.q)
    else:
        pts = list(candidate)
        pairs = []
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = combine([(1, _enc(pts[j])), (-1, _enc(pts[i]))])
                pairs.append((pts[i], pts[j], d))
    undecided = []
    for a, b, d in pairs:
        r = zs.membership(d)
        if r == NO:
            return CheckResult(
                FAIL,
                Witness(
                    "difference",
                    {
                        "lambda": _fmt(a),
                        "mu": _fmt(b),
                        "difference": _fmt(d),
                        "claim": "difference is not a zero of the transform",
                    },
                ),
            )
        if r == UNDECIDED:
            undecided.append(_fmt(d))
    if undecided:
        return CheckResult(INCONCLUSIVE, info={"undecided_differences": undecided})
    return CheckResult(PASS, info={"differences_checked": len(pairs)})


def _enc(x) -> Enclosure:
    return x if isinstance(x, Enclosure) else RationalEnclosure(Fraction(x))


def _periodic_difference_reps(spect: PeriodicSpectrum, q: int):
    T = spect.T
    g = math.gcd(T, q)
    reps = []
    for i, oi in enumerate(spect.offsets):
        for j, oj in enumerate(spect.offsets):
            for k in range(q // g):
                if i == j and k == 0:
                    continue  # the zero difference, always admissible
                d = combine([(1, oj), (-1, oi)]) + Fraction(k * T)
                mu = combine([(1, oj)]) + Fraction(k * T)
                reps.append((oi, mu, d))
    return reps


def check_packing_sampled(
    omega: IntervalSet,
    window: Sequence,
    grid: tuple[float, float, float],
) -> float:
    """Max over the grid of Σ_{λ∈window} |F|²(x−λ); caller compares to 1+tol."""
    lo, hi, step = grid
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    xs = lo + step * np.arange(count)
    total = np.zeros_like(xs)
    for lam in window:
        total += power_spectrum_grid(omega, xs - float(lam))
    return float(total.max()) if len(xs) else 0.0


def _phase_interval(off: Enclosure, k: int, T: int, bits: int):
    """Interval for 2π·k·ℓ/T in mpmath.iv at the given precision."""
    ex = off.exact()
    two_pi = 2 * iv.pi
    if ex is not None:
        r = Fraction(k, T) * ex
        return two_pi * iv.mpf(r.numerator) / r.denominator
    lo, hi = off.interval(bits)
    return two_pi * iv.mpf([str(lo), str(hi)]) * k / T


def _offset_sum_abs(spect: PeriodicSpectrum, k: int, bits: int):
    """Certified interval bounds (lo, hi) for |Σ_j e^{2πi·k·ℓ_j/T}|."""
    old = iv.prec
    iv.prec = bits
    try:
        re = iv.mpf(0)
        im = iv.mpf(0)
        for off in spect.offsets:
            phi = _phase_interval(off, k, spect.T, bits)
            re += iv.cos(phi)
            im += iv.sin(phi)
        mag2 = re * re + im * im
        with mp.workprec(bits):
            lo2 = max(mp.mpf(0), mp.mpf(mag2.a))
            hi2 = mp.mpf(mag2.b)
            return mp.sqrt(lo2), mp.sqrt(hi2)
    finally:
        iv.prec = old


def _offset_sum_exact_zero(spect: PeriodicSpectrum, k: int) -> bool:
    """Exact test Σ_j e^{2πi·k·ℓ_j/T} = 0 for rational offsets.

    The sum is S(ζ_v) for the v-th root of unity with v the common phase
    denominator; it vanishes iff the cyclotomic Φ_v divides S.
    """
    fracs = []
    for off in spect.offsets:
        ex = off.exact()
        if ex is None:
            return False
        fracs.append((Fraction(k, spect.T) * ex) % 1)
    v = math.lcm(*(f.denominator for f in fracs))
    coeffs = [0] * v
    for f in fracs:
        coeffs[int(f * v) % v] += 1
    s = IntPolynomial(coeffs)
    if s.is_zero():
        return True
    res = divmod_exact(s, cyclotomic(v))
    return res is not None and res[1].is_zero()


def check_completeness_periodic(
    omega: IntervalSet,
    spect: PeriodicSpectrum,
    A: PiecewiseLinear | None = None,
    tol: float = DUAL_TOL,
) -> CheckResult:
    """Dual criterion: A(k/T)·P(k/T) = 0 for every 0 < |k| ≤ T·diameter.

    A(k/T) is decided exactly.  When A(k/T) ≠ 0, |P(k/T)| must certify below
    tol: first an exact root-of-unity cancellation test (pass only), then
    interval evaluation at 256 bits with one retry at 1024 bits.  An interval
    still straddling tol is reported inconclusive, never a pass.
    """
    if omega.mode != EXACT:
        raise FloatModeUnsupported("the dual criterion needs exact endpoints")
    if A is None:
        A = autocorrelation(omega)
    T = spect.T
    K = int(math.floor(Fraction(T) * Fraction(omega.diameter)))
    checks = []
    ambiguous = []
    for k in range(1, K + 1):
        a_val = A(Fraction(k, T))
        row = {"k": k, "A": _fmt(a_val)}
        if a_val == 0:
            row["route"] = "autocorrelation-zero"
            checks.append(row)
            continue
        if _offset_sum_exact_zero(spect, k):
            row["route"] = "offset-sum-exact-zero"
            row["absP"] = "0"
            checks.append(row)
            continue
        decided = False
        for bits in (256, 1024):
            lo, hi = _offset_sum_abs(spect, k, bits)
            if hi <= tol:
                row["route"] = f"offset-sum-interval-{bits}"
                row["absP"] = mp.nstr(hi, 8)
                checks.append(row)
                decided = True
                break
            if lo > tol:
                row["route"] = f"offset-sum-interval-{bits}"
                row["absP"] = mp.nstr(lo, 8)
                return CheckResult(
                    FAIL,
                    Witness(
                        "dual",
                        {
                            "k": k,
                            "xi": _fmt(Fraction(k, T)),
                            "A": _fmt(a_val),
                            "absP_lower_bound": float(lo),
                            "claim": "A(k/T) ≠ 0 and |P(k/T)| > tolerance",
                        },
                    ),
                    info={"checks": checks + [row], "k_range": K},
                )
        if not decided:
            ambiguous.append(k)
            row["route"] = "precision-exhausted"
            checks.append(row)
    if ambiguous:
        return CheckResult(
            INCONCLUSIVE, info={"checks": checks, "k_range": K, "ambiguous_k": ambiguous}
        )
    return CheckResult(PASS, info={"checks": checks, "k_range": K})


def check_tiling_by_omega(omega: IntervalSet, T: int) -> CheckResult:
    """Does omega tile the line at level T under translations by (1/T)ℤ?

    Exact combinatorial check: reduce every interval modulo 1/T and verify
    the resulting piece multiset covers [0, 1/T) with constant multiplicity T.
    """
    if omega.mode != EXACT:
        raise IncommensurableGrid("tiling reduction needs exact rational endpoints")
    if T < 1:
        raise ValueError("level must be a positive integer")
    cell = Fraction(1, T)
    pieces: list[tuple[Fraction, Fraction]] = []
    for a, b in omega.intervals:
        m = math.floor(a / cell)
        while Fraction(m) * cell < b:
            lo = max(a, m * cell)
            hi = min(b, (m + 1) * cell)
            if hi > lo:
                pieces.append((lo - m * cell, hi - m * cell))
            m += 1
    cuts = sorted({x for p in pieces for x in p} | {Fraction(0), cell})
    profile = []
    for lo, hi in zip(cuts, cuts[1:]):
        midpt = (lo + hi) / 2
        mult = sum(1 for plo, phi in pieces if plo <= midpt < phi)
        profile.append((lo, hi, mult))
        if mult != T:
            return CheckResult(
                FAIL,
                Witness(
                    "multiplicity",
                    {
                        "point": _fmt(midpt),
                        "multiplicity": mult,
                        "expected": T,
                        "claim": "reduction modulo 1/T is not constant",
                    },
                ),
                info={"cell": _fmt(cell)},
            )
    return CheckResult(PASS, info={"cell": _fmt(cell), "segments": len(profile)})


@dataclass(frozen=True)
class TilingProfile:
    """Sampled partial sums with a rigorous tail band: the true full sum at
    x lies in [sum, sum + band] whenever the window covers [x−R, x+R]."""

    rows: tuple[tuple[float, float, float, float], ...]  # (x, sum, lo, hi)
    band: float
    consistent: bool


def numeric_tiling_profile(
    omega: IntervalSet,
    window: Sequence,
    grid: tuple[float, float, float],
    R: float,
    delta_lo: float | None = None,
    zs: ZeroSet | None = None,
) -> TilingProfile:
    """Empirical tiling profile with a guaranteed band from the decay tail.

    The band assumes every element of the underlying candidate set keeps the
    minimum admissible gap (≥ δ of omega), which any orthogonal set does.
    """
    lo, hi, step = grid
    if step <= 0:
        raise ValueError("grid step must be positive")
    pts = [float(x) for x in window]
    if pts:
        if min(pts) > lo - R or max(pts) < hi + R:
            raise WindowTooSmall(
                f"window [{min(pts)}, {max(pts)}] cannot certify radius {R} "
                f"around grid [{lo}, {hi}]"
            )
    if delta_lo is None:
        zs = zs or zero_set(omega)
        delta_lo = float(min_gap(zs).interval(128)[0])
    band = tail_point_bound(omega, delta_lo, R)
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    xs = lo + step * np.arange(count)
    total = np.zeros_like(xs)
    for lam in pts:
        total += power_spectrum_grid(omega, xs - lam)
    rows = tuple(
        (float(x), float(s), float(s), float(s + band)) for x, s in zip(xs, total)
    )
    consistent = all(r[2] <= 1.0 <= r[3] + 1e-12 for r in rows)
    return TilingProfile(rows=rows, band=float(band), consistent=consistent)


def verify_spectrum(
    omega: IntervalSet,
    candidate,
    zs: ZeroSet | None = None,
    A: PiecewiseLinear | None = None,
    packing_grid_step: float = 1.0 / 64,
    packing_tol: float = 1e-9,
) -> VerificationReport:
    """Run all applicable checks and combine verdicts.

    Periodic candidates can be confirmed (orthogonality + completeness both
    pass).  Finite windows can only be refuted or left inconclusive: the
    tiling condition is a statement about the full infinite system.
    """
    if zs is None:
        zs = zero_set(omega)
    orth = check_orthogonality(omega, zs, candidate)

    if isinstance(candidate, PeriodicSpectrum):
        span = (0.0, float(candidate.T))
        reach = 16.0 * max(1.0, float(candidate.T))
        window = candidate.points_in(span[0] - reach, span[1] + reach)
    else:
        window = list(candidate)
        fv = [float(x) for x in window]
        span = (min(fv, default=0.0), max(fv, default=0.0))
    grid = (span[0], span[1], packing_grid_step) if span[1] > span[0] else (span[0], span[0] + 1.0, packing_grid_step)
    max_sum = check_packing_sampled(omega, window, grid)
    packing = CheckResult(
        PASS if max_sum <= 1.0 + packing_tol else FAIL,
        info={"max_sum": max_sum, "grid": list(grid), "tolerance": packing_tol},
    )

    if isinstance(candidate, PeriodicSpectrum) and omega.mode == EXACT:
        comp = check_completeness_periodic(omega, candidate, A=A)
    else:
        comp = CheckResult(
            NOT_APPLICABLE,
            info={"note": "completeness is only decided for periodic candidates"},
        )

    if orth.status == FAIL:
        overall, reason = REFUTED, "orthogonality failed"
    elif comp.status == FAIL:
        overall, reason = REFUTED, "dual completeness criterion failed"
    elif packing.status == FAIL:
        # cannot happen alongside certified orthogonality (Bessel), but a
        # sampled excess soundly refutes an undecided candidate
        overall, reason = REFUTED, "sampled packing sum exceeded 1"
    elif orth.status == PASS and comp.status == PASS:
        overall, reason = CONFIRMED, ""
    else:
        overall = INCONCLUSIVE
        reason = (
            "completeness not decidable for finite windows"
            if comp.status == NOT_APPLICABLE
            else "membership or precision budget exhausted"
        )
    return VerificationReport(
        orthogonality=orth, packing=packing, completeness=comp,
        overall=overall, reason=reason,
    )
