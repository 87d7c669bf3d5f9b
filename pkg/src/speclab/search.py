"""Enumeration of candidate spectra as pruned walks over the gap alphabet.

Words grow from the basepoint 0, one alphabet symbol (admissible gap) at a
time; a branch dies as soon as any pairwise difference is certified outside
the zero set.  Maximal words that stalled only at the window boundary get a
periodicity-closure attempt: a repeated symbol window of width w proposes the
period, a density filter keeps only spans summing to the integer j−i, and
every proposed periodic spectrum is fully verified before being reported.

A word whose differences are all *certified* zeros is a finite orthonormal
family, so Bessel's inequality already forces its packing sums ≤ 1
everywhere; the packing probe therefore only runs on branches carrying an
undecided membership, where the certificate does not apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .alphabet import Alphabet, build_alphabet, min_gap
from .domain import EXACT, IntervalSet
from .enclosure import Enclosure, RationalEnclosure, combine
from .errors import ConfigError
from .fourier import power_spectrum
from .verify import (
    CONFIRMED,
    PeriodicSpectrum,
    VerificationReport,
    verify_spectrum,
    _fmt,
)
from .zeros import NO, UNDECIDED, YES, ZeroSet, zero_set

RIGHT_ONLY = "right-only"
TWO_SIDED = "two-sided"

STATUS_CONFIRMED = "confirmed"
STATUS_CANDIDATE = "candidate-window-only"
STATUS_REFUTED_AT_CLOSURE = "refuted-at-closure"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the enumeration; L is the window length in frequency units."""

    L: Fraction
    max_results: int = 64
    packing_grid_step: float = 1.0 / 64
    packing_tol: float = 1e-9
    direction: str = RIGHT_ONLY
    node_budget: int = 10_000_000
    closure_window_growth: int = 8
    packing_prune: bool = True

    def __post_init__(self):
        object.__setattr__(self, "L", Fraction(self.L))
        if not 0 < self.packing_tol <= 1e-3:
            raise ConfigError("packingTol must be in (0, 1e-3]")
        if self.direction not in (RIGHT_ONLY, TWO_SIDED):
            raise ConfigError(f"unknown direction mode {self.direction!r}")
        if self.node_budget < 1:
            raise ConfigError("node budget must be positive")


@dataclass(frozen=True)
class GapWord:
    """Symbol indices into Σ plus the derived points (prefix sums from 0)."""

    symbols: tuple[int, ...]
    gaps: tuple[Enclosure, ...]
    points: tuple[Enclosure, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def gap_strings(self) -> list[str]:
        return [_fmt(g) for g in self.gaps]


@dataclass(frozen=True)
class SearchResult:
    word: GapWord
    status: str
    closure: Optional[PeriodicSpectrum] = None
    report: Optional[VerificationReport] = None
    reject_reason: str = ""


@dataclass(frozen=True)
class SearchOutcome:
    """Results plus budget accounting (partial results survive exhaustion)."""

    results: tuple[SearchResult, ...]
    nodes: int
    budget_exhausted: bool

    @property
    def confirmed(self) -> tuple[SearchResult, ...]:
        return tuple(r for r in self.results if r.status == STATUS_CONFIRMED)


def window_recurrence(symbols, w: int) -> list[tuple[int, int]]:
    """All index pairs i < j with symbols[i:i+w] == symbols[j:j+w], ordered
    smallest period (j − i) first."""
    symbols = tuple(symbols)
    n = len(symbols)
    occurrences: dict[tuple[int, ...], list[int]] = {}
    for i in range(n - w + 1):
        occurrences.setdefault(symbols[i : i + w], []).append(i)
    pairs = [
        (i, j)
        for occ in occurrences.values()
        for a, i in enumerate(occ)
        for j in occ[a + 1 :]
    ]
    pairs.sort(key=lambda ij: (ij[1] - ij[0], ij[0]))
    return pairs


def periodic_closure(
    omega: IntervalSet, points, i: int, j: int
) -> tuple[Optional[PeriodicSpectrum], str]:
    """Close the word into Tℤ + offsets using the recurrence pair (i, j).

    The candidate period is p = λ_j − λ_i over T = j − i gaps; density 1
    forces p to equal the integer T, so the closure is rejected unless the
    (refined) enclosure of p contains T and excludes every other integer.
    Returns (spectrum, "") or (None, reject reason).
    """
    T = j - i
    p = combine([(1, _enc(points[j])), (-1, _enc(points[i]))])
    ex = p.exact()
    if ex is not None:
        if ex != T:
            return None, "non-integer-period"
    else:
        try:
            refined = p.refined(Fraction(1, 8))
        except Exception:
            return None, "ambiguous"
        lo, hi = refined.interval(128)
        if not (lo <= T <= hi and hi - lo < 1):
            return None, "non-integer-period"
        if not (lo > T - 1 and hi < T + 1):
            return None, "ambiguous"
    base = _enc(points[i])
    offsets = tuple(
        combine([(1, _enc(points[i + m])), (-1, base)]) for m in range(T)
    )
    try:
        return PeriodicSpectrum(T, offsets), ""
    except ValueError as e:
        return None, f"ambiguous: {e}"


def _enc(x) -> Enclosure:
    return x if isinstance(x, Enclosure) else RationalEnclosure(Fraction(x))


class _Membership:
    """Pairwise-difference test engine over word points.

    When every alphabet symbol and every fundamental zero reachable from the
    symbol lattice is rational, points are scaled to integers and membership
    is one modular set lookup; otherwise falls back to certified enclosure
    membership.
    """

    def __init__(self, zs: ZeroSet, alphabet: Alphabet):
        self.zs = zs
        self.rational = all(s.exact() is not None for s in alphabet.symbols)
        if self.rational:
            denoms = [s.exact().denominator for s in alphabet.symbols]
            self.D = math.lcm(*denoms) if denoms else 1
            self.modulus = zs.q * self.D
            self.residues = frozenset(
                int(f * self.D) % self.modulus
                for f in zs.rational_values
                if (f * self.D).denominator == 1
            )
            self.symbol_ints = [int(s.exact() * self.D) for s in alphabet.symbols]

    def diff_status_int(self, d: int) -> str:
        return YES if d % self.modulus in self.residues else NO

    def diff_status(self, d) -> str:
        return self.zs.membership(d)


def search_spectra(
    omega: IntervalSet,
    cfg: SearchConfig,
    zs: ZeroSet | None = None,
    alphabet: Alphabet | None = None,
) -> SearchOutcome:
    """Depth-first enumeration; deterministic lexicographic order by symbol
    index.  Emits confirmed periodic spectra (deduplicated), boundary words
    that did not close, and closures that verification refuted."""
    if omega.mode != EXACT:
        raise ConfigError("search requires an exact-rational interval set")
    if zs is None:
        zs = zero_set(omega)
    if alphabet is None:
        alphabet = build_alphabet(omega, zs)
    if float(cfg.L) < 2.0 * alphabet.Delta - 1e-9:
        raise ConfigError(
            f"window length {float(cfg.L):g} is below 2Δ = {2 * alphabet.Delta:g}"
        )
    engine = _Searcher(omega, cfg, zs, alphabet)
    return engine.run()


class _Searcher:
    def __init__(self, omega, cfg: SearchConfig, zs: ZeroSet, alphabet: Alphabet):
        self.omega = omega
        self.cfg = cfg
        self.zs = zs
        self.alphabet = alphabet
        self.membership = _Membership(zs, alphabet)
        self.delta_f = float(alphabet.delta)
        self.w_init = max(1, math.ceil(alphabet.Delta / self.delta_f))
        self.nodes = 0
        self.exhausted = False
        self.stopped = False
        self.results: list[SearchResult] = []
        self.confirmed_keys: set = set()
        self.A = None  # exact autocorrelation, computed once on first closure

    # ---- driving ----

    def run(self) -> SearchOutcome:
        if self.cfg.max_results > 0:
            half = self.cfg.L / 2
            try:
                if self.cfg.direction == RIGHT_ONLY:
                    if self.membership.rational:
                        self._dfs_int([0], [0])
                    else:
                        self._dfs_enc([RationalEnclosure(Fraction(0))], [0], 0)
                else:
                    self._dfs_two_sided(half)
            except _Stop:
                pass
        return SearchOutcome(
            results=tuple(self.results),
            nodes=self.nodes,
            budget_exhausted=self.exhausted,
        )

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            self.exhausted = True
            raise _Stop()

    def _emit(self, result: SearchResult):
        self.results.append(result)
        if len(self.results) >= self.cfg.max_results:
            raise _Stop()

    # ---- integer-scaled fast path (all-rational alphabet) ----

    def _dfs_int(self, points: list[int], sym_path: list[int]):
        self._tick()
        mem = self.membership
        L_int = self.cfg.L * mem.D
        last = points[-1]
        extended = False
        boundary = False
        for idx, s in enumerate(mem.symbol_ints):
            p = last + s
            if p > L_int:
                boundary = True
                continue
            ok = all(mem.diff_status_int(p - e) == YES for e in points)
            if not ok:
                continue
            points.append(p)
            sym_path.append(idx)
            self._dfs_int(points, sym_path)
            points.pop()
            sym_path.pop()
            extended = True
        if not extended and boundary and len(points) > 1:
            # stalled at the window edge: alive iff some beyond-L extension
            # is still difference-admissible
            alive = any(
                all(
                    mem.diff_status_int(last + s - e) == YES for e in points
                )
                for s in mem.symbol_ints
                if last + s > L_int
            )
            if alive:
                self._leaf(
                    [Fraction(p, mem.D) for p in points], list(sym_path)
                )

    # ---- generic enclosure path ----

    def _dfs_enc(self, points: list, sym_path: list[int], undecided: int):
        self._tick()
        symbols = self.alphabet.symbols
        last = points[-1]
        extended = False
        boundary = False
        for idx, s in enumerate(symbols):
            p = combine([(1, _enc(last)), (1, s)])
            if not _le_bound(p, self.cfg.L):
                boundary = True
                continue
            statuses = [self.membership.diff_status(combine([(1, p), (-1, _enc(e))])) for e in points]
            if any(st == NO for st in statuses):
                continue
            new_undecided = undecided + sum(1 for st in statuses if st == UNDECIDED)
            if new_undecided and self.cfg.packing_prune:
                if self._packing_violated(points + [p]):
                    continue
            points.append(p)
            sym_path.append(idx)
            self._dfs_enc(points, sym_path, new_undecided)
            points.pop()
            sym_path.pop()
            extended = True
        if not extended and boundary and len(points) > 1:
            alive = False
            for s in symbols:
                p = combine([(1, _enc(last)), (1, s)])
                if _le_bound(p, self.cfg.L):
                    continue
                if all(
                    self.membership.diff_status(combine([(1, p), (-1, _enc(e))])) != NO
                    for e in points
                ):
                    alive = True
                    break
            if alive:
                self._leaf(list(points), list(sym_path))

    def _packing_violated(self, points) -> bool:
        """Probe Σ|F|²(x−λ) at placed points and gap midpoints; a sampled sum
        above 1 + tol refutes every extension of the word (|F|² ≥ 0)."""
        pts = [float(p) for p in points]
        probes = list(pts)
        probes.extend((a + b) / 2 for a, b in zip(pts, pts[1:]))
        for x in probes:
            total = sum(power_spectrum(self.omega, x - lam) for lam in pts)
            if total > 1.0 + self.cfg.packing_tol:
                return True
        return False

    # ---- two-sided mode ----

    def _dfs_two_sided(self, half: Fraction):
        if self.membership.rational:
            mem = self.membership
            H = half * mem.D

            def grow_right(points: list[int], sym_path: list[int]):
                self._tick()
                last = points[-1]
                extended = False
                for idx, s in enumerate(mem.symbol_ints):
                    p = last + s
                    if p > H:
                        continue
                    if all(mem.diff_status_int(p - e) == YES for e in points):
                        points.append(p)
                        sym_path.append(idx)
                        grow_right(points, sym_path)
                        points.pop()
                        sym_path.pop()
                        extended = True
                if not extended:
                    grow_left(points, [], sym_path)

            def grow_left(right_pts: list[int], left_pts: list[int], right_syms: list[int]):
                self._tick()
                first = left_pts[-1] if left_pts else 0
                extended = False
                for idx, s in enumerate(mem.symbol_ints):
                    p = first - s
                    if p < -H:
                        continue
                    ok = all(mem.diff_status_int(e - p) == YES for e in right_pts) and all(
                        mem.diff_status_int(e - p) == YES for e in left_pts
                    )
                    if not ok:
                        continue
                    if self.cfg.packing_prune and self._completeness_violated(
                        right_pts, left_pts + [p], float(half)
                    ):
                        continue
                    left_pts.append(p)
                    grow_left(right_pts, left_pts, right_syms)
                    left_pts.pop()
                    extended = True
                if not extended:
                    all_pts = sorted(left_pts + right_pts)
                    fracs = [Fraction(p, mem.D) for p in all_pts]
                    syms = self._symbols_from_points(fracs)
                    if syms is not None and len(fracs) > 1:
                        self._leaf(fracs, syms)

            grow_right([0], [0])
        else:
            # irrational alphabets fall back to one-sided growth over [0, L/2]
            self._dfs_enc([RationalEnclosure(Fraction(0))], [0], 0)

    def _symbols_from_points(self, fracs) -> Optional[list[int]]:
        lookup = {s.exact(): i for i, s in enumerate(self.alphabet.symbols)}
        out = [0]
        for a, b in zip(fracs, fracs[1:]):
            idx = lookup.get(b - a)
            if idx is None:
                return None
            out.append(idx)
        return out

    def _completeness_violated(self, right_pts, left_pts, half: float) -> bool:
        """Interior probes where both window edges are ≥ R away must reach
        1 − band; a certified shortfall refutes every extension (sound only
        in two-sided mode, where all mass inside the window is placed)."""
        from .fourier import decay_majorant, tail_point_bound

        C = decay_majorant(self.omega).C
        mem = self.membership
        pts = sorted(Fraction(p, mem.D) for p in left_pts + right_pts)
        fpts = [float(p) for p in pts]
        leftmost = fpts[0]
        probes = [(a + b) / 2 for a, b in zip(fpts, fpts[1:])]
        for x in probes:
            R = min(x - leftmost, half - x)
            if R < 2.0 * math.sqrt(C) or R <= 0:
                continue
            band = tail_point_bound(self.omega, self.delta_f, R)
            total = sum(power_spectrum(self.omega, x - lam) for lam in fpts)
            if total + band < 1.0 - self.cfg.packing_tol:
                return True
        return False

    # ---- leaves and closure ----

    def _leaf(self, points, sym_path: list[int]):
        word = GapWord(
            symbols=tuple(sym_path[1:]),
            gaps=tuple(self.alphabet.symbols[i] for i in sym_path[1:]),
            points=tuple(_enc(p) for p in points),
        )
        n = len(word.symbols)
        w_cap = min(n, self.w_init + self.cfg.closure_window_growth)
        reason = ""
        for w in range(self.w_init, w_cap + 1):
            if n < w + 1:
                break
            for i, j in window_recurrence(word.symbols, w):
                spect, why = periodic_closure(self.omega, points, i, j)
                if spect is None:
                    reason = why
                    continue
                report = self._verify(spect)
                if report.overall == CONFIRMED:
                    key = (spect.T, tuple(_fmt(o) for o in spect.offsets))
                    if key in self.confirmed_keys:
                        return
                    self.confirmed_keys.add(key)
                    self._emit(
                        SearchResult(word, STATUS_CONFIRMED, spect, report)
                    )
                else:
                    self._emit(
                        SearchResult(
                            word, STATUS_REFUTED_AT_CLOSURE, spect, report
                        )
                    )
                return
        self._emit(SearchResult(word, STATUS_CANDIDATE, reject_reason=reason))

    def _verify(self, spect: PeriodicSpectrum) -> VerificationReport:
        if self.A is None:
            from .domain import autocorrelation

            self.A = autocorrelation(self.omega)
        return verify_spectrum(
            self.omega,
            spect,
            zs=self.zs,
            A=self.A,
            packing_grid_step=self.cfg.packing_grid_step,
            packing_tol=self.cfg.packing_tol,
        )


class _Stop(Exception):
    pass


def _le_bound(p: Enclosure, L: Fraction) -> bool:
    ex = p.exact()
    if ex is not None:
        return ex <= L
    lo, hi = p.interval(128)
    Lf = float(L)
    if hi <= Lf:
        return True
    if lo > Lf:
        return False
    # straddling the boundary: refine once, then err on the inclusive side
    refined = p.refined(Fraction(1, 10**12))
    lo, hi = refined.interval(256)
    return float(lo) <= Lf
