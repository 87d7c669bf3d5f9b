"""speclab: exact analysis and spectrum search for unions of intervals.

Library entry points re-exported here; the CLI lives in speclab.cli.
"""

from .domain import IntervalSet, PiecewiseLinear, autocorrelation, build_interval_set
from .enclosure import (
    AlgebraicAngleEnclosure,
    CombinationEnclosure,
    Enclosure,
    FloatEnclosure,
    RationalEnclosure,
)
from .fourier import (
    DecayMajorant,
    decay_majorant,
    ft_indicator,
    integrate_power_spectrum,
    power_spectrum,
    power_spectrum_grid,
    tail_bound,
    tail_point_bound,
)
from .polynomial import IntPolynomial, cyclotomic, cyclotomic_split
from .zeros import ZeroSet, is_zero, unit_circle_polynomial, unit_circle_roots, zero_set
from .alphabet import Alphabet, SpectralGapInfo, build_alphabet, max_gap_bound, min_gap, spectral_gap
from .verify import (
    PeriodicSpectrum,
    VerificationReport,
    check_completeness_periodic,
    check_orthogonality,
    check_packing_sampled,
    check_tiling_by_omega,
    numeric_tiling_profile,
    verify_spectrum,
)
from .search import (
    GapWord,
    SearchConfig,
    SearchOutcome,
    SearchResult,
    periodic_closure,
    search_spectra,
    window_recurrence,
)
from .shiftspace import (
    SymbolWord,
    determination_witness,
    extract_period,
    minimal_determining_window,
)

__version__ = "0.1.0"

__all__ = [
    "IntervalSet", "PiecewiseLinear", "autocorrelation", "build_interval_set",
    "Enclosure", "RationalEnclosure", "AlgebraicAngleEnclosure", "FloatEnclosure",
    "CombinationEnclosure",
    "DecayMajorant", "decay_majorant", "ft_indicator", "integrate_power_spectrum",
    "power_spectrum", "power_spectrum_grid", "tail_bound", "tail_point_bound",
    "IntPolynomial", "cyclotomic", "cyclotomic_split",
    "ZeroSet", "is_zero", "unit_circle_polynomial", "unit_circle_roots", "zero_set",
    "Alphabet", "SpectralGapInfo", "build_alphabet", "max_gap_bound", "min_gap",
    "spectral_gap",
    "PeriodicSpectrum", "VerificationReport", "check_completeness_periodic",
    "check_orthogonality", "check_packing_sampled", "check_tiling_by_omega",
    "numeric_tiling_profile", "verify_spectrum",
    "GapWord", "SearchConfig", "SearchOutcome", "SearchResult", "periodic_closure",
    "search_spectra", "window_recurrence",
    "SymbolWord", "determination_witness", "extract_period",
    "minimal_determining_window",
]
