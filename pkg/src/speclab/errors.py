"""Exception types shared across the package."""


class SpeclabError(Exception):
    """Base class for all package errors."""


class EmptyInput(SpeclabError):
    """No intervals were supplied."""


class OverlappingIntervals(SpeclabError):
    """Two input intervals intersect in positive measure."""


class MeasureNotOne(SpeclabError):
    """Total length differs from 1 and normalization was not requested."""


class FloatModeUnsupported(SpeclabError):
    """Operation requires exact-rational endpoints."""


class NonpositiveRadius(SpeclabError):
    """A radius/cutoff argument must be positive."""


class IllConditioned(SpeclabError):
    """Certification failed at the requested tolerance."""


class RefinementBudgetExceeded(SpeclabError):
    """Enclosure refinement hit its budget before a decision was reached."""


class GapBoundConflict(SpeclabError):
    """The computed max-gap bound fell below the minimum gap.

    This certifies that no spectrum exists: any spectrum would need all
    successive gaps in [delta, Delta], which is empty.
    """


class IncommensurableGrid(SpeclabError):
    """Tiling check requires exact endpoints commensurable with the grid."""


class WindowTooSmall(SpeclabError):
    """The supplied frequency window does not cover the requested radius."""


class PrecisionExhausted(SpeclabError):
    """Interval evaluation stayed ambiguous at the highest retry precision."""


class ParseError(SpeclabError):
    """Malformed input document; message carries field diagnostics."""


class BudgetExceeded(SpeclabError):
    """Search node budget ran out (partial results are still returned)."""


class ConfigError(SpeclabError):
    """Invalid configuration value."""
