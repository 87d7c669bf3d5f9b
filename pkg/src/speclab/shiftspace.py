"""Finite-word symbolic dynamics: window determination and pigeonhole periods.

All operations act on finite words or finite sample families.  The
bi-infinite setting (closure arguments, compactness) has no finite-data
counterpart, so consistency verdicts here are claims about the supplied
samples only, never about a full shift space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class SymbolWord:
    """A window of a sequence over the alphabet {0, …, k−1}."""

    k: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("alphabet size must be positive")
        if any(not 0 <= s < self.k for s in self.symbols):
            raise ValueError("symbol index out of range")

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class DeterminationWitness:
    """Two occurrences of the same w-block followed by different symbols."""

    block: tuple[int, ...]
    first: tuple[int, int]   # (sample index, block start)
    second: tuple[int, int]
    successors: tuple[int, int]


def determination_witness(
    samples: Sequence[SymbolWord], w: int
) -> Optional[DeterminationWitness]:
    """Scan all samples for a w-block whose successor is not unique.

    Returns None when the samples are consistent with windows of size w
    determining the next symbol; otherwise the earliest conflicting pair.
    """
    if w < 1:
        raise ValueError("window size must be at least 1")
    seen: dict[tuple[int, ...], tuple[int, int, int]] = {}
    for si, sample in enumerate(samples):
        syms = sample.symbols
        for pos in range(len(syms) - w):
            block = syms[pos : pos + w]
            nxt = syms[pos + w]
            if block in seen:
                psi, ppos, pnxt = seen[block]
                if pnxt != nxt:
                    return DeterminationWitness(
                        block=block,
                        first=(psi, ppos),
                        second=(si, pos),
                        successors=(pnxt, nxt),
                    )
            else:
                seen[block] = (si, pos, nxt)
    return None


def minimal_determining_window(samples: Sequence[SymbolWord]) -> int:
    """Least w with no determination witness in the samples.

    Falls back to max sample length + 1 when every tested w conflicts
    (at w = max length the scan is vacuous, so the loop always settles).
    """
    if not samples:
        raise ValueError("at least one sample is required")
    max_len = max(len(s) for s in samples)
    for w in range(1, max_len + 1):
        if determination_witness(samples, w) is None:
            return w
    return max_len + 1


def extract_period(word: SymbolWord, w: int) -> Optional[int]:
    """Pigeonhole period: among the first k^w + 1 windows of width w two must
    coincide; their index difference p ≤ k^w is the period candidate, kept
    only if the whole available word is shift-consistent under p.
    """
    if w < 1:
        raise ValueError("window size must be at least 1")
    bound = word.k ** w
    if len(word) < bound + w:
        raise ValueError(
            f"word of length {len(word)} is too short for the pigeonhole "
            f"argument: need at least k^w + w = {bound + w}"
        )
    syms = word.symbols
    occurrences: dict[tuple[int, ...], list[int]] = {}
    for i in range(bound + 1):
        occurrences.setdefault(syms[i : i + w], []).append(i)
    pairs = sorted(
        (j - i, i)
        for occ in occurrences.values()
        for a, i in enumerate(occ)
        for j in occ[a + 1 :]
    )
    assert pairs, "pigeonhole cannot fail over k^w + 1 windows"
    for p, _i in pairs:
        if all(syms[m] == syms[m + p] for m in range(len(syms) - p)):
            return p
    return None
