"""Shared fixtures: the corpus of rational interval unions and cached analyses.

Each corpus entry carries a search configuration tuned to its alphabet
(window length at least 2Δ, budgets sized so the suite stays desk-scale) and
the confirmed spectra we expect the search to reach within those budgets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F

import pytest

from speclab.alphabet import Alphabet, build_alphabet
from speclab.domain import IntervalSet, build_interval_set
from speclab.errors import GapBoundConflict
from speclab.zeros import ZeroSet, zero_set


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    intervals: tuple
    search_L: F
    max_results: int = 4000
    node_budget: int = 10_000_000
    # (T, offsets-as-strings) pairs the bounded search is known to confirm
    expect_confirmed: tuple = ()
    searchable: bool = True  # False: alphabet exists but search is budget-capped
    has_alphabet: bool = True


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("unit", ((0, 1),), F(10),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("centered", ((F(-1, 2), F(1, 2)),), F(10),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("unit_shift", ((F(-1, 4), F(3, 4)),), F(10),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("two_gap", ((0, F(1, 2)), (1, F(3, 2))), F(12),
                expect_confirmed=((2, ("0", "1/2")), (2, ("0", "3/2")))),
    CorpusEntry("two_far", ((0, F(1, 2)), (F(3, 2), 2)), F(19),
                node_budget=2_000_000,
                expect_confirmed=((2, ("0", "1/3")),)),
    CorpusEntry("two_34", ((0, F(3, 4)), (F(7, 4), 2)), F(10),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("two_23", ((0, F(2, 3)), (F(5, 3), 2)), F(10),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("three_half", ((0, F(1, 2)), (F(3, 4), 1), (F(3, 2), F(7, 4))), F(12),
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("three_14", ((0, F(1, 3)), (F(4, 3), F(5, 3)), (F(8, 3), 3)), F(31),
                max_results=500, node_budget=200_000,
                searchable=False),
    CorpusEntry("alg3", ((0, F(1, 5)), (F(3, 5), F(6, 5)), (F(8, 5), F(9, 5))), F(9),
                max_results=64, node_budget=100_000,
                searchable=False),
    CorpusEntry("four", ((0, F(1, 4)), (F(1, 2), F(3, 4)), (F(5, 4), F(3, 2)), (F(11, 4), 3)),
                F(17), max_results=2000,
                expect_confirmed=((1, ("0",)),)),
    CorpusEntry("no_spec", ((0, F(1, 4)), (F(1, 2), F(5, 4))), F(10),
                has_alphabet=False, searchable=False),
)


@dataclass
class Analysis:
    entry: CorpusEntry
    omega: IntervalSet
    zeros: ZeroSet
    alphabet: Alphabet | None = None
    alphabet_error: Exception | None = None


_cache: dict[str, Analysis] = {}


def analyze_entry(entry: CorpusEntry) -> Analysis:
    if entry.name not in _cache:
        omega = build_interval_set(list(entry.intervals))
        zs = zero_set(omega)
        analysis = Analysis(entry, omega, zs)
        try:
            analysis.alphabet = build_alphabet(omega, zs)
        except GapBoundConflict as e:
            analysis.alphabet_error = e
        _cache[entry.name] = analysis
    return _cache[entry.name]


@pytest.fixture(scope="session")
def corpus() -> tuple[CorpusEntry, ...]:
    return CORPUS


@pytest.fixture(scope="session")
def corpus_analyses() -> list[Analysis]:
    return [analyze_entry(e) for e in CORPUS]


@pytest.fixture(scope="session")
def unit_analysis() -> Analysis:
    return analyze_entry(CORPUS[0])


@pytest.fixture(scope="session")
def two_gap_analysis() -> Analysis:
    return analyze_entry(CORPUS[3])
