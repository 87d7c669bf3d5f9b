"""Gap-word enumeration, closure, and search determinism."""

import json
from fractions import Fraction as F

import pytest

from speclab.domain import build_interval_set
from speclab.errors import ConfigError
from speclab.fileio import report_to_dict, spectrum_to_dict
from speclab.search import (
    RIGHT_ONLY,
    STATUS_CANDIDATE,
    STATUS_CONFIRMED,
    TWO_SIDED,
    SearchConfig,
    periodic_closure,
    search_spectra,
    window_recurrence,
)

UNIT = [(0, 1)]
TWO = [(0, F(1, 2)), (1, F(3, 2))]


def confirmed_keys(outcome):
    return [
        (r.closure.T, tuple(str(o.exact()) for o in r.closure.offsets))
        for r in outcome.confirmed
    ]


class TestWindowRecurrence:
    def test_all_ones(self):
        assert window_recurrence((0, 0, 0, 0), 1)[0] == (0, 1)

    def test_alternating(self):
        assert window_recurrence((0, 1, 0, 1, 0, 1), 2)[0] == (0, 2)

    def test_no_repeat(self):
        assert window_recurrence((0, 1, 2, 3), 2) == []

    def test_minimal_lag_first(self):
        pairs = window_recurrence((0, 0, 0, 0, 0), 1)
        lags = [j - i for i, j in pairs]
        assert lags == sorted(lags)


class TestPeriodicClosure:
    def test_unit_word(self):
        om = build_interval_set(UNIT)
        spect, why = periodic_closure(om, [F(0), F(1), F(2)], 0, 1)
        assert why == "" and spect.T == 1
        assert [o.exact() for o in spect.offsets] == [F(0)]

    def test_two_interval_word(self):
        om = build_interval_set(TWO)
        pts = [F(0), F(1, 2), F(2), F(5, 2), F(4)]
        spect, why = periodic_closure(om, pts, 0, 2)
        assert why == "" and spect.T == 2
        assert [o.exact() for o in spect.offsets] == [F(0), F(1, 2)]

    def test_non_integer_period_rejected(self):
        om = build_interval_set(TWO)
        # span 5/2 over 2 gaps: density-1 closure impossible
        spect, why = periodic_closure(om, [F(0), F(1, 2), F(5, 2)], 0, 2)
        assert spect is None and why == "non-integer-period"


class TestSearchUnit:
    def test_exactly_one_confirmed(self):
        om = build_interval_set(UNIT)
        out = search_spectra(om, SearchConfig(L=F(10)))
        assert len(out.results) == 1
        r = out.results[0]
        assert r.status == STATUS_CONFIRMED
        assert r.word.gap_strings() == ["1"] * 10
        assert r.closure.T == 1
        assert [o.exact() for o in r.closure.offsets] == [F(0)]
        assert r.report.overall == "spectrum-confirmed"
        assert not out.budget_exhausted

    def test_max_results_zero(self):
        om = build_interval_set(UNIT)
        out = search_spectra(om, SearchConfig(L=F(10), max_results=0))
        assert out.results == ()


class TestSearchTwoInterval:
    def test_includes_known_spectrum_first(self):
        om = build_interval_set(TWO)
        out = search_spectra(om, SearchConfig(L=F(12)))
        first = out.results[0]
        assert first.status == STATUS_CONFIRMED
        assert first.closure.T == 2
        assert [o.exact() for o in first.closure.offsets] == [F(0), F(1, 2)]
        assert first.word.gap_strings()[:4] == ["1/2", "3/2", "1/2", "3/2"]

    def test_full_enumeration_finds_translate_too(self):
        om = build_interval_set(TWO)
        out = search_spectra(om, SearchConfig(L=F(12), max_results=10**6))
        assert not out.budget_exhausted
        keys = confirmed_keys(out)
        assert (2, ("0", "1/2")) in keys
        assert (2, ("0", "3/2")) in keys
        assert len(keys) == 2

    def test_gaps_of_confirmed_are_symbols(self, two_gap_analysis):
        al = two_gap_analysis.alphabet
        sym_vals = {s.exact() for s in al.symbols}
        out = search_spectra(
            two_gap_analysis.omega, SearchConfig(L=F(12)),
            zs=two_gap_analysis.zeros, alphabet=al,
        )
        for r in out.confirmed:
            for g in r.word.gaps:
                assert g.exact() in sym_vals
                assert float(al.delta) <= float(g) <= al.Delta


class TestPruneAndBudget:
    def test_prune_toggle_preserves_outcomes(self):
        om = build_interval_set(TWO)
        a = search_spectra(om, SearchConfig(L=F(9), max_results=10**6, packing_prune=True))
        b = search_spectra(om, SearchConfig(L=F(9), max_results=10**6, packing_prune=False))
        assert b.nodes >= a.nodes
        assert confirmed_keys(a) == confirmed_keys(b)

    def test_budget_exhaustion_returns_partial(self):
        om = build_interval_set(TWO)
        out = search_spectra(om, SearchConfig(L=F(12), node_budget=20, max_results=10**6))
        assert out.budget_exhausted
        assert out.nodes == 21  # stops right past the budget

    def test_window_below_two_delta_rejected(self):
        om = build_interval_set(TWO)
        with pytest.raises(ConfigError):
            search_spectra(om, SearchConfig(L=F(5)))

    def test_invalid_tolerance_rejected(self):
        with pytest.raises(ConfigError):
            SearchConfig(L=F(10), packing_tol=0.5)


class TestDeterminism:
    def serialize(self, outcome):
        doc = []
        for r in outcome.results:
            entry = {"status": r.status, "gaps": r.word.gap_strings()}
            if r.closure is not None:
                entry["closure"] = spectrum_to_dict(r.closure)
            if r.report is not None:
                entry["report"] = report_to_dict(r.report)
            doc.append(entry)
        return json.dumps(doc, sort_keys=True)

    def test_byte_identical_runs(self):
        om = build_interval_set(TWO)
        runs = [
            self.serialize(search_spectra(om, SearchConfig(L=F(12))))
            for _ in range(2)
        ]
        assert runs[0] == runs[1]


class TestTwoSided:
    def test_unit_two_sided_confirms_lattice(self):
        om = build_interval_set(UNIT)
        out = search_spectra(
            om, SearchConfig(L=F(12), direction=TWO_SIDED, max_results=10**4)
        )
        keys = confirmed_keys(out)
        assert (1, ("0",)) in keys

    def test_two_interval_two_sided(self):
        # the greedy lexicographic branch reaches the true spectrum window
        # first; a small result cap keeps the bilateral enumeration desk-scale
        om = build_interval_set(TWO)
        out = search_spectra(
            om, SearchConfig(L=F(24), direction=TWO_SIDED, max_results=200)
        )
        assert (2, ("0", "1/2")) in confirmed_keys(out)


class TestAlgebraicAlphabet:
    def test_search_runs_with_irrational_symbols(self):
        om = build_interval_set([(0, F(1, 5)), (F(3, 5), F(6, 5)), (F(8, 5), F(9, 5))])
        out = search_spectra(om, SearchConfig(L=F(9), max_results=64))
        # min gap ≈ 1.58 forces density < 1: nothing can confirm, but the
        # enumeration itself must terminate with certified prunes
        assert confirmed_keys(out) == []
        assert all(r.status == STATUS_CANDIDATE for r in out.results)
        assert not out.budget_exhausted
