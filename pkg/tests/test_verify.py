"""Spectrum verification: orthogonality, packing, dual completeness, tiling."""

import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from speclab.domain import autocorrelation, build_interval_set
from speclab.errors import WindowTooSmall
from speclab.fileio import report_from_dict, report_to_dict
from speclab.fourier import ft_indicator, power_spectrum_grid, tail_point_bound
from speclab.verify import (
    CONFIRMED,
    FAIL,
    INCONCLUSIVE,
    PASS,
    REFUTED,
    PeriodicSpectrum,
    check_completeness_periodic,
    check_orthogonality,
    check_packing_sampled,
    check_tiling_by_omega,
    numeric_tiling_profile,
    verify_spectrum,
)
from speclab.zeros import NO, zero_set

UNIT = [(0, 1)]
TWO = [(0, F(1, 2)), (1, F(3, 2))]

Z_LATTICE = PeriodicSpectrum.from_rationals(1, [0])
TWO_SPECTRUM = PeriodicSpectrum.from_rationals(2, [0, F(1, 2)])
PERTURBED = PeriodicSpectrum.from_rationals(2, [0, F(3, 10)])


class TestPeriodicSpectrum:
    def test_count_must_match_period(self):
        with pytest.raises(ValueError):
            PeriodicSpectrum.from_rationals(2, [0])

    def test_offsets_must_be_sorted_in_range(self):
        with pytest.raises(ValueError):
            PeriodicSpectrum.from_rationals(2, [0, 2])
        with pytest.raises(ValueError):
            PeriodicSpectrum.from_rationals(2, [F(1, 2), F(1, 2)])

    def test_points_in(self):
        pts = [float(p) for p in TWO_SPECTRUM.points_in(-2.0, 2.5)]
        assert pts == [-2.0, -1.5, 0.0, 0.5, 2.0, 2.5]


class TestOrthogonality:
    def test_unit_lattice_passes(self):
        om = build_interval_set(UNIT)
        assert check_orthogonality(om, zero_set(om), Z_LATTICE).status == PASS

    def test_two_interval_spectrum_passes(self):
        om = build_interval_set(TWO)
        assert check_orthogonality(om, zero_set(om), TWO_SPECTRUM).status == PASS

    def test_two_interval_lattice_fails_with_witness_one(self):
        om = build_interval_set(TWO)
        res = check_orthogonality(om, zero_set(om), Z_LATTICE)
        assert res.status == FAIL
        assert res.witness.detail["difference"] == "1"
        # the witness is recheckable in isolation
        assert zero_set(om).membership(F(1)) == NO

    def test_finite_window(self):
        om = build_interval_set(UNIT)
        zs = zero_set(om)
        assert check_orthogonality(om, zs, [F(0), F(1), F(2)]).status == PASS
        bad = check_orthogonality(om, zs, [F(0), F(1, 2)])
        assert bad.status == FAIL


class TestPacking:
    def test_partial_sums_bounded(self):
        om = build_interval_set(UNIT)
        m = check_packing_sampled(om, list(range(11)), (3.0, 7.0, 1e-3))
        assert m <= 1.0 + 1e-9

    def test_single_translate(self):
        om = build_interval_set(UNIT)
        assert check_packing_sampled(om, [0], (-3.0, 3.0, 0.01)) <= 1.0

    def test_violation_detected(self):
        om = build_interval_set(UNIT)
        m = check_packing_sampled(om, [0, 0.5], (0.2, 0.3, 1e-3))
        assert m > 1.0


class TestCompleteness:
    def test_unit_lattice(self):
        om = build_interval_set(UNIT)
        res = check_completeness_periodic(om, Z_LATTICE)
        assert res.status == PASS
        assert res.info["k_range"] == 1  # |k| ≤ T·diameter = 1

    def test_two_interval_dual_rows(self):
        om = build_interval_set(TWO)
        res = check_completeness_periodic(om, TWO_SPECTRUM)
        assert res.status == PASS
        rows = {row["k"]: row for row in res.info["checks"]}
        assert rows[1]["A"] == "0"           # A(1/2) = 0 exactly
        assert rows[3]["A"] == "0"           # A(3/2) = 0 exactly
        assert rows[2]["A"] == "1/2"         # A(1) ≠ 0, so P(1) must vanish
        assert rows[2]["route"] == "offset-sum-exact-zero"

    def test_perturbed_offsets_fail_at_k1(self):
        om = build_interval_set(UNIT)
        res = check_completeness_periodic(om, PERTURBED)
        assert res.status == FAIL
        assert res.witness.detail["k"] == 1
        # recheck in isolation: A(1/2) = 1/2 and |1 + e^{0.3πi}| = 2cos(0.15π)
        A = autocorrelation(om)
        assert A(F(1, 2)) == F(1, 2)
        expected = 2 * math.cos(0.15 * math.pi)
        assert abs(res.witness.detail["absP_lower_bound"] - expected) < 1e-9


class TestTiling:
    def test_unit_level_one(self):
        assert check_tiling_by_omega(build_interval_set(UNIT), 1).status == PASS

    def test_two_interval_level_two(self):
        assert check_tiling_by_omega(build_interval_set(TWO), 2).status == PASS

    def test_uneven_reduction_fails(self):
        om = build_interval_set([(0, F(1, 3)), (F(1, 2), F(7, 6))])
        res = check_tiling_by_omega(om, 2)
        assert res.status == FAIL
        point = F(res.witness.detail["point"])
        assert res.witness.detail["multiplicity"] != 2
        # recheck: multiplicity at the witness by direct reduction
        cell = F(1, 2)
        mult = 0
        for a, b in om.intervals:
            m = math.floor(a / cell)
            while F(m) * cell < b:
                lo, hi = max(a, m * cell) - m * cell, min(b, (m + 1) * cell) - m * cell
                if lo <= point < hi:
                    mult += 1
                m += 1
        assert mult == res.witness.detail["multiplicity"]


class TestProfile:
    def test_unit_lattice_profile(self):
        om = build_interval_set(UNIT)
        window = list(range(-50, 51))
        prof = numeric_tiling_profile(om, window, (-1.0, 1.0, 0.01), 40.0)
        sums = [r[1] for r in prof.rows]
        # oracle: Σ sinc²(x−k) = 1 exactly; truncation deficit ≤ ~4.1e−3
        assert max(sums) <= 1.0 + 1e-12
        assert min(sums) >= 1.0 - 4.2e-3
        assert prof.consistent

    def test_empty_window(self):
        om = build_interval_set(UNIT)
        prof = numeric_tiling_profile(om, [], (0.0, 1.0, 0.1), 10.0)
        assert all(r[1] == 0.0 for r in prof.rows)

    def test_missing_element_detected(self):
        om = build_interval_set(UNIT)
        window = [k for k in range(-50, 51) if k != 0]
        prof = numeric_tiling_profile(om, window, (-1.0, 1.0, 0.01), 40.0)
        assert not prof.consistent  # dip below 1 − band near the hole

    def test_window_too_small(self):
        om = build_interval_set(UNIT)
        with pytest.raises(WindowTooSmall):
            numeric_tiling_profile(om, [0, 1], (0.0, 1.0, 0.1), 40.0)


class TestVerifySpectrum:
    def test_confirmed(self):
        om = build_interval_set(UNIT)
        assert verify_spectrum(om, Z_LATTICE).overall == CONFIRMED
        om2 = build_interval_set(TWO)
        assert verify_spectrum(om2, TWO_SPECTRUM).overall == CONFIRMED

    def test_refuted_by_orthogonality(self):
        om = build_interval_set(TWO)
        rep = verify_spectrum(om, Z_LATTICE)
        assert rep.overall == REFUTED
        assert rep.orthogonality.status == FAIL

    def test_refuted_by_dual_criterion(self):
        om = build_interval_set(UNIT)
        rep = verify_spectrum(om, PERTURBED)
        assert rep.overall == REFUTED
        assert rep.completeness.status == FAIL
        assert rep.completeness.witness.detail["k"] == 1

    def test_finite_window_inconclusive(self):
        om = build_interval_set(UNIT)
        rep = verify_spectrum(om, [F(0), F(1), F(2)])
        assert rep.overall == INCONCLUSIVE
        assert rep.orthogonality.status == PASS

    def test_translation_invariance(self):
        om = build_interval_set(TWO)
        for shift in (F(1, 4), F(1, 2), F(1), F(7, 4)):
            assert verify_spectrum(om, TWO_SPECTRUM.translated(shift)).overall == CONFIRMED
        om_unit = build_interval_set(UNIT)
        for shift in (F(1, 4), F(1)):
            assert verify_spectrum(om_unit, PERTURBED.translated(shift)).overall == REFUTED

    def test_corollary_zero_condition(self):
        # confirmed period T forces F(nT) = 0 for all nonzero n
        om = build_interval_set(TWO)
        T = TWO_SPECTRUM.T
        for n in range(1, 21):
            assert abs(ft_indicator(om, n * T, precision_bits=256)) <= 1e-10

    def test_report_round_trip(self):
        om = build_interval_set(TWO)
        for candidate in (TWO_SPECTRUM, Z_LATTICE):
            rep = verify_spectrum(om, candidate)
            doc = json.loads(json.dumps(report_to_dict(rep)))
            back = report_from_dict(doc)
            assert back.overall == rep.overall
            assert back.orthogonality.status == rep.orthogonality.status
            assert back.completeness.status == rep.completeness.status
            assert report_to_dict(back) == report_to_dict(rep)


class TestDualCrossValidation:
    def test_profile_brackets_one_when_dual_passes(self):
        # confirmed ℤ spectrum of the unit interval: direct-summation oracle
        # over [0, T] with the tail band below 1e−6
        om = build_interval_set(UNIT)
        assert check_completeness_periodic(om, Z_LATTICE).status == PASS
        R = 2.2e5  # tail_point_bound ≈ 2C/(δR) ≤ 1e−6 for C = 1/π², δ = 1
        band = tail_point_bound(om, 1.0, R)
        assert band <= 1e-6
        xs = np.arange(0.0, 1.0 + 1e-9, 1e-2)
        lam = np.arange(math.floor(-R - 2.0), math.ceil(R + 3.0), 1.0)
        sums = np.zeros_like(xs)
        for i, x in enumerate(xs):
            d = x - lam
            sums[i] = float(np.sum(np.sinc(d) ** 2))
        assert np.all(sums <= 1.0 + 1e-9)
        assert np.all(sums + band >= 1.0 - 1e-12)
