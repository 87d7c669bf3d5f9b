"""Gap alphabet, max-gap bound, spectral gap."""

import random
from fractions import Fraction as F

import pytest

from speclab.alphabet import (
    build_alphabet,
    max_gap_bound,
    min_gap,
    spectral_gap,
    _gap_predicate,
)
from speclab.domain import build_interval_set
from speclab.errors import GapBoundConflict
from speclab.fourier import decay_majorant
from speclab.zeros import NO, YES, zero_set

UNIT = [(0, 1)]
CENTERED = [(F(-1, 2), F(1, 2))]
TWO = [(0, F(1, 2)), (1, F(3, 2))]


class TestMinGap:
    def test_examples(self):
        assert min_gap(zero_set(build_interval_set(UNIT))).exact() == 1
        assert min_gap(zero_set(build_interval_set(TWO))).exact() == F(1, 2)
        assert min_gap(zero_set(build_interval_set(CENTERED))).exact() == 1


class TestMaxGapBound:
    def test_unit_interval_value(self):
        om = build_interval_set(CENTERED)
        Delta = max_gap_bound(om)
        # h² = C(1 + h)/..., solving 2C/h² + 2C/h = 1 gives h* ≈ 0.5625
        assert 1.0 < Delta < 1.3

    def test_two_interval_range(self):
        om = build_interval_set(TWO)
        Delta = max_gap_bound(om)
        assert 4.0 <= Delta <= 5.0

    def test_self_consistency_predicate(self):
        for pairs in (UNIT, TWO):
            om = build_interval_set(pairs)
            zs = zero_set(om)
            Delta = max_gap_bound(om, zs)
            C = decay_majorant(om).C
            delta = float(min_gap(zs).interval(128)[0])
            assert _gap_predicate(C, delta, Delta / 2) < 1.0

    def test_more_intervals_never_shrinks_bound(self):
        # same min gap δ = 1, n = 1 vs n = 2: C grows, so Δ grows
        d1 = max_gap_bound(build_interval_set(UNIT))
        d2 = max_gap_bound(build_interval_set([(0, F(3, 4)), (F(7, 4), 2)]))
        assert d2 >= d1

    def test_conflict_certifies_no_spectrum(self):
        # zeros are 4Z \ {0}: δ = 4 exceeds any admissible gap bound
        om = build_interval_set([(0, F(1, 4)), (F(1, 2), F(5, 4))])
        with pytest.raises(GapBoundConflict):
            max_gap_bound(om)


class TestBuildAlphabet:
    def test_unit(self):
        al = build_alphabet(build_interval_set(UNIT))
        assert [s.exact() for s in al.symbols] == [F(1)]
        assert al.k == 1

    def test_two_interval_symbols(self):
        al = build_alphabet(build_interval_set(TWO))
        assert [s.exact() for s in al.symbols] == [
            F(1, 2), F(3, 2), F(2), F(5, 2), F(7, 2), F(4),
        ]
        assert al.k == 6

    def test_delta_is_first_symbol(self):
        for pairs in (UNIT, TWO, CENTERED):
            al = build_alphabet(build_interval_set(pairs))
            assert al.delta is al.symbols[0]
            assert float(al.delta) <= al.Delta

    def test_symbols_are_exactly_zeros_in_range(self):
        om = build_interval_set(TWO)
        zs = zero_set(om)
        al = build_alphabet(om, zs)
        for s in al.symbols:
            assert zs.membership(s) == YES
        # 20 non-symbols inside (0, Δ] must be rejected
        rng = random.Random(3)
        symbol_values = {s.exact() for s in al.symbols}
        tested = 0
        while tested < 20:
            x = F(rng.randint(1, int(al.Delta * 60)), 60)
            if x in symbol_values or float(x) > al.Delta:
                continue
            assert zs.membership(x) == NO
            tested += 1


class TestSpectralGap:
    def test_unit(self):
        assert spectral_gap(build_interval_set(UNIT)).a == 1

    def test_two_interval(self):
        assert spectral_gap(build_interval_set(TWO)).a == F(1, 2)

    def test_bounded_by_diameter(self):
        rng = random.Random(17)
        for _ in range(10):
            n = rng.randint(1, 3)
            cursor = F(0)
            pairs = []
            for _ in range(n):
                w = F(rng.randint(1, 5), 5)
                pairs.append((cursor, cursor + w))
                cursor += w + F(rng.randint(1, 5), 5)
            om = build_interval_set(pairs, normalize=True)
            assert spectral_gap(om).a <= om.diameter
