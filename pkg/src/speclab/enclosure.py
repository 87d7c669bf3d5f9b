"""Certified enclosures of real quantities, refinable on demand.

An enclosure guarantees its value lies in [lo, hi].  Three primitive tags:

* rational — an exact Fraction, radius 0;
* algebraic-angle — ξ = q·θ/(2π) with 2·cos(θ) a designated real root of an
  integer polynomial (root index within (−2,2), branch picking θ or 2π−θ);
  refinable to any ε by exact bisection of the root's isolating interval;
* float — a midpoint/radius pair with no algebraic backing (not refinable).

Sums and integer/rational combinations of enclosures are tracked
symbolically, so differences of exactly equal quantities collapse to the
exact rational 0 instead of a fuzzy interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from mpmath import mp

from .errors import IllConditioned, RefinementBudgetExceeded
from .polynomial import IntPolynomial

_GUARD_BITS = 24


def _mpf_from_fraction(x: Fraction):
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def _frac_bits(eps: Fraction) -> int:
    """Number of bits needed to resolve eps, i.e. ceil(-log2(eps)) for eps<1."""
    if eps >= 1:
        return 1
    return (eps.denominator // max(eps.numerator, 1)).bit_length()


def _pad(value, bits: int):
    """Outward padding covering accumulated rounding at working precision."""
    return abs(value) * mp.mpf(2) ** (-bits) * 8 + mp.mpf(2) ** (-4 * bits)


class Enclosure:
    """Base class; see module docstring for the concrete tags."""

    def exact(self) -> Optional[Fraction]:
        return None

    def interval(self, bits: int):
        raise NotImplementedError

    def refined(self, eps: Fraction) -> "Enclosure":
        """An equivalent enclosure whose radius is at most eps."""
        raise NotImplementedError

    def radius(self, bits: int):
        lo, hi = self.interval(bits)
        with mp.workprec(bits + _GUARD_BITS):
            return (hi - lo) / 2

    def midpoint(self, bits: int):
        lo, hi = self.interval(bits)
        with mp.workprec(bits + _GUARD_BITS):
            return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint(96))

    def __add__(self, other):
        return combine([(1, self), (1, _as_enclosure(other))])

    __radd__ = __add__

    def __sub__(self, other):
        return combine([(1, self), (-1, _as_enclosure(other))])

    def __rsub__(self, other):
        return combine([(-1, self), (1, _as_enclosure(other))])


def _as_enclosure(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalEnclosure(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as an enclosure")


@dataclass(frozen=True)
class RationalEnclosure(Enclosure):
    value: Fraction

    def exact(self) -> Fraction:
        return self.value

    def interval(self, bits: int):
        with mp.workprec(bits + _GUARD_BITS):
            v = _mpf_from_fraction(self.value)
            p = _pad(v, bits)
            return v - p, v + p

    def refined(self, eps: Fraction) -> "RationalEnclosure":
        return self

    def __repr__(self) -> str:
        return f"RationalEnclosure({self.value})"


@dataclass(frozen=True)
class AlgebraicAngleEnclosure(Enclosure):
    """ξ = q·θ/(2π), cos(θ) = w/2 with w a designated root of ``poly``.

    ``branch`` +1 takes θ = arccos(w/2) ∈ (0, π); −1 takes 2π − θ.
    ``w_lo`` < ``w_hi`` isolate the root and carry the refinement state;
    enclosures with tighter isolations compare equal (same root identity).
    """

    poly: tuple[int, ...]
    index: int
    q: int
    branch: int
    w_lo: Fraction = field(compare=False)
    w_hi: Fraction = field(compare=False)

    def _poly(self) -> IntPolynomial:
        return IntPolynomial(self.poly)

    def w_refined(self, width: Fraction) -> "AlgebraicAngleEnclosure":
        """Bisect the isolating interval of w down to the requested width."""
        lo, hi = self.w_lo, self.w_hi
        p = self._poly()
        s_lo = p.eval_fraction(lo)
        if s_lo == 0:
            # roots at rational points would have been split off; isolating
            # intervals from sympy have nonzero signs at both ends
            raise IllConditioned("isolating interval endpoint hits the root")
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = p.eval_fraction(mid)
            if s_mid == 0:
                # land exactly on the root: shrink both sides around it
                quarter = (hi - lo) / 4
                lo, hi = mid - min(quarter, width / 2), mid + min(quarter, width / 2)
                break
            if (s_mid > 0) == (s_lo > 0):
                lo = mid
            else:
                hi = mid
        return AlgebraicAngleEnclosure(self.poly, self.index, self.q, self.branch, lo, hi)

    def interval(self, bits: int):
        with mp.workprec(bits + _GUARD_BITS):
            # the root lies in (−2, 2); clamp the isolation before acos
            wl = _mpf_from_fraction(max(self.w_lo, Fraction(-2)))
            wh = _mpf_from_fraction(min(self.w_hi, Fraction(2)))
            # arccos is decreasing: w_hi gives the lower angle
            th_lo = mp.acos(wh / 2)
            th_hi = mp.acos(wl / 2)
            two_pi = 2 * mp.pi
            if self.branch == 1:
                lo = self.q * th_lo / two_pi
                hi = self.q * th_hi / two_pi
            else:
                lo = self.q * (two_pi - th_hi) / two_pi
                hi = self.q * (two_pi - th_lo) / two_pi
            p = _pad(hi, bits)
            return lo - p, hi + p

    def refined(self, eps: Fraction) -> "AlgebraicAngleEnclosure":
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("refinement target must be positive")
        bits = max(96, 2 * _frac_bits(eps) + 64)
        cur = self
        width = self.w_hi - self.w_lo
        for _ in range(200):
            lo, hi = cur.interval(bits)
            if hi - lo <= 2 * _mpf_from_fraction(eps):
                return cur
            width = width / 8
            cur = cur.w_refined(width)
        raise RefinementBudgetExceeded(f"could not reach radius {eps}")

    def __repr__(self) -> str:
        return (
            f"AlgebraicAngleEnclosure(root {self.index} of {IntPolynomial(self.poly)!r}, "
            f"branch {self.branch:+d}, q={self.q}, ~{float(self):.12g})"
        )


@dataclass(frozen=True)
class FloatEnclosure(Enclosure):
    mid: float
    rad: float

    def interval(self, bits: int):
        with mp.workprec(max(bits, 64)):
            return mp.mpf(self.mid) - self.rad, mp.mpf(self.mid) + self.rad

    def refined(self, eps: Fraction) -> "FloatEnclosure":
        if Fraction(self.rad) <= Fraction(eps):
            return self
        raise RefinementBudgetExceeded(
            "float enclosures carry no algebraic backing to refine against"
        )

    def __float__(self) -> float:
        return self.mid

    def __repr__(self) -> str:
        return f"FloatEnclosure({self.mid} ± {self.rad:g})"


@dataclass(frozen=True)
class CombinationEnclosure(Enclosure):
    """const + Σ coeff_i · base_i with rational coeffs and primitive bases."""

    terms: tuple[tuple[Fraction, Enclosure], ...]
    const: Fraction

    def exact(self) -> Optional[Fraction]:
        return self.const if not self.terms else None

    def interval(self, bits: int):
        with mp.workprec(bits + _GUARD_BITS):
            lo = _mpf_from_fraction(self.const)
            hi = lo
            for coeff, base in self.terms:
                blo, bhi = base.interval(bits)
                c = _mpf_from_fraction(coeff)
                if c >= 0:
                    lo += c * blo
                    hi += c * bhi
                else:
                    lo += c * bhi
                    hi += c * blo
            p = _pad(hi, bits) + _pad(lo, bits)
            return lo - p, hi + p

    def refined(self, eps: Fraction) -> "CombinationEnclosure":
        if not self.terms:
            return self
        eps = Fraction(eps)
        share = eps / (2 * len(self.terms))
        new_terms = tuple(
            (coeff, base.refined(share / max(abs(coeff), 1))) for coeff, base in self.terms
        )
        return CombinationEnclosure(new_terms, self.const)

    def __repr__(self) -> str:
        return f"CombinationEnclosure(~{float(self):.12g}, {len(self.terms)} terms)"


def combine(parts: list[tuple[Union[int, Fraction], Enclosure]]) -> Enclosure:
    """Simplify Σ coeff·enclosure: fold rationals, merge identical bases."""
    const = Fraction(0)
    acc: dict[Enclosure, Fraction] = {}
    stack = [(Fraction(c), e) for c, e in parts]
    while stack:
        coeff, enc = stack.pop()
        if coeff == 0:
            continue
        ex = enc.exact()
        if ex is not None:
            const += coeff * ex
        elif isinstance(enc, CombinationEnclosure):
            const += coeff * enc.const
            stack.extend((coeff * c2, b2) for c2, b2 in enc.terms)
        else:
            acc[enc] = acc.get(enc, Fraction(0)) + coeff
    terms = tuple(sorted(
        ((c, b) for b, c in acc.items() if c != 0),
        key=lambda t: repr(t[1]),
    ))
    if not terms:
        return RationalEnclosure(const)
    if len(terms) == 1 and terms[0][0] == 1 and const == 0:
        return terms[0][1]
    return CombinationEnclosure(terms, const)
