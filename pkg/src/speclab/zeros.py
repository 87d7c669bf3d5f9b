"""Certified computation of the positive zero set of the indicator transform.

For exact-rational sets with common denominator q, nonzero frequencies ξ have
F(ξ) = P(e^{−2πiξ/q}) / (2πiξ) up to a monomial factor, where P is an integer
polynomial read off the endpoints.  The positive zero set is therefore
q-periodic and splits into

* rational zeros ξ = q·k/m from the cyclotomic factors Φ_m of P, and
* algebraic-angle zeros from unit-circle roots of the cyclotomic-free part,
  recovered exactly via gcd(P, reverse(P)) and the substitution w = z + 1/z.

ξ = 0 is excluded structurally: P(1) = 0 always (telescoping), but the
1/(2πiξ) factor cancels exactly that root and F(0) = measure = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from mpmath import mp
from sympy import Poly as SymPoly
from sympy import Symbol

from .domain import EXACT, FLOAT, IntervalSet
from .enclosure import (
    AlgebraicAngleEnclosure,
    Enclosure,
    FloatEnclosure,
    RationalEnclosure,
    combine,
)
from .errors import (
    FloatModeUnsupported,
    IllConditioned,
    NonpositiveRadius,
    RefinementBudgetExceeded,
)
from .fourier import default_precision_bits, power_spectrum_grid, _ft_indicator_mp
from .polynomial import (
    IntPolynomial,
    cyclotomic_split,
    gcd_rational,
    palindromic_to_even,
    squarefree_part,
)

YES = "yes"
NO = "no"
UNDECIDED = "undecided"

CERT_TOL = 1e-10
CERT_RADIUS = Fraction(1, 10**12)

_x = Symbol("x")


def unit_circle_polynomial(omega: IntervalSet) -> IntPolynomial:
    """P with F(ξ)·2πiξ = z^shift · P(z) at z = e^{−2πiξ/q}.

    Exponents are q·endpoint shifted to start at 0; a_j contributes +z^e and
    b_j contributes −z^e, so all coefficients are in {−1, 0, +1} before terms
    at equal exponents collect, and P(1) = 0 by telescoping.
    """
    if omega.mode != EXACT:
        raise FloatModeUnsupported("the polynomial route needs rational endpoints")
    q = omega.q
    exps = []
    for a, b in omega.intervals:
        ea = q * a
        eb = q * b
        exps.append((int(ea), 1))
        exps.append((int(eb), -1))
    low = min(e for e, _ in exps)
    coeffs = [0] * (max(e for e, _ in exps) - low + 1)
    for e, s in exps:
        coeffs[e - low] += s
    return IntPolynomial(coeffs)


def unit_circle_roots(
    p: IntPolynomial, q: int, eps: Fraction = Fraction(1, 10**20)
) -> list[AlgebraicAngleEnclosure]:
    """All ξ ∈ (0, q) with P(e^{−2πiξ/q}) = 0 for cyclotomic-free P.

    A unit-circle root z of the real-coefficient P satisfies P(1/z) =
    conj(P(z)) = 0, so every circle root divides G = gcd(P, reverse(P)).
    G's roots are closed under inversion and ±1 are excluded (those would be
    cyclotomic), which forces G palindromic of even degree.  Substituting
    w = z + 1/z maps conjugate circle pairs e^{∓iθ} to real w = 2cos θ in
    (−2, 2), and *only* circle pairs land there, so the circle roots of P
    are exactly the real roots of the reduced polynomial in that interval.
    """
    if p.is_constant():
        return []
    g = gcd_rational(p, p.reverse())
    if g.is_constant():
        return []
    for probe in (1, -1):
        if g(probe) == 0:
            raise IllConditioned("±1 root in cyclotomic-free input")
    g = squarefree_part(g)
    if g.coeffs != tuple(reversed(g.coeffs)) or g.degree % 2 != 0:
        raise IllConditioned("gcd with reverse is not even palindromic")
    h = palindromic_to_even(g)
    isolations = _isolate_real_roots(h, Fraction(-2), Fraction(2))
    out: list[AlgebraicAngleEnclosure] = []
    for index, (wl, wh) in enumerate(isolations):
        for branch in (1, -1):
            enc = AlgebraicAngleEnclosure(h.coeffs, index, q, branch, wl, wh)
            out.append(enc.refined(eps))
    out.sort(key=lambda e: float(e))
    return out


def _isolate_real_roots(
    h: IntPolynomial, lo: Fraction, hi: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open isolating intervals for the real roots of h in (lo, hi),
    each with nonzero sign at both ends, sorted ascending."""
    poly = SymPoly(list(reversed(h.coeffs)), _x)
    raw = poly.intervals(inf=lo, sup=hi)
    spans: list[tuple[Fraction, Fraction]] = []
    for (a, b), _mult in raw:
        a = Fraction(a.p, a.q)
        b = Fraction(b.p, b.q)
        if a == b:
            # rational root reported as a degenerate interval
            if abs(a) == 2:
                continue
            step = Fraction(1, 2)
            while h.eval_fraction(a - step) == 0 or h.eval_fraction(a + step) == 0:
                step /= 2
            a, b = a - step, b + step
        # keep the isolation strictly inside (−2, 2): the root itself is,
        # since h(±2) ≠ 0 for cyclotomic-free inputs
        a, b = _shrink_inside(h, a, b)
        if a is None:
            continue
        spans.append((a, b))
    spans.sort()
    return spans


def _shrink_inside(h: IntPolynomial, a: Fraction, b: Fraction):
    two = Fraction(2)
    for _ in range(400):
        if -two < a and b < two:
            return a, b
        mid = (a + b) / 2
        sa, sm = h.eval_fraction(a), h.eval_fraction(mid)
        if sm == 0:
            quarter = (b - a) / 4
            a, b = mid - quarter, mid + quarter
            continue
        if sa != 0 and (sa > 0) == (sm > 0):
            a = mid
        else:
            b = mid
    return None, None


@dataclass(frozen=True)
class ZeroSet:
    """Certified description of {ξ > 0 : F(ξ) = 0}.

    Exact mode: q-periodic with a fundamental list of enclosures in (0, q].
    Float mode: an uncertified list over (0, B] from numeric bracketing.
    """

    mode: str
    omega: IntervalSet
    q: int | None
    fundamental: tuple[Enclosure, ...]
    B: float | None = None

    @cached_property
    def rational_values(self) -> frozenset[Fraction]:
        return frozenset(
            e.exact() for e in self.fundamental if e.exact() is not None
        )

    @property
    def algebraic(self) -> tuple[Enclosure, ...]:
        return tuple(e for e in self.fundamental if e.exact() is None)

    def membership(self, x, max_bits: int = 1024) -> str:
        """Decide x ∈ Z.  Returns "yes" / "no" / "undecided".

        Exact mode reduces x modulo q; rational queries are decided exactly
        (algebraic-angle zeros are irrational, so a rational x can only match
        a rational zero).  Irrational enclosures are matched structurally
        (difference collapses to exact 0) or excluded by refined disjointness.
        """
        if self.mode == FLOAT:
            return self._membership_float(x)
        enc = x if isinstance(x, Enclosure) else RationalEnclosure(Fraction(x))
        fx = enc.exact()
        q = self.q
        if fx is not None:
            if fx == 0:
                return NO
            fx = abs(fx)
            r = fx % q
            if r == 0:
                r = Fraction(q)
            return YES if r in self.rational_values else NO
        # irrational path: compare against shifted fundamental enclosures;
        # the zero set is symmetric, so negative enclosures test as |x|
        lo0, hi0 = enc.interval(64)
        if hi0 < 0:
            enc = combine([(-1, enc)])
        bits = 64
        try:
            while bits <= max_bits:
                lo, hi = enc.interval(bits)
                candidates = self._overlapping(lo, hi, bits)
                if not candidates:
                    return NO
                for cand in candidates:
                    diff = combine([(1, enc), (-1, cand)])
                    if diff.exact() == 0:
                        return YES
                enc = enc.refined(Fraction(1, 2 ** (bits // 2)))
                bits *= 2
        except RefinementBudgetExceeded:
            pass
        return UNDECIDED

    def _overlapping(self, lo, hi, bits: int) -> list[Enclosure]:
        q = self.q
        k_min = int(math.floor(float(lo) / q)) - 1
        k_max = int(math.floor(float(hi) / q)) + 1
        found = []
        # arithmetic must run at full working precision: mpmath rounds
        # results to the ambient context otherwise
        with mp.workprec(bits + 64):
            for f in self.fundamental:
                flo, fhi = f.interval(bits)
                for k in range(k_min, k_max + 1):
                    if fhi + k * q < lo or flo + k * q > hi:
                        continue
                    found.append(combine([(1, f)]) + Fraction(k * q))
        return found

    def _membership_float(self, x) -> str:
        xf = abs(float(x))
        if xf == 0.0:
            return NO
        for e in self.fundamental:
            if abs(xf - float(e)) <= max(2e-9, 2 * getattr(e, "rad", 0.0)):
                return YES
        if self.B is not None and xf > self.B:
            return UNDECIDED
        return NO

    def enumerate_up_to(self, bound) -> list[Enclosure]:
        """All zeros in (0, bound], sorted ascending (exact mode unfolds the
        fundamental domain q-periodically)."""
        if self.mode == FLOAT:
            return [e for e in self.fundamental if float(e) <= float(bound)]
        out: list[Enclosure] = []
        k = 0
        while True:
            added = False
            for f in self.fundamental:
                shifted = combine([(1, f)]) + Fraction(k * self.q)
                if _enclosure_le(shifted, bound):
                    out.append(shifted)
                    added = True
            if not added:
                break
            k += 1
        out.sort(key=float)
        return out


def _enclosure_le(e: Enclosure, bound) -> bool:
    """Certified e ≤ bound (refining as needed; exact when both rational)."""
    ex = e.exact()
    if ex is not None:
        return ex <= Fraction(bound) if isinstance(bound, (int, Fraction)) else float(ex) <= bound
    b = Fraction(bound) if isinstance(bound, (int, Fraction)) else Fraction(float(bound))
    cur = e
    for bits in (64, 128, 256, 512):
        lo, hi = cur.interval(bits)
        with mp.workprec(bits + 64):
            bb = mp.mpf(b.numerator) / b.denominator
            if hi <= bb:
                return True
            if lo > bb:
                return False
        cur = cur.refined(Fraction(1, 2**bits))
    return float(cur) <= float(b)


def zero_set(omega: IntervalSet, B: float = 0.0) -> ZeroSet:
    """Compute the zero set; exact sets get the certified q-periodic form.

    In float mode B > 0 bounds the numeric scan range.  Every enclosure is
    certified: |F(midpoint)| ≤ 1e−10 after refinement to radius 1e−12.
    """
    if omega.mode == EXACT:
        q = omega.q
        p = unit_circle_polynomial(omega)
        cyc, rem = cyclotomic_split(p)
        fundamental: list[Enclosure] = []
        for m, _mult in cyc:
            for k in range(1, m + 1):
                if math.gcd(k, m) == 1:
                    fundamental.append(RationalEnclosure(Fraction(q * k, m)))
        fundamental.extend(unit_circle_roots(rem, q))
        fundamental.sort(key=float)
        _assert_disjoint(fundamental)
        zs = ZeroSet(EXACT, omega, q, tuple(fundamental))
        _certify(zs)
        return zs
    if B <= 0:
        raise NonpositiveRadius("float mode needs a positive scan bound B")
    floats = _scan_float_zeros(omega, B)
    zs = ZeroSet(FLOAT, omega, None, tuple(floats), B=float(B))
    _certify(zs)
    return zs


def _assert_disjoint(fundamental: list[Enclosure]) -> None:
    vals = [float(e) for e in fundamental]
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise IllConditioned("fundamental zeros failed to separate")


def _certify(zs: ZeroSet, tol: float = CERT_TOL) -> None:
    bits = max(default_precision_bits(), 256)
    for e in zs.fundamental:
        if e.exact() is None and not isinstance(e, FloatEnclosure):
            e = e.refined(CERT_RADIUS)
        mid = e.midpoint(bits)
        val = abs(_ft_indicator_mp(zs.omega, mid, bits))
        if val > tol:
            raise IllConditioned(
                f"zero near {float(e):.12g} failed certification: |F| = {float(val):.3g}"
            )


def _scan_float_zeros(omega: IntervalSet, B: float) -> list[FloatEnclosure]:
    d = float(omega.diameter)
    step = min(1e-3, 0.02 / d)
    xs = np.arange(step, B + step, step)
    ps = power_spectrum_grid(omega, xs)
    out: list[FloatEnclosure] = []
    bits = max(default_precision_bits(), 256)
    for i in range(1, len(xs) - 1):
        if ps[i] <= ps[i - 1] and ps[i] <= ps[i + 1] and ps[i] < 1e-4:
            root = _polish_float_zero(omega, xs[i], bits)
            if root is None:
                continue
            re, im = root
            if 0 < re <= B and abs(im) < 1e-9:
                enc = FloatEnclosure(re, max(abs(im), 1e-13))
                if not any(abs(enc.mid - o.mid) < step / 2 for o in out):
                    out.append(enc)
    out.sort(key=lambda e: e.mid)
    return out


def _polish_float_zero(omega: IntervalSet, x0: float, bits: int, spread: float = 1e-4):
    with mp.workprec(bits):
        def f(xi):
            total = mp.mpc(0)
            for a, b in omega.intervals:
                total += mp.exp(-2j * mp.pi * xi * float(a)) - mp.exp(
                    -2j * mp.pi * xi * float(b)
                )
            return total / (2j * mp.pi * xi)

        try:
            root = mp.findroot(
                f,
                (mp.mpc(x0 - spread), mp.mpc(x0), mp.mpc(x0 + spread)),
                solver="muller",
                tol=1e-40,
            )
        except (ValueError, ZeroDivisionError):
            return None
        # keep only roots in this candidate's basin; a far-away root belongs
        # to another bracket (or to none)
        if abs(root - x0) > 50 * spread:
            if abs(f(mp.mpc(x0))) <= CERT_TOL:
                return x0, 0.0
            return None
        if abs(f(root)) > CERT_TOL:
            return None
        return float(root.real), float(root.imag)


def is_zero(zs: ZeroSet, x) -> str:
    """Membership test; thin functional wrapper over ZeroSet.membership."""
    return zs.membership(x)
