"""Integer polynomials: arithmetic, cyclotomic factors, unit-circle structure.

A polynomial is a dense tuple of integer coefficients starting with the
constant term, so (1, -2, 0, 1) is 1 - 2z + z^3.  Everything here is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial(x - y for x, y in zip(a, b))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def reverse(self) -> "IntPolynomial":
        """z^deg · P(1/z): the coefficient sequence reversed."""
        return IntPolynomial(reversed(self.coeffs))

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        c = self.content()
        if c in (0, 1):
            return self
        sign = 1 if self.coeffs[-1] > 0 else -1
        return IntPolynomial(x // (sign * c) for x in self.coeffs)

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "IntPolynomial('0')"
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            sign = " + " if (c > 0 and parts) else " - " if (c < 0 and parts) else "" if c > 0 else "-"
            term = "" if i == 0 else "z" if i == 1 else f"z^{i}"
            coef = f"{abs(c)}" if (abs(c) != 1 or i == 0) else ""
            parts.append(sign + coef + term)
        return f"IntPolynomial('{''.join(parts)}')"


def divmod_exact(num: IntPolynomial, den: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial] | None:
    """Quotient and remainder over Q; None unless both have integer coefficients."""
    assert not den.is_zero()
    rem = [Fraction(c) for c in num.coeffs]
    dc = den.coeffs
    dn = len(dc)
    if len(rem) < dn:
        q: list[Fraction] = []
    else:
        q = [Fraction(0)] * (len(rem) - dn + 1)
        for k in range(len(q) - 1, -1, -1):
            f = rem[k + dn - 1] / dc[-1]
            q[k] = f
            if f:
                for j in range(dn):
                    rem[k + j] -= f * dc[j]
    if any(c.denominator != 1 for c in q) or any(c.denominator != 1 for c in rem):
        return None
    return IntPolynomial(int(c) for c in q), IntPolynomial(int(c) for c in rem)


def gcd_rational(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive integer gcd via the Euclidean algorithm over Q."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]

    def deg(cs):
        return len(cs) - 1

    def rem(num, den):
        num = list(num)
        while len(num) >= len(den) and any(num):
            if num[-1] == 0:
                num.pop()
                continue
            f = num[-1] / den[-1]
            shift = len(num) - len(den)
            for j, d in enumerate(den):
                num[shift + j] -= f * d
            num.pop()
        while num and num[-1] == 0:
            num.pop()
        return num

    while b:
        a, b = b, rem(a, b)
    if not a:
        return IntPolynomial(())
    den_lcm = math.lcm(*(c.denominator for c in a))
    ints = [int(c * den_lcm) for c in a]
    return IntPolynomial(ints).primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p with repeated roots collapsed to simple ones (primitive)."""
    g = gcd_rational(p, p.derivative())
    if g.is_constant():
        return p.primitive()
    q = divmod_exact(p, g)
    assert q is not None and q[1].is_zero()  # Gauss: primitive g divides exactly
    return q[0].primitive()


def euler_phi(m: int) -> int:
    out = m
    k = 2
    mm = m
    while k * k <= mm:
        if mm % k == 0:
            out -= out // k
            while mm % k == 0:
                mm //= k
        k += 1
    if mm > 1:
        out -= out // mm
    return out


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, by exact division of z^m − 1."""
    num = IntPolynomial([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            q = divmod_exact(num, cyclotomic(d))
            assert q is not None and q[1].is_zero()
            num = q[0]
    return num


def cyclotomic_split(p: IntPolynomial) -> tuple[list[tuple[int, int]], IntPolynomial]:
    """Split off all cyclotomic factors of p.

    Returns ([(m, multiplicity), ...] sorted by m, remainder) with
    product(Φ_m^mult) · remainder = p.  Any cyclotomic factor of p has degree
    ≤ deg p, so trying every m with φ(m) ≤ deg p is exhaustive; a cheap
    numeric evaluation at a primitive m-th root filters before exact division.
    """
    assert not p.is_zero()
    factors: list[tuple[int, int]] = []
    rem = p
    d = p.degree
    m = 1
    scale = sum(abs(c) for c in p.coeffs) or 1
    while m <= 2 * d * d + 2:
        if euler_phi(m) <= rem.degree and rem.degree >= 1:
            z = cmath.exp(2j * cmath.pi / m)
            if abs(rem(z)) < 1e-8 * scale:
                phi_m = cyclotomic(m)
                mult = 0
                while True:
                    q = divmod_exact(rem, phi_m)
                    if q is None or not q[1].is_zero():
                        break
                    rem = q[0]
                    mult += 1
                if mult:
                    factors.append((m, mult))
        m += 1
    return factors, rem


def palindromic_to_even(g: IntPolynomial) -> IntPolynomial:
    """For palindromic g of even degree 2e, the integer H with
    g(z)/z^e = H(z + 1/z).

    Uses z^k + z^{−k} = p_k(w), p_0 = 2, p_1 = w, p_{k+1} = w·p_k − p_{k−1}.
    """
    cs = g.coeffs
    d = g.degree
    assert d % 2 == 0 and cs == tuple(reversed(cs)), "needs an even palindromic input"
    e = d // 2
    w = IntPolynomial([0, 1])
    p_prev, p_cur = IntPolynomial([2]), w  # p_0, p_1
    h = IntPolynomial([cs[e]])
    for k in range(1, e + 1):
        h = h + IntPolynomial([cs[e + k]]) * p_cur
        p_prev, p_cur = p_cur, w * p_cur - p_prev
    return h
