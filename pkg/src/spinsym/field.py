"""Exact scalars in Q(i, sqrt 2).

An element is stored as five Python integers ``(a, b, c, d, den)`` meaning

    (a + b*i + (c + d*i)*sqrt(2)) / den

with ``den > 0`` and ``gcd(a, b, c, d, den) == 1``.  This keeps every
component reduced (each component's own fraction reduces further on access).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["FieldElement", "ZERO", "ONE", "I", "SQRT2", "as_field"]


def _norm(a, b, c, d, den):
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    if den != 1:
        g = gcd(gcd(gcd(a, b), gcd(c, d)), den)
        if g > 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
    return a, b, c, d, den


class FieldElement:
    __slots__ = ("a", "b", "c", "d", "den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0, den=1, _reduced=False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            a, b, c, d, den = _norm(a, b, c, d, den)
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.den = den
        self._hash = None

    @classmethod
    def from_parts(cls, re_rat=0, im_rat=0, re_rad=0, im_rad=0):
        """Build ``re_rat + i*im_rat + (re_rad + i*im_rad)*sqrt(2)`` from rationals."""
        parts = [Fraction(x) for x in (re_rat, im_rat, re_rad, im_rad)]
        den = 1
        for p in parts:
            den = den * p.denominator // gcd(den, p.denominator)
        nums = [p.numerator * (den // p.denominator) for p in parts]
        return cls(*nums, den)

    # -- components -------------------------------------------------------
    @property
    def re_rat(self) -> Fraction:
        return Fraction(self.a, self.den)

    @property
    def im_rat(self) -> Fraction:
        return Fraction(self.b, self.den)

    @property
    def re_rad(self) -> Fraction:
        return Fraction(self.c, self.den)

    @property
    def im_rad(self) -> Fraction:
        return Fraction(self.d, self.den)

    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re_rat, self.im_rat, self.re_rad, self.im_rad

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_gaussian(self) -> bool:
        """True when the sqrt(2) part vanishes."""
        return not (self.c or self.d)

    def is_real(self) -> bool:
        return not (self.b or self.d)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElement):
            other = as_field(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return FieldElement(self.a + other.a, self.b + other.b,
                                self.c + other.c, self.d + other.d, d1)
        return FieldElement(self.a * d2 + other.a * d1, self.b * d2 + other.b * d1,
                            self.c * d2 + other.c * d1, self.d * d2 + other.d * d1,
                            d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, -self.c, -self.d, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            other = as_field(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_field(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return FieldElement(self.a * other, self.b * other, self.c * other,
                                    self.d * other, self.den)
            other = as_field(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if not (c1 or d1 or c2 or d2):
            return FieldElement(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, 0, 0,
                                self.den * other.den)
        # (u1 + v1 r)(u2 + v2 r) = u1 u2 + 2 v1 v2 + (u1 v2 + v1 u2) r
        ra = a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2)
        rb = a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2)
        rc = a1 * c2 - b1 * d2 + c1 * a2 - d1 * b2
        rd = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return FieldElement(ra, rb, rc, rd, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(i, sqrt 2)")
        a, b, c, d, den = self.a, self.b, self.c, self.d, self.den
        # w = u + v r, w' = u - v r, w w' = u^2 - 2 v^2 = g (Gaussian integer)
        ga = a * a - b * b - 2 * (c * c - d * d)
        gb = 2 * a * b - 4 * c * d
        n = ga * ga + gb * gb
        # 1/w = den * w' * conj(g) / n
        ua, ub = ga, -gb
        # w' * conj(g): (a + b i - (c + d i) r)(ua + ub i)
        ra = a * ua - b * ub
        rb = a * ub + b * ua
        rc = -(c * ua - d * ub)
        rd = -(c * ub + d * ua)
        return FieldElement(ra * den, rb * den, rc * den, rd * den, n)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            other = as_field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "FieldElement":
        """Complex conjugation: negates the i parts, fixes sqrt(2)."""
        return FieldElement(self.a, -self.b, self.c, -self.d, self.den, _reduced=True)

    def sqrt2_conj(self) -> "FieldElement":
        """The Galois automorphism sqrt(2) -> -sqrt(2)."""
        return FieldElement(self.a, self.b, -self.c, -self.d, self.den, _reduced=True)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (self.a == other.a and self.b == other.b and self.c == other.c
                    and self.d == other.d and self.den == other.den)
        if isinstance(other, (int, Rational)):
            return self == as_field(other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if not (self.b or self.c or self.d):
                h = hash(Fraction(self.a, self.den))
            else:
                h = hash((self.a, self.b, self.c, self.d, self.den))
            self._hash = h
        return h

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        r = 2 ** 0.5
        return complex((self.a + self.c * r) / self.den, (self.b + self.d * r) / self.den)

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for val, unit in ((self.re_rat, ""), (self.im_rat, "i"),
                          (self.re_rad, "√2"), (self.im_rad, "i√2")):
            if val:
                parts.append(f"{val}{'*' + unit if unit else ''}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


ZERO = FieldElement(0)
ONE = FieldElement(1)
I = FieldElement(0, 1)
SQRT2 = FieldElement(0, 0, 1)


def as_field(x) -> FieldElement:
    """Coerce an int, Fraction, complex-with-integer-parts or FieldElement."""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, int):
        return FieldElement(x, _reduced=True)
    if isinstance(x, Rational):
        return FieldElement(x.numerator, 0, 0, 0, x.denominator)
    if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
        return FieldElement(int(x.real), int(x.imag), _reduced=True)
    raise TypeError(f"cannot coerce {x!r} to FieldElement")
