"""Exact scalar arithmetic in Q(zeta_k) for conductor k in {1, 3, 4}.

A value is stored as an integer coordinate vector in the power basis of
Q[x]/Phi_k(x) over a single positive denominator, in lowest terms:

    k = 1:  plain rational, vector length 1
    k = 3:  a + b*W with W a primitive cube root of unity (W^2 = -1 - W)
    k = 4:  a + b*I with I^2 = -1

These three towers are the only coefficient fields the package ever
needs: W drives the rotation action on the plane endomorphisms, I drives
complexification and the space endomorphisms, and everything induced on
the orbit varieties is rational.  Values that happen to be rational are
demoted to k = 1 so equality and hashing are structural.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

__all__ = ["CycRational", "ConductorMismatch", "NotRationalError"]


class ConductorMismatch(ValueError):
    """Mixing Q(zeta_3) and Q(zeta_4) values in one operation."""


class NotRationalError(ValueError):
    """A genuinely cyclotomic value was used where a rational is required."""


_EMBED = {3: cmath.exp(2j * cmath.pi / 3), 4: 1j}


def _vec_gcd(vec: tuple[int, ...], den: int) -> int:
    g = den
    for c in vec:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


class CycRational:
    __slots__ = ("k", "num", "den")

    def __init__(self, num=0, den: int = 1, k: int = 1):
        if isinstance(num, CycRational):
            if den != 1 or k != 1:
                raise ValueError("cannot re-wrap a CycRational with den/k")
            self.k, self.num, self.den = num.k, num.num, num.den
            return
        if isinstance(num, Fraction):
            num, den = num.numerator, den * num.denominator
        if isinstance(num, int):
            num = (num,) if k == 1 else (num, 0)
        num = tuple(int(c) for c in num)
        if k not in (1, 3, 4):
            raise ValueError(f"unsupported conductor {k}")
        if k == 1 and len(num) != 1:
            raise ValueError("k=1 vector must have length 1")
        if k in (3, 4) and len(num) != 2:
            raise ValueError("k=3,4 vector must have length 2")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, num = -den, tuple(-c for c in num)
        g = _vec_gcd(num, den)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        if k != 1 and num[1] == 0:
            k, num = 1, (num[0],)
        self.k = k
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def omega(cls) -> "CycRational":
        """A primitive cube root of unity."""
        return cls((0, 1), 1, 3)

    @classmethod
    def i_unit(cls) -> "CycRational":
        """The imaginary unit."""
        return cls((0, 1), 1, 4)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def is_one(self) -> bool:
        return self.k == 1 and self.num == (1,) and self.den == 1

    def is_rational(self) -> bool:
        return self.k == 1

    def is_integer(self) -> bool:
        return self.k == 1 and self.den == 1

    # -- conversions ---------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.k != 1:
            raise NotRationalError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_complex(self) -> complex:
        if self.k == 1:
            return complex(self.num[0] / self.den)
        zeta = _EMBED[self.k]
        return (self.num[0] + self.num[1] * zeta) / self.den

    def rational_part(self) -> Fraction:
        return Fraction(self.num[0], self.den)

    def unit_part(self) -> Fraction:
        """Coordinate of W (k=3) or I (k=4); zero for rationals."""
        if self.k == 1:
            return Fraction(0)
        return Fraction(self.num[1], self.den)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "CycRational":
        if isinstance(value, CycRational):
            return value
        if isinstance(value, (int, Fraction)):
            return CycRational(value)
        raise TypeError(f"cannot coerce {value!r} to CycRational")

    @staticmethod
    def _join(k1: int, k2: int) -> int:
        if k1 == k2:
            return k1
        if k1 == 1:
            return k2
        if k2 == 1:
            return k1
        raise ConductorMismatch(f"cannot mix conductors {k1} and {k2}")

    def _lift(self, k: int) -> tuple[int, ...]:
        if self.k == k:
            return self.num
        return (self.num[0], 0)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.k == 1 and other.k == 1:
            a, b = self.num[0], other.num[0]
            return CycRational(a * other.den + b * self.den, self.den * other.den)
        k = self._join(self.k, other.k)
        a, b = self._lift(k), other._lift(k)
        da, db = self.den, other.den
        vec = tuple(x * db + y * da for x, y in zip(a, b))
        return CycRational(vec, da * db, k)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(CycRational)
        out.k, out.num, out.den = self.k, tuple(-c for c in self.num), self.den
        return out

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.k == 1 and other.k == 1:
            return CycRational(self.num[0] * other.num[0], self.den * other.den)
        k = self._join(self.k, other.k)
        a0, a1 = self._lift(k)
        b0, b1 = other._lift(k)
        cross = a0 * b1 + a1 * b0
        if k == 3:
            vec = (a0 * b0 - a1 * b1, cross - a1 * b1)
        else:
            vec = (a0 * b0 - a1 * b1, cross)
        return CycRational(vec, self.den * other.den, k)

    __rmul__ = __mul__

    def inverse(self) -> "CycRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return CycRational(self.den * (1 if self.num[0] > 0 else -1), abs(self.num[0]))
        a0, a1 = self.num
        if self.k == 3:
            conj = (a0 - a1, -a1)
            norm = a0 * a0 - a0 * a1 + a1 * a1
        else:
            conj = (a0, -a1)
            norm = a0 * a0 + a1 * a1
        return CycRational(tuple(self.den * c for c in conj), norm, self.k)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = self.inverse(), -exponent
        out = CycRational(1)
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycRational(other)
        if not isinstance(other, CycRational):
            return NotImplemented
        return self.k == other.k and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.k == 1:
            return hash(Fraction(self.num[0], self.den))
        return hash((self.k, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycRational({self})"

    def __str__(self):
        if self.k == 1:
            return str(Fraction(self.num[0], self.den))
        unit = "W" if self.k == 3 else "I"
        a, b = self.num
        parts = []
        if a != 0:
            parts.append(str(a))
        if b != 0:
            term = unit if abs(b) == 1 else f"{abs(b)}*{unit}"
            parts.append(("-" if b < 0 else "+" if parts else "") + term)
        body = "".join(parts) if parts else "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body
