"""Exact numbers in Q and in quadratic fields Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction`.  Resolution of a branch curve
sometimes has to pass through a pair of conjugate points (the tangent
directions of an ordinary triple point may be cube roots of unity, say), so
the blow-up engine also needs :class:`QuadraticNumber`.
"""
from __future__ import annotations

from fractions import Fraction
import math


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadraticNumber) and value.b == 0:
        return value.a
    raise TypeError(f"not an exact rational: {value!r}")


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k**2 * d`` and ``d`` squarefree (sign kept in d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    k = 1
    d = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return k, sign * d * n


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = as_fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_in_field(q: Fraction, d: int) -> "QuadraticNumber | Fraction | None":
    """Square root of the rational ``q`` inside Q(sqrt(d)), if it lies there."""
    root = rational_sqrt(q)
    if root is not None:
        return root
    c = rational_sqrt(Fraction(q) / d)
    if c is None:
        return None
    return QuadraticNumber(0, c, d)


def field_for_sqrt(q: Fraction) -> tuple[int, Fraction]:
    """Return ``(d, c)`` with ``sqrt(q) = c*sqrt(d)``, d squarefree."""
    q = as_fraction(q)
    num = q.numerator * q.denominator
    k, d = squarefree_decomposition(num)
    return d, Fraction(k, q.denominator)


class QuadraticNumber:
    """``a + b*sqrt(d)`` with rational a, b and squarefree integer d != 0, 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d in (0, 1):
            raise ValueError("d must be a squarefree integer other than 0 and 1")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.d = int(d)

    def _parts(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(
                    f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d})) is unsupported"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _field(self, other) -> int:
        if isinstance(other, QuadraticNumber) and self.b == 0:
            return other.d
        return self.d

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadraticNumber(self.a + p[0], self.b + p[1], self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadraticNumber(self.a - p[0], self.b - p[1], self._field(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        d = self._field(other)
        a, b = self.a, self.b
        c, e = p
        return QuadraticNumber(a * c + b * e * d, a * e + b * c, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadraticNumber(self.a / other, self.b / other, self.d)
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = QuadraticNumber(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        p = self._parts(other) if isinstance(other, (int, Fraction, QuadraticNumber)) else None
        if p is None:
            return NotImplemented
        if isinstance(other, QuadraticNumber) and self.b != 0 and other.d != self.d:
            return False
        return self.a == p[0] and self.b == p[1]

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def sort_key(self):
        return (1, self.a, self.b, self.d)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if self.a == 0:
            return f"{b}{root}"
        sign = "+" if self.b > 0 else "-"
        bb = abs(self.b)
        bb_s = "" if bb == 1 else f"{bb}*"
        return f"{self.a}{sign}{bb_s}{root}"


def number_sort_key(value):
    if isinstance(value, QuadraticNumber) and value.b != 0:
        return value.sort_key()
    return (0, as_fraction(value), Fraction(0), 0)


def normalize_number(value):
    """Collapse rational-valued quadratic numbers back to Fraction."""
    if isinstance(value, QuadraticNumber):
        return value.a if value.b == 0 else value
    if isinstance(value, int):
        return Fraction(value)
    return value


def format_number(value) -> str:
    value = normalize_number(value)
    return str(value)
