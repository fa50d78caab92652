"""Exact arithmetic in the quadratic field Q(sqrt 2).

Elements are stored as a pair of rationals ``(a, b)`` standing for
``a + b*sqrt(2)``.  Integers and :class:`fractions.Fraction` coerce in.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "SQRT2", "ZERO", "ONE", "sqrt2_power"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Scalar:
    """``a + b*sqrt(2)`` with rational ``a`` and ``b``; immutable."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls(x, 0)

    def __repr__(self) -> str:
        return f"Scalar({str(self.a)!r}, {str(self.b)!r})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Rational)):
            return Scalar(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Rational)):
            return Scalar(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            a, b, c, d = self.a, self.b, other.a, other.b
            return Scalar(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return Scalar(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """The Galois conjugate ``a - b*sqrt(2)``."""
        return Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return Scalar(self.a / n, -self.b / n)

    def __truediv__(self, other) -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ONE
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, dict):
            return cls(Fraction(data.get("a", "0")), Fraction(data.get("b", "0")))
        return cls(Fraction(data))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5


ZERO = Scalar(0, 0)
ONE = Scalar(1, 0)
SQRT2 = Scalar(0, 1)


def sqrt2_power(n: int) -> Scalar:
    """``sqrt(2)**n`` for any integer ``n``, computed exactly."""
    half, odd = divmod(n, 2)
    # sqrt2**n = 2**half * sqrt2**odd, with odd in {0, 1}
    return Scalar(0, Fraction(2) ** half) if odd else Scalar(Fraction(2) ** half, 0)
