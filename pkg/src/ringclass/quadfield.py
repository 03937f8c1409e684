"""Exact elements of a quadratic field Q(sqrt(d)).

An element is stored as ``x + y*sqrt(d)`` with rational ``x, y``; the
familiar integral notation ``(u + v*sqrt(d))/2`` is available through
:meth:`QuadraticNumber.half_coords`.
"""

from fractions import Fraction


class QuadraticNumber:
    __slots__ = ("d", "x", "y")

    def __init__(self, d, x, y=0):
        self.d = d
        self.x = Fraction(x)
        self.y = Fraction(y)

    @classmethod
    def from_half(cls, d, u, v):
        """The element (u + v*sqrt(d))/2."""
        return cls(d, Fraction(u, 2), Fraction(v, 2))

    def half_coords(self):
        """(u, v) with self == (u + v*sqrt(d))/2; exact only for integers."""
        return 2 * self.x, 2 * self.y

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("elements of different fields")
            return other
        return QuadraticNumber(self.d, other, 0)

    def __add__(self, other):
        other = self._coerce(other)
        return QuadraticNumber(self.d, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(self.d, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.d
        return QuadraticNumber(
            d,
            self.x * other.x + d * self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber(self.d, self.x, -self.y)

    def norm(self):
        return self.x * self.x - self.d * self.y * self.y

    def trace(self):
        return 2 * self.x

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticNumber(self.d, self.x / n, -self.y / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticNumber(self.d, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return self.d == other.d and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.d, self.x, self.y))

    def is_integral(self):
        """Membership in the maximal order of Q(sqrt(d)), d fundamental or 1."""
        t = self.trace()
        n = self.norm()
        return t.denominator == 1 and n.denominator == 1

    def is_zero(self):
        return self.x == 0 and self.y == 0

    def to_float(self):
        if self.d < 0:
            return complex(float(self.x), float(self.y) * abs(self.d) ** 0.5)
        return float(self.x) + float(self.y) * self.d ** 0.5

    def is_positive_real(self):
        """Sign test for the real embedding with sqrt(d) > 0 (d > 0)."""
        if self.d <= 0:
            raise ValueError("no real embedding")
        x, y = self.x, self.y
        if x >= 0 and y >= 0:
            return x > 0 or y > 0
        if x <= 0 and y <= 0:
            return False
        # opposite signs: compare x^2 with d*y^2
        if x > 0:
            return x * x > self.d * y * y
        return self.d * y * y > x * x

    def __repr__(self):
        u, v = self.half_coords()
        if u.denominator == 1 and v.denominator == 1:
            return f"({u} + {v}*sqrt({self.d}))/2"
        return f"{self.x} + {self.y}*sqrt({self.d})"
