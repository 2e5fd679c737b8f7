"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Values are a + b*sqrt(d) with rational a, b and a square-free radicand d >= 0.
d == 0 encodes a purely rational value; rationals are compatible with every
field, mixing two distinct nonzero radicands raises FieldMismatch.  All
comparisons go through exact sign computation, never floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

RationalLike = Union[int, Fraction]


class FieldMismatch(ValueError):
    """Raised when two values from different quadratic fields are combined."""


_SQUARE_FREE_CACHE: dict[int, bool] = {}


def square_free(n: int) -> bool:
    if n < 0:
        return False
    if n in (0, 1):
        return True
    cached = _SQUARE_FREE_CACHE.get(n)
    if cached is not None:
        return cached
    result = True
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            result = False
            break
        k += 1
    _SQUARE_FREE_CACHE[n] = result
    return result


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@total_ordering
class QuadraticNumber:
    """Canonical a + b*sqrt(d); immutable and hashable."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError(f"radicand must be non-negative, got {d}")
        if not square_free(d):
            raise ValueError(f"radicand must be square-free, got {d}")
        if b == 0:
            d = 0
        elif d == 0:
            # sqrt(0) = 0: surd part collapses.
            b = Fraction(0)
        elif d == 1:
            a, b, d = a + b, Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadraticNumber:
        """Internal fast path: a, b are Fractions, d already validated;
        only the b == 0 canonicalization is re-applied."""
        self = object.__new__(cls)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d if b else 0)
        return self

    @classmethod
    def rational(cls, q: RationalLike) -> QuadraticNumber:
        return cls(Fraction(q), 0, 0)

    @classmethod
    def sqrt_of(cls, d: int) -> QuadraticNumber:
        return cls(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _join_field(self, other: QuadraticNumber) -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise FieldMismatch(f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))")

    @staticmethod
    def _coerce(value: QuadraticNumber | RationalLike) -> QuadraticNumber:
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadraticNumber.rational(value)
        return NotImplemented  # type: ignore[return-value]

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), decided by rational squaring."""
        a, b, d = self.a, self.b, self.d
        if not b:
            an = a.numerator
            return (an > 0) - (an < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: compare a^2 with b^2 d exactly.
        lhs = a * a
        rhs = b * b * d
        if lhs == rhs:
            return 0
        if lhs > rhs:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __bool__(self) -> bool:
        return not (self.a == 0 and self.b == 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadraticNumber.rational(other)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __lt__(self, other: QuadraticNumber | RationalLike) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber._raw(-self.a, -self.b, self.d)

    def __add__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        if type(other) is QuadraticNumber:
            if self.d and other.d and self.d != other.d:
                raise FieldMismatch(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return QuadraticNumber._raw(
                self.a + other.a, self.b + other.b, self.d or other.d
            )
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber._raw(self.a + other, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        if type(other) is QuadraticNumber:
            if self.d and other.d and self.d != other.d:
                raise FieldMismatch(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return QuadraticNumber._raw(
                self.a - other.a, self.b - other.b, self.d or other.d
            )
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber._raw(self.a - other, self.b, self.d)
        return NotImplemented

    def __rsub__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        return (-self) + other

    def __mul__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._join_field(o)
        a = self.a * o.a + self.b * o.b * d
        b = self.a * o.b + self.b * o.a
        return QuadraticNumber._raw(a, b, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            if not self:
                raise ZeroDivisionError("inverse of zero")
            # norm == 0 with value != 0 is impossible for square-free d > 1.
            raise ZeroDivisionError("zero norm")
        conj = self.conjugate()
        return QuadraticNumber._raw(conj.a / n, conj.b / n, self.d)

    def __truediv__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: QuadraticNumber | RationalLike) -> QuadraticNumber:
        return self._coerce(other) * self.inverse()

    def __abs__(self) -> QuadraticNumber:
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor: a float hint corrected by exact sign tests."""
        if self.b == 0:
            return math.floor(self.a)
        try:
            n = math.floor(float(self))
        except (OverflowError, ValueError):
            num = self.b.numerator * self.b.numerator * self.d
            den = self.b.denominator * self.b.denominator
            root = math.isqrt(num // den)
            n = math.floor(self.a) + (root if self.b > 0 else -root - 1)
        a, b, d = self.a, self.b, self.d
        while _shift_sign(a, b, d, n) < 0:
            n -= 1
        while _shift_sign(a, b, d, n + 1) >= 0:
            n += 1
        return n

    def sqrt(self, field_d: int = 0) -> QuadraticNumber | None:
        """Square root when it stays inside Q(sqrt(d)); otherwise None.

        field_d supplies the ambient radicand for purely rational values
        (canonical form drops d when the surd part vanishes).
        """
        if self.sign() < 0:
            return None
        if self.b == 0:
            r = _fraction_sqrt(self.a)
            if r is not None:
                return QuadraticNumber.rational(r)
            # sqrt(q) = t*sqrt(d) iff q/d is a rational square.
            d = self.d or field_d
            if d:
                t = _fraction_sqrt(self.a / Fraction(d))
                if t is not None:
                    return QuadraticNumber(0, t, d)
            return None
        # (x + y*sqrt(d))^2 = a + b*sqrt(d): x^2 + y^2 d = a, 2xy = b.
        disc = _fraction_sqrt(self.a * self.a - self.b * self.b * self.d)
        if disc is None:
            return None
        for half in (Fraction(self.a + disc, 2), Fraction(self.a - disc, 2)):
            x = _fraction_sqrt(half)
            if x is None or x == 0:
                continue
            y = self.b / (2 * x)
            cand = QuadraticNumber(x, y, self.d)
            if cand * cand == self and cand.sign() >= 0:
                return cand
        return None

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadraticNumber({self.a})"
        return f"QuadraticNumber({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}*sqrt({self.d})"


def _shift_sign(a: Fraction, b: Fraction, d: int, n: int) -> int:
    """sign(a - n + b*sqrt(d)) without intermediate objects."""
    an = a - n
    if not b:
        return (an > 0) - (an < 0)
    if not an:
        return 1 if b > 0 else -1
    if an > 0 and b > 0:
        return 1
    if an < 0 and b < 0:
        return -1
    lhs = an * an
    rhs = b * b * d
    if lhs == rhs:
        return 0
    if lhs > rhs:
        return 1 if an > 0 else -1
    return 1 if b > 0 else -1


ZERO = QuadraticNumber.rational(0)
ONE = QuadraticNumber.rational(1)


def sign(x: QuadraticNumber) -> int:
    return x.sign()


def interval_sign(x: QuadraticNumber) -> int | None:
    """Sign via 64-bit outward-rounded interval arithmetic; None if undecided.

    Independent of QuadraticNumber.sign: evaluates a + b*sqrt(d) in floating
    point with explicit ulp widening at every step.
    """
    lo_a, hi_a = _frac_bounds(x.a)
    lo_b, hi_b = _frac_bounds(x.b)
    r = math.sqrt(x.d)
    lo_r, hi_r = _widen(r, r)
    lo_t, hi_t = _mul_interval(lo_b, hi_b, lo_r, hi_r)
    lo = _down(lo_a + lo_t)
    hi = _up(hi_a + hi_t)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if lo == 0 and hi == 0:
        return 0
    return None


def _frac_bounds(q: Fraction) -> tuple[float, float]:
    f = q.numerator / q.denominator
    return _widen(f, f)


def _widen(lo: float, hi: float) -> tuple[float, float]:
    return math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _mul_interval(
    lo1: float, hi1: float, lo2: float, hi2: float
) -> tuple[float, float]:
    products = (lo1 * lo2, lo1 * hi2, hi1 * lo2, hi1 * hi2)
    return _down(min(products)), _up(max(products))
