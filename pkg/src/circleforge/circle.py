"""Points of the circle as exact fractional turns in [0, 1)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

from .field import QuadraticNumber

Degenerate = "degenerate"

AngleLike = Union["CirclePoint", QuadraticNumber, Fraction, int, str]


@total_ordering
class CirclePoint:
    """A circle point; angle is a QuadraticNumber reduced into [0, 1)."""

    __slots__ = ("angle",)

    def __init__(self, angle: AngleLike) -> None:
        if isinstance(angle, CirclePoint):
            q = angle.angle
        elif isinstance(angle, QuadraticNumber):
            q = angle
        elif isinstance(angle, str):
            q = QuadraticNumber.rational(Fraction(angle))
        else:
            q = QuadraticNumber.rational(angle)
        n = q.floor()
        if n:
            q = q - n
        object.__setattr__(self, "angle", q)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CirclePoint is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CirclePoint):
            try:
                other = CirclePoint(other)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                return NotImplemented
        return self.angle == other.angle

    def __lt__(self, other: CirclePoint) -> bool:
        if not isinstance(other, CirclePoint):
            other = CirclePoint(other)
        return self.angle < other.angle

    def __hash__(self) -> int:
        return hash(self.angle)

    def __repr__(self) -> str:
        return f"CirclePoint({self.angle})"

    def antipode(self) -> CirclePoint:
        return CirclePoint(self.angle + Fraction(1, 2))

    def __float__(self) -> float:
        return float(self.angle)


def pt(angle: AngleLike) -> CirclePoint:
    return CirclePoint(angle)


def cyclic_order(p: CirclePoint, q: CirclePoint, r: CirclePoint) -> int | str:
    """+1 if (p, q, r) is positively oriented, -1 if negatively, else degenerate."""
    if p == q or q == r or p == r:
        return Degenerate
    u = _turn_from(p, q)
    v = _turn_from(p, r)
    return 1 if u < v else -1


def _turn_from(base: CirclePoint, x: CirclePoint) -> QuadraticNumber:
    diff = x.angle - base.angle
    if diff.sign() < 0:
        diff = diff + 1
    return diff


def arc_contains(a: CirclePoint, b: CirclePoint, p: CirclePoint) -> bool:
    """True iff p lies strictly inside the positively oriented open arc a -> b."""
    if a == b:
        raise ValueError("degenerate arc: endpoints coincide")
    if p == a or p == b:
        return False
    return cyclic_order(a, p, b) == 1


def arc_length(a: CirclePoint, b: CirclePoint) -> QuadraticNumber:
    """Length of the positively oriented arc from a to b, in turns."""
    return _turn_from(a, b) if a != b else QuadraticNumber.rational(0)


def arc_distance(a: CirclePoint, b: CirclePoint) -> QuadraticNumber:
    """Shorter-arc distance between two points, in turns."""
    fwd = arc_length(a, b)
    if fwd - Fraction(1, 2) > 0:
        return QuadraticNumber.rational(1) - fwd
    return fwd


def sorted_cyclically(points: Iterable[CirclePoint]) -> list[CirclePoint]:
    """Distinct points sorted by angle (a representative cyclic order)."""
    return sorted(set(points), key=lambda p: p.angle)
