from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circleforge.circle import (
    CirclePoint,
    Degenerate,
    arc_contains,
    arc_distance,
    cyclic_order,
    pt,
)
from circleforge.field import QuadraticNumber


def test_reduction():
    assert pt(Fraction(5, 4)) == pt(Fraction(1, 4))
    assert pt(Fraction(-1, 4)) == pt(Fraction(3, 4))
    assert pt(QuadraticNumber(0, 1, 5)) == pt(QuadraticNumber(-2, 1, 5))


def test_cyclic_order_basic():
    assert cyclic_order(pt(0), pt("1/4"), pt("1/2")) == 1
    assert cyclic_order(pt(0), pt("1/2"), pt("1/4")) == -1
    assert cyclic_order(pt("1/3"), pt("1/3"), pt("1/2")) == Degenerate


def test_arc_contains():
    assert arc_contains(pt(0), pt("1/2"), pt("1/4"))
    assert not arc_contains(pt("1/2"), pt(0), pt("1/4"))
    assert arc_contains(pt("3/4"), pt("1/4"), pt(0))
    with pytest.raises(ValueError):
        arc_contains(pt(0), pt(0), pt("1/4"))


def test_arc_distance():
    assert arc_distance(pt(0), pt("3/4")) == QuadraticNumber.rational(Fraction(1, 4))
    assert arc_distance(pt("1/8"), pt("3/8")) == QuadraticNumber.rational(
        Fraction(1, 4)
    )


fractions = st.fractions(min_value=0, max_value=1).filter(lambda f: f < 1)


@given(fractions, fractions, fractions)
def test_cyclic_invariance(a, b, c):
    p, q, r = pt(a), pt(b), pt(c)
    o = cyclic_order(p, q, r)
    if o == Degenerate:
        return
    assert cyclic_order(q, r, p) == o
    assert cyclic_order(r, p, q) == o
    assert cyclic_order(p, r, q) == -o


@given(fractions, fractions, fractions)
def test_arc_xor(a, b, p):
    A, B, P = pt(a), pt(b), pt(p)
    if A == B or P == A or P == B:
        return
    assert arc_contains(A, B, P) != arc_contains(B, A, P)
