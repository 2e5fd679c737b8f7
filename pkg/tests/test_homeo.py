from fractions import Fraction

import pytest

from circleforge.circle import pt
from circleforge.field import QuadraticNumber
from circleforge.homeo import (
    CircleHomeo,
    HomeoError,
    Mobius,
    identity_homeo,
    interval_mobius,
    piecewise_fixing,
    rotation,
)


def doubling_like():
    """Homeo fixing 0 and 1/2 with derivative 2 at 0 (projective model)."""
    return CircleHomeo(
        [pt(0), pt("1/2")],
        [Mobius.of(2, 0, 2, 1), Mobius.of(0, 1, -2, 3)],
        name="double",
    )


def test_identity_and_rotation():
    e = identity_homeo()
    assert e.apply(pt("1/3")) == pt("1/3")
    r = rotation(Fraction(1, 4))
    assert r.apply(pt("1/8")) == pt("3/8")
    assert r.apply(pt("7/8")) == pt("1/8")


def test_doubling_moves_probe():
    g = doubling_like()
    assert g.apply(pt(0)) == pt(0)
    assert g.apply(pt("1/2")) == pt("1/2")
    assert g.apply(pt(Fraction(1, 64))) == pt(Fraction(1, 33))
    # monotone between fixed points
    a, b = g.apply(pt("1/8")), g.apply(pt("1/4"))
    assert a.angle < b.angle


def test_compose_rotations():
    r1 = rotation(Fraction(1, 4))
    r2 = rotation(Fraction(1, 3))
    c = r1.compose(r2)
    for k in range(7):
        p = pt(Fraction(k, 7))
        assert c.apply(p) == r1.apply(r2.apply(p))


def test_compose_piecewise():
    g = doubling_like()
    r = rotation(Fraction(1, 8))
    c = g.compose(r)
    for k in range(16):
        p = pt(Fraction(k, 16))
        assert c.apply(p) == g.apply(r.apply(p))
    c2 = r.compose(g)
    for k in range(16):
        p = pt(Fraction(k, 16))
        assert c2.apply(p) == r.apply(g.apply(p))


def test_inverse():
    g = doubling_like()
    gi = g.inverse()
    for k in range(32):
        p = pt(Fraction(k, 32))
        assert gi.apply(g.apply(p)) == p
        assert g.apply(gi.apply(p)) == p


def test_inverse_of_rotation_wraps():
    r = rotation(Fraction(5, 8))
    ri = r.inverse()
    for k in range(8):
        p = pt(Fraction(k, 8))
        assert ri.apply(r.apply(p)) == p


def test_non_monotone_rejected():
    with pytest.raises(HomeoError):
        CircleHomeo([pt(0)], [Mobius.of(-1, 0, 0, 1)])


def test_discontinuous_rejected():
    with pytest.raises(HomeoError):
        CircleHomeo(
            [pt(0), pt("1/2")],
            [Mobius.of(2, 0, 0, 1), Mobius.of(1, 0, 0, 1)],
        )


def test_piecewise_fixing():
    anchors = [pt(0), pt("1/4"), pt("1/2"), pt("3/4")]
    f = piecewise_fixing(anchors, [Fraction(2), Fraction(1, 2)] * 2)
    for a in anchors:
        assert f.apply(a) == a
    # speed 2 on (0, 1/4) attracts toward 1/4
    p = pt("1/8")
    assert f.apply(p).angle > p.angle
    # speed 1/2 on (1/4, 1/2) attracts toward 1/4
    q = pt("3/8")
    assert f.apply(q).angle < q.angle


def test_fixed_points_of_doubling():
    g = doubling_like()
    exact, brackets = g.fixed_points()
    assert pt(0) in exact and pt("1/2") in exact
    assert len(exact) == 2


def test_quadratic_field_homeo():
    phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    r = rotation(phi - 1)  # irrational rotation by 0.618...
    p = pt(0)
    seen = {p}
    for _ in range(5):
        p = r.apply(p)
        assert p not in seen
        seen.add(p)


def test_compose_with_field_entries():
    phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    r = rotation(phi - 1)
    g = doubling_like()
    c = g.compose(r)
    for k in range(8):
        p = pt(Fraction(k, 8))
        assert c.apply(p) == g.apply(r.apply(p))
