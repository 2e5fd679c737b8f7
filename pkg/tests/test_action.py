import random
from fractions import Fraction

import pytest

from circleforge.action import (
    CONTRACTS,
    EXPANDS,
    NEITHER,
    MixedCharacterError,
    apply_to_leaf,
    ball,
    check_invariance,
    expansion_type,
    invert_word,
    orientable_doubling,
    orientation_character,
    word_str,
)
from circleforge.chords import FiniteLamination, Leaf, Orientation, leaf, orient
from circleforge.circle import pt
from circleforge.field import QuadraticNumber
from circleforge.fixtures import cat_map_suspension, square_4prong_fixture
from circleforge.homeo import CircleHomeo, Mobius, identity_homeo, rotation


def doubling_like():
    return CircleHomeo(
        [pt(0), pt("1/2")],
        [Mobius.of(2, 0, 2, 1), Mobius.of(0, 1, -2, 3)],
        name="g",
    )


def golden():
    return QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)


def test_ball_free_two_generators():
    g1 = doubling_like()
    g2 = rotation(Fraction(1, 4)).compose(g1).compose(rotation(Fraction(-1, 4)))
    b = ball({"a": g1, "b": g2}, 2)
    assert len(b.elements) == 17  # 1 + 4 + 12
    assert not b.exhausted


def test_ball_infinite_order_generator():
    b = ball({"r": rotation(golden() - 1)}, 3)
    assert len(b.elements) == 7
    assert not b.exhausted


def test_ball_involution():
    b = ball({"r": rotation(Fraction(1, 2))}, 3)
    assert len(b.elements) == 2
    assert b.exhausted
    assert b.merged  # r.r = 1 was observed and logged


def test_ball_radius_cap():
    with pytest.raises(ValueError):
        ball({"r": rotation(Fraction(1, 2))}, 9)


def test_apply_respects_composition():
    ex = cat_map_suspension()
    b = ball(ex.generators, 2)
    rng = random.Random(7)
    els = b.elements
    for _ in range(25):
        g = rng.choice(els)
        h = rng.choice(els)
        p = pt(Fraction(rng.randint(0, 63), 64))
        gh = g.homeo.compose(h.homeo)
        assert gh.apply(p) == g.homeo.apply(h.homeo.apply(p))


def test_invariance_identity_and_rotation():
    sq = FiniteLamination(
        "+", [leaf(0, "1/4"), leaf("1/4", "1/2"), leaf("1/2", "3/4"), leaf("3/4", 0)]
    )
    assert check_invariance(sq, identity_homeo(), 1) is None
    assert check_invariance(sq, rotation(Fraction(1, 4)), 1) is None
    w = check_invariance(sq, rotation(Fraction(1, 8)), 1)
    assert w is not None
    assert w.image.endpoints == frozenset((pt("1/8"), pt("3/8"))) or w.direction == -1


def test_invariance_cat_map():
    ex = cat_map_suspension()
    for g in ex.generators.values():
        assert check_invariance(ex.plus, g, 2) is None
        assert check_invariance(ex.minus, g, 2) is None


def test_orientation_character_identity():
    sq = FiniteLamination(
        "+", [leaf(0, "1/4"), leaf("1/4", "1/2"), leaf("1/2", "3/4"), leaf("3/4", 0)]
    )
    o = orient(sq, 1)
    assert isinstance(o, Orientation)
    assert orientation_character(identity_homeo(), o) == 1


def test_orientation_character_reverser():
    sq = FiniteLamination(
        "+", [leaf(0, "1/4"), leaf("1/4", "1/2"), leaf("1/2", "3/4"), leaf("3/4", 0)]
    )
    o = orient(sq, 1)
    r = rotation(Fraction(1, 4))
    # rotating the square by one vertex reverses the alternating orientation
    assert orientation_character(r, o) == -1
    r2 = rotation(Fraction(1, 2))
    assert orientation_character(r2, o) == 1
    # homomorphism property on this sample: char(r)^2 == char(r^2)
    assert orientation_character(r.compose(r), o) == 1


def test_orientable_doubling_all_positive():
    gens = [("a", rotation(Fraction(1, 8)))]
    out = orientable_doubling(gens, [1])
    assert len(out) == 1
    assert out[0][0] == (("a", 1),)


def test_orientable_doubling_single_negative():
    a = rotation(Fraction(1, 8))
    out = orientable_doubling([("a", a)], [-1])
    assert len(out) == 1
    word, h = out[0]
    assert word == (("a", 1), ("a", 1))
    assert h.apply(pt(0)) == pt("1/4")


def test_orientable_doubling_mixed():
    a = rotation(Fraction(1, 8))
    b = rotation(golden() - 1)
    out = orientable_doubling([("a", a), ("b", b)], [-1, 1])
    words = {word_str(w) for w, _ in out}
    assert words == {"a a", "b", "a b a^-1"}


def test_expansion_type_doubling():
    g = doubling_like()
    l = Leaf(pt(0), pt("1/2"), "+")
    probe = pt(Fraction(1, 64))
    assert expansion_type(g, l, probe) == EXPANDS
    assert expansion_type(g.inverse(), l, probe) == CONTRACTS
    assert expansion_type(identity_homeo(), l, probe) == NEITHER


def test_expansion_requires_fixed_leaf():
    g = doubling_like()
    with pytest.raises(ValueError):
        expansion_type(g, Leaf(pt("1/8"), pt("5/8"), "+"), pt("1/4"))


def test_invert_word():
    w = (("a", 1), ("b", -1))
    assert invert_word(w) == (("b", 1), ("a", -1))
