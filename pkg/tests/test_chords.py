from fractions import Fraction

import pytest

from circleforge.chords import (
    CATACLYSM,
    EQUAL,
    HALF_PLANE,
    LINKED,
    POLYGON,
    SHARED_ENDPOINT,
    UNDETERMINED,
    UNLINKED,
    FiniteLamination,
    LaminarityError,
    Leaf,
    OddPolygonWitness,
    Orientation,
    classify_gap,
    determined_gaps,
    ends,
    gaps,
    leaf,
    linked,
    orient,
)
from circleforge.circle import pt


def triangle():
    return [leaf(0, "1/3"), leaf("1/3", "2/3"), leaf("2/3", 0)]


def square():
    return [leaf(0, "1/4"), leaf("1/4", "1/2"), leaf("1/2", "3/4"), leaf("3/4", 0)]


def test_linked_cases():
    assert linked(leaf(0, "1/2"), leaf("1/4", "3/4")) == LINKED
    assert linked(leaf(0, "1/4"), leaf("1/2", "3/4")) == UNLINKED
    assert linked(leaf(0, "1/2"), leaf("1/2", "3/4")) == SHARED_ENDPOINT
    assert linked(leaf(0, "1/2"), leaf("1/2", 0)) == EQUAL


def test_leaf_unordered_equality():
    assert leaf("1/2", 0) == leaf(0, "1/2")
    with pytest.raises(ValueError):
        leaf("1/4", "1/4")


def test_gaps_triangle():
    reports = gaps(triangle())
    assert len(reports) == 4
    polys = [r for r in reports if r.classification == POLYGON]
    assert len(polys) == 1
    assert polys[0].side_count == 3
    others = [r for r in reports if r.classification == UNDETERMINED]
    assert all(r.side_count == 1 for r in others)


def test_gaps_empty_and_single():
    assert len(gaps([])) == 1
    reports = gaps([leaf(0, "1/2")])
    assert len(reports) == 2
    assert all(r.classification == UNDETERMINED for r in reports)


def test_gaps_rejects_linked():
    with pytest.raises(LaminarityError):
        gaps([leaf(0, "1/2"), leaf("1/4", "3/4")])


def test_gaps_side_count_invariant():
    for fam in (triangle(), square(), [leaf(0, "1/2"), leaf("1/8", "1/4")]):
        reports = gaps(fam)
        assert sum(r.side_count for r in reports) == 2 * len(fam)


def test_classify_cataclysm():
    sides = [leaf(0, "1/2"), leaf("1/2", "3/4")]
    lam = FiniteLamination("+", sides, removed_sides=[leaf(0, "3/4")])
    reports = determined_gaps(lam, 1)
    cats = [r for r in reports if r.classification == CATACLYSM]
    assert len(cats) == 1
    assert cats[0].pivot is not None
    assert cats[0].pivot.endpoints == frozenset((pt(0), pt("3/4")))


def test_classify_half_plane():
    lam = FiniteLamination("+", [leaf(0, "1/2")], removed_sides=[leaf("5/8", "7/8")])
    reports = determined_gaps(lam, 1, include_removed=True)
    hp = [r for r in reports if r.classification == HALF_PLANE]
    assert len(hp) == 1


def test_classify_polygon_retained():
    lam = FiniteLamination("+", triangle())
    reports = determined_gaps(lam, 1)
    assert any(r.classification == POLYGON for r in reports)


def test_orient_triangle_fails():
    lam = FiniteLamination("+", triangle())
    res = orient(lam, 1)
    assert isinstance(res, OddPolygonWitness)
    assert len(res.polygon) == 3


def test_orient_square_succeeds():
    lam = FiniteLamination("+", square())
    res = orient(lam, 1)
    assert isinstance(res, Orientation)
    # heads alternate: exactly two vertices receive all heads
    heads = set(res.heads.values())
    assert len(heads) == 2


def test_orient_empty():
    lam = FiniteLamination("+", [])
    assert isinstance(orient(lam, 1), Orientation)


def test_orient_two_valid_assignments():
    lam = FiniteLamination("+", square())
    res = orient(lam, 1)
    assert isinstance(res, Orientation)
    rev = res.reversed()
    assert rev.heads != res.heads
    assert set(rev.heads) == set(res.heads)


def test_ends():
    lam = FiniteLamination("+", triangle())
    assert ends(lam, 1) == frozenset((pt(0), pt("1/3"), pt("2/3")))
    assert ends(FiniteLamination("+", []), 1) == frozenset()
    lam2 = FiniteLamination("+", [leaf(0, "1/2"), leaf(0, "1/4")])
    assert ends(lam2, 1) == frozenset((pt(0), pt("1/4"), pt("1/2")))


def test_removed_side_consistency_checked():
    lam = FiniteLamination(
        "+", [leaf(0, "1/2")], removed_sides=[leaf("1/4", "3/4")]
    )
    with pytest.raises(ValueError):
        lam.check_consistency(1)
