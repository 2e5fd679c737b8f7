from fractions import Fraction

import pytest

from circleforge.chords import FiniteLamination, Leaf, leaf
from circleforge.circle import pt
from circleforge.fixtures import cataclysm_fixture, square_4prong_fixture
from circleforge.verify import (
    FAIL,
    PASS,
    TRUNCATED,
    VACUOUS,
    ActionContext,
    TransversalityError,
    b7_falsifier,
    bifoliar_report,
    find_ideal_chain,
    flowable_report,
    interleave,
    thread,
)
from circleforge.chords import determined_gaps
from circleforge.verify import polygons_of


def square_pair():
    plus = FiniteLamination(
        "+", [leaf(0, "1/4"), leaf("1/4", "1/2"), leaf("1/2", "3/4"), leaf("3/4", 0)]
    )
    minus = FiniteLamination(
        "-",
        [
            leaf("1/8", "3/8", "-"),
            leaf("3/8", "5/8", "-"),
            leaf("5/8", "7/8", "-"),
            leaf("7/8", "1/8", "-"),
        ],
    )
    return plus, minus


def by_name(verdicts, name):
    return next(v for v in verdicts if v.condition == name)


def test_interleaved_squares_pass_iv_v_vi():
    plus, minus = square_pair()
    report = bifoliar_report(plus, minus, 1)
    assert by_name(report, "iv").ok
    assert by_name(report, "v").status == PASS
    assert by_name(report, "vi").status == PASS


def test_shared_side_fails_vi():
    plus = FiniteLamination(
        "+",
        [
            leaf(0, "1/2"),
            leaf(0, "1/4"),
            leaf("1/4", "1/2"),
            leaf("1/2", "3/4"),
            leaf("3/4", 0),
        ],
    )
    minus = FiniteLamination("-", [leaf("1/8", "5/8", "-")])
    report = bifoliar_report(plus, minus, 1)
    v = by_name(report, "vi")
    assert v.status == FAIL
    assert v.witness.endpoints == frozenset((pt(0), pt("1/2")))


def test_cataclysm_crossing_fails_vii():
    plus = FiniteLamination(
        "+",
        [leaf(0, "1/2"), leaf("1/2", "3/4")],
        removed_sides=[leaf(0, "3/4")],
    )
    # leaf inside the cataclysm region behind the pivot, unlinked with it
    minus = FiniteLamination("-", [leaf("13/16", "7/8", "-")])
    report = bifoliar_report(plus, minus, 1)
    v = by_name(report, "vii")
    assert v.status == FAIL
    gap, bad = v.witness
    assert bad.endpoints == frozenset((pt("13/16"), pt("7/8")))


def test_cataclysm_crossing_passes_when_linked():
    ex = cataclysm_fixture()
    report = bifoliar_report(ex.plus, ex.minus, 1)
    assert by_name(report, "vii").status == PASS


def test_transversality_hard_failure():
    plus = FiniteLamination("+", [leaf(0, "1/2")])
    minus = FiniteLamination("-", [leaf(0, "1/2", "-")])
    with pytest.raises(TransversalityError):
        bifoliar_report(plus, minus, 1)


def test_interleave_combinatorial():
    plus, minus = square_pair()
    gp = polygons_of(determined_gaps(plus, 1))[0]
    gm = polygons_of(determined_gaps(minus, 1))[0]
    assert interleave(gp, gm)
    assert not interleave(gp, gp)
    # alternation is combinatorial, not metric
    skew = FiniteLamination(
        "-",
        [
            leaf("1/16", "3/8", "-"),
            leaf("3/8", "5/8", "-"),
            leaf("5/8", "7/8", "-"),
            leaf("7/8", "1/16", "-"),
        ],
    )
    gs = polygons_of(determined_gaps(skew, 1))[0]
    assert interleave(gp, gs)


def test_thread_order_is_crossing_order():
    base = leaf(0, "1/2")
    crossings = [
        leaf("1/4", "3/4", "-"),
        leaf("1/8", "5/8", "-"),
        leaf("3/8", "7/8", "-"),
    ]
    th = thread(base, crossings)
    keys = ["1/8", "1/4", "3/8"]
    got = []
    for l in th:
        for e in (l.p, l.q):
            if e.angle < Fraction(1, 2):
                got.append(str(e.angle))
    assert got == keys


def test_ideal_4_chain_found():
    lp = [leaf(0, "1/4"), leaf("1/2", "3/4")]
    lm = [leaf("1/4", "1/2", "-"), leaf("3/4", 0, "-")]
    chain = find_ideal_chain(lp, lm, 2)
    assert chain is not None
    assert len(chain) == 4


def test_no_ideal_chain_on_cat_map(cat_map):
    lp = sorted(cat_map.plus.enumerate(3), key=lambda l: l.sort_key())
    lm = sorted(cat_map.minus.enumerate(3), key=lambda l: l.sort_key())
    assert find_ideal_chain(lp, lm, 2) is None


def test_cat_map_bifoliar_i_ii(cat_map):
    report = bifoliar_report(cat_map.plus, cat_map.minus, 4)
    assert by_name(report, "i").status == PASS
    assert by_name(report, "ii").status == PASS
    for name in ("iv", "v", "vi", "vii"):
        assert by_name(report, name).status == VACUOUS


def test_b1_fail_on_constructed_counterexample():
    # an element fixing two distinct thread elements of one thread
    from circleforge.homeo import piecewise_fixing

    base = leaf(0, "1/2")
    t1 = leaf("1/8", "5/8", "-")
    t2 = leaf("1/4", "3/4", "-")
    anchors = [pt(0), pt("1/8"), pt("1/4"), pt("1/2"), pt("5/8"), pt("3/4")]
    speeds = [Fraction(2), Fraction(1, 2), Fraction(2), Fraction(2), Fraction(1, 2), Fraction(2)]
    g = piecewise_fixing(anchors, speeds, name="bad")
    plus = FiniteLamination("+", [base])
    minus = FiniteLamination("-", [t1, t2])
    ctx = ActionContext(plus, minus, {"g": g}, 1, 2)
    from circleforge.verify import b1_verdict

    v = b1_verdict(ctx)
    assert v.status == FAIL
    assert "two elements" in v.note


def test_flowable_cat_map(cat_map_ctx):
    verdicts, overall = flowable_report(cat_map_ctx)
    for v in verdicts:
        assert v.ok, str(v)
    assert overall


def test_broken_translation_fails_b7(broken_ctx):
    v = b7_falsifier(broken_ctx, Fraction(1, 16))
    assert v.status == FAIL
    assert v.witness is not None
    witness_word = v.witness.word
    assert witness_word  # explicit nontrivial word


def test_b7_pass_cat_map(cat_map_ctx):
    v = b7_falsifier(cat_map_ctx, Fraction(1, 32))
    assert v.status == PASS


def test_identity_only_square_fails_b4():
    ex = square_4prong_fixture(with_action=False)
    ctx = ActionContext(ex.plus, ex.minus, {}, 1, 2)
    from circleforge.verify import b4_verdict

    v = b4_verdict(ctx)
    assert v.status == FAIL
    assert "doubly-singular" in v.note
