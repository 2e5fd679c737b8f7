"""Finite-scale certifiers for bifoliar pairs and Anosov-like triples.

Every verdict is tagged with the depth (and radius) it was computed at;
falsification-only checks say so in their notes.  Failures always carry a
finite, re-checkable witness payload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .action import GroupBall, GroupElement, apply_to_leaf, ball, thread_expansion
from .action import CONTRACTS, EXPANDS
from .chords import (
    CATACLYSM,
    CROWN,
    BLOWN_UP_CROWN,
    LINKED,
    POLYGON,
    AlmostLamination,
    GapReport,
    Leaf,
    determined_gaps,
    ends,
    linked,
)
from .circle import CirclePoint, arc_contains, arc_distance, pt
from .field import QuadraticNumber

PASS = "pass_at_depth"
FAIL = "fail"
VACUOUS = "vacuous"
TRUNCATED = "truncated"


@dataclass
class Verdict:
    condition: str
    status: str
    depth: Optional[int] = None
    witness: Any = None
    note: str = ""
    scope: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def __str__(self) -> str:
        tag = self.status if self.depth is None else f"{self.status}({self.depth})"
        extra = f" [{self.note}]" if self.note else ""
        w = f" witness={self.witness}" if self.status == FAIL else ""
        return f"{self.condition}: {tag}{extra}{w}"


class TransversalityError(ValueError):
    def __init__(self, shared: Leaf) -> None:
        super().__init__(f"laminations share the leaf {shared}")
        self.shared = shared


# ---------------------------------------------------------------------------
# Threads, intervals, linking pairs


def thread(base: Leaf, opposite: Iterable[Leaf]) -> list[Leaf]:
    """Opposite-sign leaves linked with base, in crossing order along it."""
    crossings = [l for l in opposite if linked(base, l) == LINKED]
    return sorted(crossings, key=lambda l: _crossing_key(base, l))


def _crossing_key(base: Leaf, crossing: Leaf) -> QuadraticNumber:
    e = crossing_endpoint(base, crossing)
    d = e.angle - base.p.angle
    if d.sign() < 0:
        d = d + 1
    return d


def crossing_endpoint(base: Leaf, crossing: Leaf) -> CirclePoint:
    """The endpoint of the crossing leaf inside arc(base.p -> base.q)."""
    for e in (crossing.p, crossing.q):
        if arc_contains(base.p, base.q, e):
            return e
    raise ValueError(f"{crossing} does not cross {base}")


@dataclass(frozen=True)
class IntervalInThread:
    """Convex range of a thread: the base leaf plus an ordered slice."""

    base: Leaf
    elements: tuple[Leaf, ...]

    def span_contains(self, l: Leaf) -> bool:
        """l's crossing position lies within [min, max] of the interval."""
        lo = _crossing_key(self.base, self.elements[0])
        hi = _crossing_key(self.base, self.elements[-1])
        k = _crossing_key(self.base, l)
        return lo <= k <= hi

    def strictly_contains_span(self, other: IntervalInThread) -> bool:
        lo = _crossing_key(self.base, self.elements[0])
        hi = _crossing_key(self.base, self.elements[-1])
        olo = _crossing_key(self.base, other.elements[0])
        ohi = _crossing_key(self.base, other.elements[-1])
        return lo < olo and ohi < hi


@dataclass(frozen=True)
class LinkingPair:
    """(I+, I-): mutually fully linked thread intervals."""

    plus_interval: IntervalInThread  # interval in a thread of a "-" leaf: "+" leaves
    minus_interval: IntervalInThread  # interval in a thread of a "+" leaf: "-" leaves

    def check_mutual(self) -> bool:
        return all(
            linked(a, b) == LINKED
            for a in self.plus_interval.elements
            for b in self.minus_interval.elements
        )


# ---------------------------------------------------------------------------
# Bifoliar report: Theorem conditions (i)-(vii)


def _leaf_sets(plus: AlmostLamination, minus: AlmostLamination, depth: int):
    lp = sorted(plus.enumerate(depth), key=lambda l: l.sort_key())
    lm = sorted(minus.enumerate(depth), key=lambda l: l.sort_key())
    plus_sets = {l.endpoints for l in lp}
    for l in lm:
        if l.endpoints in plus_sets:
            raise TransversalityError(l)
    return lp, lm


def bifoliar_report(
    plus: AlmostLamination, minus: AlmostLamination, depth: int
) -> list[Verdict]:
    lp, lm = _leaf_sets(plus, minus, depth)
    eps = Fraction(1, 2**depth)
    out = [
        _density_verdict(lp, lm, depth, eps),
        _connectivity_verdict(lp, lm, depth),
        Verdict(
            "iii",
            VACUOUS,
            depth,
            note="endpoint multiplicity is finite at any depth; countability "
            "cannot fail on finite data",
        ),
    ]
    gaps_p = determined_gaps(plus, depth)
    gaps_m = determined_gaps(minus, depth)
    out.append(_gap_types_verdict(gaps_p, gaps_m, depth))
    out.append(_interleave_verdict(gaps_p, gaps_m, depth))
    out.append(_shared_side_verdict(gaps_p, gaps_m, depth))
    out.append(_cataclysm_crossing_verdict(gaps_p, gaps_m, lp, lm, depth))
    return out


def _density_verdict(lp, lm, depth, eps) -> Verdict:
    points = sorted(
        {e.angle for l in lp + lm for e in (l.p, l.q)}
    )
    if not points:
        return Verdict("i", FAIL, depth, witness=pt(0), note="no endpoints at all")
    worst = None
    worst_gap = None
    for i, a in enumerate(points):
        b = points[(i + 1) % len(points)] + (1 if i + 1 == len(points) else 0)
        gap = b - a
        if worst_gap is None or gap > worst_gap:
            worst_gap = gap
            worst = pt((a + b) / 2)
    if worst_gap > 2 * eps:
        return Verdict(
            "i",
            FAIL,
            depth,
            witness=worst,
            note=f"point farther than eps={eps} from every endpoint",
            scope={"eps": str(eps)},
        )
    return Verdict("i", PASS, depth, scope={"eps": str(eps)})


def _connectivity_verdict(lp, lm, depth) -> Verdict:
    leaves = lp + lm
    if len(leaves) <= 1:
        return Verdict("ii", VACUOUS, depth, note="fewer than two leaves")
    index = {l: i for i, l in enumerate(leaves)}
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, m in enumerate(leaves):
            if j not in seen and linked(leaves[i], m) == LINKED:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(leaves):
        missing = leaves[min(set(range(len(leaves))) - seen)]
        return Verdict(
            "ii", FAIL, depth, witness=missing, note="linkage graph disconnected"
        )
    return Verdict("ii", PASS, depth)


def _gap_types_verdict(gaps_p, gaps_m, depth) -> Verdict:
    bad = [
        g
        for g in gaps_p + gaps_m
        if g.classification in (CROWN, BLOWN_UP_CROWN)
    ]
    if bad:
        return Verdict("iv", FAIL, depth, witness=bad[0], note="crown-type gap")
    det = [g for g in gaps_p + gaps_m if g.is_determined()]
    if not det:
        return Verdict("iv", VACUOUS, depth, note="no determined gaps at this depth")
    return Verdict(
        "iv", PASS, depth, note=f"{len(det)} determined gaps, all polygon/cataclysm"
    )


def polygons_of(gaps: Sequence[GapReport]) -> list[GapReport]:
    return [g for g in gaps if g.classification == POLYGON]


def interleave(p_gap: GapReport, q_gap: GapReport) -> bool:
    """True iff the two polygons' vertices strictly alternate on the circle."""
    if p_gap.classification != POLYGON or q_gap.classification != POLYGON:
        raise ValueError("interleave is defined for determined polygons")
    if p_gap.side_count != q_gap.side_count:
        return False
    marked = [(v.angle, 0) for v in p_gap.boundary_vertices]
    marked += [(v.angle, 1) for v in q_gap.boundary_vertices]
    marked.sort(key=lambda t: t[0])
    if len({a for a, _ in marked}) != len(marked):
        return False
    labels = [lab for _, lab in marked]
    return all(labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels)))


def _interleave_verdict(gaps_p, gaps_m, depth) -> Verdict:
    pp, pm = polygons_of(gaps_p), polygons_of(gaps_m)
    if not pp and not pm:
        return Verdict("v", VACUOUS, depth, note="no determined polygons")
    for g, partners in ((x, pm) for x in pp):
        if not any(interleave(g, q) for q in partners):
            return Verdict("v", FAIL, depth, witness=g, note="no interleaving partner")
    for g in pm:
        if not any(interleave(g, q) for q in pp):
            return Verdict("v", FAIL, depth, witness=g, note="no interleaving partner")
    return Verdict("v", PASS, depth)


def _shared_side_verdict(gaps_p, gaps_m, depth) -> Verdict:
    for gaps in (gaps_p, gaps_m):
        polys = polygons_of(gaps)
        for i, a in enumerate(polys):
            sides_a = {l.endpoints for l in a.boundary_leaves}
            for b in polys[i + 1 :]:
                for l in b.boundary_leaves:
                    if l.endpoints in sides_a:
                        return Verdict(
                            "vi",
                            FAIL,
                            depth,
                            witness=l,
                            note="side shared by two polygons",
                        )
    if not polygons_of(gaps_p) and not polygons_of(gaps_m):
        return Verdict("vi", VACUOUS, depth, note="no determined polygons")
    return Verdict("vi", PASS, depth)


def leaf_meets_gap(l: Leaf, gap: GapReport) -> bool:
    """l crosses into the gap region: linked with a side or an endpoint sits
    strictly inside one of the region's circle arcs."""
    for side in gap.boundary_leaves:
        if linked(l, side) == LINKED:
            return True
    for a, b in gap.open_arcs:
        if a == b:
            continue
        for e in (l.p, l.q):
            if arc_contains(a, b, e):
                return True
    return False


def _cataclysm_crossing_verdict(gaps_p, gaps_m, lp, lm, depth) -> Verdict:
    cats = [(g, lm) for g in gaps_p if g.classification == CATACLYSM]
    cats += [(g, lp) for g in gaps_m if g.classification == CATACLYSM]
    if not cats:
        return Verdict("vii", VACUOUS, depth, note="no determined cataclysms")
    for gap, others in cats:
        assert gap.pivot is not None
        for l in others:
            if leaf_meets_gap(l, gap) and linked(l, gap.pivot) != LINKED:
                return Verdict(
                    "vii",
                    FAIL,
                    depth,
                    witness=(gap, l),
                    note="leaf meets cataclysm but is unlinked with its pivot",
                )
    return Verdict("vii", PASS, depth)


# ---------------------------------------------------------------------------
# Action context: cached leaf images over the ball


class ActionContext:
    """Ball plus memoized leaf images for every element."""

    def __init__(
        self,
        plus: AlmostLamination,
        minus: AlmostLamination,
        generators: dict,
        depth: int,
        radius: int,
    ) -> None:
        self.plus = plus
        self.minus = minus
        self.depth = depth
        self.radius = radius
        self.ball = ball(generators, radius)
        self.lp = sorted(plus.enumerate(depth), key=lambda l: l.sort_key())
        self.lm = sorted(minus.enumerate(depth), key=lambda l: l.sort_key())
        self._images: dict[tuple[int, Leaf], Leaf] = {}
        self._threads: dict[Leaf, list[Leaf]] = {}

    def image(self, idx: int, l: Leaf) -> Leaf:
        key = (idx, l)
        got = self._images.get(key)
        if got is None:
            got = apply_to_leaf(self.ball.elements[idx].homeo, l)
            self._images[key] = got
        return got

    def thread_of(self, l: Leaf) -> list[Leaf]:
        got = self._threads.get(l)
        if got is None:
            opposite = self.lm if l.sign == "+" else self.lp
            got = thread(l, opposite)
            self._threads[l] = got
        return got

    def fixed_leaves(self, idx: int, leaves: Sequence[Leaf]) -> list[Leaf]:
        out = []
        for l in leaves:
            if self.image(idx, l).endpoints == l.endpoints:
                out.append(l)
        return out


# ---------------------------------------------------------------------------
# (B1)-(B6)


def anosov_like_report(
    ctx: ActionContext,
    max_sampled_pairs: int = 12,
) -> list[Verdict]:
    out = [b1_verdict(ctx)]
    pairs = sampled_linking_pairs(ctx, max_sampled_pairs)
    out.append(b2_verdict(ctx, pairs))
    out.append(b3_verdict(ctx, pairs))
    out.append(b4_verdict(ctx))
    out.append(b5_verdict(ctx))
    out.append(b6_verdict(ctx))
    return out


def b1_verdict(ctx: ActionContext) -> Verdict:
    depth = ctx.depth
    found_any = False
    for idx, el in enumerate(ctx.ball.elements):
        if not el.word:
            continue
        for base_leaves, base in ((ctx.lp, "+"), (ctx.lm, "-")):
            for lam in ctx.fixed_leaves(idx, base_leaves):
                th = ctx.thread_of(lam)
                fixed = [m for m in th if ctx.image(idx, m).endpoints == m.endpoints]
                if len(fixed) > 1:
                    return Verdict(
                        "B1",
                        FAIL,
                        depth,
                        witness=(el.word, fixed[0], fixed[1]),
                        note="element fixes two elements of one thread",
                        scope={"radius": ctx.radius},
                    )
                if len(fixed) == 1:
                    found_any = True
                    mu = fixed[0]
                    e1 = _cached_thread_expansion(ctx, idx, lam, th, mu)
                    e2 = _cached_thread_expansion(
                        ctx, idx, mu, ctx.thread_of(mu), lam
                    )
                    if {e1, e2} != {EXPANDS, CONTRACTS}:
                        return Verdict(
                            "B1",
                            FAIL,
                            depth,
                            witness=(el.word, lam, mu, e1, e2),
                            note="expansion types not opposite at fixed pair",
                            scope={"radius": ctx.radius},
                        )
    if not found_any:
        return Verdict(
            "B1", VACUOUS, depth, note="no ball element fixes an enumerated pair",
            scope={"radius": ctx.radius},
        )
    return Verdict("B1", PASS, depth, scope={"radius": ctx.radius})


def _cached_thread_expansion(
    ctx: ActionContext,
    idx: int,
    base: Leaf,
    th: list[Leaf],
    fixed_el: Leaf,
    max_samples: int = 16,
) -> str:
    """Thread expansion relative to the fixed element, through the image
    cache and with an evenly spaced sample of the thread."""
    anchor = _crossing_key(base, fixed_el)
    if len(th) > max_samples:
        step = len(th) / max_samples
        sample = [th[int(i * step)] for i in range(max_samples)]
    else:
        sample = th
    away = toward = 0
    for l in sample:
        if l.endpoints == fixed_el.endpoints:
            continue
        img = ctx.image(idx, l)
        try:
            kb = _crossing_key(base, l)
            ka = _crossing_key(base, img)
        except ValueError:
            continue
        db = kb - anchor
        if db.sign() < 0:
            db = -db
        da = ka - anchor
        if da.sign() < 0:
            da = -da
        s = (da - db).sign()
        if s > 0:
            away += 1
        elif s < 0:
            toward += 1
    if away and not toward:
        return EXPANDS
    if toward and not away:
        return CONTRACTS
    return "neither"


def sampled_linking_pairs(ctx: ActionContext, count: int) -> list[LinkingPair]:
    """Linking pairs sampled around fixed pairs of ball elements (falling back
    to the first enumerated crossings), with one-step thread windows."""
    seeds: list[tuple[Leaf, Leaf]] = []
    for idx, el in enumerate(ctx.ball.elements):
        if not el.word:
            continue
        if len(seeds) >= count:
            break
        for lam in ctx.fixed_leaves(idx, ctx.lp):
            for mu in ctx.fixed_leaves(idx, ctx.thread_of(lam)):
                seeds.append((lam, mu))
    for lam in ctx.lp:
        th = ctx.thread_of(lam)
        for mu in th[:2]:
            seeds.append((lam, mu))
        if len(seeds) >= 4 * count:
            break
    uniq: list[tuple[Leaf, Leaf]] = []
    seen = set()
    for lam, mu in seeds:
        key = (lam.endpoints, mu.endpoints)
        if key not in seen:
            seen.add(key)
            uniq.append((lam, mu))
        if len(uniq) >= count:
            break
    out = []
    for lam, mu in uniq:
        th_lam = ctx.thread_of(lam)  # "-" leaves crossing lam
        th_mu = ctx.thread_of(mu)  # "+" leaves crossing mu
        i = _index_in_thread(lam, th_lam, mu)
        j = _index_in_thread(mu, th_mu, lam)
        if i is None or j is None:
            continue
        minus_elems = tuple(th_lam[max(0, i - 1) : i + 2])
        plus_elems = tuple(th_mu[max(0, j - 1) : j + 2])
        lp_ = LinkingPair(
            IntervalInThread(mu, plus_elems), IntervalInThread(lam, minus_elems)
        )
        if lp_.check_mutual():
            out.append(lp_)
    return out


def _index_in_thread(base: Leaf, th: list[Leaf], element: Leaf) -> Optional[int]:
    for i, l in enumerate(th):
        if l.endpoints == element.endpoints:
            return i
    return None


def b2_verdict(ctx: ActionContext, pairs: list[LinkingPair]) -> Verdict:
    if not pairs:
        return Verdict("B2", VACUOUS, ctx.depth, note="no sampled linking pairs")
    bases: list[tuple[Leaf, Leaf]] = []
    for lam in ctx.lp[:4]:
        th = ctx.thread_of(lam)
        if th:
            bases.append((lam, th[0]))
    best_miss = None
    for lam0, mu0 in bases:
        ok = True
        for pair in pairs:
            if not any(
                _moves_base_into(ctx, idx, lam0, mu0, pair)
                for idx, el in enumerate(ctx.ball.elements)
                if el.word
            ):
                ok = False
                best_miss = pair
                break
        if ok:
            return Verdict(
                "B2",
                PASS,
                ctx.depth,
                note="witness base pair found on the sampled grid "
                "(falsification-only)",
                scope={"radius": ctx.radius, "pairs": len(pairs)},
            )
    status = FAIL if ctx.ball.exhausted else TRUNCATED
    return Verdict(
        "B2",
        status,
        ctx.depth,
        witness=best_miss if status == FAIL else None,
        note="no sampled base pair reaches every sampled linking pair"
        + ("" if status == FAIL else " within the truncated ball"),
        scope={"radius": ctx.radius, "pairs": len(pairs)},
    )


def _moves_base_into(
    ctx: ActionContext, idx: int, lam0: Leaf, mu0: Leaf, pair: LinkingPair
) -> bool:
    gl = ctx.image(idx, lam0)
    gm = ctx.image(idx, mu0)
    try:
        return pair.minus_interval.base.endpoints != gl.endpoints and pair.plus_interval.span_contains(
            gl
        ) and pair.minus_interval.span_contains(gm)
    except ValueError:
        return False


def b3_verdict(ctx: ActionContext, pairs: list[LinkingPair]) -> Verdict:
    if not pairs:
        return Verdict("B3", VACUOUS, ctx.depth, note="no sampled linking pairs")
    for pair in pairs:
        if not any(
            _contracts_pair(ctx, idx, pair)
            for idx, el in enumerate(ctx.ball.elements)
            if el.word
        ):
            status = FAIL if ctx.ball.exhausted else TRUNCATED
            return Verdict(
                "B3",
                status,
                ctx.depth,
                witness=pair if status == FAIL else None,
                note="no contracting element for a sampled linking pair"
                + ("" if status == FAIL else " within the truncated ball"),
                scope={"radius": ctx.radius, "pairs": len(pairs)},
            )
    return Verdict(
        "B3",
        PASS,
        ctx.depth,
        note="falsification-only: contracting elements found on samples",
        scope={"radius": ctx.radius, "pairs": len(pairs)},
    )


def _contracts_pair(ctx: ActionContext, idx: int, pair: LinkingPair) -> bool:
    try:
        g_plus = IntervalInThread(
            ctx.image(idx, pair.plus_interval.base),
            tuple(ctx.image(idx, l) for l in pair.plus_interval.elements),
        )
        g_minus = IntervalInThread(
            ctx.image(idx, pair.minus_interval.base),
            tuple(ctx.image(idx, l) for l in pair.minus_interval.elements),
        )
    except ValueError:
        return False
    # compare spans inside the original threads; images must stay crossings
    try:
        forward = _span_inside(pair.plus_interval, g_plus) and _span_inside(
            g_minus, pair.minus_interval
        )
        backward = _span_inside(g_plus, pair.plus_interval) and _span_inside(
            pair.minus_interval, g_minus
        )
    except ValueError:
        return False
    return forward or backward


def _span_inside(outer: IntervalInThread, inner: IntervalInThread) -> bool:
    """inner's elements all lie strictly within outer's span (outer's base)."""
    lo = _crossing_key(outer.base, outer.elements[0])
    hi = _crossing_key(outer.base, outer.elements[-1])
    for l in inner.elements:
        k = _crossing_key(outer.base, l)
        if not (lo < k < hi):
            return False
    return True


def b4_verdict(ctx: ActionContext, max_pairs: int = 8) -> Verdict:
    depth = ctx.depth
    pairs: list[tuple[Leaf, Leaf]] = []
    for lam in ctx.lp[: max_pairs // 2 + 2]:
        th = ctx.thread_of(lam)
        if th:
            pairs.append((lam, th[0]))
        if len(pairs) >= max_pairs:
            break
    for lam, mu in pairs:
        stab = []
        for idx, el in enumerate(ctx.ball.elements):
            if not el.word:
                continue
            if (
                ctx.image(idx, lam).endpoints == lam.endpoints
                and ctx.image(idx, mu).endpoints == mu.endpoints
            ):
                stab.append(idx)
        if stab and not _is_cyclic(ctx, stab):
            return Verdict(
                "B4",
                FAIL,
                depth,
                witness=(lam, mu, [ctx.ball.elements[i].word for i in stab]),
                note="stabilizer not generated by a single shortest element",
                scope={"radius": ctx.radius},
            )
    v = _b4_singular_clause(ctx)
    if v is not None:
        return v
    return Verdict("B4", PASS, depth, scope={"radius": ctx.radius})


def _is_cyclic(ctx: ActionContext, stab: list[int]) -> bool:
    """All stabilizing words are canonical-key powers of a shortest one."""
    shortest = min(stab, key=lambda i: ctx.ball.elements[i].length)
    s = ctx.ball.elements[shortest].homeo
    powers = {s.canonical_key()}
    fwd = s
    bwd = s.inverse()
    cur_f, cur_b = fwd, bwd
    for _ in range(ctx.radius):
        powers.add(cur_f.canonical_key())
        powers.add(cur_b.canonical_key())
        cur_f = cur_f.compose(s)
        cur_b = cur_b.compose(bwd)
    return all(ctx.ball.elements[i].homeo.canonical_key() in powers for i in stab)


def _b4_singular_clause(ctx: ActionContext) -> Optional[Verdict]:
    """Doubly-singular pairs (interleaving determined polygon pairs) must have
    nontrivial stabilizer."""
    gaps_p = [g for g in determined_gaps(ctx.plus, ctx.depth) if g.classification == POLYGON]
    gaps_m = [g for g in determined_gaps(ctx.minus, ctx.depth) if g.classification == POLYGON]
    for gp in gaps_p:
        for gm in gaps_m:
            if not interleave(gp, gm):
                continue
            if not _polygon_pair_has_stabilizer(ctx, gp, gm):
                return Verdict(
                    "B4",
                    FAIL,
                    ctx.depth,
                    witness=(gp, gm),
                    note="doubly-singular pair with trivial ball stabilizer",
                    scope={"radius": ctx.radius},
                )
    return None


def _polygon_pair_has_stabilizer(
    ctx: ActionContext, gp: GapReport, gm: GapReport
) -> bool:
    sides_p = {l.endpoints for l in gp.boundary_leaves}
    sides_m = {l.endpoints for l in gm.boundary_leaves}
    for idx, el in enumerate(ctx.ball.elements):
        if not el.word:
            continue
        if {ctx.image(idx, l).endpoints for l in gp.boundary_leaves} == sides_p and {
            ctx.image(idx, l).endpoints for l in gm.boundary_leaves
        } == sides_m:
            return True
    return False


def b5_verdict(ctx: ActionContext) -> Verdict:
    cats = [
        g
        for g in determined_gaps(ctx.plus, ctx.depth)
        + determined_gaps(ctx.minus, ctx.depth)
        if g.classification == CATACLYSM
    ]
    if not cats:
        return Verdict("B5", VACUOUS, ctx.depth, note="no determined cataclysms")
    for gap in cats:
        sides = list(gap.boundary_leaves)
        for i, l1 in enumerate(sides):
            for l2 in sides[i + 1 :]:
                if not any(
                    ctx.image(idx, l1).endpoints == l1.endpoints
                    and ctx.image(idx, l2).endpoints == l2.endpoints
                    for idx, el in enumerate(ctx.ball.elements)
                    if el.word
                ):
                    status = FAIL if ctx.ball.exhausted else TRUNCATED
                    return Verdict(
                        "B5",
                        status,
                        ctx.depth,
                        witness=(l1, l2) if status == FAIL else None,
                        note="no element fixes two cataclysm sides simultaneously"
                        + ("" if status == FAIL else " within the truncated ball"),
                        scope={"radius": ctx.radius},
                    )
    return Verdict("B5", PASS, ctx.depth, scope={"radius": ctx.radius})


def b6_verdict(ctx: ActionContext, max_n: int = 2) -> Verdict:
    chain = find_ideal_chain(ctx.lp, ctx.lm, 2)
    if chain is not None:
        return Verdict(
            "B6", FAIL, ctx.depth, witness=chain, note="ideal 4-chain found"
        )
    return Verdict("B6", PASS, ctx.depth)


def find_ideal_chain(
    lp: Sequence[Leaf], lm: Sequence[Leaf], n: int
) -> Optional[tuple[CirclePoint, ...]]:
    """Exact search for an ideal 2n-chain over the enumerated leaves."""
    if n > 4:
        raise ValueError("ideal-chain search capped at 2n = 8")
    by_end_p: dict[CirclePoint, list[Leaf]] = {}
    for l in lp:
        by_end_p.setdefault(l.p, []).append(l)
        by_end_p.setdefault(l.q, []).append(l)
    by_end_m: dict[CirclePoint, list[Leaf]] = {}
    for l in lm:
        by_end_m.setdefault(l.p, []).append(l)
        by_end_m.setdefault(l.q, []).append(l)

    def extend(path: list[CirclePoint], want_minus: bool) -> Optional[tuple]:
        if len(path) == 2 * n:
            closing = by_end_m.get(path[-1], [])
            for l in closing:
                if l.other(path[-1]) == path[0] and _cyclically_positive(path):
                    return tuple(path)
            return None
        table = by_end_m if want_minus else by_end_p
        for l in table.get(path[-1], []):
            nxt = l.other(path[-1])
            if nxt in path:
                continue
            got = extend(path + [nxt], not want_minus)
            if got is not None:
                return got
        return None

    for l in lp:
        for start in (l.p, l.q):
            got = extend([start, l.other(start)], True)
            if got is not None:
                return got
    return None


def _cyclically_positive(path: Sequence[CirclePoint]) -> bool:
    angles = [p.angle for p in path]
    start = 0
    for i in range(1, len(angles)):
        if angles[i] < angles[start]:
            start = i
    rotated = angles[start:] + angles[:start]
    return all(rotated[i] < rotated[i + 1] for i in range(len(rotated) - 1))


# ---------------------------------------------------------------------------
# (B7) falsifier and the flowable report


@dataclass
class B7Witness:
    word: tuple
    base: Leaf
    second: Leaf
    third: Leaf

    def __str__(self) -> str:
        from .action import word_str

        return (
            f"word {word_str(self.word)} moves ({self.base},{self.second}) and "
            f"({self.base},{self.third}) within tolerance"
        )


def b7_falsifier(
    ctx: ActionContext,
    eps: Fraction = Fraction(1, 32),
    max_triples: int = 8,
    probe_extra: Optional[int] = None,
) -> Verdict:
    """Searches the ball for a nontrivial element moving two leaf pairs that
    share a leaf by less than eps in both proxies (arc displacement AND
    strictly-between probe count at depth + radius)."""
    if probe_extra is None:
        probe_extra = ctx.radius
    probe_depth = ctx.depth + probe_extra
    probes_p = sorted(ctx.plus.enumerate(probe_depth), key=lambda l: l.sort_key())
    probes_m = sorted(ctx.minus.enumerate(probe_depth), key=lambda l: l.sort_key())

    triples = _sample_triples(ctx, max_triples)
    cache: dict[tuple[int, frozenset], bool] = {}

    def small(idx: int, l: Leaf) -> bool:
        key = (idx, l.endpoints)
        got = cache.get(key)
        if got is None:
            probes = probes_p if l.sign == "+" else probes_m
            got = _small_displacement(ctx, idx, l, eps, probes)
            cache[key] = got
        return got

    for idx, el in enumerate(ctx.ball.elements):
        if not el.word:
            continue
        for base, second, third in triples:
            if (
                small(idx, base)
                and small(idx, second)
                and small(idx, third)
            ):
                return Verdict(
                    "B7",
                    FAIL,
                    ctx.depth,
                    witness=B7Witness(el.word, base, second, third),
                    note="nontrivial element moves both pairs within eps",
                    scope={
                        "eps": str(eps),
                        "radius": ctx.radius,
                        "probe_depth": probe_depth,
                    },
                )
    return Verdict(
        "B7",
        PASS,
        ctx.depth,
        note=f"no violation up to eps={eps}, radius={ctx.radius}",
        scope={"eps": str(eps), "radius": ctx.radius, "probe_depth": probe_depth},
    )


def _sample_triples(ctx: ActionContext, count: int) -> list[tuple[Leaf, Leaf, Leaf]]:
    out: list[tuple[Leaf, Leaf, Leaf]] = []
    for base_leaves in (ctx.lp, ctx.lm):
        for lam in base_leaves:
            th = ctx.thread_of(lam)
            if len(th) >= 2:
                mid = len(th) // 2
                out.append((lam, th[mid - 1], th[mid]))
                if len(th) >= 4:
                    out.append((lam, th[0], th[-1]))
            if len(out) >= count:
                break
        if len(out) >= count:
            break
    return out[:count]


def _small_displacement(
    ctx: ActionContext, idx: int, l: Leaf, eps: Fraction, probes: Sequence[Leaf]
) -> bool:
    img = ctx.image(idx, l)
    if img.endpoints == l.endpoints:
        return True
    d1 = arc_distance(l.p, img.p) + arc_distance(l.q, img.q)
    d2 = arc_distance(l.p, img.q) + arc_distance(l.q, img.p)
    arc = d1 if (d2 - d1).sign() >= 0 else d2
    if (arc - eps).sign() >= 0:
        return False
    return not _any_between(l, img, probes)


def _any_between(a: Leaf, b: Leaf, probes: Sequence[Leaf]) -> bool:
    """Some probe leaf strictly separates a from b in their common band."""
    for m in probes:
        if m.endpoints == a.endpoints or m.endpoints == b.endpoints:
            continue
        if _separates_band(m, a, b):
            return True
    return False


def _separates_band(m: Leaf, a: Leaf, b: Leaf) -> bool:
    sa = _whole_side(m, a)
    sb = _whole_side(m, b)
    return sa is not None and sb is not None and sa != sb


def _whole_side(m: Leaf, l: Leaf) -> Optional[int]:
    sides = set()
    for e in (l.p, l.q):
        if m.has_endpoint(e):
            return None
        sides.add(1 if arc_contains(m.p, m.q, e) else 0)
    if len(sides) != 1:
        return None
    return sides.pop()


def flowable_report(
    ctx: ActionContext, eps: Fraction = Fraction(1, 32)
) -> tuple[list[Verdict], bool]:
    verdicts = [b1_verdict(ctx), b4_verdict(ctx), b7_falsifier(ctx, eps)]
    overall = all(v.ok for v in verdicts)
    return verdicts, overall
