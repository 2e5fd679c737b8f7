"""Leaves, almost laminations, gaps and orientations.

A leaf is an unordered pair of distinct circle points tagged with the
lamination sign it belongs to.  Laminations are intensional: a bounded
enumeration plus a membership oracle, so every verdict downstream is
"at depth k" and never claims convergence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Optional, Sequence

from .circle import CirclePoint, arc_contains, cyclic_order, pt
from .field import QuadraticNumber

Sign = Literal["+", "-"]

LINKED = "linked"
UNLINKED = "unlinked"
SHARED_ENDPOINT = "shared_endpoint"
EQUAL = "equal"


@dataclass(frozen=True)
class Leaf:
    """Unordered pair of distinct circle points; equality ignores order."""

    p: CirclePoint
    q: CirclePoint
    sign: Sign = "+"

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise ValueError(f"leaf endpoints must be distinct, got {self.p}")
        if self.q.angle < self.p.angle:
            a, b = self.p, self.q
            object.__setattr__(self, "p", b)
            object.__setattr__(self, "q", a)

    @property
    def endpoints(self) -> frozenset[CirclePoint]:
        return frozenset((self.p, self.q))

    def other(self, e: CirclePoint) -> CirclePoint:
        if e == self.p:
            return self.q
        if e == self.q:
            return self.p
        raise ValueError(f"{e} is not an endpoint of {self}")

    def has_endpoint(self, e: CirclePoint) -> bool:
        return e == self.p or e == self.q

    def sort_key(self) -> tuple:
        return (self.p.angle.a, self.p.angle.b, self.q.angle.a, self.q.angle.b)

    def __repr__(self) -> str:
        return f"Leaf({self.p.angle}, {self.q.angle}, {self.sign!r})"


def leaf(a: object, b: object, sign: Sign = "+") -> Leaf:
    return Leaf(pt(a), pt(b), sign)  # type: ignore[arg-type]


def linked(l1: Leaf, l2: Leaf) -> str:
    """Classify the relative position of two leaves on the circle."""
    if l1.endpoints == l2.endpoints:
        return EQUAL
    if l1.endpoints & l2.endpoints:
        return SHARED_ENDPOINT
    inside = sum(1 for e in (l2.p, l2.q) if arc_contains(l1.p, l1.q, e))
    return LINKED if inside == 1 else UNLINKED


def is_laminar(leaves: Iterable[Leaf]) -> Optional[tuple[Leaf, Leaf]]:
    """None if pairwise unlinked (shared endpoints allowed); else a witness pair."""
    ls = list(leaves)
    for i, a in enumerate(ls):
        for b in ls[i + 1 :]:
            if linked(a, b) == LINKED:
                return (a, b)
    return None


class LaminarityError(ValueError):
    def __init__(self, witness: tuple[Leaf, Leaf]) -> None:
        super().__init__(f"linked pair in laminar input: {witness[0]} x {witness[1]}")
        self.witness = witness


# ---------------------------------------------------------------------------
# Almost laminations


class AlmostLamination:
    """Bounded enumeration plus membership oracle, with declared removed sides."""

    def __init__(
        self,
        sign: Sign,
        enumerate_fn: Callable[[int], frozenset[Leaf]],
        contains_fn: Callable[[Leaf], bool],
        removed_sides: Iterable[Leaf] = (),
        field_d: int = 0,
        metadata: Optional[dict] = None,
    ) -> None:
        self.sign: Sign = sign
        self._enumerate = enumerate_fn
        self._contains = contains_fn
        self.removed_sides = frozenset(removed_sides)
        self.field_d = field_d
        self.metadata = dict(metadata or {})

    def enumerate(self, depth: int) -> frozenset[Leaf]:
        return self._enumerate(depth)

    def contains(self, l: Leaf) -> bool:
        return self._contains(l)

    def check_consistency(self, depth: int) -> None:
        leaves = self.enumerate(depth)
        witness = is_laminar(leaves)
        if witness is not None:
            raise LaminarityError(witness)
        for r in self.removed_sides:
            if self.contains(r):
                raise ValueError(f"declared removed side {r} is a member")
            for l in leaves:
                if linked(r, l) == LINKED:
                    raise ValueError(f"removed side {r} linked with member {l}")


class FiniteLamination(AlmostLamination):
    def __init__(
        self,
        sign: Sign,
        leaves: Iterable[Leaf],
        removed_sides: Iterable[Leaf] = (),
        field_d: int = 0,
        metadata: Optional[dict] = None,
    ) -> None:
        store = frozenset(Leaf(l.p, l.q, sign) for l in leaves)
        super().__init__(
            sign,
            lambda depth: store,
            lambda l: Leaf(l.p, l.q, sign) in store,
            (Leaf(l.p, l.q, sign) for l in removed_sides),
            field_d,
            metadata,
        )
        self.leaves = store


class OrbitLamination(AlmostLamination):
    """Orbit of seed leaves under a word ball of circle homeomorphisms.

    enumerate(k) applies all words of length <= k to the seeds.  contains()
    searches one level beyond the deepest enumeration requested so far, which
    is what invariance checking at depth k needs.
    """

    def __init__(
        self,
        sign: Sign,
        seeds: Iterable[Leaf],
        generators: Sequence,  # CircleHomeo list; untyped to avoid an import cycle
        removed_sides: Iterable[Leaf] = (),
        field_d: int = 0,
        metadata: Optional[dict] = None,
        contains_slack: int = 1,
    ) -> None:
        self.seeds = tuple(Leaf(l.p, l.q, sign) for l in seeds)
        self.generators = list(generators)
        self.contains_slack = contains_slack
        self._levels: list[frozenset[Leaf]] = [frozenset(self.seeds)]
        self._depth_seen = 0
        super().__init__(
            sign,
            self._enum,
            self._member,
            (Leaf(l.p, l.q, sign) for l in removed_sides),
            field_d,
            metadata,
        )

    def _enum(self, depth: int) -> frozenset[Leaf]:
        self._depth_seen = max(self._depth_seen, depth)
        return self._levels_to(depth)

    def _levels_to(self, depth: int) -> frozenset[Leaf]:
        while len(self._levels) <= depth:
            maps = []
            for g in self.generators:
                maps.append(g)
                maps.append(g.inverse())
            current = self._levels[-1]
            nxt = set(current)
            for l in current:
                for m in maps:
                    nxt.add(Leaf(m.apply(l.p), m.apply(l.q), self.sign))
            self._levels.append(frozenset(nxt))
        return self._levels[depth]

    def _member(self, l: Leaf) -> bool:
        probe_depth = self._depth_seen + self.contains_slack
        return Leaf(l.p, l.q, self.sign) in self._levels_to(probe_depth)


def ends(src: AlmostLamination, depth: int) -> frozenset[CirclePoint]:
    out: set[CirclePoint] = set()
    for l in src.enumerate(depth):
        out.add(l.p)
        out.add(l.q)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Laminar forest (chords cut into a nested interval family)


@dataclass
class _Forest:
    cut: CirclePoint
    intervals: list[tuple[QuadraticNumber, QuadraticNumber, Leaf]]
    children: dict[int, list[int]]  # -1 is the virtual root
    parent: dict[int, int]

    def key_to_point(self, k: QuadraticNumber) -> CirclePoint:
        return pt(k + self.cut.angle)


def _cut_key(point: CirclePoint, cut: CirclePoint) -> QuadraticNumber:
    d = point.angle - cut.angle
    return d + 1 if d.sign() < 0 else d


def _build_forest(ls: Sequence[Leaf]) -> _Forest:
    endpoints = sorted({e.angle for l in ls for e in (l.p, l.q)})
    last, first = endpoints[-1], endpoints[0]
    cut = pt(last + ((first + 1) - last) / 2)

    intervals = []
    for l in ls:
        ka, kb = _cut_key(l.p, cut), _cut_key(l.q, cut)
        lo, hi = (ka, kb) if ka < kb else (kb, ka)
        intervals.append((lo, hi, l))
    intervals.sort(key=lambda t: (t[0], -t[1]))

    children: dict[int, list[int]] = {-1: []}
    parent: dict[int, int] = {}
    stack: list[int] = []
    for i, (lo, hi, _) in enumerate(intervals):
        children[i] = []
        while stack:
            plo, phi, _ = intervals[stack[-1]]
            if plo <= lo and hi <= phi:
                break
            stack.pop()
        par = stack[-1] if stack else -1
        children[par].append(i)
        parent[i] = par
        stack.append(i)
    return _Forest(cut, intervals, children, parent)


# ---------------------------------------------------------------------------
# Gaps

POLYGON = "polygon"
CATACLYSM = "cataclysm"
CROWN = "crown"
BLOWN_UP_CROWN = "blown_up_crown"
HALF_PLANE = "half_plane"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class GapReport:
    """One complementary region of a finite chord family."""

    boundary_vertices: tuple[CirclePoint, ...]
    boundary_leaves: tuple[Leaf, ...]
    classification: str = UNDETERMINED
    pivot: Optional[Leaf] = None
    # Circle arcs on the region boundary; a closed polygon has none.
    open_arcs: tuple[tuple[CirclePoint, CirclePoint], ...] = ()

    @property
    def side_count(self) -> int:
        return len(self.boundary_leaves)

    def is_determined(self) -> bool:
        return self.classification != UNDETERMINED


def gaps(leaves: Iterable[Leaf]) -> list[GapReport]:
    """Complementary regions of a finite pairwise-unlinked chord family.

    Cutting the circle at a non-endpoint turns the chords into a laminar
    interval family; regions are the nodes of the containment forest plus
    the root region around the cut point.
    """
    ls = sorted(set(leaves), key=lambda l: l.sort_key())
    witness = is_laminar(ls)
    if witness is not None:
        raise LaminarityError(witness)
    if not ls:
        return [GapReport((), (), UNDETERMINED)]

    forest = _build_forest(ls)
    reports = []
    for idx in [-1] + list(range(len(forest.intervals))):
        reports.append(_region_of(forest, idx))
    total = sum(r.side_count for r in reports)
    assert total == 2 * len(ls), f"side count {total} != {2 * len(ls)}"
    return reports


def _region_of(forest: _Forest, idx: int) -> GapReport:
    """Region inside interval idx (or around the cut for idx == -1) minus its
    children; boundary = own chord + child chords + circle arcs between."""
    child_ids = forest.children[idx]
    boundary: list[Leaf] = []
    marks: list[QuadraticNumber] = []
    arcs: list[tuple[CirclePoint, CirclePoint]] = []

    if idx >= 0:
        lo, hi, l = forest.intervals[idx]
        boundary.append(l)
        marks.extend((lo, hi))
        cursor: Optional[QuadraticNumber] = lo
    else:
        cursor = None

    first_child_lo: Optional[QuadraticNumber] = None
    for c in child_ids:
        clo, chi, cl = forest.intervals[c]
        boundary.append(cl)
        marks.extend((clo, chi))
        if first_child_lo is None:
            first_child_lo = clo
        if cursor is not None and clo > cursor:
            arcs.append((forest.key_to_point(cursor), forest.key_to_point(clo)))
        cursor = chi

    closed = False
    if idx >= 0:
        lo, hi, _ = forest.intervals[idx]
        if cursor is not None and hi > cursor:
            arcs.append((forest.key_to_point(cursor), forest.key_to_point(hi)))
        if child_ids:
            closed = forest.intervals[child_ids[0]][0] == lo
            walk = forest.intervals[child_ids[0]][1]
            for c in child_ids[1:]:
                clo, chi, _ = forest.intervals[c]
                if clo != walk:
                    closed = False
                walk = chi
            closed = closed and walk == hi
    else:
        # Root region wraps through the cut point; never a closed polygon.
        if child_ids:
            last_hi = forest.intervals[child_ids[-1]][1]
            arcs.append(
                (forest.key_to_point(last_hi), forest.key_to_point(first_child_lo))
            )

    verts = tuple(forest.key_to_point(k) for k in sorted(set(marks)))
    classification = POLYGON if closed else UNDETERMINED
    return GapReport(verts, tuple(boundary), classification, None, tuple(arcs))


def classify_gap(gap: GapReport, src: AlmostLamination, depth: int) -> GapReport:
    """Upgrade an undetermined region using declared removed sides.

    Finite depth can never rule out deeper leaves, so crowns and blown-up
    crowns stay representable but are never auto-certified here; polygons
    and cataclysms (open chain closed by a declared pivot) are.
    """
    if gap.classification != UNDETERMINED:
        return gap
    removed_sets = {r.endpoints: r for r in src.removed_sides}
    for r in src.removed_sides:
        for l in gap.boundary_leaves:
            if linked(r, l) == LINKED:
                raise ValueError(f"removed side {r} linked with member {l}")
    if (
        len(gap.boundary_leaves) == 1
        and gap.boundary_leaves[0].endpoints in removed_sets
    ):
        return GapReport(
            gap.boundary_vertices,
            gap.boundary_leaves,
            HALF_PLANE,
            gap.boundary_leaves[0],
            gap.open_arcs,
        )
    chain = _endpoint_chain(gap.boundary_leaves)
    if chain is not None:
        start, end = chain
        pivot = removed_sets.get(frozenset((start, end)))
        if pivot is not None:
            return GapReport(
                gap.boundary_vertices,
                gap.boundary_leaves,
                CATACLYSM,
                pivot,
                gap.open_arcs,
            )
    return gap


def _endpoint_chain(
    leaves: Sequence[Leaf],
) -> Optional[tuple[CirclePoint, CirclePoint]]:
    """If the leaves form a simple open chain of shared endpoints, its ends."""
    if len(leaves) < 2:
        return None
    degree: dict[CirclePoint, int] = {}
    for l in leaves:
        for e in (l.p, l.q):
            degree[e] = degree.get(e, 0) + 1
    loose = [e for e, k in degree.items() if k == 1]
    if len(loose) != 2 or any(k > 2 for k in degree.values()):
        return None
    a, b = sorted(loose, key=lambda p: p.angle)
    return (a, b)


def determined_gaps(
    src: AlmostLamination, depth: int, include_removed: bool = False
) -> list[GapReport]:
    """Regions of enumerate(depth), classified where certifiable.

    With include_removed, declared removed sides join the arrangement so
    half-plane gaps become visible as regions bounded by their pivot.
    """
    arrangement: set[Leaf] = set(src.enumerate(depth))
    if include_removed:
        arrangement |= set(src.removed_sides)
    return [classify_gap(g, src, depth) for g in gaps(arrangement)]


# ---------------------------------------------------------------------------
# Orientation


@dataclass
class Orientation:
    """Ordered endpoint pair (tail -> head) per leaf."""

    heads: dict[Leaf, CirclePoint] = field(default_factory=dict)

    def head(self, l: Leaf) -> CirclePoint:
        return self.heads[l]

    def tail(self, l: Leaf) -> CirclePoint:
        return l.other(self.heads[l])

    def reversed(self) -> Orientation:
        return Orientation({l: l.other(h) for l, h in self.heads.items()})


@dataclass
class OddPolygonWitness:
    polygon: tuple[Leaf, ...]

    def __str__(self) -> str:
        return f"odd constraint cycle on {len(self.polygon)} leaves"


def orient(src: AlmostLamination, depth: int) -> Orientation | OddPolygonWitness:
    """Continuously consistent orientation of the enumerated leaves.

    Two constraint families: leaves sharing an ideal endpoint alternate there
    (both heads or both tails; the corner-rounding rule, which is what forbids
    odd polygons), and frontier-adjacent unlinked leaves (parent/child or
    consecutive siblings in the laminar forest) carry coherent co-orientations.
    2-coloring; an odd cycle comes back as the witness polygon.
    """
    leaves = sorted(src.enumerate(depth), key=lambda l: l.sort_key())
    if not leaves:
        return Orientation({})
    witness = is_laminar(leaves)
    if witness is not None:
        raise LaminarityError(witness)
    index = {l: i for i, l in enumerate(leaves)}

    edges: list[tuple[int, int, bool]] = []
    seen_pairs: set[tuple[int, int]] = set()

    def add_edge(a: Leaf, b: Leaf) -> None:
        i, j = index[a], index[b]
        if i > j:
            i, j = j, i
        if (i, j) in seen_pairs or i == j:
            return
        seen_pairs.add((i, j))
        rel = linked(a, b)
        if rel == SHARED_ENDPOINT:
            (v,) = a.endpoints & b.endpoints
            flip = (a.q == v) != (b.q == v)
        elif rel == UNLINKED:
            flip = _parallel_flip(a, b)
        else:
            return
        edges.append((i, j, flip))

    # Endpoint-sharing leaves alternate at the shared vertex, wherever they sit.
    for i, a in enumerate(leaves):
        for b in leaves[i + 1 :]:
            if a.endpoints & b.endpoints:
                add_edge(a, b)

    # Consecutive boundary leaves of each region: arc-separated pairs carry
    # coherent co-orientations (parallel transport across the band); pairs
    # sharing an endpoint are already constrained above.
    forest = _build_forest(leaves)
    for par, kids in forest.children.items():
        cycle = ([forest.intervals[par][2]] if par >= 0 else []) + [
            forest.intervals[c][2] for c in kids
        ]
        if len(cycle) < 2:
            continue
        for n, a in enumerate(cycle):
            b = cycle[(n + 1) % len(cycle)]
            if not (a.endpoints & b.endpoints):
                add_edge(a, b)

    color: list[Optional[bool]] = [None] * len(leaves)
    adj: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(len(leaves))}
    for i, j, flip in edges:
        adj[i].append((j, flip))
        adj[j].append((i, flip))
    parent: dict[int, Optional[int]] = {}
    for start in range(len(leaves)):
        if color[start] is not None:
            continue
        color[start] = False
        parent[start] = None
        queue = [start]
        while queue:
            i = queue.pop()
            for j, flip in adj[i]:
                want = color[i] != flip
                if color[j] is None:
                    color[j] = want
                    parent[j] = i
                    queue.append(j)
                elif color[j] != want:
                    cycle = _odd_cycle(i, j, parent)
                    return OddPolygonWitness(tuple(leaves[k] for k in cycle))

    heads = {}
    for l, c in zip(leaves, color):
        heads[l] = l.p if c else l.q
    return Orientation(heads)


def _parallel_flip(a: Leaf, b: Leaf) -> bool:
    """Parity making unlinked a, b coherently co-oriented under canonical
    orientations (p -> q for both)."""
    if arc_contains(a.p, a.q, b.p) or arc_contains(a.p, a.q, b.q):
        first_in = cyclic_order(a.p, b.p, b.q) == 1
        return not first_in
    first_in = cyclic_order(a.q, b.p, b.q) == 1
    return first_in


def _odd_cycle(i: int, j: int, parent: dict[int, Optional[int]]) -> list[int]:
    path_i = _root_path(i, parent)
    path_j = _root_path(j, parent)
    seen = set(path_i)
    k = 0
    for k, node in enumerate(path_j):
        if node in seen:
            break
    common = path_j[k]
    cycle = path_i[: path_i.index(common) + 1]
    cycle += list(reversed(path_j[:k]))
    return cycle


def _root_path(i: int, parent: dict[int, Optional[int]]) -> list[int]:
    out = [i]
    while parent.get(out[-1]) is not None:
        out.append(parent[out[-1]])  # type: ignore[arg-type]
    return out
