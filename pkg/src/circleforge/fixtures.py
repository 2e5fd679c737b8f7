"""Example generators: cat-map suspension, prong fixtures, broken translation.

The cat-map example realizes the boundary of the orbit-space plane of a
hyperbolic toral suspension as a square: four corner points and four open
sides carrying the two leaf-space coordinates, compactified by w -> w/(1+|w|)
so every coordinate stays inside one real quadratic field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .chords import AlmostLamination, FiniteLamination, Leaf, OrbitLamination
from .circle import CirclePoint, pt
from .field import QuadraticNumber
from .homeo import CircleHomeo, Mobius, piecewise_fixing, rotation

Q = QuadraticNumber.rational


@dataclass
class ExamplePair:
    plus: AlmostLamination
    minus: AlmostLamination
    generators: dict[str, CircleHomeo]
    field_d: int
    metadata: dict = dc_field(default_factory=dict)


class FixtureError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Square boundary model

_SIDES = {
    # side: (t0, M_in: t -> w, M_out: w' -> t', coordinate axis)
    "E": (Fraction(0), Mobius.of(8, -1, 0, 1), Mobius.of(1, 1, 0, 8), "v"),
    "N": (Fraction(1, 4), Mobius.of(-8, 3, 0, 1), Mobius.of(-1, 3, 0, 8), "u"),
    "W": (Fraction(1, 2), Mobius.of(-8, 5, 0, 1), Mobius.of(-1, 5, 0, 8), "v"),
    "S": (Fraction(3, 4), Mobius.of(8, -7, 0, 1), Mobius.of(1, 7, 0, 8), "u"),
}

_COMPACTIFY_POS = Mobius.of(1, 0, 1, 1)  # x -> x/(1+x), x >= 0
_COMPACTIFY_NEG = Mobius.of(1, 0, -1, 1)  # x -> x/(1-x), x < 0
_EXPAND_POS = Mobius.of(1, 0, -1, 1)  # w -> w/(1-w), w >= 0
_EXPAND_NEG = Mobius.of(1, 0, 1, 1)  # w -> w/(1+w), w < 0


def _compactify(x: QuadraticNumber) -> QuadraticNumber:
    return (_COMPACTIFY_POS if x.sign() >= 0 else _COMPACTIFY_NEG)(x)


def _expand(w: QuadraticNumber) -> QuadraticNumber:
    return (_EXPAND_POS if w.sign() >= 0 else _EXPAND_NEG)(w)


class SquareBoundary:
    """Coordinates on the boundary square of a trivial bifoliated plane.

    A "+" leaf with leaf-space coordinate v runs from the E side to the W
    side; a "-" leaf with coordinate u from N to S.  Corners sit at angles
    0, 1/4, 1/2, 3/4 and are fixed by every affine-induced map.
    """

    def __init__(self, field_d: int) -> None:
        self.field_d = field_d

    def angle_of_coord(self, side: str, x: QuadraticNumber) -> CirclePoint:
        _, _, m_out, _ = _SIDES[side]
        return pt(m_out(_compactify(x)))

    def side_of_angle(self, p: CirclePoint) -> str:
        t = p.angle
        if t < Fraction(1, 4):
            return "E"
        if t < Fraction(1, 2):
            return "N"
        if t < Fraction(3, 4):
            return "W"
        return "S"

    def coord_of_angle(self, p: CirclePoint) -> tuple[str, QuadraticNumber]:
        side = self.side_of_angle(p)
        _, m_in, _, _ = _SIDES[side]
        return side, _expand(m_in(p.angle))

    def plus_leaf(self, v: QuadraticNumber) -> Leaf:
        return Leaf(self.angle_of_coord("E", v), self.angle_of_coord("W", v), "+")

    def minus_leaf(self, u: QuadraticNumber) -> Leaf:
        return Leaf(self.angle_of_coord("N", u), self.angle_of_coord("S", u), "-")

    def leaf_coord(self, l: Leaf) -> QuadraticNumber:
        """Leaf-space coordinate of a board leaf from either endpoint."""
        _, x = self.coord_of_angle(l.p)
        return x

    def homeo_from_affines(
        self,
        u_map: tuple[QuadraticNumber, QuadraticNumber],
        v_map: tuple[QuadraticNumber, QuadraticNumber],
        name: str = "",
    ) -> CircleHomeo:
        """Circle homeo induced by u -> au + b, v -> cv + d (a, c > 0)."""
        breaks: list[CirclePoint] = []
        maps: list[Mobius] = []
        for side, (t0, m_in, m_out, coord) in _SIDES.items():
            scale, offset = u_map if coord == "u" else v_map
            if scale.sign() <= 0:
                raise FixtureError("affine leaf-space maps must be increasing")
            cuts = self._side_breaks(side, scale, offset)
            for i, a in enumerate(cuts):
                b = cuts[i + 1] if i + 1 < len(cuts) else Q(t0) + Fraction(1, 4)
                mid = (a + b) / 2
                breaks.append(pt(a))
                maps.append(self._piece_matrix(side, scale, offset, mid))
        return CircleHomeo(breaks, maps, name=name)

    def _side_breaks(
        self, side: str, scale: QuadraticNumber, offset: QuadraticNumber
    ) -> list[QuadraticNumber]:
        t0, m_in, _, _ = _SIDES[side]
        t0q = Q(t0)
        t1q = t0q + Fraction(1, 4)
        cuts = {t0q}
        t_w0 = m_in.inverse()(Q(0))  # coordinate zero on this side
        x0 = (Q(0) - offset) / scale  # preimage of coordinate zero
        t_x0 = m_in.inverse()(_compactify(x0))
        for t in (t_w0, t_x0):
            if (t - t0q).sign() > 0 and (t - t1q).sign() < 0:
                cuts.add(t)
        return sorted(cuts)

    def _piece_matrix(
        self,
        side: str,
        scale: QuadraticNumber,
        offset: QuadraticNumber,
        t_mid: QuadraticNumber,
    ) -> Mobius:
        _, m_in, m_out, _ = _SIDES[side]
        w = m_in(t_mid)
        expand = _EXPAND_POS if w.sign() >= 0 else _EXPAND_NEG
        x_img = scale * _expand(w) + offset
        pack = _COMPACTIFY_POS if x_img.sign() >= 0 else _COMPACTIFY_NEG
        aff = Mobius(scale, offset, Q(0), Q(1))
        return m_out.compose(pack).compose(aff).compose(expand).compose(m_in)


# ---------------------------------------------------------------------------
# Cat-map suspension


def square_free_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d square-free."""
    s = 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        k += 1
    return s, n


def cat_map_suspension(
    matrix: tuple[tuple[int, int], tuple[int, int]] = ((2, 1), (1, 1)),
) -> ExamplePair:
    """Boundary action of a hyperbolic torus-map suspension.

    Generators: two fiber translations t1, t2 and the boundary action m of
    the matrix.  With the forward return map taken as the matrix inverse,
    the "+" family (stable) is the slope-(sqrt(5)-1)/2 eigenline family for
    the default matrix.
    """
    (a, b), (c, d) = matrix
    if a * d - b * c != 1:
        raise FixtureError("matrix must have determinant 1")
    trace = a + d
    if trace <= 2:
        raise FixtureError("matrix must be hyperbolic (trace > 2)")
    if b == 0:
        raise FixtureError("desk model needs a nonzero upper-right entry")
    mult, rad = square_free_split(trace * trace - 4)
    sq = QuadraticNumber(0, Fraction(mult), rad)
    lam_plus = (Q(trace) + sq) / 2
    lam_minus = (Q(trace) - sq) / 2
    s_plus = (lam_plus - a) / b
    s_minus = (lam_minus - a) / b

    board = SquareBoundary(rad)

    def translation(m: int, n: int, name: str) -> CircleHomeo:
        du = Q(n) - s_minus * m
        dv = Q(n) - s_plus * m
        return board.homeo_from_affines((Q(1), du), (Q(1), dv), name=name)

    gens = {
        "t1": translation(1, 0, "t1"),
        "t2": translation(0, 1, "t2"),
        "m": board.homeo_from_affines((lam_plus, Q(0)), (lam_minus, Q(0)), name="m"),
    }
    plus = OrbitLamination("+", [board.plus_leaf(Q(0))], list(gens.values()), field_d=rad)
    minus = OrbitLamination("-", [board.minus_leaf(Q(0))], list(gens.values()), field_d=rad)
    meta = {
        "kind": "cat_map_suspension",
        "matrix": [[a, b], [c, d]],
        "stable_slope": str(s_plus),
        "board": True,
    }
    return ExamplePair(plus, minus, gens, rad, meta)


def broken_translation() -> ExamplePair:
    """Z^2 acting on the trivial plane by unit leaf-space translations: the
    product-region pathology that fails (B7) and every flow certificate."""
    board = SquareBoundary(0)
    gens = {
        "a": board.homeo_from_affines((Q(1), Q(1)), (Q(1), Q(0)), name="a"),
        "b": board.homeo_from_affines((Q(1), Q(0)), (Q(1), Q(1)), name="b"),
    }
    plus = OrbitLamination("+", [board.plus_leaf(Q(0))], list(gens.values()), field_d=0)
    minus = OrbitLamination("-", [board.minus_leaf(Q(0))], list(gens.values()), field_d=0)
    return ExamplePair(
        plus, minus, gens, 0, {"kind": "broken_translation", "board": True}
    )


# ---------------------------------------------------------------------------
# Prong fixtures


def _rational(p: CirclePoint) -> Fraction:
    if p.angle.b != 0:
        raise FixtureError("prong fixture endpoints must stay rational")
    return p.angle.a


def _offsets_from(vertex: Fraction, l: Leaf) -> tuple[Fraction, Fraction]:
    """(low, high) arc offsets of a chord straddling the vertex."""
    lo = (Fraction(vertex) - _rational(l.p)) % 1
    hi = (_rational(l.q) - Fraction(vertex)) % 1
    other_lo = (Fraction(vertex) - _rational(l.q)) % 1
    other_hi = (_rational(l.p) - Fraction(vertex)) % 1
    # pick the assignment where both offsets are small (straddling chord)
    if max(lo, hi) <= max(other_lo, other_hi):
        return lo, hi
    return other_lo, other_hi


def corner_family(
    g: CircleHomeo,
    period: int,
    vertex: Fraction,
    start_radius: Fraction,
    count: int,
    sign: str,
) -> list[Leaf]:
    """count nested seed chords straddling the vertex, strictly between a
    base chord and its image under g^period (so the g-orbit interleaves)."""
    base = Leaf(pt(Fraction(vertex) - start_radius), pt(Fraction(vertex) + start_radius), sign)  # type: ignore[arg-type]
    gp = g
    for _ in range(period - 1):
        gp = gp.compose(g)
    img = Leaf(gp.apply(base.p), gp.apply(base.q), sign)
    lo0, hi0 = _offsets_from(vertex, base)
    lo1, hi1 = _offsets_from(vertex, img)
    if not (0 < min(lo1, hi1) and lo1 != lo0):
        raise FixtureError("corner family needs strict nesting under g^period")
    out = [base]
    for i in range(1, count):
        lo = lo0 + (lo1 - lo0) * Fraction(i, count)
        hi = hi0 + (hi1 - hi0) * Fraction(i, count)
        out.append(Leaf(pt(Fraction(vertex) - lo), pt(Fraction(vertex) + hi), sign))  # type: ignore[arg-type]
    return out


def prong_fixture(n: int = 2, seeds_per_family: int = 2) -> ExamplePair:
    """Interleaved 2n-gon pair with an expanding-rotating stabilizer.

    P+ has vertices k/(2n), P- sits at k/(2n) + 1/(4n).  The generator g
    rotates vertices by one prong (two steps) and expands every half-leaf
    of the P+ singular leaf, so opposite-family corner chords nest toward
    the P+ vertices and away from the P- vertices.
    """
    if n < 2:
        raise FixtureError("need a 2n-prong singularity with n >= 2")
    two_n = 2 * n
    v = [Fraction(k, two_n) for k in range(two_n)]
    w = [Fraction(k, two_n) + Fraction(1, 4 * n) for k in range(two_n)]
    anchors = sorted(v + w)
    speeds: list[Fraction] = []
    for _ in range(two_n):
        speeds.extend([Fraction(1, 2), Fraction(2)])
    f = piecewise_fixing([pt(x) for x in anchors], speeds, name="f")
    g = rotation(Fraction(1, n)).compose(f, name="g")

    p_plus = [Leaf(pt(v[k]), pt(v[(k + 1) % two_n]), "+") for k in range(two_n)]
    p_minus = [Leaf(pt(w[k]), pt(w[(k + 1) % two_n]), "-") for k in range(two_n)]

    gap = Fraction(1, 4 * n)
    minus_seeds: list[Leaf] = list(p_minus)
    # corner chords at two vertex-orbit representatives of P+ (g moves
    # vertices two steps, so even and odd vertices form separate orbits)
    for vertex in (v[0], v[1]):
        minus_seeds.extend(
            corner_family(g, n, vertex, gap / 2, seeds_per_family, "-")
        )
    plus_seeds: list[Leaf] = list(p_plus)
    for vertex in (w[0], w[1]):
        plus_seeds.extend(
            corner_family(g, n, vertex, gap / 4, seeds_per_family, "+")
        )

    gens = {"g": g}
    plus = OrbitLamination("+", plus_seeds, list(gens.values()), field_d=0)
    minus = OrbitLamination("-", minus_seeds, list(gens.values()), field_d=0)
    meta = {
        "kind": f"{two_n}_prong_fixture",
        "n": n,
        "plus_polygon": [str(x) for x in v],
        "minus_polygon": [str(x) for x in w],
    }
    return ExamplePair(plus, minus, gens, 0, meta)


def square_4prong_fixture(with_action: bool = True, seeds_per_family: int = 2) -> ExamplePair:
    """The 4-prong interleaved-squares fixture; identity-only when asked."""
    ex = prong_fixture(2, seeds_per_family)
    ex.metadata["kind"] = "square_4prong_fixture"
    if not with_action:
        plus = FiniteLamination("+", ex.plus.enumerate(0), field_d=0)
        minus = FiniteLamination("-", ex.minus.enumerate(0), field_d=0)
        return ExamplePair(plus, minus, {}, 0, dict(ex.metadata, identity_only=True))
    return ex


def cataclysm_fixture() -> ExamplePair:
    """Two cataclysm sides with a declared pivot, crossed by one leaf."""
    plus = FiniteLamination(
        "+",
        [Leaf(pt(0), pt("1/2"), "+"), Leaf(pt("1/2"), pt("3/4"), "+")],
        removed_sides=[Leaf(pt(0), pt("3/4"), "+")],
    )
    minus = FiniteLamination("-", [Leaf(pt("5/8"), pt("7/8"), "-")])
    return ExamplePair(plus, minus, {}, 0, {"kind": "cataclysm_fixture"})


def two_polygon_fixture(seeds_per_family: int = 2) -> ExamplePair:
    """Two disjoint 4-prong polygon pairs swapped by a half-turn.

    The stabilizer gA of polygon A fixes its eight vertices (rotation amount
    zero), expands every half-leaf of A's singular "+" leaf, and is the
    identity on the half-circle carrying polygon B; tau conjugates it to the
    stabilizer of B.  Exercises the h-equivariance check across a genuine
    two-leaf orbit.
    """
    va = [Fraction(1, 32) + Fraction(k, 8) for k in range(4)]
    wa = [x + Fraction(1, 16) for x in va]
    anchors = [Fraction(0)] + sorted(va + wa) + [Fraction(1, 2)]
    speeds = [Fraction(2)]  # (0, va0): attract toward va0
    for _ in range(4):
        speeds.extend([Fraction(1, 2), Fraction(2)])
    speeds.append(Fraction(1))  # identity on (1/2, 1), polygon B's half
    g_a = piecewise_fixing([pt(x) for x in anchors], speeds, name="gA")
    tau = rotation(Fraction(1, 2))

    pa_plus = [Leaf(pt(va[k]), pt(va[(k + 1) % 4]), "+") for k in range(4)]
    pa_minus = [Leaf(pt(wa[k]), pt(wa[(k + 1) % 4]), "-") for k in range(4)]

    minus_seeds = list(pa_minus)
    for vertex in va:
        minus_seeds.extend(
            corner_family(g_a, 1, vertex, Fraction(1, 128), seeds_per_family, "-")
        )
    plus_seeds = list(pa_plus)
    for vertex in wa:
        plus_seeds.extend(
            corner_family(g_a, 1, vertex, Fraction(1, 256), seeds_per_family, "+")
        )

    gens = {"gA": g_a, "tau": tau}
    plus = OrbitLamination("+", plus_seeds, list(gens.values()), field_d=0)
    minus = OrbitLamination("-", minus_seeds, list(gens.values()), field_d=0)
    meta = {
        "kind": "two_polygon_fixture",
        "polygon_a": [str(x) for x in va],
        "polygon_b": [str((x + Fraction(1, 2)) % 1) for x in va],
    }
    return ExamplePair(plus, minus, gens, 0, meta)


EXAMPLE_KINDS = {
    "cat_map_suspension": cat_map_suspension,
    "square_4prong_fixture": square_4prong_fixture,
    "cataclysm_fixture": cataclysm_fixture,
    "broken_translation": broken_translation,
    "two_polygon_fixture": two_polygon_fixture,
}


def gen_example(kind: str, **kwargs) -> ExamplePair:
    if kind not in EXAMPLE_KINDS:
        raise FixtureError(f"unknown example kind {kind!r}")
    return EXAMPLE_KINDS[kind](**kwargs)
