"""Orientation-preserving piecewise fractional-linear circle maps.

A CircleHomeo is a circular list of breakpoints with one Mobius map per
piece, acting on lifted angle coordinates.  Construction normalizes the
pieces into a single continuous increasing lift on [b0, b0 + 1] and checks
continuity, monotonicity and degree one exactly; composition and inversion
stay inside the representation.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .circle import CirclePoint, pt
from .field import ONE, ZERO, QuadraticNumber

Rat = Fraction


@dataclass(frozen=True)
class Mobius:
    """t -> (a t + b) / (c t + d) with entries in one quadratic field."""

    a: QuadraticNumber
    b: QuadraticNumber
    c: QuadraticNumber
    d: QuadraticNumber

    @classmethod
    def of(cls, a, b, c, d) -> Mobius:
        def q(x):
            return x if isinstance(x, QuadraticNumber) else QuadraticNumber.rational(x)

        return cls(q(a), q(b), q(c), q(d))

    @classmethod
    def identity(cls) -> Mobius:
        return cls.of(1, 0, 0, 1)

    @classmethod
    def translation(cls, amount) -> Mobius:
        return cls.of(1, amount, 0, 1)

    @classmethod
    def affine(cls, scale, offset) -> Mobius:
        return cls.of(scale, offset, 0, 1)

    def det(self) -> QuadraticNumber:
        return self.a * self.d - self.b * self.c

    def __call__(self, t: QuadraticNumber) -> QuadraticNumber:
        den = self.c * t + self.d
        if not den:
            raise ZeroDivisionError("Mobius pole hit")
        return (self.a * t + self.b) / den

    def compose(self, other: Mobius) -> Mobius:
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> Mobius:
        return Mobius(self.d, -self.b, -self.c, self.a)

    def shifted(self, k: int) -> Mobius:
        """T_k . M: add the integer k to the output."""
        if k == 0:
            return self
        return Mobius(self.a + self.c * k, self.b + self.d * k, self.c, self.d)

    def monotone_on(self, x: QuadraticNumber, y: QuadraticNumber) -> bool:
        """Strictly increasing and pole-free on [x, y]."""
        if self.det().sign() <= 0:
            return False
        sx = (self.c * x + self.d).sign()
        sy = (self.c * y + self.d).sign()
        return sx != 0 and sx == sy


def interval_mobius(a, b, speed: Rat) -> Mobius:
    """The Mobius map fixing a and b, conjugate of t -> speed * t on (a, b).

    speed > 1 attracts toward b on (a, b); 0 < speed < 1 attracts toward a.
    """

    def q(x):
        return x if isinstance(x, QuadraticNumber) else QuadraticNumber.rational(x)

    a, b = q(a), q(b)
    phi = Mobius(ONE, -a, -ONE, b)  # (t - a) / (b - t): a -> 0, b -> inf
    scale = Mobius.affine(speed, 0)
    return phi.inverse().compose(scale).compose(phi)


class HomeoError(ValueError):
    pass


class CircleHomeo:
    """Piecewise Mobius circle homeomorphism with exact breakpoints.

    pieces[i] acts on lifted angles in [breaks[i], breaks[i+1]] (the last
    piece wraps to breaks[0] + 1); the stored matrices form one continuous
    increasing degree-one lift.
    """

    __slots__ = ("breaks", "pieces", "_keys", "name", "_inv", "_probes", "_ckey", "_fkeys")

    def __init__(
        self,
        breakpoints: Iterable[CirclePoint],
        maps: Iterable[Mobius],
        name: str = "",
    ) -> None:
        pairs = sorted(
            zip([pt(b) for b in breakpoints], maps), key=lambda t: t[0].angle
        )
        if not pairs:
            raise HomeoError("need at least one piece")
        breaks = [p for p, _ in pairs]
        if len({b.angle for b in breaks}) != len(breaks):
            raise HomeoError("duplicate breakpoints")
        mobs = [m for _, m in pairs]
        self.breaks: list[CirclePoint] = breaks
        self.pieces: list[Mobius] = self._normalize(breaks, mobs)
        self._keys = [b.angle for b in breaks]
        self.name = name
        self._inv: Optional[CircleHomeo] = None
        self._probes: Optional[tuple] = None
        self._ckey: Optional[tuple] = None
        self._fkeys = [float(k) for k in self._keys]

    @staticmethod
    def _normalize(breaks: Sequence[CirclePoint], mobs: Sequence[Mobius]) -> list[Mobius]:
        n = len(breaks)
        spans: list[tuple[QuadraticNumber, QuadraticNumber]] = []
        for i in range(n):
            x = breaks[i].angle
            y = breaks[(i + 1) % n].angle if i + 1 < n else breaks[0].angle + 1
            spans.append((x, y))
        out: list[Mobius] = []
        value_end: Optional[QuadraticNumber] = None
        v0: Optional[QuadraticNumber] = None
        for i, (m, (x, y)) in enumerate(zip(mobs, spans)):
            if not m.monotone_on(x, y):
                raise HomeoError(f"piece {i} not increasing on [{x}, {y}]")
            val = m(x)
            if i == 0:
                shift = -val.floor()
                m = m.shifted(shift)
                v0 = m(x)
            else:
                delta = value_end - val
                df = delta.floor()
                if delta != df:
                    raise HomeoError(
                        f"discontinuity at breakpoint {breaks[i]}: "
                        f"{value_end} vs {val} (mod 1)"
                    )
                m = m.shifted(df)
            out.append(m)
            value_end = m(y)
        assert v0 is not None
        if value_end != v0 + 1:
            raise HomeoError(
                f"degree != 1: lift increment {value_end - v0} over one turn"
            )
        return out

    # -- evaluation ---------------------------------------------------------

    def _window(self, t: QuadraticNumber) -> tuple[int, int]:
        """Piece index and integer shift k with t - k in [b0, b0+1).

        Floats supply the search hints; every boundary decision is verified
        by exact sign tests before it is trusted.
        """
        base = self.breaks[0].angle
        k = (t - base).floor()
        t0 = t - k
        keys = self._keys
        idx = bisect.bisect_right(self._fkeys, float(t0)) - 1
        n = len(keys)
        if idx < 0:
            idx = 0
        if idx >= n:
            idx = n - 1
        # exact correction of the float hint
        while idx > 0 and (t0 - keys[idx]).sign() < 0:
            idx -= 1
        while idx + 1 < n and (t0 - keys[idx + 1]).sign() >= 0:
            idx += 1
        return idx, k

    def apply_lifted(self, t: QuadraticNumber) -> QuadraticNumber:
        idx, k = self._window(t)
        return _eval_mobius(self.pieces[idx], t - k) + k

    def apply(self, p: CirclePoint) -> CirclePoint:
        return pt(self.apply_lifted(p.angle))

    def lifted_piece(self, t: QuadraticNumber) -> Mobius:
        """Matrix computing the lift near t (valid until the next breakpoint)."""
        idx, k = self._window(t)
        m = self.pieces[idx]
        if k == 0:
            return m
        tk = Mobius.translation(QuadraticNumber.rational(k))
        return tk.compose(m).compose(Mobius.translation(QuadraticNumber.rational(-k)))

    # -- algebra ------------------------------------------------------------

    def compose(self, other: CircleHomeo, name: str = "") -> CircleHomeo:
        """self after other."""
        inv_other = other.inverse()
        cuts = {b.angle for b in other.breaks}
        for b in self.breaks:
            cuts.add(inv_other.apply(b).angle)
        cut_list = sorted(cuts)
        breaks = []
        maps = []
        for i, x in enumerate(cut_list):
            y = cut_list[i + 1] if i + 1 < len(cut_list) else cut_list[0] + 1
            mid = (x + y) / 2
            inner = other.lifted_piece(mid)
            outer = self.lifted_piece(inner(mid))
            breaks.append(pt(x))
            maps.append(outer.compose(inner))
        return CircleHomeo(breaks, maps, name=name)

    def inverse(self, name: str = "") -> CircleHomeo:
        if self._inv is not None:
            return self._inv
        breaks = []
        maps = []
        for i, m in enumerate(self.pieces):
            x = self.breaks[i].angle
            v = m(x)
            j = v.floor()
            # Reduced domain is [v - j, ...]; pre-shift the input back by j.
            breaks.append(pt(v))
            maps.append(m.inverse().compose(Mobius.translation(QuadraticNumber.rational(j))))
        inv = CircleHomeo(breaks, maps, name=name or (self.name + "^-1" if self.name else ""))
        inv._inv = self
        self._inv = inv
        return inv

    # -- identity and comparison --------------------------------------------

    PROBE_COUNT = 64

    def probe_signature(self) -> tuple[QuadraticNumber, ...]:
        if self._probes is None:
            self._probes = tuple(
                self.apply(pt(Fraction(k, self.PROBE_COUNT))).angle
                for k in range(self.PROBE_COUNT)
            )
        return self._probes

    def canonical_key(self) -> tuple:
        """Exact map-equality key: the minimal piece decomposition.

        Adjacent pieces whose matrices are proportional describe one Mobius
        germ and merge; a breakpoint-free map is a rigid rotation and is
        keyed by its value at 0.  Two CircleHomeos represent the same circle
        map iff their canonical keys are equal (strictly sharper than any
        finite probe set).
        """
        if self._ckey is not None:
            return self._ckey

        def proportional(m: Mobius, n: Mobius) -> bool:
            return (
                m.a * n.b == m.b * n.a
                and m.a * n.c == m.c * n.a
                and m.a * n.d == m.d * n.a
                and m.b * n.c == m.c * n.b
                and m.b * n.d == m.d * n.b
                and m.c * n.d == m.d * n.c
            )

        def normalized(m: Mobius) -> tuple:
            for e in (m.a, m.b, m.c, m.d):
                if e:
                    inv = e.inverse()
                    return tuple(x * inv for x in (m.a, m.b, m.c, m.d))
            raise HomeoError("zero matrix")

        one = QuadraticNumber.rational(1)
        shift_in = Mobius.translation(one)
        shift_out = Mobius.translation(-one)
        kept: list[tuple[CirclePoint, Mobius]] = []
        n = len(self.breaks)
        for i in range(n):
            prev = self.pieces[i - 1]
            if i == 0:
                # germ of the wrap piece at b0 comes via t -> t + 1
                prev = shift_out.compose(prev).compose(shift_in)
            if proportional(prev, self.pieces[i]):
                continue
            kept.append((self.breaks[i], self.pieces[i]))
        if not kept:
            # breakpoint-free: a rigid rotation, keyed by the image of 0
            self._ckey = ("rot", self.apply(pt(QuadraticNumber.rational(0))).angle)
            return self._ckey
        # Reduce each germ's value at its breakpoint into [0, 1) so that
        # representations with different lift windows agree.
        entries = []
        for b, m in kept:
            m = m.shifted(-(m(b.angle).floor()))
            entries.append((b.angle, normalized(m)))
        self._ckey = tuple(entries)
        return self._ckey

    def is_identity_on_probes(self) -> bool:
        return all(
            self.apply(pt(Fraction(k, self.PROBE_COUNT))).angle
            == Fraction(k, self.PROBE_COUNT)
            for k in range(self.PROBE_COUNT)
        )

    def __repr__(self) -> str:
        tag = self.name or f"{len(self.pieces)} pieces"
        return f"CircleHomeo({tag})"

    # -- fixed points ---------------------------------------------------------

    def fixed_points(self) -> tuple[list[CirclePoint], list[tuple[CirclePoint, CirclePoint]]]:
        """Exact fixed points, plus sign-change bracket intervals for fixed
        points whose coordinates leave the field (never emitted as points)."""
        exact: list[CirclePoint] = []
        brackets: list[tuple[CirclePoint, CirclePoint]] = []
        n = len(self.breaks)
        for i, m in enumerate(self.pieces):
            x = self.breaks[i].angle
            y = self.breaks[(i + 1) % n].angle if i + 1 < n else self.breaks[0].angle + 1
            # Solve m(t) = t on [x, y]: c t^2 + (d - a) t - b = 0.
            c2, c1, c0 = m.c, m.d - m.a, -m.b
            roots: list[QuadraticNumber] = []
            if not c2:
                if c1:
                    roots = [(-c0) / c1]
            else:
                disc = c1 * c1 - 4 * c2 * c0
                r = disc.sqrt()
                if r is not None:
                    roots = [(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)]
                else:
                    fx = (m(x) - x).sign()
                    fy = (m(y) - y).sign()
                    if fx == 0:
                        exact.append(pt(x))
                    if fx * fy < 0:
                        brackets.append((pt(x), pt(y)))
                    continue
            for t in roots:
                if (t - x).sign() >= 0 and (y - t).sign() >= 0:
                    exact.append(pt(t))
        uniq = []
        seen = set()
        for p in exact:
            if p.angle not in seen:
                seen.add(p.angle)
                uniq.append(p)
        return uniq, brackets


def _int_entries(m: Mobius) -> tuple:
    """Integerized matrix entries (scale-invariant), cached on the instance."""
    got = getattr(m, "_ints", None)
    if got is not None:
        return got
    fracs = (m.a.a, m.a.b, m.b.a, m.b.b, m.c.a, m.c.b, m.d.a, m.d.b)
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = tuple(f.numerator * (den // f.denominator) for f in fracs)
    rad = m.a.d or m.b.d or m.c.d or m.d.d
    out = ints + (rad,)
    object.__setattr__(m, "_ints", out)
    return out


def _eval_mobius(m: Mobius, t: QuadraticNumber) -> QuadraticNumber:
    """Integer-core Mobius evaluation (trusted internal fast path)."""
    aa, ab, ba, bb, ca, cb, da, db, mrad = _int_entries(m)
    rad = t.d or mrad
    ta, tb = t.a, t.b
    td = ta.denominator
    tbd = tb.denominator
    if tbd != td:
        g = math.gcd(td, tbd)
        scale_a = tbd // g
        scale_b = td // g
        td = td * scale_a
        tna = ta.numerator * scale_a
        tnb = tb.numerator * scale_b
    else:
        tna = ta.numerator
        tnb = tb.numerator
    na = aa * tna + ab * tnb * rad + ba * td
    nb = aa * tnb + ab * tna + bb * td
    ea = ca * tna + cb * tnb * rad + da * td
    eb = ca * tnb + cb * tna + db * td
    norm = ea * ea - eb * eb * rad
    if not norm:
        raise ZeroDivisionError("Mobius pole hit")
    ra = Fraction(na * ea - nb * eb * rad, norm)
    rb = Fraction(nb * ea - na * eb, norm)
    return QuadraticNumber._raw(ra, rb, rad if rb else 0)


def identity_homeo() -> CircleHomeo:
    return CircleHomeo([pt(0)], [Mobius.identity()], name="id")


def rotation(amount) -> CircleHomeo:
    q = amount if isinstance(amount, QuadraticNumber) else QuadraticNumber.rational(amount)
    return CircleHomeo([pt(0)], [Mobius.translation(q)], name=f"rot({q})")


def piecewise_fixing(
    anchors: Sequence[CirclePoint], speeds: Sequence[Rat], name: str = ""
) -> CircleHomeo:
    """Homeo fixing every anchor, Mobius on each arc with the given speed.

    speeds[i] applies on the arc from anchors[i] to anchors[i+1]; speed > 1
    attracts toward the right anchor, < 1 toward the left.
    """
    pts = sorted(anchors, key=lambda p: p.angle)
    if len(pts) != len(speeds):
        raise ValueError("one speed per arc")
    maps = []
    for i, s in enumerate(speeds):
        a = pts[i].angle
        b = pts[i + 1].angle if i + 1 < len(pts) else pts[0].angle + 1
        maps.append(interval_mobius(a, b, s))
    return CircleHomeo(pts, maps, name=name)
