"""Word balls of circle homeomorphisms, invariance and orientation checks.

Group elements are reduced words over named generators; equality inside a
ball is "maps agree on the 64-point exact probe set", with merges logged
since probe equality can over-merge in pathological cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .chords import AlmostLamination, Leaf, Orientation, linked, LINKED
from .circle import CirclePoint, cyclic_order
from .homeo import CircleHomeo, identity_homeo

MAX_RADIUS = 8

Letter = tuple[str, int]  # (generator name, +1 or -1)
Word = tuple[Letter, ...]


def word_str(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    for name, e in w:
        parts.append(name if e == 1 else f"{name}^-1")
    return " ".join(parts)


def invert_word(w: Word) -> Word:
    return tuple((name, -e) for name, e in reversed(w))


@dataclass
class GroupElement:
    word: Word
    homeo: CircleHomeo

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        return f"<{word_str(self.word)}>"


@dataclass
class GroupBall:
    """All reduced words up to the radius, merged by probe equality."""

    generators: dict[str, CircleHomeo]
    radius: int
    elements: list[GroupElement]
    merged: list[tuple[Word, Word]] = field(default_factory=list)
    exhausted: bool = False  # ball(radius) == ball(radius + 1) as map sets

    def nontrivial(self) -> list[GroupElement]:
        return [e for e in self.elements if e.word]

    def element(self, w: Word) -> Optional[GroupElement]:
        for e in self.elements:
            if e.word == w:
                return e
        return None

    def homeo_of_word(self, w: Word) -> CircleHomeo:
        h = identity_homeo()
        for name, e in w:
            g = self.generators[name]
            h = h.compose(g if e == 1 else g.inverse())
        return h


def ball(generators: dict[str, CircleHomeo], radius: int) -> GroupBall:
    """BFS over reduced words with probe-merging; radius hard-capped at 8.

    exhausted=True means the BFS closed out strictly inside the radius (an
    empty frontier), so ball(radius) is the whole group as a set of maps; a
    frontier still growing at the cap reports exhausted=False (truncated).
    """
    if radius > MAX_RADIUS:
        raise ValueError(f"ball radius {radius} exceeds cap {MAX_RADIUS}")
    letters: list[tuple[Letter, CircleHomeo]] = []
    for name, g in generators.items():
        letters.append(((name, 1), g))
        letters.append(((name, -1), g.inverse()))

    ident = identity_homeo()
    identity_el = GroupElement((), ident)
    seen: dict[tuple, GroupElement] = {ident.canonical_key(): identity_el}
    merged: list[tuple[Word, Word]] = []
    frontier: list[GroupElement] = [identity_el]
    exhausted = False
    for _level in range(1, radius + 1):
        nxt: list[GroupElement] = []
        for el in frontier:
            for letter, h in letters:
                if el.word and el.word[-1] == (letter[0], -letter[1]):
                    continue  # unreduced
                word = el.word + (letter,)
                homeo = el.homeo.compose(h, name=word_str(word))
                key = homeo.canonical_key()
                if key in seen:
                    merged.append((word, seen[key].word))
                    continue
                ge = GroupElement(word, homeo)
                seen[key] = ge
                nxt.append(ge)
        frontier = nxt
        if not frontier:
            exhausted = True
            break
    elements = sorted(seen.values(), key=lambda e: (e.length, e.word))
    return GroupBall(dict(generators), radius, elements, merged, exhausted)


# ---------------------------------------------------------------------------
# Invariance


@dataclass
class InvarianceWitness:
    leaf: Leaf
    image: Leaf
    direction: int  # +1 for g, -1 for g inverse

    def __str__(self) -> str:
        arrow = "g" if self.direction == 1 else "g^-1"
        return f"{arrow}({self.leaf}) = {self.image} is not a member"


def apply_to_leaf(g: CircleHomeo, l: Leaf) -> Leaf:
    return Leaf(g.apply(l.p), g.apply(l.q), l.sign)


def check_invariance(
    src: AlmostLamination, g: CircleHomeo, depth: int
) -> Optional[InvarianceWitness]:
    """None when g and g^-1 keep every enumerated leaf inside the oracle."""
    gi = g.inverse()
    for l in sorted(src.enumerate(depth), key=lambda x: x.sort_key()):
        img = apply_to_leaf(g, l)
        if not src.contains(img):
            return InvarianceWitness(l, img, 1)
        pre = apply_to_leaf(gi, l)
        if not src.contains(pre):
            return InvarianceWitness(l, pre, -1)
    return None


def oracle_spot_check(src: AlmostLamination, depth: int, probes: Iterable[Leaf]) -> None:
    """Oracle inconsistency: contains(l) true but l linked with a member."""
    members = src.enumerate(depth)
    for l in probes:
        if src.contains(l):
            for m in members:
                if linked(l, m) == LINKED:
                    raise ValueError(
                        f"oracle inconsistency: contains({l}) but linked with {m}"
                    )


# ---------------------------------------------------------------------------
# Orientation character and doubling


class MixedCharacterError(ValueError):
    def __init__(self, preserved: Leaf, reversed_: Leaf) -> None:
        super().__init__(
            f"orientation not G-consistent: preserved on {preserved}, "
            f"reversed on {reversed_}"
        )
        self.preserved = preserved
        self.reversed_ = reversed_


def orientation_character(
    g: CircleHomeo, orientation: Orientation, depth: int = 0
) -> int:
    """+1 if g maps the orientation to itself on every checkable leaf, -1 if
    it reverses on every one; mixed behavior raises."""
    preserved: Optional[Leaf] = None
    reversed_: Optional[Leaf] = None
    for l, head in orientation.heads.items():
        img = apply_to_leaf(g, l)
        if img not in orientation.heads:
            continue
        if orientation.heads[img] == g.apply(head):
            preserved = l
        else:
            reversed_ = l
        if preserved is not None and reversed_ is not None:
            raise MixedCharacterError(preserved, reversed_)
    return -1 if reversed_ is not None else 1


def orientable_doubling(
    generators: Sequence[tuple[str, CircleHomeo]],
    characters: Sequence[int],
) -> list[tuple[Word, CircleHomeo]]:
    """Reidemeister-Schreier generators of the orientation-preserving kernel.

    Schreier transversal {1, a0} for the index-2 character kernel, a0 the
    first generator with character -1; output words have length <= 2 in the
    input generators and character +1.
    """
    if all(c == 1 for c in characters):
        return [(((name, 1),), g) for name, g in generators]
    pivot_idx = next(i for i, c in enumerate(characters) if c == -1)
    a0_name, a0 = generators[pivot_idx]
    out: list[tuple[Word, CircleHomeo]] = []
    for (name, g), c in zip(generators, characters):
        if c == 1:
            # t = 1: x stays in the kernel.
            out.append(((((name, 1),)), g))
            # t = a0: a0 x a0^-1.
            word: Word = ((a0_name, 1), (name, 1), (a0_name, -1))
            out.append((word, a0.compose(g).compose(a0.inverse())))
        else:
            if name == a0_name:
                out.append((((a0_name, 1), (a0_name, 1)), a0.compose(a0)))
            else:
                # t = a0: a0 x; t = 1: x a0^-1 (redundant inverse pair kept out).
                out.append((((a0_name, 1), (name, 1)), a0.compose(g)))
    return out


# ---------------------------------------------------------------------------
# Expansion type at fixed leaves

EXPANDS = "expands"
CONTRACTS = "contracts"
NEITHER = "neither"


def expansion_type(g: CircleHomeo, fixed_leaf: Leaf, probe: CirclePoint) -> str:
    """Verdict by exact order comparison on the arc side containing the probe.

    "expands" means probes move away from the arc's starting endpoint (the
    endpoint the probe side begins at), i.e. that endpoint repels.
    """
    if g.apply(fixed_leaf.p) != fixed_leaf.p or g.apply(fixed_leaf.q) != fixed_leaf.q:
        raise ValueError(f"element does not fix both endpoints of {fixed_leaf}")
    if fixed_leaf.has_endpoint(probe):
        raise ValueError("probe must lie strictly inside one side arc")
    a, b = fixed_leaf.p, fixed_leaf.q
    if cyclic_order(a, probe, b) != 1:
        a, b = b, a
    image = g.apply(probe)
    if image == probe:
        return NEITHER
    return EXPANDS if cyclic_order(a, probe, image) == 1 else CONTRACTS


def thread_expansion(
    g: CircleHomeo,
    fixed_leaf: Leaf,
    thread_elements: Sequence[Leaf],
    fixed_element: Leaf,
) -> str:
    """Expansion of the thread of fixed_leaf relative to its fixed element:
    every sampled element moves away from the fixed one in thread order."""
    away = toward = 0
    for l in thread_elements:
        if l.endpoints == fixed_element.endpoints:
            continue
        img = apply_to_leaf(g, l)
        before = _thread_position(fixed_leaf, l)
        after = _thread_position(fixed_leaf, img)
        anchor = _thread_position(fixed_leaf, fixed_element)
        db = _pos_delta(before, anchor)
        da = _pos_delta(after, anchor)
        if da > db:
            away += 1
        elif da < db:
            toward += 1
    if away and not toward:
        return EXPANDS
    if toward and not away:
        return CONTRACTS
    return NEITHER


def _thread_position(base: Leaf, crossing: Leaf):
    """Endpoint of the crossing leaf inside arc(base.p -> base.q): the exact
    crossing position along the base leaf in thread order."""
    from .circle import arc_contains

    for e in (crossing.p, crossing.q):
        if arc_contains(base.p, base.q, e):
            return e.angle
    raise ValueError(f"{crossing} does not cross {base}")


def _pos_delta(x, anchor):
    d = x - anchor
    return d if d.sign() >= 0 else -d
