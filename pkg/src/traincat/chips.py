"""Arc diagrams encoding double cosets of the bisymmetric pair.

A chip keeps, for each open arc, its two labeled endpoints and the
number of roods (axis-crossing marks) on it, plus a multiset of rood
counts for closed cycles.  Endpoints live on two rows: the top row
carries labels ``1..beta`` on both sides of the reflection axis, the
bottom row labels ``1..alpha``.

Arc parities are structural: a top-bottom arc keeps its side and has an
even rood count, a top-top or bottom-bottom arc switches sides and has
an odd count, cycles are even.  Cycles with exactly two roods carry no
information and are dropped, so the identity coset is the empty chip.
"""
from __future__ import annotations

import json
from typing import Iterable

from .perm_core import ColoredPerm

TOP, BOTTOM = "top", "bottom"
LEFT, RIGHT = "left", "right"

Endpoint = tuple  # (row, side, index)


def _check_endpoint(e: Endpoint, alpha: int, beta: int) -> None:
    row, side, idx = e
    if row not in (TOP, BOTTOM) or side not in (LEFT, RIGHT):
        raise ValueError(f"bad endpoint {e!r}")
    bound = beta if row == TOP else alpha
    if not (1 <= idx <= bound):
        raise ValueError(f"endpoint {e!r} outside its level bound {bound}")


class Chip:
    """Canonical double-coset datum at levels (alpha, beta)."""

    __slots__ = ("alpha", "beta", "arcs", "cycles")

    def __init__(self, alpha: int, beta: int, arcs: Iterable = (), cycles: Iterable[int] = ()):
        if alpha < 0 or beta < 0:
            raise ValueError("levels must be >= 0")
        self.alpha = alpha
        self.beta = beta
        norm = set()
        used = set()
        for a, b, roods in arcs:
            a, b = tuple(a), tuple(b)
            _check_endpoint(a, alpha, beta)
            _check_endpoint(b, alpha, beta)
            for e in (a, b):
                if e in used:
                    raise ValueError(f"endpoint {e!r} used twice")
                used.add(e)
            if a > b:
                a, b = b, a
            if a[0] != b[0]:  # top-bottom
                if a[1] != b[1] or roods % 2 == 1:
                    raise ValueError("top-bottom arcs keep their side and have even roods")
            else:
                if a[1] == b[1] or roods % 2 == 0:
                    raise ValueError("same-row arcs switch sides and have odd roods")
            norm.add((a, b, int(roods)))
        expected = {(TOP, s, i) for s in (LEFT, RIGHT) for i in range(1, beta + 1)}
        expected |= {(BOTTOM, s, i) for s in (LEFT, RIGHT) for i in range(1, alpha + 1)}
        if used != expected:
            raise ValueError("every labeled endpoint must be used exactly once")
        for r in cycles:
            if r <= 0 or r % 2 == 1:
                raise ValueError("cycle rood counts must be positive and even")
            if r == 2:
                raise ValueError("trivial 2-rood cycles must be dropped")
        self.arcs = frozenset(norm)
        self.cycles = tuple(sorted(cycles))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chip)
            and (self.alpha, self.beta) == (other.alpha, other.beta)
            and self.arcs == other.arcs
            and self.cycles == other.cycles
        )

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta, self.arcs, self.cycles))

    def __repr__(self) -> str:
        return (
            f"Chip(alpha={self.alpha}, beta={self.beta}, "
            f"arcs={sorted(self.arcs)}, cycles={list(self.cycles)})"
        )

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "arcs": [
                {"a": list(a), "b": list(b), "roods": r} for a, b, r in sorted(self.arcs)
            ],
            "cycles": list(self.cycles),
        }

    @classmethod
    def from_json(cls, data) -> "Chip":
        if isinstance(data, str):
            data = json.loads(data)
        arcs = [(tuple(rec["a"]), tuple(rec["b"]), rec["roods"]) for rec in data["arcs"]]
        return cls(data["alpha"], data["beta"], arcs, data["cycles"])


def identity_chip(beta: int) -> Chip:
    """The unit of the arc semigroup at level (beta, beta)."""
    e = ColoredPerm.identity(1)
    return chip_from_pair(e, e, beta, beta)


def _walk(primary, secondary, start, seen):
    """Trace the alternating chain starting at ``start`` along its primary arc.

    ``primary``/``secondary`` map each node to its partner along the two
    arc kinds (``secondary`` may return (None, 0) meaning no such arc).
    Chains alternate kinds.  Returns (end, roods) for an open chain and
    (None, roods) for a closed one; visited nodes are added to ``seen``.
    """
    node, kind, roods = start, 0, 0
    while True:
        seen.add(node)
        if kind == 0:
            node, r = primary(node)
        else:
            node, r = secondary(node)
            if node is None:
                raise AssertionError("chain continued into a missing arc")
        roods += r
        if node == start and kind == 1:
            return None, roods
        seen.add(node)
        nxt, _ = secondary(node) if kind == 0 else primary(node)
        if nxt is None:
            return node, roods
        kind ^= 1


def chip_from_pair(g1: ColoredPerm, g2: ColoredPerm, alpha: int, beta: int) -> Chip:
    """Chip of the coset of ``(g1, g2)`` at levels (alpha, beta).

    ``g1`` draws the vertical arcs on the left of the axis (top ``k`` down
    to bottom ``g1(k)``), ``g2`` those on the right; unlabeled positions of
    a row are joined across the axis by one-rood horizontal arcs, and the
    glued chains are recorded.
    """
    if g1.m != 1 or g2.m != 1:
        raise ValueError("chips encode pairs of single-color permutations")
    n = max(alpha, beta, g1.max_index(), g2.max_index())
    vert = {}
    for k in range(1, n + 1):
        a, b = (TOP, LEFT, k), (BOTTOM, LEFT, g1.apply_index(k))
        vert[a] = b
        vert[b] = a
        a, b = (TOP, RIGHT, k), (BOTTOM, RIGHT, g2.apply_index(k))
        vert[a] = b
        vert[b] = a

    def vertical(node):
        return vert[node], 0

    def horizontal(node):
        row, side, idx = node
        bound = beta if row == TOP else alpha
        if idx <= bound:
            return None, 0
        return (row, RIGHT if side == LEFT else LEFT, idx), 1

    labeled = [node for node in vert if horizontal(node)[0] is None]
    seen: set = set()
    arcs = []
    for start in sorted(labeled):
        if start in seen:
            continue
        end, roods = _walk(vertical, horizontal, start, seen)
        arcs.append((start, end, roods))
    cycles = []
    for start in sorted(vert):
        if start in seen:
            continue
        end, roods = _walk(vertical, horizontal, start, seen)
        assert end is None and roods > 0, "leftover chains must be closed"
        if roods != 2:
            cycles.append(roods)
    return Chip(alpha, beta, arcs, cycles)


def chip_mul(c1: Chip, c2: Chip) -> Chip:
    """Glue the top row of ``c1`` (levels (alpha, beta)) to the bottom row
    of ``c2`` (levels (beta, gamma)); rood counts add along chains."""
    if c1.beta != c2.alpha:
        raise ValueError(f"inner levels differ: {c1.beta} vs {c2.alpha}")
    beta = c1.beta
    # nodes (carrier, endpoint); each node lies on exactly one chip arc,
    # inner nodes additionally on one gluing bridge
    arc_of = {}
    for carrier, chip in ((1, c1), (2, c2)):
        for a, b, r in chip.arcs:
            arc_of[(carrier, a)] = ((carrier, b), r)
            arc_of[(carrier, b)] = ((carrier, a), r)
    bridge_of = {}
    for side in (LEFT, RIGHT):
        for k in range(1, beta + 1):
            u, v = (1, (TOP, side, k)), (2, (BOTTOM, side, k))
            bridge_of[u] = v
            bridge_of[v] = u

    def along_arc(node):
        return arc_of[node]

    def along_bridge(node):
        other = bridge_of.get(node)
        return (other, 0) if other is not None else (None, 0)

    outer = [
        (2, (TOP, side, k)) for side in (LEFT, RIGHT) for k in range(1, c2.beta + 1)
    ] + [
        (1, (BOTTOM, side, k)) for side in (LEFT, RIGHT) for k in range(1, c1.alpha + 1)
    ]
    seen: set = set()
    arcs = []
    for start in outer:
        if start in seen:
            continue
        end, roods = _walk(along_arc, along_bridge, start, seen)
        arcs.append((start[1], end[1], roods))
    cycles = list(c1.cycles) + list(c2.cycles)
    for start in arc_of:
        if start in seen:
            continue
        end, roods = _walk(along_arc, along_bridge, start, seen)
        assert end is None, "leftover chains must be closed"
        if roods != 2:
            cycles.append(roods)
    return Chip(c1.alpha, c2.beta, arcs, cycles)


def chip_involution(c: Chip) -> Chip:
    """Reflection in the horizontal axis: rows swap, roods survive."""
    flip = {TOP: BOTTOM, BOTTOM: TOP}
    arcs = [
        ((flip[a[0]], a[1], a[2]), (flip[b[0]], b[1], b[2]), r) for a, b, r in c.arcs
    ]
    return Chip(c.beta, c.alpha, arcs, c.cycles)


def chip_canon(c: Chip) -> bytes:
    """Canonical byte code; equal iff the decorated diagrams are equal."""
    payload = {
        "alpha": c.alpha,
        "beta": c.beta,
        "arcs": sorted([list(a), list(b), r] for a, b, r in c.arcs),
        "cycles": list(c.cycles),
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()


def chip_thoma_eval(c: Chip, params) -> float:
    """Value of the extreme character with the given parameters on a
    (0, 0)-chip: one factor per cycle, a cycle with ``2k`` roods
    contributing ``sum(alpha_j^k) + (-1)^(k-1) sum(beta_j^k)``."""
    if c.alpha != 0 or c.beta != 0 or c.arcs:
        raise ValueError("character evaluation needs a (0,0) chip")
    value = 1.0
    for roods in c.cycles:
        value *= params.cycle_factor(roods // 2)
    return value
