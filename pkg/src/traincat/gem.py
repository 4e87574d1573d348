"""Chamber-matching encodings of oriented normal pseudomanifold bordisms.

A complex of dimension ``n`` is a set of plus and minus chambers with one
perfect matching per facet color ``0..n``.  The simplicial realization is
never materialized: a face with vertex-color set ``W`` is a connected
component of the chamber graph using only the matchings of the
complementary colors.  Since faces are components by definition, the
glued product is normal as built, with no splitting pass.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from ._matchgraph import component_code, component_faces, invert_matching
from .perm_core import ColoredPerm
from .surfaces import EquippedSurface


class GemComplex:
    """Colored chamber matchings; dimension ``n`` uses colors ``0..n``."""

    __slots__ = ("dim", "n_chambers", "matchings", "entries", "exits", "_canon")

    def __init__(self, dim: int, n_chambers: int, matchings: Sequence[Sequence[int]],
                 entries: Sequence[int] = (), exits: Sequence[int] = (),
                 normalize: bool = True):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        matchings = tuple(tuple(int(v) for v in row) for row in matchings)
        if len(matchings) != dim + 1:
            raise ValueError(f"need {dim + 1} facet matchings")
        for row in matchings:
            if sorted(row) != list(range(n_chambers)):
                raise ValueError("each matching must pair all chambers bijectively")
        entries = tuple(int(v) for v in entries)
        exits = tuple(int(v) for v in exits)
        for seq in (entries, exits):
            if len(set(seq)) != len(seq) or any(not 0 <= v < n_chambers for v in seq):
                raise ValueError("labels must be injective and in range")
        if normalize and n_chambers:
            ent, ext = set(entries), set(exits)
            keep_plus = []
            for p in range(n_chambers):
                partners = {matchings[c][p] for c in range(dim + 1)}
                if len(partners) == 1 and p not in ent and next(iter(partners)) not in ext:
                    continue  # label-free double chamber
                keep_plus.append(p)
            kept = set(keep_plus)
            dropped_minus = {
                matchings[0][p] for p in range(n_chambers) if p not in kept
            }
            keep_minus = [m for m in range(n_chambers) if m not in dropped_minus]
            if len(keep_plus) != n_chambers:
                pmap = {p: i for i, p in enumerate(keep_plus)}
                mmap = {m: i for i, m in enumerate(keep_minus)}
                matchings = tuple(
                    tuple(mmap[matchings[c][p]] for p in keep_plus)
                    for c in range(dim + 1)
                )
                entries = tuple(pmap[p] for p in entries)
                exits = tuple(mmap[m] for m in exits)
                n_chambers = len(keep_plus)
        self.dim = dim
        self.n_chambers = n_chambers
        self.matchings = matchings
        self.entries = entries
        self.exits = exits
        self._canon = None

    @property
    def alpha(self) -> int:
        return len(self.exits)

    @property
    def beta(self) -> int:
        return len(self.entries)

    def plus_label(self, p: int) -> int:
        try:
            return self.entries.index(p) + 1
        except ValueError:
            return 0

    def minus_label(self, m: int) -> int:
        try:
            return self.exits.index(m) + 1
        except ValueError:
            return 0

    def inverse_matchings(self) -> tuple:
        return tuple(invert_matching(row) for row in self.matchings)

    def __eq__(self, other) -> bool:
        return isinstance(other, GemComplex) and gem_canon(self) == gem_canon(other)

    def __hash__(self) -> int:
        return hash(gem_canon(self))

    def __repr__(self) -> str:
        return (
            f"GemComplex(dim={self.dim}, chambers=2*{self.n_chambers}, "
            f"alpha={self.alpha}, beta={self.beta})"
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "n_plus": self.n_chambers,
            "matchings": [list(row) for row in self.matchings],
            "plus_labels": list(self.entries),
            "minus_labels": list(self.exits),
        }

    @classmethod
    def from_json(cls, data) -> "GemComplex":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["dim"],
            data["n_plus"],
            data["matchings"],
            data["plus_labels"],
            data["minus_labels"],
        )


class FaceRecord:
    """A face: its vertex-color set and the chambers realizing it."""

    __slots__ = ("colors", "plus_chambers", "minus_chambers")

    def __init__(self, colors, plus_chambers, minus_chambers):
        self.colors = frozenset(colors)
        self.plus_chambers = tuple(plus_chambers)
        self.minus_chambers = tuple(minus_chambers)

    @property
    def dim(self) -> int:
        return len(self.colors) - 1

    def chamber_set(self) -> frozenset:
        plus = {(1, p) for p in self.plus_chambers}
        minus = {(-1, m) for m in self.minus_chambers}
        return frozenset(plus | minus)

    def __repr__(self) -> str:
        return (
            f"FaceRecord(colors={sorted(self.colors)}, "
            f"chambers={len(self.plus_chambers) + len(self.minus_chambers)})"
        )


def gem_from_tuple(perms: Sequence[ColoredPerm], alpha: int, beta: int,
                   n_points: int | None = None) -> GemComplex:
    """Complex of the coset of ``dim + 1`` permutations at (alpha, beta):
    the color-c facet of plus chamber ``k`` is glued to that of minus
    chamber ``g_c(k)``."""
    perms = tuple(perms)
    if len(perms) < 2:
        raise ValueError("need at least two permutations")
    for g in perms:
        if g.m != 1:
            raise ValueError("components must be single-color permutations")
    top = max(g.max_index() for g in perms)
    if n_points is None:
        n_points = max(alpha, beta, top)
    if top > n_points or alpha > n_points or beta > n_points:
        raise ValueError("supports and labels must fit the truncation")
    matchings = [
        tuple(g.apply_index(k) - 1 for k in range(1, n_points + 1)) for g in perms
    ]
    return GemComplex(
        len(perms) - 1, n_points, matchings, tuple(range(beta)), tuple(range(alpha))
    )


def faces(g: GemComplex, colors: Iterable[int]) -> list:
    """Faces with vertex-color set ``colors``: components of the chamber
    graph under the matchings of the complementary colors.

    The returned poset is the normalized one; links of these faces are
    connected by construction.
    """
    w = frozenset(int(c) for c in colors)
    if not w or not w <= set(range(g.dim + 1)):
        raise ValueError(f"colors must be a nonempty subset of 0..{g.dim}")
    rest = [c for c in range(g.dim + 1) if c not in w]
    comps = component_faces(g.n_chambers, g.matchings, rest)
    return [FaceRecord(w, plus, minus) for plus, minus in comps]


def f_vector(g: GemComplex):
    """Face counts by dimension plus per-component Euler characteristics."""
    import itertools

    counts = [0] * (g.dim + 1)
    by_comp: dict = {}
    comp_of = {}
    for idx, (plus, minus) in enumerate(component_faces(g.n_chambers, g.matchings)):
        by_comp[idx] = [0] * (g.dim + 1)
        for p in plus:
            comp_of[(1, p)] = idx
        for m in minus:
            comp_of[(-1, m)] = idx
    for size in range(1, g.dim + 2):
        for w in itertools.combinations(range(g.dim + 1), size):
            for face in faces(g, w):
                counts[size - 1] += 1
                anchor = (
                    (1, face.plus_chambers[0])
                    if face.plus_chambers
                    else (-1, face.minus_chambers[0])
                )
                by_comp[comp_of[anchor]][size - 1] += 1
    chis = [
        sum((-1) ** d * c for d, c in enumerate(vec)) for vec in by_comp.values()
    ]
    return tuple(counts), chis


def gem_mul(g1: GemComplex, g2: GemComplex) -> GemComplex:
    """Remove entry chambers of ``g1`` and exit chambers of ``g2`` with
    equal labels and compose the facet matchings through the holes.
    Faces of the result are components, hence already normalized."""
    if g1.dim != g2.dim:
        raise ValueError("dimensions differ")
    if g1.beta != g2.alpha:
        raise ValueError(f"inner levels differ: {g1.beta} vs {g2.alpha}")
    ent = set(g1.entries)
    ext = set(g2.exits)
    plus_ids = [(1, p) for p in range(g1.n_chambers) if p not in ent]
    plus_ids += [(2, p) for p in range(g2.n_chambers)]
    minus_ids = [(1, m) for m in range(g1.n_chambers)]
    minus_ids += [(2, m) for m in range(g2.n_chambers) if m not in ext]
    pmap = {key: i for i, key in enumerate(plus_ids)}
    mmap = {key: i for i, key in enumerate(minus_ids)}
    exit_slot = {m: k for k, m in enumerate(g2.exits)}
    matchings = []
    for c in range(g1.dim + 1):
        row = []
        for carrier, p in plus_ids:
            if carrier == 1:
                row.append(mmap[(1, g1.matchings[c][p])])
            else:
                t = g2.matchings[c][p]
                if t in exit_slot:
                    entry = g1.entries[exit_slot[t]]
                    row.append(mmap[(1, g1.matchings[c][entry])])
                else:
                    row.append(mmap[(2, t)])
        matchings.append(tuple(row))
    entries = tuple(pmap[(2, p)] for p in g2.entries)
    exits = tuple(mmap[(1, m)] for m in g1.exits)
    return GemComplex(g1.dim, len(plus_ids), matchings, entries, exits)


def gem_involution(g: GemComplex) -> GemComplex:
    return GemComplex(
        g.dim,
        g.n_chambers,
        g.inverse_matchings(),
        entries=g.exits,
        exits=g.entries,
        normalize=False,
    )


def gem_canon(g: GemComplex) -> bytes:
    if g._canon is not None:
        return g._canon
    inv = g.inverse_matchings()
    codes = []
    for plus, minus in component_faces(g.n_chambers, g.matchings):
        codes.append(
            component_code(plus, minus, g.matchings, inv, g.plus_label, g.minus_label)
        )
    payload = {
        "dim": g.dim,
        "alpha": g.alpha,
        "beta": g.beta,
        "comps": sorted(
            [[row[0], row[1], list(row[2])] for row in code] for code in codes
        ),
    }
    g._canon = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()
    return g._canon


def surface_of_gem(g: GemComplex) -> EquippedSurface:
    """The polygon surface traced inside each chamber: one (dim+1)-gon per
    chamber with sides in the fixed cyclic color order, same matchings,
    same labels.  Commutes with gluing and with the tuple encodings."""
    return EquippedSurface(
        g.dim + 1,
        g.n_chambers,
        g.matchings,
        entries=g.entries,
        exits=g.exits,
        normalize=False,
    )


def gem_to_off(g: GemComplex) -> str:
    """OFF export of the 2-dimensional case: vertices are the color-set
    faces of size 1, polygons are the chambers."""
    if g.dim != 2:
        raise ValueError("OFF export covers dimension 2 only")
    vertex_faces = []
    for c in range(3):
        vertex_faces.extend(faces(g, [c]))
    index = {}
    for i, face in enumerate(vertex_faces):
        color = next(iter(face.colors))
        for p in face.plus_chambers:
            index[(1, p, color)] = i
        for m in face.minus_chambers:
            index[(-1, m, color)] = i
    lines = ["OFF", f"{len(vertex_faces)} {2 * g.n_chambers} 0"]
    for i, face in enumerate(vertex_faces):
        lines.append(f"0 0 {i}")  # combinatorial placement only
    for sign in (1, -1):
        for ch in range(g.n_chambers):
            verts = [index[(sign, ch, c)] for c in range(3)]
            lines.append("3 " + " ".join(str(v) for v in verts))
    return "\n".join(lines) + "\n"
