"""Polygon-tiled oriented surfaces encoding diagonal-pair double cosets.

A surface is stored purely combinatorially: plus and minus polygons
(one slot per color, colors arranged in a fixed cyclic order, clockwise
on plus faces) and one color-preserving perfect matching of slots.
Vertices are never materialized; they are defined as the corner-walk
cycles, which makes the vertex-cut normalization of the gluing product
automatic and idempotent.

Labels ``1..beta`` on plus faces (entries) and ``1..alpha`` on minus
faces (exits) turn a surface into a double-coset datum; the canonical
form drops label-free double polygons, which carry no information.
"""
from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from ._matchgraph import component_code, component_faces, invert_matching
from .perm_core import ColoredPerm

RAW_SUM_BOUND = 10**6

_COLOR_NAMES = ("red", "yellow", "blue", "green", "orange", "purple")


def _color_name(c: int) -> str:
    return _COLOR_NAMES[c - 1] if c <= len(_COLOR_NAMES) else f"color{c}"


class EquippedSurface:
    """Checkerwise-signed polygon surface with colored edges and labels."""

    __slots__ = ("n_colors", "n_faces", "matchings", "entries", "exits", "_canon")

    def __init__(self, n_colors: int, n_faces: int, matchings: Sequence[Sequence[int]],
                 entries: Sequence[int] = (), exits: Sequence[int] = (),
                 normalize: bool = True):
        if n_colors < 2:
            raise ValueError("a polygon needs at least 2 edge colors")
        matchings = tuple(tuple(int(v) for v in row) for row in matchings)
        if len(matchings) != n_colors:
            raise ValueError("one matching per color required")
        for row in matchings:
            if sorted(row) != list(range(n_faces)):
                raise ValueError("each matching must pair all faces bijectively")
        entries = tuple(int(v) for v in entries)
        exits = tuple(int(v) for v in exits)
        for seq in (entries, exits):
            if len(set(seq)) != len(seq) or any(not 0 <= v < n_faces for v in seq):
                raise ValueError("labels must be injective and in range")
        if normalize and n_faces:
            keep_plus, keep_minus = [], []
            ent, ext = set(entries), set(exits)
            for p in range(n_faces):
                partners = {matchings[c][p] for c in range(n_colors)}
                if (
                    len(partners) == 1
                    and p not in ent
                    and next(iter(partners)) not in ext
                ):
                    continue  # label-free double polygon
                keep_plus.append(p)
            kept = set(keep_plus)
            dropped_minus = {
                matchings[0][p] for p in range(n_faces) if p not in kept
            }
            keep_minus = [m for m in range(n_faces) if m not in dropped_minus]
            if len(keep_plus) != n_faces:
                pmap = {p: i for i, p in enumerate(keep_plus)}
                mmap = {m: i for i, m in enumerate(keep_minus)}
                matchings = tuple(
                    tuple(mmap[matchings[c][p]] for p in keep_plus)
                    for c in range(n_colors)
                )
                entries = tuple(pmap[p] for p in entries)
                exits = tuple(mmap[m] for m in exits)
                n_faces = len(keep_plus)
        self.n_colors = n_colors
        self.n_faces = n_faces
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
        """Label of plus face ``p`` (0 when unlabeled)."""
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
        return isinstance(other, EquippedSurface) and surface_canon(self) == surface_canon(other)

    def __hash__(self) -> int:
        return hash(surface_canon(self))

    def __repr__(self) -> str:
        return (
            f"EquippedSurface(n_colors={self.n_colors}, faces=2*{self.n_faces}, "
            f"alpha={self.alpha}, beta={self.beta})"
        )

    def to_json(self) -> dict:
        return {
            "n_colors": self.n_colors,
            "n_plus": self.n_faces,
            "matchings": [list(row) for row in self.matchings],
            "plus_labels": list(self.entries),
            "minus_labels": list(self.exits),
        }

    @classmethod
    def from_json(cls, data) -> "EquippedSurface":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["n_colors"],
            data["n_plus"],
            data["matchings"],
            data["plus_labels"],
            data["minus_labels"],
        )

    def to_dot(self) -> str:
        """Face-adjacency multigraph with edge colors, signs and labels."""
        lines = ["graph surface {"]
        for p in range(self.n_faces):
            label = self.plus_label(p)
            text = f"+{label}" if label else "+"
            lines.append(f'  p{p} [shape=triangle, label="{text}"];')
        for m in range(self.n_faces):
            label = self.minus_label(m)
            text = f"-{label}" if label else "-"
            lines.append(f'  m{m} [shape=invtriangle, label="{text}"];')
        for c in range(self.n_colors):
            for p in range(self.n_faces):
                lines.append(
                    f'  p{p} -- m{self.matchings[c][p]} [color={_color_name(c + 1)}];'
                )
        lines.append("}")
        return "\n".join(lines) + "\n"


def surface_from_tuple(perms: Sequence[ColoredPerm], alpha: int, beta: int,
                       n_points: int | None = None) -> EquippedSurface:
    """Surface of the coset of a permutation tuple at levels (alpha, beta).

    The color-c slot of plus face ``k`` is matched with the color-c slot
    of minus face ``g_c(k)``; plus faces ``1..beta`` and minus faces
    ``1..alpha`` keep their labels.
    """
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
    return EquippedSurface(
        len(perms), n_points, matchings, tuple(range(beta)), tuple(range(alpha))
    )


def tuple_from_surface(s: EquippedSurface) -> tuple:
    """Inverse of :func:`surface_from_tuple` on fully labeled surfaces."""
    if s.beta != s.n_faces or s.alpha != s.n_faces:
        raise ValueError("every face must be labeled")
    minus_label = {m: k + 1 for k, m in enumerate(s.exits)}
    out = []
    for c in range(s.n_colors):
        images = [minus_label[s.matchings[c][s.entries[k]]] for k in range(s.n_faces)]
        out.append(ColoredPerm.from_images(images))
    return tuple(out)


def surface_mul(s1: EquippedSurface, s2: EquippedSurface) -> EquippedSurface:
    """Glue ``s1`` at (alpha, beta) with ``s2`` at (beta, gamma).

    Entry faces of ``s1`` and exit faces of ``s2`` with equal labels are
    removed and the hole boundaries are sewn color by color; vertices are
    corner-walk cycles, so pasted vertices separate by definition.
    """
    if s1.n_colors != s2.n_colors:
        raise ValueError("color counts differ")
    if s1.beta != s2.alpha:
        raise ValueError(f"inner levels differ: {s1.beta} vs {s2.alpha}")
    n = s1.n_colors
    ent = set(s1.entries)
    ext = set(s2.exits)
    plus_ids = [(1, p) for p in range(s1.n_faces) if p not in ent]
    plus_ids += [(2, p) for p in range(s2.n_faces)]
    minus_ids = [(1, m) for m in range(s1.n_faces)]
    minus_ids += [(2, m) for m in range(s2.n_faces) if m not in ext]
    pmap = {key: i for i, key in enumerate(plus_ids)}
    mmap = {key: i for i, key in enumerate(minus_ids)}
    exit_slot = {m: k for k, m in enumerate(s2.exits)}
    matchings = []
    for c in range(n):
        row = []
        for carrier, p in plus_ids:
            if carrier == 1:
                row.append(mmap[(1, s1.matchings[c][p])])
            else:
                t = s2.matchings[c][p]
                if t in exit_slot:
                    entry = s1.entries[exit_slot[t]]
                    row.append(mmap[(1, s1.matchings[c][entry])])
                else:
                    row.append(mmap[(2, t)])
        matchings.append(tuple(row))
    entries = tuple(pmap[(2, p)] for p in s2.entries)
    exits = tuple(mmap[(1, m)] for m in s1.exits)
    return EquippedSurface(n, len(plus_ids), matchings, entries, exits)


def surface_involution(s: EquippedSurface) -> EquippedSurface:
    """Orientation flip with signs exchanged; entries and exits swap."""
    return EquippedSurface(
        s.n_colors,
        s.n_faces,
        s.inverse_matchings(),
        entries=s.exits,
        exits=s.entries,
        normalize=False,
    )


def vertices(s: EquippedSurface) -> dict:
    """Corner-walk cycles, keyed by the ordered pair of edge colors at
    the corner (cyclically adjacent, 1-based).

    A vertex between colors ``(c, c')`` is an orbit of the permutation
    ``p -> match_inv[c][match[c'][p]]`` of plus faces.
    """
    inv = s.inverse_matchings()
    out = {}
    for c in range(s.n_colors):
        c2 = (c + 1) % s.n_colors
        images = [inv[c][s.matchings[c2][p]] for p in range(s.n_faces)]
        seen = [False] * s.n_faces
        cycles = []
        for start in range(s.n_faces):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = images[x]
            cycles.append(tuple(cyc))
        out[(c + 1, c2 + 1)] = cycles
    return out


class SurfaceComponent:
    """One connected component with its derived counts."""

    __slots__ = ("plus_faces", "minus_faces", "n_colors", "V", "E", "F")

    def __init__(self, plus_faces, minus_faces, n_colors, n_vertices):
        self.plus_faces = tuple(plus_faces)
        self.minus_faces = tuple(minus_faces)
        self.n_colors = n_colors
        self.V = n_vertices
        self.E = n_colors * len(self.plus_faces)
        self.F = len(self.plus_faces) + len(self.minus_faces)

    @property
    def chi(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        return (2 - self.chi) // 2

    def __repr__(self) -> str:
        return (
            f"SurfaceComponent(F={self.F}, E={self.E}, V={self.V}, chi={self.chi})"
        )


def components(s: EquippedSurface) -> list:
    """Connected components; each vertex cycle lies inside one of them."""
    comps = component_faces(s.n_faces, s.matchings)
    vertex_cycles = [cyc for cycles in vertices(s).values() for cyc in cycles]
    out = []
    for plus, minus in comps:
        plus_set = set(plus)
        n_vertices = sum(1 for cyc in vertex_cycles if cyc[0] in plus_set)
        out.append(SurfaceComponent(plus, minus, s.n_colors, n_vertices))
    return out


def surface_canon(s: EquippedSurface) -> bytes:
    """Canonical byte code: sorted minimal BFS codes of the components."""
    if s._canon is not None:
        return s._canon
    inv = s.inverse_matchings()
    codes = []
    for plus, minus in component_faces(s.n_faces, s.matchings):
        codes.append(
            component_code(plus, minus, s.matchings, inv, s.plus_label, s.minus_label)
        )
    payload = {
        "n": s.n_colors,
        "alpha": s.alpha,
        "beta": s.beta,
        "comps": sorted(
            [[row[0], row[1], list(row[2])] for row in code] for code in codes
        ),
    }
    s._canon = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()
    return s._canon


def _component_contract(order, edge_labels, tensors) -> complex:
    """Contract one component's tensor network following ``order``."""
    frontier = np.array(1.0, dtype=complex)
    labels: list = []
    for node in order:
        t = tensors[node]
        t_labels = edge_labels[node]
        common = [lab for lab in t_labels if lab in labels]
        ax_f = [labels.index(lab) for lab in common]
        ax_t = [t_labels.index(lab) for lab in common]
        frontier = np.tensordot(frontier, t, axes=(ax_f, ax_t))
        labels = [lab for lab in labels if lab not in common] + [
            lab for lab in t_labels if lab not in common
        ]
    assert not labels, "all edges must be contracted"
    return complex(frontier)


def spherical_assignment_sum(s: EquippedSurface, coeffs, method: str = "contract") -> complex:
    """Sum over edge assignments of basis indices of the products of face
    coefficients (conjugated on minus faces), component by component.

    ``coeffs`` is a dense complex array with one axis per color.
    ``method="enumerate"`` keeps the raw assignment sum as a cross-check
    path for tiny instances.
    """
    arr = np.asarray(getattr(coeffs, "coeffs", coeffs), dtype=complex)
    if arr.ndim != s.n_colors:
        raise ValueError(f"coefficient tensor must have {s.n_colors} axes")
    inv = s.inverse_matchings()
    total = complex(1.0)
    for plus, minus in component_faces(s.n_faces, s.matchings):
        nodes = [(1, p) for p in plus] + [(-1, m) for m in minus]
        edge_labels = {}
        tensors = {}
        for sign, fid in nodes:
            if sign > 0:
                edge_labels[(sign, fid)] = [(fid, c) for c in range(s.n_colors)]
                tensors[(sign, fid)] = arr
            else:
                edge_labels[(sign, fid)] = [
                    (inv[c][fid], c) for c in range(s.n_colors)
                ]
                tensors[(sign, fid)] = arr.conj()
        if method == "enumerate":
            total *= _enumerate_component(s, arr, plus, minus, inv)
            continue
        # BFS order keeps the contraction frontier narrow
        order = [nodes[0]]
        seen = {nodes[0]}
        head = 0
        while head < len(order):
            sign, fid = order[head]
            head += 1
            for c in range(s.n_colors):
                nbr = (-sign, s.matchings[c][fid] if sign > 0 else inv[c][fid])
                if nbr not in seen:
                    seen.add(nbr)
                    order.append(nbr)
        total *= _component_contract(order, edge_labels, tensors)
    return total


def _enumerate_component(s, arr, plus, minus, inv) -> complex:
    import itertools

    edges = [(p, c) for p in plus for c in range(s.n_colors)]
    size = 1
    for _, c in edges:
        size *= arr.shape[c]
        if size > RAW_SUM_BOUND:
            raise ValueError("raw enumeration bound exceeded")
    total = complex(0.0)
    for assign in itertools.product(*[range(arr.shape[c]) for _, c in edges]):
        value = complex(1.0)
        index = dict(zip(edges, assign))
        for p in plus:
            value *= arr[tuple(index[(p, c)] for c in range(s.n_colors))]
        for m in minus:
            value *= arr[tuple(index[(inv[c][m], c)] for c in range(s.n_colors))].conjugate()
        total += value
    return total
