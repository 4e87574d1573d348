"""Bipartite l-valent diagrams for the wreath-subgroup pair.

A diagram has signed vertices of valence ``l``; every edge joins a plus
semi-edge to a minus semi-edge.  Labeled vertices carry pairwise
distinct semi-edge colors ``1..l``; forgetting a label erases the colors
of its semi-edges (stored as 0).  Multi-edges are first class: unlabeled
vertices have unordered, colorless edge-ends, which is why canonical
codes need a branching search rather than plain BFS.
"""
from __future__ import annotations

import itertools
import json
from typing import Sequence

from .perm_core import ColoredPerm


class BipartiteDiagram:
    """Edges are records ``(plus, plus_color, minus, minus_color)`` with
    0 denoting an absent color; labels are ``1..beta`` / ``1..alpha``."""

    __slots__ = ("l", "n_vertices", "edges", "entries", "exits", "_canon")

    def __init__(self, l: int, n_vertices: int, edges: Sequence, entries: Sequence[int] = (),
                 exits: Sequence[int] = (), normalize: bool = True):
        if l < 1:
            raise ValueError("valence must be >= 1")
        edges = sorted((int(p), int(pc), int(m), int(mc)) for p, pc, m, mc in edges)
        entries = tuple(int(v) for v in entries)
        exits = tuple(int(v) for v in exits)
        for seq in (entries, exits):
            if len(set(seq)) != len(seq) or any(not 0 <= v < n_vertices for v in seq):
                raise ValueError("labels must be injective and in range")
        plus_ends: dict[int, list] = {p: [] for p in range(n_vertices)}
        minus_ends: dict[int, list] = {m: [] for m in range(n_vertices)}
        for p, pc, m, mc in edges:
            if not (0 <= p < n_vertices and 0 <= m < n_vertices):
                raise ValueError("edge endpoint out of range")
            if not (0 <= pc <= l and 0 <= mc <= l):
                raise ValueError("semi-edge color out of range")
            plus_ends[p].append(pc)
            minus_ends[m].append(mc)
        for side, ends, labeled in (("plus", plus_ends, set(entries)),
                                    ("minus", minus_ends, set(exits))):
            for v, colors in ends.items():
                if len(colors) != l:
                    raise ValueError(f"{side} vertex {v} has {len(colors)} semi-edges, needs {l}")
                if v in labeled:
                    if sorted(colors) != list(range(1, l + 1)):
                        raise ValueError(f"labeled {side} vertex {v} needs distinct colors 1..{l}")
                elif any(c != 0 for c in colors):
                    raise ValueError(f"unlabeled {side} vertex {v} must have colorless semi-edges")
        if normalize and n_vertices:
            ent, ext = set(entries), set(exits)
            partner: dict[int, set] = {p: set() for p in range(n_vertices)}
            for p, _, m, _ in edges:
                partner[p].add(m)
            drop_plus = set()
            drop_minus = set()
            for p in range(n_vertices):
                ms = partner[p]
                if len(ms) == 1 and p not in ent:
                    m = next(iter(ms))
                    # the two-vertex component is trivial iff the minus
                    # vertex also sees only this plus vertex
                    if m not in ext and all(
                        q == p for q, _, mm, _ in edges if mm == m
                    ):
                        drop_plus.add(p)
                        drop_minus.add(m)
            if drop_plus:
                keep_plus = [p for p in range(n_vertices) if p not in drop_plus]
                keep_minus = [m for m in range(n_vertices) if m not in drop_minus]
                pmap = {p: i for i, p in enumerate(keep_plus)}
                mmap = {m: i for i, m in enumerate(keep_minus)}
                edges = sorted(
                    (pmap[p], pc, mmap[m], mc)
                    for p, pc, m, mc in edges
                    if p not in drop_plus
                )
                entries = tuple(pmap[p] for p in entries)
                exits = tuple(mmap[m] for m in exits)
                n_vertices = len(keep_plus)
        self.l = l
        self.n_vertices = n_vertices
        self.edges = tuple(edges)
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

    def __eq__(self, other) -> bool:
        return isinstance(other, BipartiteDiagram) and graph_canon(self) == graph_canon(other)

    def __hash__(self) -> int:
        return hash(graph_canon(self))

    def __repr__(self) -> str:
        return (
            f"BipartiteDiagram(l={self.l}, vertices=2*{self.n_vertices}, "
            f"alpha={self.alpha}, beta={self.beta})"
        )

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "n_plus": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "plus_labels": list(self.entries),
            "minus_labels": list(self.exits),
        }

    @classmethod
    def from_json(cls, data) -> "BipartiteDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["l"],
            data["n_plus"],
            [tuple(e) for e in data["edges"]],
            data["plus_labels"],
            data["minus_labels"],
        )

    def to_dot(self) -> str:
        """Semi-edge colors become head and tail labels of the edges."""
        lines = ["graph diagram {"]
        for p in range(self.n_vertices):
            label = self.plus_label(p)
            lines.append(f'  p{p} [label="+{label if label else ""}"];')
        for m in range(self.n_vertices):
            label = self.minus_label(m)
            lines.append(f'  m{m} [label="-{label if label else ""}"];')
        for p, pc, m, mc in self.edges:
            lines.append(f'  p{p} -- m{m} [taillabel="{pc}", headlabel="{mc}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_perm(g: ColoredPerm, alpha: int, beta: int,
                    n_points: int | None = None) -> BipartiteDiagram:
    """Diagram of the coset of ``g`` at levels (alpha, beta): an edge
    joins the color-nu semi-edge of plus vertex ``k`` to the color-mu
    semi-edge of minus vertex ``m`` whenever ``g(k, nu) = (m, mu)``."""
    top = max((pt.index for pt in g.support), default=0)
    if n_points is None:
        n_points = max(alpha, beta, top)
    if top > n_points or alpha > n_points or beta > n_points:
        raise ValueError("support and labels must fit the truncation")
    edges = []
    for k in range(1, n_points + 1):
        for nu in range(1, g.m + 1):
            mu, m = g((nu, k))
            edges.append((k - 1, nu, m - 1, mu))
    full = BipartiteDiagram(
        g.m,
        n_points,
        edges,
        entries=tuple(range(n_points)),
        exits=tuple(range(n_points)),
        normalize=False,
    )
    return graph_forget(full, alpha, beta)


def graph_forget(d: BipartiteDiagram, alpha: int, beta: int) -> BipartiteDiagram:
    """Drop plus labels above ``beta`` and minus labels above ``alpha``,
    erasing the semi-edge colors at the unlabeled vertices; idempotent."""
    keep_plus = set(d.entries[: min(beta, d.beta)])
    keep_minus = set(d.exits[: min(alpha, d.alpha)])
    edges = [
        (p, pc if p in keep_plus else 0, m, mc if m in keep_minus else 0)
        for p, pc, m, mc in d.edges
    ]
    return BipartiteDiagram(
        d.l,
        d.n_vertices,
        edges,
        entries=d.entries[: min(beta, d.beta)],
        exits=d.exits[: min(alpha, d.alpha)],
    )


def graph_mul(d1: BipartiteDiagram, d2: BipartiteDiagram) -> BipartiteDiagram:
    """Cut the entry vertices of ``d1`` and exit vertices of ``d2`` with
    equal labels and splice the dangling edges by the removed colors."""
    if d1.l != d2.l:
        raise ValueError("valences differ")
    if d1.beta != d2.alpha:
        raise ValueError(f"inner levels differ: {d1.beta} vs {d2.alpha}")
    l = d1.l
    ent = set(d1.entries)
    ext = set(d2.exits)
    plus_ids = [(1, p) for p in range(d1.n_vertices) if p not in ent]
    plus_ids += [(2, p) for p in range(d2.n_vertices)]
    minus_ids = [(1, m) for m in range(d1.n_vertices)]
    minus_ids += [(2, m) for m in range(d2.n_vertices) if m not in ext]
    pmap = {key: i for i, key in enumerate(plus_ids)}
    mmap = {key: i for i, key in enumerate(minus_ids)}
    # dangling[label k][color nu] = surviving half of the cut edge
    entry_half = {k: {} for k in range(d1.beta)}
    exit_half = {k: {} for k in range(d2.alpha)}
    edges = []
    for p, pc, m, mc in d1.edges:
        if p in ent:
            entry_half[d1.entries.index(p)][pc] = (m, mc)
        else:
            edges.append((pmap[(1, p)], pc, mmap[(1, m)], mc))
    for p, pc, m, mc in d2.edges:
        if m in ext:
            exit_half[d2.exits.index(m)][mc] = (p, pc)
        else:
            edges.append((pmap[(2, p)], pc, mmap[(2, m)], mc))
    for k in range(d1.beta):
        for nu in range(1, l + 1):
            m, mc = entry_half[k][nu]
            p, pc = exit_half[k][nu]
            edges.append((pmap[(2, p)], pc, mmap[(1, m)], mc))
    entries = tuple(pmap[(2, p)] for p in d2.entries)
    exits = tuple(mmap[(1, m)] for m in d1.exits)
    return BipartiteDiagram(l, len(plus_ids), edges, entries, exits)


def graph_involution(d: BipartiteDiagram) -> BipartiteDiagram:
    """Swap signs: every edge reverses, entries and exits trade places."""
    edges = [(m, mc, p, pc) for p, pc, m, mc in d.edges]
    return BipartiteDiagram(d.l, d.n_vertices, edges, d.exits, d.entries, normalize=False)


# -- canonical codes -----------------------------------------------------
#
# Vertices are unified as plus p -> p and minus m -> n + m.  A numbering
# is admissible when it is a BFS order in which, at each processed
# vertex, new neighbors are taken in order of their edge-descriptor
# multiset; neighbors with equal descriptors are tried in every order.
# The minimum code over admissible numberings from every start is
# canonical, and two diagrams get equal codes iff they are isomorphic
# preserving signs, labels and present colors.


def _incidence(d: BipartiteDiagram):
    n = d.n_vertices
    inc: list[list] = [[] for _ in range(2 * n)]
    for p, pc, m, mc in d.edges:
        inc[p].append((pc, mc, n + m))
        inc[n + m].append((mc, pc, p))
    return inc


def _attr(d: BipartiteDiagram, v: int):
    n = d.n_vertices
    if v < n:
        return (1, d.plus_label(v))
    return (-1, d.minus_label(v - n))


def _component_vertices(d: BipartiteDiagram):
    n = d.n_vertices
    inc = _incidence(d)
    seen = [False] * (2 * n)
    comps = []
    for v0 in range(2 * n):
        if seen[v0]:
            continue
        comp = [v0]
        seen[v0] = True
        stack = [v0]
        while stack:
            u = stack.pop()
            for _, _, w in inc[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps, inc


def _min_component_code(d: BipartiteDiagram, comp, inc):
    attr = {v: _attr(d, v) for v in comp}
    # one refinement round: neighbors with equal edge descriptors but
    # different neighborhoods need not be permuted against each other
    refined = {
        v: (attr[v], tuple(sorted((ch, ct, attr[w]) for ch, ct, w in inc[v])))
        for v in comp
    }
    best = None

    def extend(order, number, head, rows):
        nonlocal best
        if head == len(order):
            if len(order) == len(comp):
                code = tuple(rows)
                if best is None or code < best:
                    best = code
            return
        u = order[head]
        fresh: dict[int, list] = {}
        for ch, ct, w in inc[u]:
            if w not in number:
                fresh.setdefault(w, []).append((ch, ct))
        candidates = []
        if fresh:
            groups: dict[tuple, list] = {}
            for w, descs in fresh.items():
                groups.setdefault((tuple(sorted(descs)), refined[w]), []).append(w)
            ordered_groups = [groups[key] for key in sorted(groups)]
            partial = [[]]
            for group in ordered_groups:
                partial = [
                    done + list(perm)
                    for done in partial
                    for perm in itertools.permutations(group)
                ]
            candidates = partial
        else:
            candidates = [[]]
        for newcomers in candidates:
            new_order = order + newcomers
            new_number = dict(number)
            for v in newcomers:
                new_number[v] = len(new_number)
            row = (attr[u], tuple(sorted((ch, ct, new_number[w]) for ch, ct, w in inc[u])))
            new_rows = rows + [row]
            if best is not None:
                prefix = tuple(new_rows)
                if prefix > best[: head + 1]:
                    continue  # no completion can beat the current best
            extend(new_order, new_number, head + 1, new_rows)

    min_attr = min(attr.values())
    for start in comp:
        if attr[start] == min_attr:
            extend([start], {start: 0}, 0, [])
    return best


def graph_canon(d: BipartiteDiagram) -> bytes:
    if d._canon is not None:
        return d._canon
    comps, inc = _component_vertices(d)
    codes = []
    for comp in comps:
        code = _min_component_code(d, comp, inc)
        codes.append(
            [[list(attr), [list(e) for e in incident]] for attr, incident in code]
        )
    payload = {"l": d.l, "alpha": d.alpha, "beta": d.beta, "comps": sorted(codes)}
    d._canon = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()
    return d._canon
