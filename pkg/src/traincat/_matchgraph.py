"""Shared machinery for checkerwise matching complexes.

Both polygon surfaces and chamber complexes are, combinatorially, a set
of plus faces and a set of minus faces joined by one perfect matching
per color.  This module holds the connectivity and canonical-code
helpers for that structure; faces appear as nodes ``(sign, id)`` with
sign +1/-1.
"""
from __future__ import annotations

from typing import Sequence


def invert_matching(match: Sequence[int]) -> tuple:
    inv = [0] * len(match)
    for p, m in enumerate(match):
        inv[m] = p
    return tuple(inv)


def component_faces(n_faces: int, matchings: Sequence[Sequence[int]],
                    colors: Sequence[int] | None = None) -> list:
    """Connected components under the matchings of the given colors.

    Returns a sorted list of (plus_ids, minus_ids) pairs.  ``colors``
    defaults to all of them.
    """
    if colors is None:
        colors = range(len(matchings))
    parent = list(range(2 * n_faces))  # plus p -> p, minus m -> n_faces + m

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for c in colors:
        for p in range(n_faces):
            union(p, n_faces + matchings[c][p])
    groups: dict[int, list] = {}
    for x in range(2 * n_faces):
        groups.setdefault(find(x), []).append(x)
    out = []
    for members in groups.values():
        plus = tuple(sorted(x for x in members if x < n_faces))
        minus = tuple(sorted(x - n_faces for x in members if x >= n_faces))
        out.append((plus, minus))
    return sorted(out)


def component_code(plus: Sequence[int], minus: Sequence[int],
                   matchings, inv_matchings,
                   plus_label, minus_label) -> tuple:
    """Minimal BFS code of one component.

    Traversal from a start face is deterministic (one neighbor per
    color), so the minimum of the codes over all start faces of the
    component is a canonical form; labels and signs are embedded in the
    rows, internal ids are not.
    """
    n_colors = len(matchings)
    nodes = [(1, p) for p in plus] + [(-1, m) for m in minus]

    def neighbors(node):
        sign, fid = node
        if sign > 0:
            return [(-1, matchings[c][fid]) for c in range(n_colors)]
        return [(1, inv_matchings[c][fid]) for c in range(n_colors)]

    best = None
    for start in nodes:
        number = {start: 0}
        order = [start]
        head = 0
        while head < len(order):
            for nbr in neighbors(order[head]):
                if nbr not in number:
                    number[nbr] = len(order)
                    order.append(nbr)
            head += 1
        rows = []
        for sign, fid in order:
            label = plus_label(fid) if sign > 0 else minus_label(fid)
            rows.append(
                (sign, label, tuple(number[nbr] for nbr in neighbors((sign, fid))))
            )
        code = tuple(rows)
        if best is None or code < best:
            best = code
    return best
