"""Finitely supported permutations of colored countable index sets.

Points are pairs ``(color, index)`` with colors ``1..m`` and 1-based
indices.  A permutation stores only the points it moves, as a sorted
association list, so equal permutations have identical internal data and
values are hashable and safe to share between tasks.

The module also provides the 0-1 matrix semigroup (``Matrix01``), upper
left corners of permutations, and the block-swap involutions that drive
double-coset multiplication.
"""
from __future__ import annotations

import json
import re
from typing import Iterable, NamedTuple


class Point(NamedTuple):
    """A colored index: ``color`` in ``1..m``, ``index >= 1``."""

    color: int
    index: int


def _as_point(x) -> Point:
    if isinstance(x, Point):
        return x
    c, i = x
    return Point(int(c), int(i))


class ColoredPerm:
    """A finitely supported bijection of ``{1..m} x {1, 2, ...}``.

    Fixed points are never stored; the map must be a bijection of its own
    support.  All operations are pure.
    """

    __slots__ = ("m", "_map", "_pairs")

    def __init__(self, m: int, mapping: Iterable = ()):
        m = int(m)
        if m < 1:
            raise ValueError("color count must be >= 1")
        items = mapping.items() if hasattr(mapping, "items") else mapping
        table = {}
        for src, dst in items:
            src, dst = _as_point(src), _as_point(dst)
            for p in (src, dst):
                if not (1 <= p.color <= m):
                    raise ValueError(f"color {p.color} outside 1..{m}")
                if p.index < 1:
                    raise ValueError(f"index {p.index} must be >= 1")
            if src in table and table[src] != dst:
                raise ValueError(f"conflicting images for {src}")
            table[src] = dst
        # drop fixed points, then require range == domain
        table = {s: d for s, d in table.items() if s != d}
        if len(set(table.values())) != len(table):
            raise ValueError("mapping is not injective")
        if set(table.values()) != set(table):
            raise ValueError("range of the stored map must equal its domain")
        self.m = m
        self._map = table
        self._pairs = tuple(sorted(table.items()))

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, m: int = 1) -> "ColoredPerm":
        return cls(m, ())

    @classmethod
    def from_images(cls, images: Iterable[int], m: int = 1, color: int = 1) -> "ColoredPerm":
        """Single-color permutation from a 1-based image list ``[g(1), g(2), ...]``."""
        images = list(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError("not a permutation of 1..n")
        return cls(m, {(color, i + 1): (color, images[i]) for i in range(n)})

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable], m: int = 1) -> "ColoredPerm":
        """Build from cycles of points; bare integers mean color 1."""
        table = {}
        for cyc in cycles:
            pts = [_as_point(x if not isinstance(x, int) else (1, x)) for x in cyc]
            if len(set(pts)) != len(pts):
                raise ValueError("repeated point inside a cycle")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if a in table:
                    raise ValueError(f"point {a} used twice")
                table[a] = b
        return cls(m, table)

    @classmethod
    def transposition(cls, i: int, j: int, m: int = 1, color: int = 1) -> "ColoredPerm":
        return cls.from_cycles([[(color, i), (color, j)]], m=m)

    # -- basic queries -----------------------------------------------

    def __call__(self, point) -> Point:
        point = _as_point(point)
        if not (1 <= point.color <= self.m):
            raise ValueError(f"color {point.color} outside 1..{self.m}")
        return self._map.get(point, point)

    def apply_index(self, i: int, color: int = 1) -> int:
        """Image index of ``(color, i)``; the image color must agree."""
        img = self((color, i))
        if img.color != color:
            raise ValueError(f"({color},{i}) changes color under this permutation")
        return img.index

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def support_pairs(self):
        """Sorted ``(point, image)`` pairs over the support."""
        return self._pairs

    def is_identity(self) -> bool:
        return not self._map

    def max_index(self, color: int | None = None) -> int:
        """Largest index in the support (0 for the identity), optionally per color."""
        idx = [p.index for p in self._map if color is None or p.color == color]
        return max(idx, default=0)

    def preserves_colors(self) -> bool:
        return all(s.color == d.color for s, d in self._pairs)

    # -- algebra -----------------------------------------------------

    def compose(self, other: "ColoredPerm") -> "ColoredPerm":
        """Return ``self . other`` acting as ``x -> self(other(x))``."""
        if self.m != other.m:
            raise ValueError("color count mismatch")
        table = {}
        for src in set(self._map) | set(other._map):
            table[src] = self(other(src))
        return ColoredPerm(self.m, table)

    __mul__ = compose

    def inverse(self) -> "ColoredPerm":
        return ColoredPerm(self.m, {d: s for s, d in self._pairs})

    def cycles(self) -> list:
        """Nontrivial cycles as tuples of points, each starting at its least point."""
        seen = set()
        out = []
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self._map[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self._map[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> dict:
        """Map ``k -> number of k-cycles`` for ``k >= 2``.

        Fixed points are not reported: on a countable set there are
        infinitely many of them.
        """
        counts: dict[int, int] = {}
        for cyc in self.cycles():
            counts[len(cyc)] = counts.get(len(cyc), 0) + 1
        return counts

    # -- hashing / comparison ----------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredPerm)
            and self.m == other.m
            and self._pairs == other._pairs
        )

    def __hash__(self) -> int:
        return hash((self.m, self._pairs))

    def __repr__(self) -> str:
        return f"ColoredPerm({self.m}, {format_perm(self)!r})"

    # -- serialization -----------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "map": [[list(s), list(d)] for s, d in self._pairs]}

    @classmethod
    def from_json(cls, data) -> "ColoredPerm":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["m"]), [(tuple(s), tuple(d)) for s, d in data["map"]])


_TOKEN = re.compile(r"^(?:c(\d+)\.)?(\d+)$")


def parse_perm(text: str, m: int | None = None) -> ColoredPerm:
    """Parse cycle notation.

    Segments separated by ``;`` carry an optional ``c<k>:`` prefix giving
    the default color of bare indices inside that segment; single-color
    input may omit the prefix entirely.  A point of another color can be
    written ``c<k>.<i>`` inside any cycle.  ``()`` is the identity.
    """
    text = text.strip()
    cycles: list[list[Point]] = []
    max_color = 1
    for segment in text.split(";"):
        segment = segment.strip()
        if not segment:
            continue
        default_color = 1
        head = re.match(r"^c(\d+)\s*:", segment)
        if head:
            default_color = int(head.group(1))
            segment = segment[head.end():].strip()
        if segment and not re.fullmatch(r"(\(\s*[^()]*\s*\)\s*)*", segment):
            raise ValueError(f"cannot parse cycle segment {segment!r}")
        for body in re.findall(r"\(([^()]*)\)", segment):
            pts = []
            for tok in body.replace(",", " ").split():
                mt = _TOKEN.match(tok)
                if not mt:
                    raise ValueError(f"bad point token {tok!r}")
                color = int(mt.group(1)) if mt.group(1) else default_color
                pts.append(Point(color, int(mt.group(2))))
            if pts:
                cycles.append(pts)
        max_color = max(max_color, default_color, *(p.color for c in cycles for p in c), 1)
    if m is None:
        m = max_color
    return ColoredPerm.from_cycles(cycles, m=m)


def format_perm(p: ColoredPerm) -> str:
    """Inverse of :func:`parse_perm`; a single color is left unprefixed."""
    if p.is_identity():
        return "()"
    if p.m == 1:
        return "".join(
            "(" + " ".join(str(pt.index) for pt in cyc) + ")" for cyc in p.cycles()
        )
    if p.preserves_colors():
        by_color: dict[int, list] = {}
        for cyc in p.cycles():
            by_color.setdefault(cyc[0].color, []).append(cyc)
        parts = []
        for color in sorted(by_color):
            body = "".join(
                "(" + " ".join(str(pt.index) for pt in cyc) + ")"
                for cyc in by_color[color]
            )
            parts.append(f"c{color}:{body}")
        return "; ".join(parts)
    return "".join(
        "(" + " ".join(f"c{pt.color}.{pt.index}" for pt in cyc) + ")"
        for cyc in p.cycles()
    )


def block_swap(fixed: int, width: int, m: int = 1) -> ColoredPerm:
    """Involution fixing ``1..fixed`` and swapping the next two width-blocks.

    Applied diagonally in every color: ``(c, fixed+i) <-> (c, fixed+width+i)``
    for ``i = 1..width``.  ``width = 0`` gives the identity.
    """
    if fixed < 0 or width < 0:
        raise ValueError("fixed and width must be >= 0")
    table = {}
    for c in range(1, m + 1):
        for i in range(1, width + 1):
            a = Point(c, fixed + i)
            b = Point(c, fixed + width + i)
            table[a] = b
            table[b] = a
    return ColoredPerm(m, table)


class Matrix01:
    """A square matrix of 0/1 entries with at most one 1 per row and column."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(v not in (0, 1) for v in row):
                raise ValueError("entries must be 0 or 1")
            if sum(row) > 1:
                raise ValueError("more than one 1 in a row")
        for j in range(n):
            if sum(row[j] for row in rows) > 1:
                raise ValueError("more than one 1 in a column")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "Matrix01":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Matrix01":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def projector(cls, beta: int, n: int) -> "Matrix01":
        """diag(1, ..., 1, 0, ...): 1s on the first ``beta`` diagonal entries."""
        return cls([[1 if i == j and i < beta else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix01) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix01({[list(r) for r in self.rows]})"


def matrix01_mul(a: Matrix01, b: Matrix01) -> Matrix01:
    """Standard matrix product; the 0-1 row/column property is preserved."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    rows = [
        [sum(a.rows[i][k] * b.rows[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return Matrix01(rows)


def corner(p: ColoredPerm, n: int) -> Matrix01:
    """Upper-left ``n x n`` corner of the permutation matrix of ``p``.

    Entry ``(i, j)`` is 1 iff ``p(j) = i`` with both ``i, j <= n``; single
    color only.
    """
    if p.m != 1:
        raise ValueError("corner is defined for single-color permutations")
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        i = p.apply_index(j)
        if i <= n:
            rows[i - 1][j - 1] = 1
    return Matrix01(rows)
