"""Exact ground truth for double cosets of symmetric-group pairs.

Two independent oracles live here:

* group-level products ``p * swap * q`` with a block-swap element wide
  enough that the resulting double coset has stabilized, and
* exhaustive enumeration of double cosets of finite analogs by orbit
  closure under subgroup generators.

Both are deliberately brute force; every encoder module is validated
against them.
"""
from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable, Sequence

from .perm_core import ColoredPerm, Point, block_swap

DEFAULT_GROUP_BOUND = 10**7


class PairSpec:
    """A (group, subgroup) pair determining a double-coset category.

    Kinds:

    * ``diagonal`` -- product of ``copies`` symmetric groups with the
      diagonal subgroup (``copies=2`` is the bisymmetric pair).
    * ``wreath`` -- permutations of an ``l``-colored index set with the
      column-wreath subgroup (permute columns, then inside columns).
    * ``young`` -- same group with the color-preserving Young subgroup.
    """

    __slots__ = ("kind", "copies", "valence", "colors")

    def __init__(self, kind: str, copies: int = 0, valence: int = 0, colors: int = 0):
        if kind not in ("diagonal", "wreath", "young"):
            raise ValueError(f"unknown pair kind {kind!r}")
        self.kind = kind
        self.copies = copies
        self.valence = valence
        self.colors = colors
        if kind == "diagonal" and copies < 2:
            raise ValueError("diagonal pair needs >= 2 copies")
        if kind == "wreath" and valence < 1:
            raise ValueError("wreath pair needs valence >= 1")
        if kind == "young" and colors < 1:
            raise ValueError("young pair needs >= 1 color")

    @classmethod
    def bisymmetric(cls) -> "PairSpec":
        return cls("diagonal", copies=2)

    @classmethod
    def trisymmetric(cls) -> "PairSpec":
        return cls("diagonal", copies=3)

    @classmethod
    def diagonal(cls, copies: int) -> "PairSpec":
        return cls("diagonal", copies=copies)

    @classmethod
    def wreath(cls, valence: int) -> "PairSpec":
        return cls("wreath", valence=valence)

    @classmethod
    def young(cls, colors: int) -> "PairSpec":
        return cls("young", colors=colors)

    def __repr__(self) -> str:
        extra = {"diagonal": self.copies, "wreath": self.valence, "young": self.colors}
        return f"PairSpec({self.kind!r}, {extra[self.kind]})"

    # -- the point set -------------------------------------------------

    @property
    def point_colors(self) -> int:
        """Number of colors of the underlying index set (1 for diagonal pairs)."""
        if self.kind == "wreath":
            return self.valence
        if self.kind == "young":
            return self.colors
        return 1

    # -- elements ------------------------------------------------------

    def check_element(self, g) -> None:
        if self.kind == "diagonal":
            if not (isinstance(g, tuple) and len(g) == self.copies):
                raise ValueError(f"element must be a tuple of {self.copies} permutations")
            for comp in g:
                if not isinstance(comp, ColoredPerm) or comp.m != 1:
                    raise ValueError("components must be single-color permutations")
        else:
            if not isinstance(g, ColoredPerm) or g.m != self.point_colors:
                raise ValueError(f"element must be a permutation on {self.point_colors} colors")

    def identity(self):
        if self.kind == "diagonal":
            return tuple(ColoredPerm.identity(1) for _ in range(self.copies))
        return ColoredPerm.identity(self.point_colors)

    def mul(self, a, b):
        if self.kind == "diagonal":
            return tuple(x.compose(y) for x, y in zip(a, b))
        return a.compose(b)

    def inv(self, a):
        if self.kind == "diagonal":
            return tuple(x.inverse() for x in a)
        return a.inverse()

    def normalize_level(self, level):
        """Levels are single ints except for young pairs (one per color)."""
        if self.kind == "young":
            if isinstance(level, int):
                level = (level,) * self.colors
            level = tuple(int(v) for v in level)
            if len(level) != self.colors or any(v < 0 for v in level):
                raise ValueError(f"young level must be {self.colors} non-negative ints")
            return level
        level = int(level)
        if level < 0:
            raise ValueError("level must be >= 0")
        return level

    def swap_element(self, level, width: int):
        """The block-swap subgroup element above ``level`` of the given width."""
        level = self.normalize_level(level)
        if self.kind == "diagonal":
            one = block_swap(level, width)
            return tuple(one for _ in range(self.copies))
        if self.kind == "wreath":
            col = block_swap(level, width)
            table = {}
            for (c, i), (_, j) in col._pairs:  # same column move in every row
                for nu in range(1, self.valence + 1):
                    table[(nu, i)] = (nu, j)
            return ColoredPerm(self.valence, table)
        table = {}
        for nu, beta_nu in enumerate(level, start=1):
            for i in range(1, width + 1):
                a = Point(nu, beta_nu + i)
                b = Point(nu, beta_nu + width + i)
                table[a] = b
                table[b] = a
        return ColoredPerm(self.colors, table)

    def required_width(self, p, q, alpha, beta, gamma) -> int:
        """Safe block width for the product of cosets at (alpha, beta) and
        (beta, gamma).

        The swap must carry every index holding input information past the
        other factor's: supports of both elements and the outer label
        ranges all count (supports alone are not enough when alpha or
        gamma exceed them).
        """
        alpha = self.normalize_level(alpha)
        beta = self.normalize_level(beta)
        gamma = self.normalize_level(gamma)
        if self.kind == "diagonal":
            top = max(
                alpha,
                gamma,
                max(c.max_index() for c in p),
                max(c.max_index() for c in q),
            )
            return max(1, top - beta + 1)
        if self.kind == "wreath":
            top = max(alpha, gamma, p.max_index(), q.max_index())
            return max(1, top - beta + 1)
        need = 0
        for nu in range(1, self.colors + 1):
            top = max(
                alpha[nu - 1],
                gamma[nu - 1],
                p.max_index(color=nu),
                q.max_index(color=nu),
            )
            need = max(need, top - beta[nu - 1])
        return max(1, need + 1)


def product_with_width(pair: PairSpec, p, q, beta, width: int):
    """Representative ``p * swap(beta, width) * q`` (no stabilization check)."""
    return pair.mul(pair.mul(p, pair.swap_element(beta, width)), q)


def coset_product_rep(pair: PairSpec, p, q, alpha, beta, gamma):
    """Representative of the coset product, with the block width used.

    ``p`` represents a coset at levels (alpha, beta), ``q`` one at
    (beta, gamma); the result represents their product at (alpha, gamma).
    """
    pair.check_element(p)
    pair.check_element(q)
    j = pair.required_width(p, q, alpha, beta, gamma)
    return product_with_width(pair, p, q, beta, j), j


def stabilization_check(pair: PairSpec, p, q, alpha, beta, gamma,
                        encoder: Callable, extra: int = 1,
                        start_width: int | None = None) -> bool:
    """True iff the coset code of ``p * swap_j * q`` is constant for
    ``j, j+1, ..., j+extra``.

    ``encoder(element, alpha, gamma) -> code`` must be a canonical coset
    encoder.  ``start_width`` overrides the automatically chosen ``j``
    (useful as a regression guard with an undersized width).
    """
    if extra < 1:
        raise ValueError("extra must be >= 1")
    j = pair.required_width(p, q, alpha, beta, gamma) if start_width is None else start_width
    if j < 1:
        raise ValueError("block width must be >= 1")
    codes = {
        encoder(product_with_width(pair, p, q, beta, j + d), alpha, gamma)
        for d in range(extra + 1)
    }
    return len(codes) == 1


# -- finite analogs ----------------------------------------------------
#
# Internally a finite element is either a tuple of image-tuples (diagonal
# pairs) or a single image-tuple over the flattened point set
# [(1,1), (1,2), ..., (1,m), (2,1), ...], all 0-based.


def _flat_index(k: int, nu: int, m: int) -> int:
    return (k - 1) * m + (nu - 1)


def _compose_images(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(a[b[i]] for i in range(len(b)))


def finite_group_order(pair: PairSpec, n: int) -> int:
    if pair.kind == "diagonal":
        return math.factorial(n) ** pair.copies
    return math.factorial(n * pair.point_colors)


def finite_elements(pair: PairSpec, n: int) -> Iterable:
    """All elements of the finite analog of the group, internal encoding."""
    if pair.kind == "diagonal":
        perms = list(itertools.permutations(range(n)))
        return itertools.product(perms, repeat=pair.copies)
    return itertools.permutations(range(n * pair.point_colors))


def to_group_element(pair: PairSpec, internal, n: int):
    """Convert an internal finite element to the sparse representation."""
    if pair.kind == "diagonal":
        return tuple(
            ColoredPerm.from_images([v + 1 for v in images]) for images in internal
        )
    m = pair.point_colors
    table = {}
    for idx, img in enumerate(internal):
        k, nu = divmod(idx, m)
        k2, nu2 = divmod(img, m)
        table[(nu + 1, k + 1)] = (nu2 + 1, k2 + 1)
    return ColoredPerm(m, table)


def finite_subgroup_gens(pair: PairSpec, n: int, level) -> list:
    """Generators of the finite subgroup at the given level, as image-tuples.

    For diagonal pairs the image-tuple acts simultaneously in all
    components; otherwise it is a permutation of the flattened point set.
    All generators are involutions.
    """
    level = pair.normalize_level(level)
    gens = []
    if pair.kind == "diagonal":
        for i in range(level, n - 1):
            images = list(range(n))
            images[i], images[i + 1] = images[i + 1], images[i]
            gens.append(tuple(images))
        return gens
    m = pair.point_colors
    size = n * m
    if pair.kind == "wreath":
        for k in range(level + 1, n):  # swap columns k, k+1 (1-based)
            images = list(range(size))
            for nu in range(1, m + 1):
                a, b = _flat_index(k, nu, m), _flat_index(k + 1, nu, m)
                images[a], images[b] = images[b], images[a]
            gens.append(tuple(images))
        for k in range(level + 1, n + 1):  # transpose inside column k
            for nu in range(1, m):
                images = list(range(size))
                a, b = _flat_index(k, nu, m), _flat_index(k, nu + 1, m)
                images[a], images[b] = images[b], images[a]
                gens.append(tuple(images))
        return gens
    for nu in range(1, m + 1):  # young: adjacent transpositions per color
        for k in range(level[nu - 1] + 1, n):
            images = list(range(size))
            a, b = _flat_index(k, nu, m), _flat_index(k + 1, nu, m)
            images[a], images[b] = images[b], images[a]
            gens.append(tuple(images))
    return gens


def _neighbors(pair: PairSpec, elem, left_gens, right_gens):
    if pair.kind == "diagonal":
        for k in left_gens:
            yield tuple(_compose_images(k, comp) for comp in elem)
        for k in right_gens:
            yield tuple(_compose_images(comp, k) for comp in elem)
    else:
        for k in left_gens:
            yield _compose_images(k, elem)
        for k in right_gens:
            yield _compose_images(elem, k)


def _orbit_of(pair: PairSpec, seed, left_gens, right_gens) -> set:
    orbit = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for elem in frontier:
            for other in _neighbors(pair, elem, left_gens, right_gens):
                if other not in orbit:
                    orbit.add(other)
                    nxt.append(other)
        frontier = nxt
    return orbit


def enumerate_double_cosets_finite(pair: PairSpec, n: int, alpha, beta,
                                   bound: int = DEFAULT_GROUP_BOUND) -> list:
    """Partition the finite group into double cosets at levels (alpha, beta).

    Returns a list of orbits, each a list of group elements in the sparse
    representation.  Raises if the group order exceeds ``bound``.
    """
    order = finite_group_order(pair, n)
    if order > bound:
        raise ValueError(f"group order {order} exceeds bound {bound}")
    left_gens = finite_subgroup_gens(pair, n, alpha)
    right_gens = finite_subgroup_gens(pair, n, beta)
    seen: set = set()
    orbits = []
    for elem in finite_elements(pair, n):
        if elem in seen:
            continue
        orbit = _orbit_of(pair, elem, left_gens, right_gens)
        seen |= orbit
        orbits.append([to_group_element(pair, x, n) for x in sorted(orbit)])
    return orbits


def _to_internal(pair: PairSpec, g, n: int):
    if pair.kind == "diagonal":
        out = []
        for comp in g:
            if comp.max_index() > n:
                raise ValueError("support exceeds the finite degree")
            out.append(tuple(comp.apply_index(i + 1) - 1 for i in range(n)))
        return tuple(out)
    m = pair.point_colors
    images = [0] * (n * m)
    for idx in range(n * m):
        k, nu = divmod(idx, m)
        c2, i2 = g((nu + 1, k + 1))
        if i2 > n:
            raise ValueError("support exceeds the finite degree")
        images[idx] = _flat_index(i2, c2, m)
    return tuple(images)


def same_coset_finite(pair: PairSpec, n: int, alpha, beta, g, h,
                      bound: int = DEFAULT_GROUP_BOUND) -> bool:
    """True iff ``g`` and ``h`` lie in the same finite double coset."""
    order = finite_group_order(pair, n)
    if order > bound:
        raise ValueError(f"group order {order} exceeds bound {bound}")
    gi = _to_internal(pair, g, n)
    hi = _to_internal(pair, h, n)
    if gi == hi:
        return True
    left_gens = finite_subgroup_gens(pair, n, alpha)
    right_gens = finite_subgroup_gens(pair, n, beta)
    return hi in _orbit_of(pair, gi, left_gens, right_gens)


# -- random elements (for seeded property suites) ----------------------


def random_element(pair: PairSpec, rng, max_index: int = 8):
    """Random finitely supported element with indices within ``max_index``."""
    if pair.kind == "diagonal":
        comps = []
        for _ in range(pair.copies):
            size = rng.randint(0, max_index)
            images = list(range(1, size + 1))
            rng.shuffle(images)
            comps.append(ColoredPerm.from_images(images))
        return tuple(comps)
    m = pair.point_colors
    size = rng.randint(0, max_index)
    points = [(nu, i) for i in range(1, size + 1) for nu in range(1, m + 1)]
    targets = points[:]
    rng.shuffle(targets)
    return ColoredPerm(m, dict(zip(points, targets)))


def random_subgroup_element(pair: PairSpec, rng, level, max_index: int = 8):
    """Random element of the subgroup at ``level`` with bounded support."""
    level = pair.normalize_level(level)
    if pair.kind == "diagonal":
        lo, hi = level + 1, max(level + 1, max_index)
        images = list(range(lo, hi + 1))
        rng.shuffle(images)
        one = ColoredPerm(1, {(1, lo + i): (1, images[i]) for i in range(len(images))})
        return tuple(one for _ in range(pair.copies))
    m = pair.point_colors
    if pair.kind == "wreath":
        lo, hi = level + 1, max(level + 1, max_index)
        cols = list(range(lo, hi + 1))
        shuffled = cols[:]
        rng.shuffle(shuffled)
        table = {}
        for k, k2 in zip(cols, shuffled):
            inner = list(range(1, m + 1))
            rng.shuffle(inner)
            for nu in range(1, m + 1):
                table[(nu, k)] = (inner[nu - 1], k2)
        return ColoredPerm(m, table)
    table = {}
    for nu in range(1, m + 1):
        lo = level[nu - 1] + 1
        hi = max(lo, max_index)
        images = list(range(lo, hi + 1))
        rng.shuffle(images)
        for off, img in enumerate(images):
            table[(nu, lo + off)] = (nu, img)
    return ColoredPerm(m, table)
