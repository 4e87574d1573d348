"""Closed-form characters and spherical functions.

Covers the extreme central positive-definite functions of the infinite
symmetric group (Thoma parameters), the color-flow matrices and
spherical functions of the Young-subgroup pair, and the Nessonov
character semigroup with its cycle decomposition.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .perm_core import ColoredPerm

PSD_TOL = 1e-9
SUM_TOL = 1e-12


class ThomaParams:
    """Parameters (alphas, betas, gamma) of an extreme character.

    ``alphas`` and ``betas`` are finite non-increasing lists of
    non-negative reals; ``gamma = 1 - sum(alphas) - sum(betas)`` is
    derived, never stored, and must be non-negative.
    """

    __slots__ = ("alphas", "betas")

    def __init__(self, alphas: Iterable[float] = (), betas: Iterable[float] = ()):
        alphas = tuple(float(a) for a in alphas)
        betas = tuple(float(b) for b in betas)
        for seq, name in ((alphas, "alphas"), (betas, "betas")):
            if any(v < 0 for v in seq):
                raise ValueError(f"{name} must be non-negative")
            if list(seq) != sorted(seq, reverse=True):
                raise ValueError(f"{name} must be non-increasing")
        if sum(alphas) + sum(betas) > 1 + SUM_TOL:
            raise ValueError("sum(alphas) + sum(betas) exceeds 1")
        self.alphas = alphas
        self.betas = betas

    @property
    def gamma(self) -> float:
        return max(0.0, 1.0 - sum(self.alphas) - sum(self.betas))

    def cycle_factor(self, k: int) -> float:
        """Factor contributed by one k-cycle, ``k >= 2``."""
        if k < 2:
            raise ValueError("cycle factors are defined for k >= 2")
        return sum(a**k for a in self.alphas) + (-1) ** (k - 1) * sum(
            b**k for b in self.betas
        )

    def __repr__(self) -> str:
        return f"ThomaParams(alphas={list(self.alphas)}, betas={list(self.betas)})"


def thoma_char(params: ThomaParams, g: ColoredPerm) -> float:
    """Product over k-cycles of ``sum(alpha^k) + (-1)^(k-1) sum(beta^k)``.

    Depends on the cycle type only; equals 1 at the identity and lies in
    [-1, 1].
    """
    if g.m != 1:
        raise ValueError("the character is defined on single-color permutations")
    value = 1.0
    for k, r in g.cycle_type().items():
        value *= params.cycle_factor(k) ** r
    return value


def thoma_psd_check(params: ThomaParams, perms: Sequence[ColoredPerm]):
    """Gram matrix ``f(g_i g_j^-1)`` and its minimal eigenvalue."""
    n = len(perms)
    gram = np.empty((n, n))
    for i, gi in enumerate(perms):
        for j, gj in enumerate(perms):
            gram[i, j] = thoma_char(params, gi.compose(gj.inverse()))
    eig = float(np.linalg.eigvalsh(gram).min()) if n else 1.0
    return gram, eig


class SMatrix:
    """Color-flow matrix of a permutation: ``s[nu][mu]`` counts points of
    color ``nu`` sent to color ``mu != nu``.  Diagonal entries are
    undefined and stored as 0; row and column sums agree per color."""

    __slots__ = ("m", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], require_balance: bool = True):
        entries = tuple(tuple(int(v) for v in row) for row in entries)
        m = len(entries)
        for nu, row in enumerate(entries):
            if len(row) != m:
                raise ValueError("matrix must be square")
            if any(v < 0 for v in row):
                raise ValueError("entries must be non-negative")
            if row[nu] != 0:
                raise ValueError("diagonal entries must be stored as 0")
        if require_balance:
            for mu in range(m):
                outgoing = sum(entries[mu][nu] for nu in range(m))
                incoming = sum(entries[nu][mu] for nu in range(m))
                if outgoing != incoming:
                    raise ValueError(f"flow through color {mu + 1} is unbalanced")
        self.m = m
        self.entries = entries

    @classmethod
    def zero(cls, m: int) -> "SMatrix":
        return cls([[0] * m for _ in range(m)])

    @classmethod
    def cycle(cls, colors: Sequence[int], m: int) -> "SMatrix":
        """The cycle ``E[c1 c2] + E[c2 c3] + ... + E[cp c1]`` (1-based colors)."""
        colors = [int(c) for c in colors]
        if len(set(colors)) != len(colors) or len(colors) < 2:
            raise ValueError("a cycle visits at least two pairwise distinct colors")
        rows = [[0] * m for _ in range(m)]
        for a, b in zip(colors, colors[1:] + colors[:1]):
            rows[a - 1][b - 1] += 1
        return cls(rows)

    def __add__(self, other: "SMatrix") -> "SMatrix":
        if self.m != other.m:
            raise ValueError("size mismatch")
        return SMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def transpose(self) -> "SMatrix":
        return SMatrix(list(zip(*self.entries)))

    def total(self) -> int:
        return sum(sum(row) for row in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"SMatrix({[list(r) for r in self.entries]})"

    def to_json(self) -> list:
        return [list(r) for r in self.entries]


def s_matrix(g: ColoredPerm) -> SMatrix:
    """Color-flow counts of ``g``; balanced by construction."""
    m = g.m
    rows = [[0] * m for _ in range(m)]
    for src, dst in g.support_pairs():
        if src.color != dst.color:
            rows[src.color - 1][dst.color - 1] += 1
    return SMatrix(rows)


def coset_invariant_young(g: ColoredPerm, levels) -> SMatrix:
    """Complete invariant of the level-zero Young double coset of ``g``.

    Only level (0, ..., 0) is supported: there the flow matrix separates
    cosets and adds under coset products.
    """
    if isinstance(levels, int):
        levels = (levels,) * g.m
    if any(v != 0 for v in levels):
        raise ValueError("the flow matrix is a complete invariant at level zero only")
    return s_matrix(g)


def cycle_decompose(s: SMatrix) -> list:
    """Write a balanced flow matrix as a sum of cycles.

    Greedy path following: walk positive entries until a color repeats,
    split off that cycle, repeat.  Returns the cycles as color tuples
    (1-based); their matrices sum back to the input.
    """
    work = [list(row) for row in s.entries]
    m = s.m
    out = []
    while True:
        start = None
        for nu in range(m):
            for mu in range(m):
                if work[nu][mu] > 0:
                    start = (nu, mu)
                    break
            if start:
                break
        if start is None:
            break
        path = [start[0], start[1]]
        while True:
            cur = path[-1]
            nxt = next(mu for mu in range(m) if work[cur][mu] > 0)
            if nxt in path:
                cycle = path[path.index(nxt):]
                break
            path.append(nxt)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            work[a][b] -= 1
            if work[a][b] < 0:
                raise ValueError("input flow matrix is not balanced")
        out.append(tuple(c + 1 for c in cycle))
    return out


class GramSpec:
    """Hermitian positive semi-definite matrix with unit diagonal."""

    __slots__ = ("m", "matrix")

    def __init__(self, matrix, tol: float = PSD_TOL):
        a = np.asarray(matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(a, a.conj().T, atol=1e-12):
            raise ValueError("matrix must be Hermitian")
        if not np.allclose(np.diag(a), 1.0, atol=1e-12):
            raise ValueError("diagonal entries must equal 1")
        if float(np.linalg.eigvalsh(a).min()) < -tol:
            raise ValueError("matrix must be positive semi-definite")
        self.m = a.shape[0]
        self.matrix = a

    @classmethod
    def ones(cls, m: int) -> "GramSpec":
        return cls(np.ones((m, m)))

    @classmethod
    def from_vectors(cls, xis) -> "GramSpec":
        """Gram matrix ``a[nu][mu] = <xi_nu, xi_mu>`` of unit vectors
        (inner product linear in the first argument)."""
        vecs = [np.asarray(x, dtype=complex) for x in xis]
        for v in vecs:
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise ValueError("vectors must have unit norm")
        m = len(vecs)
        a = np.empty((m, m), dtype=complex)
        for i in range(m):
            for j in range(m):
                a[i, j] = np.sum(vecs[i] * vecs[j].conj())
        return cls(a)


def nessonov_char(a: GramSpec, s: SMatrix) -> complex:
    """Product of ``a[nu][mu] ** s[nu][mu]`` over ``nu != mu`` (0**0 = 1).

    Multiplicative in ``s`` and conjugate-symmetric under transposition;
    absolute value at most 1 for unit-diagonal PSD input.
    """
    if a.m != s.m:
        raise ValueError("size mismatch")
    value = complex(1.0)
    for nu in range(s.m):
        for mu in range(s.m):
            e = s.entries[nu][mu]
            if e:
                value *= a.matrix[nu, mu] ** e
    return value


def young_spherical(xis, g: ColoredPerm) -> complex:
    """Spherical function of the Young-subgroup pair on ``g``:
    ``prod <xi_nu, xi_mu> ** s[nu][mu]`` over the color flows of ``g``."""
    gram = GramSpec.from_vectors(xis)
    if gram.m != g.m:
        raise ValueError(f"need one unit vector per color ({g.m})")
    return nessonov_char(gram, s_matrix(g))
