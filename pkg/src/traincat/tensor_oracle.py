"""Brute-force matrix elements of permutation actions on tensor powers.

Everything here is dense and flat on purpose: states are materialized as
full complex arrays, permutations act by transposing axes, and Koszul
signs are counted directly.  These are the independent numeric oracles
for every closed-form character in the package.
"""
from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .perm_core import ColoredPerm

DEFAULT_TENSOR_BOUND = 10**7
NORM_TOL = 1e-12


class CoeffTensor:
    """Unit-norm dense coefficients of a vector in a tensor product.

    One axis per factor; optional parity markings (a 0/1 vector per
    factor's basis) make it a super-space vector, in which case every
    nonzero coefficient must sit on an even-total-parity index.
    """

    __slots__ = ("dims", "coeffs", "parities")

    def __init__(self, coeffs, parities=None):
        arr = np.asarray(coeffs, dtype=complex)
        norm = np.linalg.norm(arr.ravel())
        if abs(norm - 1.0) > 1e-9:
            raise ValueError("coefficients must have unit norm")
        if abs(norm - 1.0) > NORM_TOL:
            arr = arr / norm
        if parities is not None:
            parities = tuple(tuple(int(b) for b in p) for p in parities)
            if len(parities) != arr.ndim or any(
                len(p) != d for p, d in zip(parities, arr.shape)
            ):
                raise ValueError("need one parity bit per basis vector of each factor")
            for index in zip(*np.nonzero(arr)):
                if sum(parities[c][i] for c, i in enumerate(index)) % 2:
                    raise ValueError("nonzero coefficients must be even overall")
        self.dims = arr.shape
        self.coeffs = arr
        self.parities = parities

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    def is_super(self) -> bool:
        return self.parities is not None and any(
            any(p) for p in self.parities
        )

    @classmethod
    def bisymmetric_fill(cls, alphas: Sequence[float], betas: Sequence[float] = ()) -> "CoeffTensor":
        """The two-factor fill sum(sqrt(a_j) e_j x e_j') + sum(sqrt(b_m) f_m x f_m')
        with the e's even and the f's odd; weights must sum to 1."""
        alphas = [float(a) for a in alphas]
        betas = [float(b) for b in betas]
        if abs(sum(alphas) + sum(betas) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        d = len(alphas) + len(betas)
        arr = np.zeros((d, d), dtype=complex)
        for j, a in enumerate(alphas):
            arr[j, j] = math.sqrt(a)
        for m, b in enumerate(betas):
            arr[len(alphas) + m, len(alphas) + m] = math.sqrt(b)
        parity = [0] * len(alphas) + [1] * len(betas)
        return cls(arr, parities=(parity, parity))


def product_state(coeffs: CoeffTensor, n_blocks: int,
                  bound: int = DEFAULT_TENSOR_BOUND) -> np.ndarray:
    """Dense ``xi^(x n_blocks)`` with axes (block 0 factors..., block 1...)."""
    size = int(np.prod(coeffs.dims)) ** n_blocks
    if size > bound:
        raise ValueError(f"state size {size} exceeds bound {bound}")
    state = np.array(1.0, dtype=complex)
    for _ in range(n_blocks):
        state = np.multiply.outer(state, coeffs.coeffs)
    return state.reshape(coeffs.dims * n_blocks)


def _axes_after(perms: Sequence[ColoredPerm], n_blocks: int, n_factors: int):
    """numpy transpose axes realizing block factor moves (k,c) -> (g_c(k),c)."""
    axes = [0] * (n_blocks * n_factors)
    for k in range(n_blocks):
        for c in range(n_factors):
            dest = (perms[c].apply_index(k + 1) - 1) * n_factors + c
            axes[dest] = k * n_factors + c
    return axes


def apply_perm_tuple(state: np.ndarray, perms: Sequence[ColoredPerm],
                     n_blocks: int, n_factors: int) -> np.ndarray:
    return np.transpose(state, axes=_axes_after(perms, n_blocks, n_factors))


def rep_matrix_element(coeffs: CoeffTensor, n_blocks: int,
                       perms: Sequence[ColoredPerm],
                       bound: int = DEFAULT_TENSOR_BOUND) -> complex:
    """``<rho(g) Xi, Xi>`` for the product action of a tuple of
    permutations on the factors of each color; supports must fit."""
    perms = tuple(perms)
    if len(perms) != len(coeffs.dims):
        raise ValueError("one permutation per tensor factor required")
    if max(g.max_index() for g in perms) > n_blocks:
        raise ValueError("supports must fit the truncation")
    state = product_state(coeffs, n_blocks, bound)
    moved = apply_perm_tuple(state, perms, n_blocks, len(perms))
    return complex(np.vdot(state, moved))


def koszul_sign(g: ColoredPerm, parities: Sequence[int]) -> int:
    """Sign of transporting marked factors past each other: ``(-1)`` to the
    number of inversions of ``g`` among the odd positions."""
    if g.m != 1:
        raise ValueError("positions form a single-color set")
    odd = [i for i, p in enumerate(parities, start=1) if p]
    inv = 0
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if g.apply_index(odd[a]) > g.apply_index(odd[b]):
                inv += 1
    return -1 if inv % 2 else 1


def _sign_of_move(dests, parities) -> int:
    """Koszul sign for moving the factor at linear position ``i`` to
    ``dests[i]``; ``parities[i]`` marks the odd factors."""
    inv = 0
    odd = [i for i, p in enumerate(parities) if p]
    for x in range(len(odd)):
        for y in range(x + 1, len(odd)):
            if dests[odd[x]] > dests[odd[y]]:
                inv += 1
    return -1 if inv % 2 else 1


def super_rep_matrix_element(coeffs: CoeffTensor, n_blocks: int,
                             perms: Sequence[ColoredPerm],
                             bound: int = DEFAULT_TENSOR_BOUND) -> complex:
    """Matrix element with Koszul signs; iterates over the support of the
    coefficient tensor instead of the full basis."""
    perms = tuple(perms)
    n = len(coeffs.dims)
    if len(perms) != n:
        raise ValueError("one permutation per tensor factor required")
    if max(g.max_index() for g in perms) > n_blocks:
        raise ValueError("supports must fit the truncation")
    if coeffs.parities is None:
        return rep_matrix_element(coeffs, n_blocks, perms, bound)
    support = list(zip(*np.nonzero(coeffs.coeffs)))
    if len(support) ** n_blocks > bound:
        raise ValueError("support size exceeds bound")
    parities = coeffs.parities
    arr = coeffs.coeffs
    # destination linear position of source factor (k, c)
    dests = [0] * (n_blocks * n)
    for k in range(n_blocks):
        for c in range(n):
            dests[k * n + c] = (perms[c].apply_index(k + 1) - 1) * n + c
    total = complex(0.0)
    for combo in itertools.product(support, repeat=n_blocks):
        c_in = complex(1.0)
        for idx in combo:
            c_in *= arr[idx]
        factor_par = [
            parities[c][combo[k][c]] for k in range(n_blocks) for c in range(n)
        ]
        sign = _sign_of_move(dests, factor_par)
        image = [[0] * n for _ in range(n_blocks)]
        for k in range(n_blocks):
            for c in range(n):
                dest_block = perms[c].apply_index(k + 1) - 1
                image[dest_block][c] = combo[k][c]
        c_out = complex(1.0)
        for idx in image:
            c_out *= arr[tuple(idx)]
        if c_out != 0:
            total += c_in * sign * c_out.conjugate()
    return total


def projector_average(coeffs: CoeffTensor, n_blocks: int, fix: int,
                      vector: np.ndarray, mode: str = "exact",
                      samples: int = 200, rng=None) -> np.ndarray:
    """Average of the diagonal action of permutations fixing blocks
    ``1..fix`` over blocks ``fix+1..n_blocks``, applied to ``vector``.

    The exact path groups the tail block-indices by multiset, which
    computes the full group average in one pass regardless of
    ``(n_blocks - fix)!``.  ``mode="montecarlo"`` samples instead.
    """
    if not 0 <= fix <= n_blocks:
        raise ValueError("fix level out of range")
    d_block = int(np.prod(coeffs.dims))
    v = np.asarray(vector, dtype=complex).reshape(d_block**fix, -1)
    tail = n_blocks - fix
    if v.shape[1] != d_block**tail:
        raise ValueError("vector size does not match the truncation")
    if tail <= 1:
        return v.reshape(coeffs.dims * n_blocks).copy()
    if mode == "montecarlo":
        if rng is None:
            raise ValueError("monte carlo averaging needs an rng")
        acc = np.zeros_like(v)
        blocks = list(range(tail))
        for _ in range(samples):
            sigma = blocks[:]
            rng.shuffle(sigma)
            w = v.reshape((d_block**fix,) + (d_block,) * tail)
            w = np.transpose(w, axes=[0] + [1 + sigma.index(i) for i in range(tail)])
            acc += w.reshape(v.shape)
        return (acc / samples).reshape(coeffs.dims * n_blocks)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    digits = np.array(
        list(itertools.product(range(d_block), repeat=tail)), dtype=np.int64
    )
    keys = np.sort(digits, axis=1)
    order = np.lexsort(keys.T[::-1])
    out = np.empty_like(v)
    sorted_keys = keys[order]
    boundary = np.ones(len(order), dtype=bool)
    boundary[1:] = np.any(sorted_keys[1:] != sorted_keys[:-1], axis=1)
    idx = np.flatnonzero(boundary).tolist() + [len(order)]
    for a, b in zip(idx, idx[1:]):
        members = order[a:b]
        out[:, members] = v[:, members].mean(axis=1, keepdims=True)
    return out.reshape(coeffs.dims * n_blocks)


def young_matrix_element(xis, g: ColoredPerm, n_blocks: int,
                         bound: int = DEFAULT_TENSOR_BOUND) -> complex:
    """Dense ``<rho(g) Xi, Xi>`` for the Young model: one factor per
    colored point, filled with the unit vector of its color."""
    vecs = [np.asarray(x, dtype=complex) for x in xis]
    m = len(vecs)
    if g.m != m:
        raise ValueError(f"need one fill vector per color ({g.m})")
    d = len(vecs[0])
    if any(len(v) != d for v in vecs):
        raise ValueError("fill vectors must share one space")
    if any(abs(np.linalg.norm(v) - 1.0) > 1e-9 for v in vecs):
        raise ValueError("fill vectors must have unit norm")
    if max((pt.index for pt in g.support), default=0) > n_blocks:
        raise ValueError("support must fit the truncation")
    size = d ** (n_blocks * m)
    if size > bound:
        raise ValueError(f"state size {size} exceeds bound {bound}")
    state = np.array(1.0, dtype=complex)
    for k in range(n_blocks):
        for nu in range(m):
            state = np.multiply.outer(state, vecs[nu])
    axes = [0] * (n_blocks * m)
    for k in range(1, n_blocks + 1):
        for nu in range(1, m + 1):
            nu2, k2 = g((nu, k))
            axes[(k2 - 1) * m + (nu2 - 1)] = (k - 1) * m + (nu - 1)
    moved = np.transpose(state, axes=axes)
    return complex(np.vdot(state, moved))


def multiplicativity_drift(coeffs: CoeffTensor, n_blocks: int,
                           p: Sequence[ColoredPerm], q: Sequence[ColoredPerm],
                           alpha: int, beta: int, gamma: int,
                           width: int | None = None,
                           bound: int = DEFAULT_TENSOR_BOUND) -> float:
    """Finite-truncation gap between the two routes through a coset
    product: ``|P_a rho(p) P_b rho(q) P_c Xi  -  P_a rho(p swap q) P_c Xi|``.

    Dense evaluation; the gap vanishes as the truncation grows, callers
    compare sizes.  See :func:`multiplicativity_drift_classes` for the
    large-truncation path.
    """
    from .coset_oracle import PairSpec, product_with_width

    n = len(coeffs.dims)
    if n < 2:
        raise ValueError("drift experiment needs at least two factors")
    pair = PairSpec.diagonal(n)
    if width is None:
        width = pair.required_width(p, q, alpha, beta, gamma)
    r = product_with_width(pair, p, q, beta, width)
    if max(c.max_index() for c in r) > n_blocks:
        raise ValueError("swap width does not fit the truncation; increase n_blocks")
    xi = product_state(coeffs, n_blocks, bound)

    def proj(vec, fix):
        return projector_average(coeffs, n_blocks, fix, vec)

    lhs = proj(xi, gamma)
    lhs = apply_perm_tuple(lhs, q, n_blocks, n)
    lhs = proj(lhs, beta)
    lhs = apply_perm_tuple(lhs, p, n_blocks, n)
    lhs = proj(lhs, alpha)
    rhs = proj(apply_perm_tuple(proj(xi, gamma), r, n_blocks, n), alpha)
    return float(np.linalg.norm((lhs - rhs).ravel()))


def _multinomial(counts) -> int:
    total = sum(counts)
    out = 1
    for c in counts:
        out *= math.comb(total, c)
        total -= c
    return out


class _SparseBlockState:
    """rho(g) Xi as a dict: tuple of per-block letters -> coefficient.

    A letter is one basis index per factor; feasible whenever the
    coefficient support is small (``support ** n_blocks`` members).
    """

    def __init__(self, coeffs: CoeffTensor, n_blocks: int, g: Sequence[ColoredPerm],
                 support_bound: int):
        nz = [tuple(int(x) for x in idx) for idx in zip(*np.nonzero(coeffs.coeffs))]
        if len(nz) ** n_blocks > support_bound:
            raise ValueError("support size exceeds the sparse bound")
        n = len(coeffs.dims)
        ginv_idx = [
            [g[c].inverse().apply_index(k + 1) - 1 for k in range(n_blocks)]
            for c in range(n)
        ]
        members: dict[tuple, complex] = {}
        values = [complex(coeffs.coeffs[idx]) for idx in nz]
        for combo in itertools.product(range(len(nz)), repeat=n_blocks):
            coeff = 1.0 + 0j
            for i in combo:
                coeff *= values[i]
            letters = tuple(
                tuple(nz[combo[ginv_idx[c][k]]][c] for c in range(n))
                for k in range(n_blocks)
            )
            members[letters] = members.get(letters, 0.0) + coeff
        self.members = members

    def class_sums(self, fix: int) -> dict:
        """Sums of coefficients per symmetrization class
        ``(head letters, sorted tail letters)`` of the level-``fix`` projector."""
        sums: dict[tuple, complex] = {}
        for letters, coeff in self.members.items():
            key = (letters[:fix], tuple(sorted(letters[fix:])))
            sums[key] = sums.get(key, 0.0) + coeff
        return sums


def multiplicativity_drift_classes(coeffs: CoeffTensor, n_blocks: int,
                                   p: Sequence[ColoredPerm], q: Sequence[ColoredPerm],
                                   alpha: int, beta: int, gamma: int,
                                   width: int | None = None,
                                   support_bound: int = 2 * 10**6) -> float:
    """The drift of :func:`multiplicativity_drift`, computed exactly
    without dense states.

    Every vector in the pipeline is a projector average of a sparse
    state, so the three inner products of ``|lhs - rhs|^2`` reduce to
    class sums: tail positions enter only through letter multisets, and
    the action of ``p`` touches a bounded set of special positions, so
    class intersection counts are multinomials.  Valid for any levels
    and supports; feasible when the coefficient support is small (for
    example diagonal fills).
    """
    from .coset_oracle import PairSpec, product_with_width

    n = len(coeffs.dims)
    if n < 2:
        raise ValueError("drift experiment needs at least two factors")
    pair = PairSpec.diagonal(n)
    if width is None:
        width = pair.required_width(p, q, alpha, beta, gamma)
    r = product_with_width(pair, p, q, beta, width)
    if max(c.max_index() for c in r) > n_blocks:
        raise ValueError("swap width does not fit the truncation; increase n_blocks")

    # v = rho(q) Xi and w = rho(r) Xi are sparse (P_gamma fixes Xi)
    v_sums = _SparseBlockState(coeffs, n_blocks, q, support_bound).class_sums(beta)
    w_sums = _SparseBlockState(coeffs, n_blocks, r, support_bound).class_sums(alpha)

    # positions whose letters must be tracked explicitly: both heads and
    # the support of p (closed under each component and its inverse)
    special = set(range(1, max(alpha, beta) + 1))
    for comp in p:
        special |= {pt.index for pt in comp.support}
    special = sorted(special)
    spos = {k: i for i, k in enumerate(special)}
    free = n_blocks - len(special)
    sp_after_b = [k for k in special if k > beta]
    p_inv_idx = [
        [p[c].inverse().apply_index(k) for k in special] for c in range(n)
    ]

    def counts_of(multiset):
        out: dict[tuple, int] = {}
        for letter in multiset:
            out[letter] = out.get(letter, 0) + 1
        return out

    # weight per class of P_b v, and the distribution of p.(class) over
    # the classes of P_a
    lhs_by_class: dict[tuple, complex] = {}
    for (head, tail), s_d in v_sums.items():
        tail_counts = counts_of(tail)
        w_d = s_d / _multinomial(tail_counts.values())
        distinct = sorted(tail_counts)
        assert len(tail) - len(sp_after_b) == free, "positions must partition"
        for sigma in itertools.product(distinct, repeat=len(sp_after_b)):
            used = counts_of(sigma)
            if any(used[let] > tail_counts.get(let, 0) for let in used):
                continue
            remaining = dict(tail_counts)
            for let, cnt in used.items():
                remaining[let] -= cnt
            weight = _multinomial([c for c in remaining.values() if c])
            letter_at = {}
            for k in special:
                if k <= beta:
                    letter_at[k] = head[k - 1]
                else:
                    letter_at[k] = sigma[sp_after_b.index(k)]
            moved = {
                k: tuple(letter_at[p_inv_idx[c][spos[k]]][c] for c in range(n))
                for k in special
            }
            new_head = tuple(moved[k] for k in range(1, alpha + 1))
            new_tail = sorted(
                [moved[k] for k in special if k > alpha]
                + [let for let, cnt in remaining.items() for _ in range(cnt)]
            )
            key = (new_head, tuple(new_tail))
            lhs_by_class[key] = lhs_by_class.get(key, 0.0) + w_d * weight
    ll = lr = rr = 0.0 + 0j
    keys = set(lhs_by_class) | set(w_sums)
    for key in keys:
        size_c = _multinomial(counts_of(key[1]).values())
        a = lhs_by_class.get(key, 0.0)
        b = w_sums.get(key, 0.0)
        ll += a * a.conjugate() / size_c
        lr += a * b.conjugate() / size_c
        rr += b * b.conjugate() / size_c
    value = ll.real - 2 * lr.real + rr.real
    return math.sqrt(max(0.0, value))
