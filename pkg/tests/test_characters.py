import numpy as np
import pytest

from traincat.perm_core import ColoredPerm, parse_perm
from traincat.coset_oracle import (
    PairSpec,
    coset_product_rep,
    enumerate_double_cosets_finite,
    random_element,
)
from traincat.characters import (
    GramSpec,
    SMatrix,
    ThomaParams,
    coset_invariant_young,
    cycle_decompose,
    nessonov_char,
    s_matrix,
    thoma_char,
    thoma_psd_check,
    young_spherical,
)

from conftest import random_single


def test_thoma_params_validation():
    with pytest.raises(ValueError):
        ThomaParams([0.25, 0.5])  # not non-increasing
    with pytest.raises(ValueError):
        ThomaParams([0.8], [0.4])  # sums beyond 1
    with pytest.raises(ValueError):
        ThomaParams([-0.1])
    p = ThomaParams([0.5], [0.25])
    assert p.gamma == pytest.approx(0.25)


def test_thoma_trivial_character():
    params = ThomaParams([1.0])
    for text in ("()", "(1 2)", "(1 2 3)", "(1 2)(3 4 5)"):
        assert thoma_char(params, parse_perm(text)) == pytest.approx(1.0)


def test_thoma_sign_character():
    params = ThomaParams([], [1.0])
    assert thoma_char(params, parse_perm("(1 2)")) == pytest.approx(-1.0)
    assert thoma_char(params, parse_perm("(1 2 3)")) == pytest.approx(1.0)
    assert thoma_char(params, parse_perm("(1 2)(3 4)")) == pytest.approx(1.0)


def test_thoma_half_half():
    params = ThomaParams([0.5, 0.5])
    assert thoma_char(params, parse_perm("(1 2)")) == pytest.approx(0.5)


def test_thoma_centrality_and_bounds(rng):
    params = ThomaParams([0.5, 0.25], [0.125])
    for _ in range(100):
        g = random_single(rng, 6)
        h = random_single(rng, 6)
        assert abs(thoma_char(params, g)) <= 1 + 1e-12
        conj = h.compose(g).compose(h.inverse())
        assert thoma_char(params, conj) == pytest.approx(thoma_char(params, g))
    assert thoma_char(params, ColoredPerm.identity(1)) == 1.0


def test_thoma_psd_single_element():
    gram, eig = thoma_psd_check(ThomaParams([0.5, 0.5]), [ColoredPerm.identity(1)])
    assert gram.shape == (1, 1) and gram[0, 0] == pytest.approx(1.0)
    assert eig == pytest.approx(1.0)


def test_thoma_psd_random_subsets(rng):
    params = ThomaParams([0.5, 0.25, 0.25])
    for _ in range(10):
        perms = [random_single(rng, 5) for _ in range(6)]
        _, eig = thoma_psd_check(params, perms)
        assert eig >= -1e-9


def test_s_matrix_examples():
    assert s_matrix(ColoredPerm.identity(2)) == SMatrix.zero(2)
    g = parse_perm("(c1.1 c2.1)", m=2)
    assert s_matrix(g).entries == ((0, 1), (1, 0))


def test_s_matrix_balance(rng):
    pair = PairSpec.young(3)
    for _ in range(100):
        g = random_element(pair, rng, 5)
        s = s_matrix(g)  # constructor enforces the balance identity
        for mu in range(3):
            assert sum(s.entries[mu]) == sum(row[mu] for row in s.entries)


def test_young_invariant_additive_under_products(rng):
    pair = PairSpec.young(3)
    for _ in range(100):
        p = random_element(pair, rng, 4)
        q = random_element(pair, rng, 4)
        r, _ = coset_product_rep(pair, p, q, 0, 0, 0)
        assert coset_invariant_young(r, 0) == s_matrix(p) + s_matrix(q)
        assert coset_invariant_young(p.inverse(), 0) == s_matrix(p).transpose()
    with pytest.raises(ValueError):
        coset_invariant_young(ColoredPerm.identity(3), (1, 0, 0))


def test_young_invariant_separates_level_zero_cosets():
    pair = PairSpec.young(2)
    orbits = enumerate_double_cosets_finite(pair, 2, 0, 0)
    invariants = set()
    for orbit in orbits:
        values = {s_matrix(g) for g in orbit}
        assert len(values) == 1
        invariants |= values
    assert len(invariants) == len(orbits)


def test_cycle_decompose_examples():
    assert cycle_decompose(SMatrix.zero(3)) == []
    s = SMatrix.cycle([1, 2, 3], 3)
    assert cycle_decompose(s) == [(1, 2, 3)]


def test_cycle_decompose_reconstructs(rng):
    for _ in range(100):
        m = rng.randint(2, 5)
        total = SMatrix.zero(m)
        for _ in range(rng.randint(0, 4)):
            size = rng.randint(2, m)
            colors = rng.sample(range(1, m + 1), size)
            total = total + SMatrix.cycle(colors, m)
        cycles = cycle_decompose(total)
        back = SMatrix.zero(m)
        for c in cycles:
            assert len(set(c)) == len(c)
            back = back + SMatrix.cycle(c, m)
        assert back == total


def test_smatrix_rejects_unbalanced():
    with pytest.raises(ValueError):
        SMatrix([[0, 1], [0, 0]])


def test_nessonov_all_ones():
    gram = GramSpec.ones(3)
    s = SMatrix.cycle([1, 2, 3], 3)
    assert nessonov_char(gram, s) == pytest.approx(1.0)


def test_nessonov_two_color_modulus():
    c = 0.3 + 0.4j
    gram = GramSpec([[1, c], [np.conj(c), 1]])
    s = SMatrix.cycle([1, 2], 2)
    assert nessonov_char(gram, s) == pytest.approx(abs(c) ** 2)


def test_nessonov_properties(rng):
    gen = np.random.default_rng(17)
    vecs = gen.normal(size=(3, 3)) + 1j * gen.normal(size=(3, 3))
    vecs = [v / np.linalg.norm(v) for v in vecs]
    gram = GramSpec.from_vectors(vecs)
    for _ in range(100):
        parts = []
        for m_ in (3, 3):
            total = SMatrix.zero(3)
            for _ in range(rng.randint(0, 3)):
                size = rng.randint(2, 3)
                total = total + SMatrix.cycle(rng.sample(range(1, 4), size), 3)
            parts.append(total)
        s1, s2 = parts
        lhs = nessonov_char(gram, s1 + s2)
        rhs = nessonov_char(gram, s1) * nessonov_char(gram, s2)
        assert abs(lhs - rhs) < 1e-12
        assert abs(nessonov_char(gram, s1)) <= 1 + 1e-12
        assert nessonov_char(gram, s1.transpose()) == pytest.approx(
            np.conj(nessonov_char(gram, s1))
        )
        sym = s1 + s1.transpose()
        assert nessonov_char(gram, sym) == pytest.approx(
            abs(nessonov_char(gram, s1)) ** 2
        )


def test_nessonov_zero_structure():
    gram = GramSpec([[1, 0, 0.5], [0, 1, 0.5], [0.5, 0.5, 1]])
    s = SMatrix.cycle([1, 2], 3)
    assert nessonov_char(gram, s) == 0
    empty = SMatrix.zero(3)
    assert nessonov_char(gram, empty) == pytest.approx(1.0)  # 0**0 convention


def test_gram_validation():
    with pytest.raises(ValueError):
        GramSpec([[1, 1], [0, 1]])  # not Hermitian
    with pytest.raises(ValueError):
        GramSpec([[2, 0], [0, 1]])  # diagonal not 1
    with pytest.raises(ValueError):
        GramSpec([[1, 2], [2, 1]])  # not PSD


def test_young_spherical_basics(rng):
    gen = np.random.default_rng(19)
    vecs = gen.normal(size=(3, 2)) + 1j * gen.normal(size=(3, 2))
    vecs = [v / np.linalg.norm(v) for v in vecs]
    assert young_spherical(vecs, ColoredPerm.identity(3)) == pytest.approx(1.0)
    ortho = [np.eye(3)[i] for i in range(3)]
    mixing = parse_perm("(c1.1 c2.1)", m=3)
    assert young_spherical(ortho, mixing) == 0
    pair = PairSpec.young(3)
    for _ in range(50):
        g = random_element(pair, rng, 4)
        lhs = young_spherical(vecs, g)
        rhs = nessonov_char(GramSpec.from_vectors(vecs), s_matrix(g))
        assert lhs == pytest.approx(rhs)


def test_young_spherical_rejects_bad_vectors():
    with pytest.raises(ValueError):
        young_spherical([np.array([1.0, 1.0]), np.array([1.0, 0.0])],
                        ColoredPerm.identity(2))
