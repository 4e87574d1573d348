import math
import random

import numpy as np
import pytest

from traincat.perm_core import ColoredPerm, parse_perm
from traincat.coset_oracle import PairSpec, random_element
from traincat.characters import ThomaParams, thoma_char
from traincat.tensor_oracle import (
    CoeffTensor,
    koszul_sign,
    multiplicativity_drift,
    multiplicativity_drift_classes,
    product_state,
    projector_average,
    rep_matrix_element,
    super_rep_matrix_element,
    young_matrix_element,
)

from conftest import random_single

E = ColoredPerm.identity(1)


def random_fill(seed, dims):
    gen = np.random.default_rng(seed)
    arr = gen.normal(size=dims) + 1j * gen.normal(size=dims)
    return CoeffTensor(arr / np.linalg.norm(arr.ravel()))


def test_coeff_tensor_validation():
    with pytest.raises(ValueError):
        CoeffTensor(np.ones((2, 2)))  # not unit norm
    with pytest.raises(ValueError):  # odd total parity on a nonzero entry
        CoeffTensor(np.eye(2) / math.sqrt(2), parities=((0, 1), (0, 0)))
    ct = CoeffTensor.bisymmetric_fill([0.5], [0.5])
    assert ct.is_super()


def test_rep_matrix_element_identity_and_diagonal(rng):
    fill = random_fill(3, (2, 2, 2))
    assert rep_matrix_element(fill, 3, (E, E, E)) == pytest.approx(1.0)
    for _ in range(20):
        h = random_single(rng, 4)
        val = rep_matrix_element(fill, 4, (h, h, h))
        assert val == pytest.approx(1.0)  # the reference vector is fixed


def test_rep_matrix_element_invariances(rng):
    fill = random_fill(5, (2, 2, 2))
    pair = PairSpec.trisymmetric()
    for _ in range(30):
        t = random_element(pair, rng, 4)
        h = random_single(rng, 4)
        diag = (h, h, h)
        val = rep_matrix_element(fill, 4, t)
        assert abs(val) <= 1 + 1e-12
        right = tuple(c.compose(k) for c, k in zip(t, diag))
        conj = tuple(
            k.compose(c).compose(k2)
            for c, k, k2 in zip(t, diag, (h.inverse(),) * 3)
        )
        assert rep_matrix_element(fill, 4, right) == pytest.approx(val)
        assert rep_matrix_element(fill, 4, conj) == pytest.approx(val)


def test_rep_matrix_element_bound():
    fill = random_fill(7, (3, 3, 3))
    with pytest.raises(ValueError):
        rep_matrix_element(fill, 6, (E, E, E), bound=10**5)


def _koszul_brute(g, parities):
    """Independent oracle: bubble-sort the factor arrangement back to
    identity, flipping the sign whenever two odd factors swap."""
    top = max(len(parities), g.max_index())
    par = list(parities) + [0] * (top - len(parities))
    ginv = g.inverse()
    arrangement = [ginv.apply_index(pos) for pos in range(1, top + 1)]
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(top - 1):
            if arrangement[i] > arrangement[i + 1]:
                if par[arrangement[i] - 1] and par[arrangement[i + 1] - 1]:
                    sign = -sign
                arrangement[i], arrangement[i + 1] = arrangement[i + 1], arrangement[i]
                changed = True
    return sign


def test_koszul_sign_examples(rng):
    assert koszul_sign(parse_perm("(1 2)"), [0, 0]) == 1
    assert koszul_sign(parse_perm("(1 2)"), [1, 1]) == -1
    assert koszul_sign(parse_perm("(1 2)"), [1, 0]) == 1
    for _ in range(300):
        top = rng.randint(1, 7)
        images = list(range(1, top + 1))
        rng.shuffle(images)
        g = ColoredPerm.from_images(images)
        par = [rng.randint(0, 1) for _ in range(top)]
        assert koszul_sign(g, par) == _koszul_brute(g, par)


def test_koszul_composition_law(rng):
    for _ in range(200):
        top = rng.randint(1, 6)
        mk = lambda: ColoredPerm.from_images(
            random.Random(rng.random()).sample(range(1, top + 1), top)
        )
        g, h = mk(), mk()
        par = [rng.randint(0, 1) for _ in range(top)]
        # after h acts, position x holds the factor from h^-1(x)
        hinv = h.inverse()
        par_after_h = [par[hinv.apply_index(x) - 1] for x in range(1, top + 1)]
        lhs = koszul_sign(g.compose(h), par)
        rhs = koszul_sign(g, par_after_h) * koszul_sign(h, par)
        assert lhs == rhs


def test_super_equals_plain_without_parities(rng):
    arr = np.zeros((2, 2), dtype=complex)
    arr[0, 0] = math.sqrt(0.5)
    arr[1, 1] = math.sqrt(0.5)
    plain = CoeffTensor(arr)
    marked = CoeffTensor(arr, parities=((0, 0), (0, 0)))
    for _ in range(20):
        g = random_single(rng, 4)
        a = rep_matrix_element(plain, 4, (g, E))
        b = super_rep_matrix_element(marked, 4, (g, E))
        assert a == pytest.approx(b)


def test_super_sign_representation(rng):
    fill = CoeffTensor.bisymmetric_fill([], [1.0])
    for _ in range(30):
        g = random_single(rng, 5)
        val = super_rep_matrix_element(fill, 5, (g, E))
        sign = 1 if sum(k - 1 for k, r in g.cycle_type().items() for _ in range(r)) % 2 == 0 else -1
        assert val == pytest.approx(sign)


@pytest.mark.parametrize("alphas,betas", [
    ([1.0], []),
    ([], [1.0]),
    ([0.5, 0.5], []),
    ([0.5, 0.25, 0.25], []),
    ([0.5], [0.5]),
])
def test_super_matches_thoma(alphas, betas, rng):
    params = ThomaParams(alphas, betas)
    fill = CoeffTensor.bisymmetric_fill(alphas, betas)
    for _ in range(20):
        images = list(range(1, 5))
        rng.shuffle(images)
        g = ColoredPerm.from_images(images)
        val = super_rep_matrix_element(fill, 4, (g, E))
        assert abs(val - thoma_char(params, g)) < 1e-10


def test_projector_fixes_reference_and_idempotent(rng):
    fill = CoeffTensor.bisymmetric_fill([0.5, 0.5])
    xi = product_state(fill, 5)
    for fix in (0, 1, 2):
        pxi = projector_average(fill, 5, fix, xi)
        assert np.linalg.norm((pxi - xi).ravel()) < 1e-10
    gen = np.random.default_rng(2)
    v = gen.normal(size=xi.shape)
    v /= np.linalg.norm(v.ravel())
    once = projector_average(fill, 5, 2, v)
    twice = projector_average(fill, 5, 2, once)
    assert np.linalg.norm((twice - once).ravel()) < 1e-10


def test_projector_monte_carlo_converges(rng):
    fill = CoeffTensor.bisymmetric_fill([0.5, 0.5])
    gen = np.random.default_rng(4)
    v = gen.normal(size=product_state(fill, 5).shape)
    v /= np.linalg.norm(v.ravel())
    exact = projector_average(fill, 5, 1, v)
    mc = projector_average(fill, 5, 1, v, mode="montecarlo", samples=4000,
                           rng=random.Random(9))
    assert np.linalg.norm((mc - exact).ravel()) < 0.05


def test_young_matrix_element_basics(rng):
    gen = np.random.default_rng(6)
    vecs = gen.normal(size=(2, 2)) + 1j * gen.normal(size=(2, 2))
    vecs = [v / np.linalg.norm(v) for v in vecs]
    assert young_matrix_element(vecs, ColoredPerm.identity(2), 2) == pytest.approx(1.0)
    pair = PairSpec.young(2)
    for _ in range(20):
        g = random_element(pair, rng, 3)
        val = young_matrix_element(vecs, g, 3)
        assert abs(val) <= 1 + 1e-12


def test_drift_classes_matches_dense(rng):
    arr = np.zeros((2, 2, 2), dtype=complex)
    arr[0, 0, 0] = math.sqrt(0.3)
    arr[1, 1, 1] = math.sqrt(0.7)
    fill = CoeffTensor(arr)
    pair = PairSpec.trisymmetric()
    checked = 0
    while checked < 6:
        p = random_element(pair, rng, 3)
        q = random_element(pair, rng, 3)
        a, b, c = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1)
        if pair.required_width(p, q, a, b, c) * 2 + b > 6:
            continue
        dense = multiplicativity_drift(fill, 6, p, q, a, b, c)
        sparse = multiplicativity_drift_classes(fill, 6, p, q, a, b, c)
        assert abs(dense - sparse) < 1e-12
        checked += 1


def test_drift_decreases_with_truncation():
    arr = np.zeros((2, 2, 2), dtype=complex)
    arr[0, 0, 0] = math.sqrt(0.3)
    arr[1, 1, 1] = math.sqrt(0.7)
    fill = CoeffTensor(arr)
    pair = PairSpec.trisymmetric()
    rng = random.Random(1002)
    p = random_element(pair, rng, 3)
    q = random_element(pair, rng, 3)
    d8 = multiplicativity_drift_classes(fill, 8, p, q, 1, 1, 1)
    d16 = multiplicativity_drift_classes(fill, 16, p, q, 1, 1, 1)
    assert d8 > 1e-4
    assert d16 < d8
