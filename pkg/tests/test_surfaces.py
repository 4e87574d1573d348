import itertools
import json

import numpy as np
import pytest

from traincat.perm_core import ColoredPerm, parse_perm
from traincat.coset_oracle import (
    PairSpec,
    coset_product_rep,
    enumerate_double_cosets_finite,
    random_element,
    random_subgroup_element,
)
from traincat.surfaces import (
    EquippedSurface,
    components,
    spherical_assignment_sum,
    surface_canon,
    surface_from_tuple,
    surface_involution,
    surface_mul,
    tuple_from_surface,
    vertices,
)
from traincat.tensor_oracle import CoeffTensor, rep_matrix_element

TRI = PairSpec.trisymmetric()
E = ColoredPerm.identity(1)


def _tuple(rng, top=6, copies=3):
    return random_element(PairSpec.diagonal(copies), rng, top)


def test_identity_double_polygon():
    s = surface_from_tuple((E, E, E), 1, 1, 1)
    assert s.n_faces == 1
    assert s.entries == (0,) and s.exits == (0,)
    comp = components(s)[0]
    assert (comp.F, comp.E, comp.V, comp.chi) == (2, 3, 3, 2)


def test_unlabeled_double_polygons_dropped():
    s = surface_from_tuple((E, E, E), 0, 0, 4)
    assert s.n_faces == 0
    assert surface_canon(s) == surface_canon(surface_from_tuple((E, E, E), 0, 0, 1))


def test_fully_labeled_finite_surface_has_2n_faces(rng):
    for _ in range(20):
        t = _tuple(rng, 5)
        n = max(1, max(c.max_index() for c in t))
        s = surface_from_tuple(t, n, n, n)
        assert sum(c.F for c in components(s)) == 2 * n


def test_single_swap_is_a_sphere():
    s = surface_from_tuple((E, E, parse_perm("(1 2)")), 0, 0)
    comp, = components(s)
    assert (comp.F, comp.E, comp.V, comp.chi) == (4, 6, 4, 2)
    counts = {k: len(v) for k, v in vertices(s).items()}
    # vertex colored complementary to the two edge colors at the corner
    assert counts[(2, 3)] == 1 and counts[(3, 1)] == 1 and counts[(1, 2)] == 2


def test_vertex_counts_match_quotient_cycles(rng):
    for _ in range(100):
        t = _tuple(rng)
        n = max(1, max(c.max_index() for c in t))
        s = surface_from_tuple(t, n, n, n)
        counts = {k: len(v) for k, v in vertices(s).items()}
        quotients = {
            (1, 2): t[0].inverse().compose(t[1]),
            (2, 3): t[1].inverse().compose(t[2]),
            (3, 1): t[2].inverse().compose(t[0]),
        }
        for key, quot in quotients.items():
            fixed = n - len({pt.index for pt in quot.support})
            assert counts[key] == fixed + len(quot.cycles())


def test_components_match_orbits(rng):
    assert len(components(surface_from_tuple((E, E, E), 3, 3, 3))) == 3
    cyc = ColoredPerm.from_images([2, 3, 4, 1])
    assert len(components(surface_from_tuple((E, E, cyc), 4, 4, 4))) == 1
    for _ in range(50):
        t = _tuple(rng)
        n = max(1, max(c.max_index() for c in t))
        s = surface_from_tuple(t, n, n, n)
        gens = [t[1].inverse().compose(t[2]), t[2].inverse().compose(t[0])]
        orbit_sets = {frozenset([k]) for k in range(1, n + 1)}
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for k in range(1, n + 1):
                a, b = find(k), find(g.apply_index(k))
                if a != b:
                    parent[a] = b
        orbits = len({find(k) for k in range(1, n + 1)})
        assert len(components(s)) == orbits


def test_euler_characteristic_exhaustive_s3():
    for t in itertools.product(itertools.permutations(range(1, 4)), repeat=3):
        tup = tuple(ColoredPerm.from_images(list(i)) for i in t)
        s = surface_from_tuple(tup, 3, 3, 3)
        for comp in components(s):
            assert comp.chi == comp.V - comp.E + comp.F
            assert comp.chi % 2 == 0 and comp.chi <= 2
            assert comp.F == 2 * len(comp.plus_faces)


def test_round_trip(rng):
    for _ in range(300):
        t = _tuple(rng)
        n = max(1, max(c.max_index() for c in t))
        s = surface_from_tuple(t, n, n, n)
        assert tuple_from_surface(s) == t
    with pytest.raises(ValueError):
        tuple_from_surface(surface_from_tuple((E, E, E), 0, 1, 2))


def test_plus_label_swap_right_translates(rng):
    # permuting plus labels is right translation by a subgroup element
    t = (E, E, parse_perm("(1 2)"))
    s = surface_from_tuple(t, 3, 3, 3)
    swapped = EquippedSurface(
        s.n_colors, s.n_faces, s.matchings,
        entries=(s.entries[1], s.entries[0], s.entries[2]),
        exits=s.exits,
    )
    h = parse_perm("(1 2)")
    expected = tuple(c.compose(h) for c in t)
    assert tuple_from_surface(swapped) == expected


def test_mul_matches_group_oracle(rng):
    for _ in range(400):
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        p, q = _tuple(rng), _tuple(rng)
        r, _ = coset_product_rep(TRI, p, q, a, b, c)
        glued = surface_mul(surface_from_tuple(p, a, b), surface_from_tuple(q, b, c))
        assert surface_canon(glued) == surface_canon(surface_from_tuple(r, a, c))


def test_mul_identity_and_level_zero_union(rng):
    for _ in range(30):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        s = surface_from_tuple(_tuple(rng), a, b)
        id_b = surface_from_tuple((E, E, E), b, b, b)
        id_a = surface_from_tuple((E, E, E), a, a, a)
        assert surface_canon(surface_mul(s, id_b)) == surface_canon(s)
        assert surface_canon(surface_mul(id_a, s)) == surface_canon(s)
    s1 = surface_from_tuple(_tuple(rng), 0, 0)
    s2 = surface_from_tuple(_tuple(rng), 0, 0)
    assert surface_mul(s1, s2).n_faces == s1.n_faces + s2.n_faces


def test_mul_associative_and_involution(rng):
    for _ in range(150):
        a, b, c, d = (rng.randint(0, 2) for _ in range(4))
        x = surface_from_tuple(_tuple(rng, 4), a, b)
        y = surface_from_tuple(_tuple(rng, 4), b, c)
        z = surface_from_tuple(_tuple(rng, 4), c, d)
        assert surface_canon(surface_mul(surface_mul(x, y), z)) == surface_canon(
            surface_mul(x, surface_mul(y, z))
        )
        lhs = surface_involution(surface_mul(x, y))
        rhs = surface_mul(surface_involution(y), surface_involution(x))
        assert surface_canon(lhs) == surface_canon(rhs)


def test_involution_is_inverse_tuple(rng):
    for _ in range(60):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        t = _tuple(rng)
        lhs = surface_involution(surface_from_tuple(t, a, b))
        rhs = surface_from_tuple(tuple(c.inverse() for c in t), b, a)
        assert surface_canon(lhs) == surface_canon(rhs)


def test_canon_ignores_internal_ids(rng):
    t = (parse_perm("(1 3 2)"), E, parse_perm("(1 2)"))
    s = surface_from_tuple(t, 1, 1, 3)
    # relabel faces by a rotation
    order = [1, 2, 0]
    matchings = tuple(
        tuple(order[s.matchings[c][p]] for p in (2, 0, 1)) for c in range(3)
    )
    relabeled = EquippedSurface(
        3, 3, matchings,
        entries=tuple(order[p] for p in s.entries),
        exits=tuple(order[m] for m in s.exits),
    )
    assert surface_canon(relabeled) == surface_canon(s)


def test_canon_invariance_under_translations(rng):
    for _ in range(150):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        g = _tuple(rng)
        k1 = random_subgroup_element(TRI, rng, a, 8)
        k2 = random_subgroup_element(TRI, rng, b, 8)
        h = TRI.mul(TRI.mul(k1, g), k2)
        assert surface_canon(surface_from_tuple(g, a, b)) == surface_canon(
            surface_from_tuple(h, a, b)
        )


def test_canon_counts_match_orbit_oracle():
    orbits = enumerate_double_cosets_finite(TRI, 3, 0, 0)
    codes = set()
    for orbit in orbits:
        cs = {surface_canon(surface_from_tuple(g, 0, 0, 3)) for g in orbit}
        assert len(cs) == 1
        codes |= cs
    assert len(codes) == 11


def test_assignment_sum_examples():
    ones = np.ones((1, 1, 1))
    s = surface_from_tuple((E, E, parse_perm("(1 2 3)")), 0, 0)
    assert spherical_assignment_sum(s, ones) == pytest.approx(1.0)
    gen = np.random.default_rng(11)
    arr = gen.normal(size=(2, 2, 2)) + 1j * gen.normal(size=(2, 2, 2))
    arr /= np.linalg.norm(arr.ravel())
    double = surface_from_tuple((E, E, E), 1, 1, 1)
    assert spherical_assignment_sum(double, arr) == pytest.approx(1.0)


def test_assignment_sum_against_tensor_oracle(rng):
    gen = np.random.default_rng(23)
    arr = gen.normal(size=(2, 2, 2)) + 1j * gen.normal(size=(2, 2, 2))
    arr /= np.linalg.norm(arr.ravel())
    fill = CoeffTensor(arr)
    for _ in range(60):
        t = _tuple(rng, 4)
        n = max(1, max(c.max_index() for c in t))
        s = surface_from_tuple(t, 0, 0, n)
        lhs = spherical_assignment_sum(s, fill)
        rhs = rep_matrix_element(fill, n, t)
        assert abs(lhs - rhs) < 1e-10
        assert abs(lhs) <= 1 + 1e-12


def test_assignment_sum_enumerate_path_agrees(rng):
    gen = np.random.default_rng(29)
    arr = gen.normal(size=(2, 2, 2)) + 1j * gen.normal(size=(2, 2, 2))
    arr /= np.linalg.norm(arr.ravel())
    for _ in range(10):
        t = _tuple(rng, 3)
        s = surface_from_tuple(t, 0, 0, max(1, max(c.max_index() for c in t)))
        a = spherical_assignment_sum(s, arr)
        b = spherical_assignment_sum(s, arr, method="enumerate")
        assert abs(a - b) < 1e-12


def test_assignment_sum_multiplicative_at_level_zero(rng):
    gen = np.random.default_rng(31)
    arr = gen.normal(size=(2, 2, 2)) + 1j * gen.normal(size=(2, 2, 2))
    arr /= np.linalg.norm(arr.ravel())
    for _ in range(20):
        s1 = surface_from_tuple(_tuple(rng, 4), 0, 0)
        s2 = surface_from_tuple(_tuple(rng, 4), 0, 0)
        lhs = spherical_assignment_sum(surface_mul(s1, s2), arr)
        rhs = spherical_assignment_sum(s1, arr) * spherical_assignment_sum(s2, arr)
        assert abs(lhs - rhs) < 1e-10


def test_digon_surfaces_match_bisymmetric_pair(rng):
    # two colors: code equality matches the exhaustive bisymmetric orbits
    bi = PairSpec.bisymmetric()
    orbits = enumerate_double_cosets_finite(bi, 3, 1, 1)
    codes = set()
    for orbit in orbits:
        cs = {surface_canon(surface_from_tuple(g, 1, 1, 3)) for g in orbit}
        assert len(cs) == 1
        codes |= cs
    assert len(codes) == len(orbits)


def test_json_and_dot(rng):
    s = surface_from_tuple((E, E, parse_perm("(1 2)")), 0, 0)
    assert surface_canon(EquippedSurface.from_json(json.dumps(s.to_json()))) == surface_canon(s)
    dot = s.to_dot()
    assert dot.count("[shape=triangle") == 2 and dot.count("[shape=invtriangle") == 2
    assert dot.count(" -- ") == 6
    assert dot == s.to_dot()  # deterministic


def test_canon_stable_under_larger_truncations(rng):
    for _ in range(50):
        t = _tuple(rng, 4)
        a, b = rng.randint(0, 2), rng.randint(0, 2)
        n = max(a, b, 1, max(c.max_index() for c in t))
        small = surface_canon(surface_from_tuple(t, a, b, n))
        large = surface_canon(surface_from_tuple(t, a, b, n + 3))
        assert small == large


def test_truncation_errors():
    with pytest.raises(ValueError):
        surface_from_tuple((E, E, parse_perm("(1 5)")), 0, 0, 3)
    with pytest.raises(ValueError):
        surface_mul(
            surface_from_tuple((E, E, E), 1, 2, 2),
            surface_from_tuple((E, E, E), 1, 1, 1),
        )
