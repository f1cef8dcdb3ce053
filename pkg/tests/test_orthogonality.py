import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjortho import (
    InputError,
    bj_oracle,
    build_named,
    covers,
    has_property_pn,
    in_minus_set,
    in_plus_set,
    is_bj_orthogonal,
    min_covering_number,
    normal_cone_2d,
    ortho_set,
)
from bjortho.geometry import dot
from bjortho.orthogonality import active_functionals, pn_lp_bound
from bjortho.space import norming_face, vertex_classes
from oracles import euclidean_orthogonal, polyhedral_orthogonal, rand_rational, rand_vector

POLY = ["l1:2", "l1:3", "linf:2", "linf:3", "polygon:6", "polygon:8", "prism:2", "prism:3",
        "glued_pyramids", "bipyramid_prism:3"]
SPACES = {name: build_named(name) for name in POLY + ["euclid:2", "euclid:3"]}
PLANAR = ["l1:2", "linf:2", "polygon:6", "polygon:8", "polygon:10"]


def boundary_point(rng, S):
    """A random point in the relative interior of a random face, with that face."""
    face = rng.choice(S.faces)
    weights = [F(rng.randint(1, 6)) for _ in face]
    total = sum(weights)
    pt = tuple(sum(w / total * S.vertices[i][k] for w, i in zip(weights, face)) for k in range(S.dim))
    return pt, face


@pytest.mark.parametrize("x,y,expected", [
    ((1, 0), (0, 1), True),
    ((1, 0), (1, 1), False),
    ((1, 1), (1, -1), True),
    ((1, 1), (1, 0), True),
    ((1, 1), (1, F(1, 2)), False),
    ((1, F(1, 2)), (0, 1), True),
])
def test_point_examples_in_linf_plane(x, y, expected):
    S = SPACES["linf:2"]
    assert is_bj_orthogonal(S, x, y) is expected
    assert bj_oracle(S, x, y) is expected


def test_prism_example_from_the_cli_docs():
    S = SPACES["prism:2"]
    assert is_bj_orthogonal(S, (1, 0, 1), (1, 2, -1))


@pytest.mark.parametrize("name", POLY + ["euclid:3"])
def test_against_line_minimisation_oracle(name):
    S = SPACES[name]
    rng = random.Random(name)
    for _ in range(200):
        x = boundary_point(rng, S)[0] if S.is_polyhedral else rand_vector(rng, S.dim)
        y = rand_vector(rng, S.dim, 6, 2, nonzero=False)
        if S.is_polyhedral and rng.random() < 0.5:
            f = rng.choice(active_functionals(S, x))
            y = tuple(a - dot(f, y) / dot(f, x) * b for a, b in zip(y, x))
        expected = (
            polyhedral_orthogonal(S.facets, x, y) if S.is_polyhedral else euclidean_orthogonal(S.gram, x, y)
        )
        assert is_bj_orthogonal(S, x, y) == expected == bj_oracle(S, x, y)


@pytest.mark.parametrize("name", POLY + ["euclid:3"])
def test_homogeneity(name):
    S = SPACES[name]
    rng = random.Random(f"h{name}")
    for _ in range(300):
        x, y = rand_vector(rng, S.dim), rand_vector(rng, S.dim, 5, 2, nonzero=False)
        a, b = rand_rational(rng), rand_rational(rng)
        if a == 0 or b == 0:
            continue
        assert is_bj_orthogonal(S, x, y) == is_bj_orthogonal(
            S, tuple(a * c for c in x), tuple(b * c for c in y)
        )


@pytest.mark.parametrize("name", POLY + ["euclid:2"])
def test_orthogonality_is_intersection_of_one_sided_sets(name):
    S = SPACES[name]
    rng = random.Random(f"pm{name}")
    for _ in range(300):
        x, y = rand_vector(rng, S.dim), rand_vector(rng, S.dim, 4, 1, nonzero=False)
        assert is_bj_orthogonal(S, x, y) == (in_plus_set(S, x, y) and in_minus_set(S, x, y))


@pytest.mark.parametrize("name", POLY)
def test_kernel_union_form(name):
    """``y`` is orthogonal iff some convex combination of active functionals vanishes at ``y``."""
    S = SPACES[name]
    rng = random.Random(f"k{name}")
    for _ in range(300):
        x = boundary_point(rng, S)[0]
        y = rand_vector(rng, S.dim, 5, 2)
        fs = active_functionals(S, x)
        vals = [dot(f, y) for f in fs]
        pos = [(f, v) for f, v in zip(fs, vals) if v > 0]
        neg = [(f, v) for f, v in zip(fs, vals) if v < 0]
        zero = [f for f, v in zip(fs, vals) if v == 0]
        h = None
        if zero:
            h = zero[0]
        elif pos and neg:
            (fp, vp), (fn, vn) = pos[0], neg[0]
            t = vp / (vp - vn)
            h = tuple((1 - t) * a + t * b for a, b in zip(fp, fn))
        if h is not None:
            assert dot(h, y) == 0
            # a convex combination of active functionals is itself norming at x
            assert dot(h, x) == dot(fs[0], x)
        assert is_bj_orthogonal(S, x, y) == (h is not None)
        # every active kernel lies inside x^perp
        f = rng.choice(fs)
        k = rand_vector(rng, S.dim, 5, 2)
        k = tuple(a - dot(f, k) / dot(f, x) * b for a, b in zip(k, x))
        assert is_bj_orthogonal(S, x, k)


@pytest.mark.parametrize("name", POLY)
def test_reduction_to_vertices_of_the_minimal_face(name):
    S = SPACES[name]
    rng = random.Random(f"r{name}")
    for _ in range(1000 // len(POLY) + 1):
        x, face = boundary_point(rng, S)
        ax = set(norming_face(S, x).active_facets)
        for i in face:
            v = S.vertices[i]
            assert ax <= set(norming_face(S, v).active_facets)
            ox, ov = ortho_set(S, x), ortho_set(S, v)
            for _ in range(5):
                y = rand_vector(rng, S.dim, 8, 1)
                if ox.contains(y):
                    assert ov.contains(y)


@pytest.mark.parametrize("name", PLANAR)
def test_planar_normal_cone(name):
    S = build_named(name)
    rng = random.Random(f"c{name}")
    for x in S.vertices:
        K = normal_cone_2d(S, x)
        v1, v2 = K.generators
        assert is_bj_orthogonal(S, x, v1) and is_bj_orthogonal(S, x, v2)
        # cone axioms on samples
        for _ in range(50):
            a, b = rand_vector(rng, 2, 6, 3, False), rand_vector(rng, 2, 6, 3, False)
            p = tuple(abs(a[0]) * s + abs(a[1]) * t for s, t in zip(v1, v2))
            q = tuple(abs(b[0]) * s + abs(b[1]) * t for s, t in zip(v1, v2))
            assert K.contains(p) and K.contains(q) and K.contains(tuple(s + t for s, t in zip(p, q)))
            if any(p):
                assert not K.contains(tuple(-c for c in p))
            y = rand_vector(rng, 2, 9, 2)
            in_cone = K.contains(y) or K.contains(tuple(-c for c in y))
            assert in_cone == is_bj_orthogonal(S, x, y)
            if K.contains(y):
                assert all(c >= 0 for c in K.cone_coordinates(y))


@pytest.mark.parametrize("name", PLANAR)
def test_open_cone_edge_avoids_other_vertex_classes(name):
    S = build_named(name)
    rng = random.Random(f"e{name}")
    for x in S.vertices:
        v1, v2 = normal_cone_2d(S, x).generators
        others = [y for y in S.vertices if y != x and y != tuple(-c for c in x)]
        for _ in range(20):
            t = F(rng.randint(1, 99), 100)
            p = tuple((1 - t) * a + t * b for a, b in zip(v1, v2))
            assert not any(is_bj_orthogonal(S, y, p) for y in others)


def test_normal_cone_rejects_non_vertices():
    with pytest.raises(InputError):
        normal_cone_2d(SPACES["linf:2"], (1, 0))
    with pytest.raises(InputError):
        normal_cone_2d(SPACES["linf:3"], (1, 1, 1))


@pytest.mark.parametrize("name", POLY)
def test_cover_certificates(name):
    S = SPACES[name]
    rng = random.Random(f"cov{name}")
    classes = vertex_classes(S)
    for _ in range(6):
        fam = rng.sample(classes, rng.randint(1, min(3, len(classes))))
        cert = covers(S, fam)
        sets = [ortho_set(S, x) for x in fam]
        if cert.covered:
            assert cert.checked_sign_vectors == 2 ** (len(fam) - 1)
            for _ in range(300):
                y = rand_vector(rng, S.dim, 40, 1)
                assert any(polyhedral_orthogonal(S.facets, x, y) for x in fam)
        else:
            w = cert.witness
            assert not any(s.contains(w) for s in sets)
            for x, e in zip(fam, cert.sign_vector):
                assert all(e * dot(f, w) > 0 for f in active_functionals(S, x))


def test_euclidean_families_never_cover():
    S = SPACES["euclid:3"]
    fam = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    cert = covers(S, fam)
    assert not cert.covered
    assert all(dot(x, cert.witness) != 0 for x in fam)
    assert has_property_pn(S, 7).has_pn
    with pytest.raises(InputError):
        min_covering_number(S)


@pytest.mark.parametrize("name", POLY)
def test_property_pn_is_monotone(name):
    S = SPACES[name]
    m, _ = min_covering_number(S)
    for n in range(1, len(vertex_classes(S)) + 2):
        cert = has_property_pn(S, n)
        assert cert.has_pn == (n < m)
        assert cert.lp_calls <= pn_lp_bound(S, n)
        if not cert.has_pn:
            assert covers(S, cert.covering_family).covered


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(-20, 20)] * 3).filter(any), st.tuples(*[st.integers(-20, 20)] * 3))
def test_ortho_set_agrees_with_pointwise_test(x, y):
    S = SPACES["glued_pyramids"]
    assert ortho_set(S, x).contains(y) == is_bj_orthogonal(S, x, y)


def test_zero_base_point_is_rejected():
    with pytest.raises(InputError):
        is_bj_orthogonal(SPACES["linf:2"], (0, 0), (1, 0))
    with pytest.raises(InputError):
        is_bj_orthogonal(SPACES["linf:2"], (1, 0), (1, 0, 0))
