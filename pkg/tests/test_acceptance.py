"""Acceptance criteria 1-10.

Each test records its outcome in ``conftest.ACCEPTANCE`` and prints one
PASS/FAIL line; the terminal summary repeats the table at the end of the run.
Every criterion is checked twice: through the library and against the
independent oracles in ``tests/oracles.py``.
"""

import functools
import itertools
import random
from fractions import Fraction as F

import pytest

from bjortho import (
    CounterexampleSpec,
    Operator,
    bs_check_2d,
    build_counterexample,
    build_named,
    corollary_pn_bs,
    covers,
    has_property_pn,
    image_classes,
    is_bj_orthogonal,
    min_covering_number,
    mt_projective_components,
    norm,
    norm_attainment_set,
    op_bj_oracle,
    op_is_bj_orthogonal,
    op_norm,
    validate,
    witness_exists,
)
from bjortho.repro import (
    BIPYRAMID_FAMILY,
    base_normals_q1,
    bipyramid_slope,
    glued_pyramids_norm,
    lifted_pairs,
    prism_formula_coefficients,
    run_scenario,
    v1_predicate,
    w1_predicate,
)
from bjortho.space import vertex_classes
from conftest import ACCEPTANCE
from oracles import (
    brute_op_norm,
    dot,
    facet_norm,
    line_min,
    linf_norm,
    polyhedral_orthogonal,
    rand_vector,
)

HALF = F(1, 2)
CUBE = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
CUBE_BASIS = ((1, 1, 1), (-1, 1, 1), (-1, -1, 1))


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                # parametrized criteria pass only if every case passes
                ok = ok and ACCEPTANCE.get(number, (title, True))[1]
                ACCEPTANCE[number] = (title, ok)
                print(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")

        return run

    return wrap


def apply(matrix, x):
    return tuple(dot(row, x) for row in matrix)


def op_orthogonal_brute(T, A, domain_vertices, codomain_facets):
    """``||T + t A|| >= ||T||`` for all t, via the pieces ``t -> g(Tv) + t g(Av)``."""
    pieces_T, pieces_A = [], []
    for v in domain_vertices:
        tv, av = apply(T, v), apply(A, v)
        for g in codomain_facets:
            pieces_T.append(dot(g, tv))
            pieces_A.append(dot(g, av))
    N = max(pieces_T)
    # line_min over "facets" (a, b) evaluated at (1, 0) + t (0, 1)
    value, _ = line_min(list(zip(pieces_T, pieces_A)), (1, 0), (0, 1))
    return value >= N


def linf_facets(d):
    return [tuple((s if j == i else 0) for j in range(d)) for i in range(d) for s in (1, -1)]


def l1_facets(d):
    return list(itertools.product((1, -1), repeat=d))


def sampled_cover_misses(S, family, rng, count):
    return sum(
        not any(polyhedral_orthogonal(S.facets, x, y) for x in family)
        for y in (rand_vector(rng, S.dim, 50, 1) for _ in range(count))
    )


@criterion(1, "example: l1^2 -> linf^3, M_T, components, counterexample")
def test_criterion_01_example_l1_to_linf():
    m = [[1, 0], [0, 1], [HALF, HALF]]
    T = Operator(m, build_named("l1:2"), build_named("linf:3"))
    l1_verts = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    assert op_norm(T) == 1 == brute_op_norm(m, l1_verts, linf_norm)
    M = norm_attainment_set(T)
    points = {v for c in M.cells for v in c.sample_vertices}
    assert M.is_finite and points == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    # the edges of the l1 ball drop below the norm in their interior
    assert linf_norm(apply(m, (HALF, HALF))) < 1 and linf_norm(apply(m, (HALF, -HALF))) < 1
    assert mt_projective_components(T)[1] == 2
    assert bs_check_2d(T) is False
    con = build_counterexample(T, CounterexampleSpec(((1, 0), (0, 1))))
    A = con.operator
    assert op_is_bj_orthogonal(T, A) and op_bj_oracle(T, A)
    assert op_orthogonal_brute(m, A.matrix, l1_verts, linf_facets(3))
    assert witness_exists(T, A) is None
    for x in points:
        assert not polyhedral_orthogonal(linf_facets(3), apply(m, x), apply(A.matrix, x))


@criterion(2, "euclidean codomain: M_T is the cube, counterexample with alpha = beta = 1")
def test_criterion_02_euclidean_codomain():
    m = [[HALF, 0, 0], [0, HALF, 0], [0, 0, HALF]]
    T = Operator(m, build_named("linf:3"), build_named("euclid:3"))

    def sq(v):
        return dot(v, v)

    assert op_norm(T) == F(3, 4) == brute_op_norm(m, CUBE, sq)
    M = norm_attainment_set(T)
    assert M.is_finite and {v for c in M.cells for v in c.sample_vertices} == set(CUBE)
    con = build_counterexample(T, CounterexampleSpec(CUBE_BASIS, (1,), (1,)))
    assert all(con.checks.values())
    A = con.operator.matrix
    # every cube vertex attains the norm, so ||T + tA||^2 = max_v (N + 2t c_v + t^2 |Av|^2)
    cs = [dot(apply(m, v), apply(A, v)) for v in CUBE]
    assert min(cs) < 0 < max(cs)
    for k in range(-400, 401):
        t = F(k, 40)
        assert max(sq(tuple(a + t * b for a, b in zip(apply(m, v), apply(A, v)))) for v in CUBE) >= F(3, 4)
    assert all(c != 0 for c in cs)  # no Tx orthogonal to Ax on M_T


@criterion(3, "polygons with 2n vertices: P_(n-1) holds, P_n fails, LP budget")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_criterion_03_polygon_sandwich(n):
    rng = random.Random(300 + n)
    S = build_named(f"polygon:{2 * n}")
    assert validate(S) == [] and len(S.vertices) == 2 * n
    classes = vertex_classes(S)
    assert len(classes) == n
    lower = has_property_pn(S, n - 1)
    upper = has_property_pn(S, n)
    assert lower.has_pn and not upper.has_pn
    assert set(upper.covering_family) == set(classes)
    # n subfamilies of size n - 1 with 2^(n-2) sign patterns, then one family with 2^(n-1)
    assert lower.lp_calls + upper.lp_calls <= n * 2 ** (n - 2) + 2 ** (n - 1)
    for fam, w in lower.family_witnesses:
        assert not any(polyhedral_orthogonal(S.facets, x, w) for x in fam)
    assert sampled_cover_misses(S, classes, rng, 300) == 0


@criterion(4, "linf^n and l1^n lack P_2 via lifted covering pairs")
def test_criterion_04_sum_lifting():
    rng = random.Random(400)
    for kind, n, base, S, pair, lifted in lifted_pairs():
        facets = linf_facets(n) if kind == "linf" else l1_facets(n)
        assert set(map(tuple, S.facets)) == {tuple(map(F, f)) for f in facets}
        assert covers(S, lifted).covered
        assert not has_property_pn(S, 2).has_pn
        assert sampled_cover_misses(S, lifted, rng, 200) == 0
        if n == 2:
            continue
        base_facets = linf_facets(2) if kind == "linf" else l1_facets(2)
        for _ in range(1000):
            y, w = rand_vector(rng, 2, 12, 3, False), rand_vector(rng, n - 2, 12, 3, False)
            for x, xl in zip(pair, lifted):
                if polyhedral_orthogonal(base_facets, x, y):
                    assert is_bj_orthogonal(S, xl, y + w)
                    assert polyhedral_orthogonal(facets, xl, y + w)


@criterion(5, "prisms: v1 and v(n+1) cover; closed-form norm of prism:2")
def test_criterion_05_prism():
    rng = random.Random(500)
    coeffs = prism_formula_coefficients(2)
    assert {(abs(a), abs(b)) for a, b in coeffs} == {(1, 1)}
    S2 = build_named("prism:2")
    for _ in range(1000):
        x, y, z = rand_vector(rng, 3, 30, 7, False)
        closed = max([a * abs(x) + b * abs(y) for a, b in coeffs] + [abs(z)])
        assert closed == norm(S2, (x, y, z)) == facet_norm(S2.facets, (x, y, z))
    for n in (2, 3, 4, 5):
        S = build_named(f"prism:{n}")
        assert validate(S) == []
        assert covers(S, [(1, 0, 1), (-1, 0, 1)]).covered
        assert sampled_cover_misses(S, [(1, 0, 1), (-1, 0, 1)], rng, 200) == 0


@criterion(6, "glued pyramids: closed-form norm, covering pair, min covering number 2")
def test_criterion_06_glued_pyramids():
    rng = random.Random(600)
    S = build_named("glued_pyramids")
    assert validate(S) == []
    for _ in range(1000):
        p = rand_vector(rng, 3, 30, 7, False)
        assert glued_pyramids_norm(p) == norm(S, p)
    fam = [(1, 1, 1), (1, -1, 1)]
    assert covers(S, fam).covered
    assert sampled_cover_misses(S, fam, rng, 500) == 0
    m, family = min_covering_number(S)
    assert m == 2 and covers(S, family).covered
    for v in S.vertices:
        assert not covers(S, [v]).covered


@criterion(7, "elongated bipyramid: P_2 holds, P_3 fails, membership predicates")
@pytest.mark.parametrize("n", [3, 4])
def test_criterion_07_bipyramid(n):
    rng = random.Random(700 + n)
    S = build_named(f"bipyramid_prism:{n}")
    assert validate(S) == []
    k = len(vertex_classes(S))
    p2 = has_property_pn(S, 2)
    assert p2.has_pn and p2.families_checked == k * (k - 1) // 2
    for fam, w in p2.family_witnesses:
        assert not any(polyhedral_orthogonal(S.facets, x, w) for x in fam)
    assert not has_property_pn(S, 3).has_pn
    assert covers(S, BIPYRAMID_FAMILY).covered
    assert sampled_cover_misses(S, BIPYRAMID_FAMILY, rng, 300) == 0
    t, normals = bipyramid_slope(S), base_normals_q1(S)
    for i in range(1000):
        p = rand_vector(rng, 3, 4 if i % 2 else 40, 3, False)
        assert v1_predicate(t, p) == is_bj_orthogonal(S, (1, 0, 1), p)
        assert w1_predicate(normals, p) == is_bj_orthogonal(S, (0, 0, 2), p)


@criterion(8, "operator into bipyramid-prism:4: M_T edges, two image classes, corollary")
def test_criterion_08_bipyramid_operator():
    m = [[HALF, HALF, 0], [-HALF, HALF, 0], [0, 1, 0]]
    Y = build_named("bipyramid_prism:4")
    T = Operator(m, build_named("linf:3"), Y)
    assert op_norm(T) == 1 == brute_op_norm(m, CUBE, lambda v: facet_norm(Y.facets, v))
    M = norm_attainment_set(T)
    edges = {frozenset(c.sample_vertices) for c in M.maximal_cells}
    expected = {
        frozenset({(F(a), F(b), F(1)), (F(a), F(b), F(-1))})
        for a, b in ((1, 1), (-1, -1), (-1, 1), (1, -1))
    }
    assert edges == expected and all(c.dim == 1 for c in M.maximal_cells)
    # brute: exactly those cube vertices attain the norm
    attaining = {v for v in CUBE if facet_norm(Y.facets, apply(m, v)) == 1}
    assert attaining == {v for v in CUBE if v[0] == v[1] or v[0] == -v[1]}
    classes = {w for w, _ in image_classes(T, M)}
    assert classes == {(1, 0, 1), (0, 1, 1)}
    res = corollary_pn_bs(T, 2, CounterexampleSpec(CUBE_BASIS, (-10,), (F(-3, 2),)))
    assert res.violates
    checks = res.construction.checks
    assert checks["op_is_bj_orthogonal"] and checks["op_bj_oracle"] and checks["no_witness"]
    A = res.operator
    assert op_orthogonal_brute(m, A.matrix, CUBE, Y.facets)


@criterion(9, "oracle equivalence: 10000 point triples, 1000 operator pairs")
def test_criterion_09_oracle_equivalence():
    r = run_scenario("oracle-equivalence")
    assert r.error is None, r.details.get("traceback")
    assert r.details["point_disagreements"] == 0
    assert r.details["operator_disagreements"] == 0
    assert r.passed
    # the sample must exercise both answers
    assert 0 < r.details["point_orthogonal"] < 10000
    assert 0 < r.details["operator_orthogonal"] < 1000


@criterion(10, "coverage soundness: 10000 directions per covered verdict")
def test_criterion_10_coverage_soundness():
    r = run_scenario("coverage-soundness")
    assert r.error is None, r.details.get("traceback")
    assert r.passed
    verdicts = r.details["verdicts"]
    assert "covered" in verdicts.values() and "not_covered" in verdicts.values()
