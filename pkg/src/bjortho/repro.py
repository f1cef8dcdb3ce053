"""Reproduction scenarios: each one rebuilds a worked example or covering
instance from scratch and reports named boolean checks.

A scenario passes iff every check is true.  Exceptions are caught and
reported as a failure of the scenario that raised them.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction

from .bs_property import (
    CounterexampleSpec,
    bs_check_2d,
    build_counterexample,
    corollary_midpoint_predicate,
    corollary_pn_bs,
    find_nonorthogonal_direction,
    witness_exists,
)
from .geometry import ONE, ZERO, dot, neg
from .operators import (
    Operator,
    image_classes,
    mt_projective_components,
    norm_attainment_set,
    op_bj_oracle,
    op_is_bj_orthogonal,
    op_norm,
)
from .orthogonality import (
    active_functionals,
    bj_oracle,
    covers,
    has_property_pn,
    is_bj_orthogonal,
    min_covering_number,
    ortho_set,
    pn_lp_bound,
)
from .space import (
    Space,
    build_named,
    direct_sum,
    norm,
    rational_polygon_vertices,
    validate,
    vertex_classes,
)

SEED = 20240611

F = Fraction
HALF = F(1, 2)


@dataclass
class ScenarioResult:
    name: str
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    error: str | None = None
    timing_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.checks) and all(self.checks.values())


def _vset(points) -> set:
    return {tuple(p) for p in points}


def _space(name: str, checks: dict) -> Space:
    S = build_named(name)
    checks[f"{name} validates"] = validate(S) == []
    return S


# ---------------------------------------------------------------------------
# worked operator examples


def l1_to_linf_operator() -> Operator:
    return Operator([[1, 0], [0, 1], [HALF, HALF]], build_named("l1:2"), build_named("linf:3"), "l1-to-linf")


def cube_to_euclid_operator() -> Operator:
    m = [[HALF if i == j else ZERO for j in range(3)] for i in range(3)]
    return Operator(m, build_named("linf:3"), build_named("euclid:3"), "cube-to-euclid")


def cube_to_polygon_operator() -> Operator:
    Y = build_named("polygon:10")
    c, s = rational_polygon_vertices(10)[2]
    m = [[(1 - c) / 2, (1 + c) / 2, ZERO], [-s / 2, s / 2, ZERO]]
    return Operator(m, build_named("linf:3"), Y, "cube-to-polygon")


def cube_to_bipyramid_operator() -> Operator:
    m = [[HALF, HALF, ZERO], [-HALF, HALF, ZERO], [ZERO, ONE, ZERO]]
    return Operator(m, build_named("linf:3"), build_named("bipyramid_prism:4"), "cube-to-bipyramid")


CUBE_BASIS = ((1, 1, 1), (-1, 1, 1), (-1, -1, 1))


def _bs_verdict(checks: dict):
    """``False`` once a verified counterexample exists; ``None`` (undecided) otherwise."""
    return False if all(checks.values()) else None


def _edge_pairs(M) -> set:
    """Maximal cells as frozensets of their vertex points."""
    return {frozenset(c.sample_vertices) for c in M.maximal_cells}


def _vertical_edges(signs) -> set:
    return {
        frozenset({(F(a), F(b), ONE), (F(a), F(b), -ONE)}) for a, b in signs
    }


def scenario_l1_to_linf(r: ScenarioResult):
    T = l1_to_linf_operator()
    M = norm_attainment_set(T)
    r.checks["op_norm == 1"] = op_norm(T) == 1
    expected = _vset([(1, 0), (-1, 0), (0, 1), (0, -1)])
    r.checks["M_T == {+-(1,0), +-(0,1)}"] = M.is_finite and _vset(
        v for c in M.cells for v in c.sample_vertices
    ) == expected
    comps = mt_projective_components(T)
    r.checks["projective components == 2"] = comps[1] == 2
    r.checks["bs_check_2d is false"] = bs_check_2d(T) is False
    r.checks["midpoint predicate holds"] = corollary_midpoint_predicate(T)
    con = build_counterexample(T, CounterexampleSpec(((1, 0), (0, 1))), M)
    r.checks["T orthogonal to A"] = op_is_bj_orthogonal(T, con.operator)
    r.checks["oracle: T orthogonal to A"] = op_bj_oracle(T, con.operator)
    r.checks["no witness in M_T"] = witness_exists(T, con.operator, M) is None
    r.details.update(
        op_norm=op_norm(T),
        components=list(comps),
        counterexample=con.operator.matrix,
        case=con.case,
        z=con.z,
        bs_property=_bs_verdict(con.checks),
    )


def scenario_cube_to_euclid(r: ScenarioResult):
    T = cube_to_euclid_operator()
    M = norm_attainment_set(T)
    cube = _vset(build_named("linf:3").vertices)
    r.checks["op_norm^2 == 3/4"] = op_norm(T) == F(3, 4)
    r.checks["M_T == 8 cube vertices"] = M.is_finite and _vset(
        v for c in M.cells for v in c.sample_vertices
    ) == cube
    spec = CounterexampleSpec(CUBE_BASIS, (1,), (1,))
    con = build_counterexample(T, spec, M)
    r.checks["T orthogonal to A"] = op_is_bj_orthogonal(T, con.operator)
    r.checks["oracle: T orthogonal to A"] = op_bj_oracle(T, con.operator)
    r.checks["no witness in M_T"] = witness_exists(T, con.operator, M) is None
    classes = image_classes(T, M)
    cor = corollary_pn_bs(T, len(classes), spec)
    r.checks["corollary reports violation"] = cor.violates
    r.details.update(
        op_norm_squared=op_norm(T), case=con.case, z=con.z,
        counterexample=con.operator.matrix, bs_property=_bs_verdict(con.checks),
    )


def scenario_cube_to_polygon(r: ScenarioResult):
    T = cube_to_polygon_operator()
    Y = T.codomain
    M = norm_attainment_set(T)
    r.checks["polygon:10 validates"] = validate(Y) == []
    r.checks["op_norm == 1"] = op_norm(T) == 1
    r.checks["M_T == +-(1,1,z), +-(-1,1,z)"] = _edge_pairs(M) == _vertical_edges(
        [(1, 1), (-1, -1), (-1, 1), (1, -1)]
    ) and all(c.dim == 1 for c in M.maximal_cells)
    classes = [w for w, _ in image_classes(T, M)]
    r.checks["two image classes (1,0) and a vertex"] = len(classes) == 2 and (
        (ONE, ZERO) in classes and all(w in Y.vertex_index for w in classes)
    )
    r.checks["polygon:10 has P_4"] = has_property_pn(Y, 4).has_pn
    cor = corollary_pn_bs(T, 4, CounterexampleSpec(CUBE_BASIS, (-10,), (F(-3, 2),)))
    r.checks["corollary reports violation"] = cor.violates
    if cor.construction is not None:
        r.checks["constructed A verified"] = all(cor.construction.checks.values())
    r.details.update(
        image_classes=classes, status=cor.status,
        bs_property=False if cor.violates else None,
    )


def scenario_cube_to_bipyramid(r: ScenarioResult):
    T = cube_to_bipyramid_operator()
    M = norm_attainment_set(T)
    r.checks["bipyramid_prism:4 validates"] = validate(T.codomain) == []
    r.checks["op_norm == 1"] = op_norm(T) == 1
    r.checks["M_T == +-(1,1,z), +-(-1,1,z)"] = _edge_pairs(M) == _vertical_edges(
        [(1, 1), (-1, -1), (-1, 1), (1, -1)]
    ) and all(c.dim == 1 for c in M.maximal_cells)
    classes = [w for w, _ in image_classes(T, M)]
    r.checks["T(M_T) == +-(1,0,1), +-(0,1,1)"] = _vset(classes) == _vset([(1, 0, 1), (0, 1, 1)])
    z = find_nonorthogonal_direction(T, M)
    r.checks["non-orthogonal direction found"] = z is not None
    cor = corollary_pn_bs(T, 2, CounterexampleSpec(CUBE_BASIS, (-10,), (F(-3, 2),)))
    r.checks["corollary reports violation"] = cor.violates
    if cor.construction is not None:
        r.checks["T orthogonal to A"] = cor.construction.checks["op_is_bj_orthogonal"]
        r.checks["oracle: T orthogonal to A"] = cor.construction.checks["op_bj_oracle"]
        r.checks["no witness in M_T"] = cor.construction.checks["no_witness"]
    r.details.update(
        z=z, status=cor.status,
        case=cor.construction.case if cor.construction else None,
        bs_property=False if cor.violates else None,
    )


# ---------------------------------------------------------------------------
# Property P_n scenarios


def polygon_families():
    for n in (2, 3, 4, 5):
        S = build_named(f"polygon:{2 * n}")
        yield n, S, vertex_classes(S)


def scenario_polygon_pn(r: ScenarioResult):
    calls = {}
    for n, S, classes in polygon_families():
        r.checks[f"polygon:{2 * n} validates"] = validate(S) == [] and len(S.vertices) == 2 * n
        lower = has_property_pn(S, n - 1)
        upper = has_property_pn(S, n)
        r.checks[f"polygon:{2 * n} has P_{n - 1}"] = lower.has_pn
        r.checks[f"polygon:{2 * n} lacks P_{n}"] = not upper.has_pn
        r.checks[f"polygon:{2 * n} covering family is all vertex classes"] = (
            upper.covering_family is not None and _vset(upper.covering_family) == _vset(classes)
        )
        used = lower.lp_calls + upper.lp_calls
        bound = pn_lp_bound(S, n - 1) + pn_lp_bound(S, n)
        r.checks[f"polygon:{2 * n} LP calls within bound"] = used <= bound
        calls[f"polygon:{2 * n}"] = [used, bound]
    r.details["lp_calls"] = calls


def lifted_pairs():
    """Covering pairs of l_inf^n and l_1^n obtained from the planar pair by direct sums."""
    out = []
    for n in (2, 3, 4):
        for kind, mode, pair in (
            ("linf", "inf", ((ONE, ONE), (ONE, -ONE))),
            ("l1", "one", ((ONE, ZERO), (ZERO, ONE))),
        ):
            base = build_named(f"{kind}:2")
            S = base if n == 2 else direct_sum(base, build_named(f"{kind}:{n - 2}"), mode)
            lifted = tuple(p + (ZERO,) * (n - 2) for p in pair)
            out.append((kind, n, base, S, pair, lifted))
    return out


def scenario_sum_lifting(r: ScenarioResult):
    rng = random.Random(SEED)
    for kind, n, base, S, pair, lifted in lifted_pairs():
        tag = f"{kind}:{n}"
        ref = build_named(tag)
        r.checks[f"{tag} equals the direct sum"] = (
            _vset(ref.vertices) == _vset(S.vertices) and _vset(ref.facets) == _vset(S.facets)
        )
        r.checks[f"{tag} lifted pair covers"] = covers(S, lifted).covered
        r.checks[f"{tag} lacks P_2"] = not has_property_pn(S, 2).has_pn
        if n == 2:
            continue
        base_sets = [ortho_set(base, x) for x in pair]
        lifted_sets = [ortho_set(S, x) for x in lifted]
        bad = 0
        for _ in range(1000):
            y = tuple(F(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(2))
            w = tuple(F(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(n - 2))
            for bs, ls in zip(base_sets, lifted_sets):
                if bs.contains(y) and not ls.contains(y + w):
                    bad += 1
        r.checks[f"{tag} lifting inclusion on 1000 samples"] = bad == 0


def prism_formula_coefficients(n: int) -> list:
    """Exact ``(|cos a_j| / cos b, |sin a_j| / cos b)`` with ``a_j = (2j+1)pi/2n``, ``b = pi/2n``."""
    import sympy

    out = []
    for j in range(2 * n):
        a = sympy.pi * (2 * j + 1) / (2 * n)
        b = sympy.pi / (2 * n)
        cx = sympy.nsimplify(sympy.simplify(abs(sympy.cos(a)) / sympy.cos(b)))
        cy = sympy.nsimplify(sympy.simplify(abs(sympy.sin(a)) / sympy.cos(b)))
        if not (cx.is_Rational and cy.is_Rational):
            raise ValueError(f"prism:{n} norm coefficients are irrational")
        out.append((F(int(cx.p), int(cx.q)), F(int(cy.p), int(cy.q))))
    return out


def _random_point(rng, d, span=30, den=7):
    return tuple(F(rng.randint(-span, span), rng.randint(1, den)) for _ in range(d))


def scenario_prism(r: ScenarioResult):
    rng = random.Random(SEED + 1)
    S2 = _space("prism:2", r.checks)
    coeffs = prism_formula_coefficients(2)
    bad = 0
    for _ in range(1000):
        x, y, z = _random_point(rng, 3)
        closed = max([cx * abs(x) + cy * abs(y) for cx, cy in coeffs] + [abs(z)])
        bad += closed != norm(S2, (x, y, z))
    r.checks["prism:2 closed-form norm on 1000 points"] = bad == 0
    for n in (2, 3, 4, 5):
        S = S2 if n == 2 else _space(f"prism:{n}", r.checks)
        base = direct_sum(build_named(f"polygon:{2 * n}"), build_named("linf:1"), "inf")
        r.checks[f"prism:{n} is polygon:{2 * n} (+)inf R"] = _vset(base.vertices) == _vset(S.vertices)
        cert = covers(S, [(1, 0, 1), (-1, 0, 1)])
        r.checks[f"prism:{n} covered by v1, v(n+1)"] = cert.covered
        r.details[f"prism:{n} lp_calls"] = cert.lp_calls


def glued_pyramids_norm(p) -> Fraction:
    x, y, z = (abs(c) for c in p)
    return max(x, y, x / 2 + z / 2, y / 2 + z / 2)


def scenario_glued(r: ScenarioResult):
    rng = random.Random(SEED + 2)
    S = _space("glued_pyramids", r.checks)
    bad = sum(
        glued_pyramids_norm(p) != norm(S, p) for p in (_random_point(rng, 3) for _ in range(1000))
    )
    r.checks["closed-form norm on 1000 points"] = bad == 0
    r.checks["(1,1,1), (1,-1,1) cover"] = covers(S, [(1, 1, 1), (1, -1, 1)]).covered
    m, fam = min_covering_number(S)
    r.checks["min covering number == 2"] = m == 2
    r.details.update(min_covering_number=m, family=fam)


def bipyramid_slope(S: Space) -> Fraction:
    """``t`` with ``(1, t, 0)`` the side facet through ``(1, 0, +-1)`` and ``y > 0``."""
    for f in S.facets:
        if f[0] == 1 and f[1] > 0 and f[2] == 0:
            return f[1]
    raise ValueError("no side facet through (1,0,1)")


def base_normals_q1(S: Space) -> list:
    """Planar parts ``(a, b)``, ``a, b >= 0``, of the side facets."""
    return [(f[0], f[1]) for f in S.facets if f[2] == 0 and f[0] >= 0 and f[1] >= 0]


def v1_predicate(t: Fraction, p) -> bool:
    """Closed-form membership in the orthogonality set of ``(1, 0, 1)``."""

    def upper(x, y, z):
        if z < 0:
            return False
        return (
            (x >= 0 and y >= 0 and x - t * y <= 0)
            or (x <= 0 and y >= 0 and x + t * y + z >= 0)
            or (x <= 0 and y <= 0 and x - t * y + z >= 0)
            or (x >= 0 and y <= 0 and x + t * y <= 0)
        )

    return upper(*p) or upper(*neg(p))


def w1_predicate(normals: list, p) -> bool:
    """Closed-form membership in the orthogonality set of ``(0, 0, 2)``."""

    def upper(x, y, z):
        if z < 0:
            return False
        return (
            (x >= 0 and y >= 0 and any(z <= a * x + b * y for a, b in normals))
            or (x <= 0 and y >= 0 and any(z <= -a * x + b * y for a, b in normals))
            or (x <= 0 and y <= 0 and any(z <= -a * x - b * y for a, b in normals))
            or (x >= 0 and y <= 0 and any(z <= a * x - b * y for a, b in normals))
        )

    return upper(*p) or upper(*neg(p))


BIPYRAMID_FAMILY = ((1, 0, 1), (-1, 0, 1), (0, 0, 2))


def scenario_bipyramid(r: ScenarioResult):
    rng = random.Random(SEED + 3)
    for n in (3, 4):
        tag = f"bipyramid_prism:{n}"
        S = _space(tag, r.checks)
        p2 = has_property_pn(S, 2)
        r.checks[f"{tag} has P_2 (all pairs checked)"] = p2.has_pn and p2.families_checked == len(
            vertex_classes(S)
        ) * (len(vertex_classes(S)) - 1) // 2
        r.checks[f"{tag} lacks P_3"] = not has_property_pn(S, 3).has_pn
        r.checks[f"{tag} (1,0,1), (-1,0,1), (0,0,2) cover"] = covers(S, BIPYRAMID_FAMILY).covered
        t = bipyramid_slope(S)
        normals = base_normals_q1(S)
        bad_v = bad_w = 0
        for k in range(1000):
            span = 4 if k % 2 else 40
            p = _random_point(rng, 3, span, 3)
            bad_v += v1_predicate(t, p) != is_bj_orthogonal(S, (1, 0, 1), p)
            bad_w += w1_predicate(normals, p) != is_bj_orthogonal(S, (0, 0, 2), p)
        r.checks[f"{tag} v1 predicate agrees on 1000 points"] = bad_v == 0
        r.checks[f"{tag} w1 predicate agrees on 1000 points"] = bad_w == 0
        r.details[f"{tag} P_2 lp_calls"] = p2.lp_calls


# ---------------------------------------------------------------------------
# oracle equivalence and coverage soundness


ORACLE_SPACES = (
    "l1:2", "l1:3", "linf:2", "linf:3", "polygon:6", "polygon:10", "prism:2",
    "prism:3", "glued_pyramids", "bipyramid_prism:3", "bipyramid_prism:4", "euclid:3",
)


def _sample_sphere_point(rng, S: Space):
    """A random point of a random face (or a random vector for Euclidean spaces)."""
    if not S.is_polyhedral or rng.random() < 0.2:
        while True:
            x = _random_point(rng, S.dim, 9, 4)
            if any(x):
                return x
    face = rng.choice(S.faces)
    weights = [F(rng.randint(1, 5)) for _ in face]
    total = sum(weights)
    pt = [ZERO] * S.dim
    for w, i in zip(weights, face):
        pt = [a + w / total * b for a, b in zip(pt, S.vertices[i])]
    return tuple(pt)


def _sample_direction(rng, S: Space, x):
    y = _random_point(rng, S.dim, 9, 4)
    if rng.random() < 0.5:
        # push y onto the boundary of x's orthogonality set
        if S.is_polyhedral:
            f = rng.choice(active_functionals(S, x))
            y = tuple(a - dot(f, y) / dot(f, x) * b for a, b in zip(y, x))
        else:
            g = S.gram_apply(x)
            y = tuple(a - dot(g, y) / dot(g, x) * b for a, b in zip(y, x))
    return y


def _random_operator(rng, X: Space, Y: Space) -> Operator:
    while True:
        m = [[F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(X.dim)] for _ in range(Y.dim)]
        T = Operator(m, X, Y)
        if not T.is_zero:
            return T


OPERATOR_PAIRS = (
    ("prism:2", "prism:2"),
    ("l1:2", "linf:3"),
    ("linf:2", "polygon:6"),
    ("linf:3", "euclid:3"),
    ("linf:2", "linf:2"),
)


def operator_pair_samples(count: int, seed: int = SEED + 5):
    rng = random.Random(seed)
    for k in range(count):
        X, Y = (build_named(s) for s in OPERATOR_PAIRS[k % len(OPERATOR_PAIRS)])
        T = _random_operator(rng, X, Y)
        A = _random_operator(rng, X, Y)
        if rng.random() < 0.5:
            # shift A so one active pair evaluates to zero
            N = op_norm(T)
            v = rng.choice([v for v in X.vertices if norm(Y, T.apply(v)) == N])
            if Y.is_polyhedral:
                g = rng.choice(active_functionals(Y, T.apply(v)))
                c = dot(g, A.apply(v)) / dot(g, T.apply(v))
            else:
                c = Y.inner(T.apply(v), A.apply(v)) / Y.inner(T.apply(v), T.apply(v))
            A = A.plus(T, -c)
        yield T, A


def scenario_oracle(r: ScenarioResult, triples: int = 10000, pairs: int = 1000):
    rng = random.Random(SEED + 4)
    spaces = [build_named(s) for s in ORACLE_SPACES]
    disagree = orth = 0
    for k in range(triples):
        S = spaces[k % len(spaces)]
        x = _sample_sphere_point(rng, S)
        y = _sample_direction(rng, S, x)
        a = is_bj_orthogonal(S, x, y)
        orth += a
        disagree += a != bj_oracle(S, x, y)
    r.checks[f"point oracle agrees on {triples} triples"] = disagree == 0
    op_disagree = op_orth = 0
    for T, A in operator_pair_samples(pairs):
        a = op_is_bj_orthogonal(T, A)
        op_orth += a
        op_disagree += a != op_bj_oracle(T, A)
    r.checks[f"operator oracle agrees on {pairs} pairs"] = op_disagree == 0
    r.details.update(
        point_disagreements=disagree, point_orthogonal=orth,
        operator_disagreements=op_disagree, operator_orthogonal=op_orth,
    )


def coverage_verdicts():
    """``(label, space, family, certificate)`` for every coverage question of the P_n scenarios."""
    out = []
    for n, S, classes in polygon_families():
        out.append((f"polygon:{2 * n} all classes", S, classes, covers(S, classes)))
        out.append((f"polygon:{2 * n} minus one class", S, classes[:-1], covers(S, classes[:-1])))
    for kind, n, _, S, _, lifted in lifted_pairs():
        out.append((f"{kind}:{n} lifted pair", S, lifted, covers(S, lifted)))
    for n in (2, 3, 4, 5):
        S = build_named(f"prism:{n}")
        fam = [(1, 0, 1), (-1, 0, 1)]
        out.append((f"prism:{n} pair", S, fam, covers(S, fam)))
    G = build_named("glued_pyramids")
    for fam in ([(1, 1, 1), (1, -1, 1)], [(1, 1, 1), (0, 0, 2)]):
        out.append((f"glued_pyramids {fam}", G, fam, covers(G, fam)))
    for n in (3, 4):
        S = build_named(f"bipyramid_prism:{n}")
        out.append((f"bipyramid_prism:{n} triple", S, BIPYRAMID_FAMILY, covers(S, BIPYRAMID_FAMILY)))
        fam = BIPYRAMID_FAMILY[:2]
        out.append((f"bipyramid_prism:{n} pair", S, fam, covers(S, fam)))
    T = cube_to_bipyramid_operator()
    reps = [w for w, _ in image_classes(T, norm_attainment_set(T))]
    out.append(("cube-to-bipyramid image classes", T.codomain, reps, covers(T.codomain, reps)))
    return out


def random_directions(rng, d: int, count: int):
    for k in range(count):
        span = 3 if k % 4 == 0 else 1000
        while True:
            y = tuple(rng.randint(-span, span) for _ in range(d))
            if any(y):
                yield y
                break


def scenario_coverage(r: ScenarioResult, directions: int = 10000):
    rng = random.Random(SEED + 6)
    summary = {}
    for label, S, fam, cert in coverage_verdicts():
        sets = [ortho_set(S, x) for x in fam]
        if cert.covered:
            misses = sum(
                not any(s.contains(y) for s in sets) for y in random_directions(rng, S.dim, directions)
            )
            r.checks[f"{label}: covered, {directions} directions all caught"] = misses == 0
        else:
            w = cert.witness
            r.checks[f"{label}: witness avoids every set"] = not any(s.contains(w) for s in sets)
        summary[label] = cert.verdict
    r.details["verdicts"] = summary


SCENARIOS = {
    "example-2.1": (scenario_l1_to_linf, ("example", "bs", "2d")),
    "example-2.2": (scenario_cube_to_euclid, ("example", "bs", "euclid")),
    "polygon-pn-sandwich": (scenario_polygon_pn, ("pn", "polygon")),
    "sum-lifting-pn": (scenario_sum_lifting, ("pn", "lifting")),
    "prism": (scenario_prism, ("pn", "prism")),
    "glued-pyramids": (scenario_glued, ("pn",)),
    "bipyramid-pn": (scenario_bipyramid, ("pn", "bipyramid")),
    "example-2.3": (scenario_cube_to_polygon, ("example", "bs", "pn")),
    "example-2.4": (scenario_cube_to_bipyramid, ("example", "bs", "pn", "bipyramid")),
    "oracle-equivalence": (scenario_oracle, ("oracle",)),
    "coverage-soundness": (scenario_coverage, ("coverage", "pn")),
}

ALIASES = {"2.1": "example-2.1", "2.2": "example-2.2", "2.3": "example-2.3", "2.4": "example-2.4",
           "bipyramid": "bipyramid-pn"}


def resolve(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in SCENARIOS:
        raise KeyError(name)
    return name


def run_scenario(name: str) -> ScenarioResult:
    name = resolve(name)
    fn, _ = SCENARIOS[name]
    result = ScenarioResult(name)
    start = time.perf_counter()
    try:
        fn(result)
    except Exception as exc:  # reported as a named failure, never swallowed silently
        result.error = f"{type(exc).__name__}: {exc}"
        result.details["traceback"] = traceback.format_exc(limit=4)
    result.timing_ms = int((time.perf_counter() - start) * 1000)
    return result


def select(filter_text: str | None = None) -> list:
    if not filter_text:
        return list(SCENARIOS)
    return [n for n, (_, tags) in SCENARIOS.items() if filter_text in n or filter_text in tags]


def repro_suite(filter_text: str | None = None) -> list:
    return [run_scenario(n) for n in select(filter_text)]
