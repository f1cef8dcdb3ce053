"""Bhatia-Semrl (BS) property questions for an operator ``T``.

* witness search: given ``A`` with ``T`` orthogonal to ``A``, look for
  ``x`` in ``M_T`` with ``Tx`` orthogonal to ``Ax``;
* rank-one counterexample operators ``A = z (x) k`` that defeat every
  candidate witness, together with their independent verification;
* the two-dimensional decision procedures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BJError, ConditionViolation, CounterexampleError, InputError, UnsupportedInstance
from .geometry import ONE, ZERO, dot, lp_solve, rank, scale, solve_linear, vec
from .operators import (
    MTComplex,
    Operator,
    _check_pair,
    image_classes,
    in_mt,
    mt_components,
    mt_projective_components,
    norm_attainment_set,
    op_bj_oracle,
    op_is_bj_orthogonal,
    same_space,
)
from .orthogonality import bj_oracle, covers, has_property_pn, in_plus_set, is_bj_orthogonal
from .parallel import ordered_map
from .space import EUCLIDEAN, norm


@dataclass(frozen=True)
class CounterexampleSpec:
    basis: tuple
    alphas: tuple = ()
    betas: tuple = ()
    z: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(vec(b) for b in self.basis))
        object.__setattr__(self, "alphas", vec(self.alphas))
        object.__setattr__(self, "betas", vec(self.betas))
        if self.z is not None:
            object.__setattr__(self, "z", vec(self.z))


@dataclass(frozen=True)
class BSVerdict:
    t_orth_a: bool
    witness: tuple | None
    conclusion: str  # "satisfies_bs_instance" | "violates_bs"


# ---------------------------------------------------------------------------
# witness search


def _verify_witness(T: Operator, A: Operator, x, M: MTComplex):
    Y = T.codomain
    tx, ax = T.apply(x), A.apply(x)
    ok = in_mt(T, x, M) and is_bj_orthogonal(Y, tx, ax) and bj_oracle(Y, tx, ax)
    if not ok:
        raise BJError(f"witness {x} failed independent re-verification")
    return x


def _cell_tasks(T: Operator, A: Operator, cell):
    """Feasibility LPs whose solutions are witnesses inside ``cell``."""
    Y = T.codomain
    if Y.kind == EUCLIDEAN:
        # <w, Ax> = 0 over the cell, w the constant image
        form = tuple(dot(Y.gram_apply(cell.image), col) for col in zip(*A.matrix))
        return [cell.carrier.with_constraints(equalities=((form, ZERO),))]
    forms = [tuple(dot(g, col) for col in zip(*A.matrix)) for g in cell.active_codomain]
    tasks = []
    for fi, fj in itertools.product(forms, repeat=2):
        if fi == fj and len(forms) > 1:
            continue
        tasks.append(
            cell.carrier.with_constraints(
                inequalities=((fi, ZERO), (tuple(-a for a in fj), ZERO))
            )
        )
    return tasks


def _vertex_witness(T: Operator, A: Operator, cell):
    Y = T.codomain
    for v in cell.sample_vertices:
        if is_bj_orthogonal(Y, T.apply(v), A.apply(v)):
            return v
    return None


def witness_exists(T: Operator, A: Operator, M: MTComplex | None = None):
    """First ``x`` in ``M_T`` (canonical cell order) with ``Tx`` orthogonal to ``Ax``, or ``None``.

    On the relative interior of a cell the active codomain facets are exactly
    the cell's common active set, so a point there is a witness iff two of
    those facets (possibly the same one) take values ``<= 0`` and ``>= 0`` at
    ``Ax``.  The cells cover ``M_T``, so the search is exhaustive.
    """
    _check_pair(T, A)
    M = M or norm_attainment_set(T)
    dim = T.domain.dim
    for cell in M.cells:
        v = _vertex_witness(T, A, cell)
        if v is not None:
            return _verify_witness(T, A, v, M)
        if cell.dim == 0:
            continue
        outcomes = ordered_map(lambda P: lp_solve((ZERO,) * dim, P), _cell_tasks(T, A, cell))
        for out in outcomes:
            if out.optimal:
                return _verify_witness(T, A, out.witness, M)
    return None


def check_bs_instance(T: Operator, A: Operator) -> BSVerdict:
    orth = op_is_bj_orthogonal(T, A)
    w = witness_exists(T, A)
    conclusion = "violates_bs" if orth and w is None else "satisfies_bs_instance"
    return BSVerdict(orth, w, conclusion)


# ---------------------------------------------------------------------------
# counterexample construction


def find_nonorthogonal_direction(T: Operator, M: MTComplex | None = None):
    """A codomain point ``z`` to which no image ``Tx`` (x in ``M_T``) is orthogonal.

    Returns ``None`` when the orthogonality sets of the images cover the codomain.
    """
    M = M or norm_attainment_set(T)
    if not M.all_constant:
        raise UnsupportedInstance("T is not constant on every cell of M_T, so T(M_T) is infinite")
    reps = [w for w, _ in image_classes(T, M)]
    cert = covers(T.codomain, reps)
    return None if cert.covered else cert.witness


@dataclass(frozen=True)
class Construction:
    operator: Operator
    case: str  # "I" (z on the same side for Tx1, Tx2) or "II"
    z: tuple
    functional: tuple  # A = z (x) functional
    checks: dict = field(default_factory=dict)


def _select_case(T: Operator, x1, x2, z) -> str:
    Y = T.codomain
    s1 = in_plus_set(Y, T.apply(x1), z)
    s2 = in_plus_set(Y, T.apply(x2), z)
    return "I" if s1 == s2 else "II"


def build_counterexample(T: Operator, spec: CounterexampleSpec, M: MTComplex | None = None) -> Construction:
    """Build and verify the rank-one operator ``A = z (x) k``.

    ``k`` is fixed on the basis: ``k(x1) = 1``, ``k(x2) = -1`` and
    ``k(x_i) = beta_i`` when ``z`` lies strictly on the same side of ``Tx1``
    and ``Tx2``; otherwise ``k(x2) = 1`` and ``k(x_i) = alpha_i``.  Then
    ``Ax = k(x) z`` and a nonvanishing ``k`` on ``M_T`` rules out every witness.
    """
    X, Y = T.domain, T.codomain
    n = X.dim
    M = M or norm_attainment_set(T)
    basis = spec.basis
    if len(basis) != n or any(len(b) != n for b in basis):
        raise InputError(f"basis must consist of {n} vectors of length {n}")
    if rank(basis) != n:
        raise InputError("basis vectors are linearly dependent")
    x1, x2 = basis[0], basis[1]
    for name, x in (("x1", x1), ("x2", x2)):
        if not in_mt(T, x, M):
            raise ConditionViolation(f"{name} = {x} does not attain the operator norm")
    if not M.all_constant:
        raise ConditionViolation("T(M_T) is infinite: some cell of M_T has a non-constant image")

    z = spec.z if spec.z is not None else find_nonorthogonal_direction(T, M)
    if z is None:
        raise UnsupportedInstance(
            "construction inapplicable: the images' orthogonality sets cover the codomain"
        )
    if len(z) != Y.dim:
        raise InputError(f"z must have length {Y.dim}")
    for w, _ in image_classes(T, M):
        if is_bj_orthogonal(Y, w, z):
            raise ConditionViolation(f"image {w} is orthogonal to z = {z}")

    case = _select_case(T, x1, x2, z)
    extra = spec.betas if case == "I" else spec.alphas
    if len(extra) != n - 2:
        which = "betas" if case == "I" else "alphas"
        raise InputError(f"case {case} needs {n - 2} {which}, got {len(extra)}")
    coeffs = (ONE, -ONE if case == "I" else ONE) + tuple(extra)
    k = solve_linear(basis, coeffs)

    # the coefficient k(u) must keep one strict sign on every cell
    for cell in M.cells:
        vals = [dot(k, v) for v in cell.sample_vertices]
        if not (all(c > 0 for c in vals) or all(c < 0 for c in vals)):
            raise ConditionViolation(
                f"case {case}: coefficient functional vanishes on the cell spanned by "
                f"{list(cell.sample_vertices)} (values {vals})"
            )

    A = Operator(tuple(tuple(zi * kj for kj in k) for zi in z), X, Y, label=f"counterexample-case-{case}")
    checks = {
        "op_is_bj_orthogonal": op_is_bj_orthogonal(T, A),
        "op_bj_oracle": op_bj_oracle(T, A),
        "no_witness": witness_exists(T, A, M) is None,
    }
    if not all(checks.values()):
        raise CounterexampleError(f"constructed operator failed verification: {checks}")
    return Construction(A, case, tuple(z), k, checks)


def construct_counterexample(T: Operator, spec: CounterexampleSpec) -> Operator:
    return build_counterexample(T, spec).operator


# ---------------------------------------------------------------------------
# two-dimensional procedures and the P_m corollary


def bs_check_2d(T: Operator) -> bool:
    """BS property for a 2-dimensional domain: ``M_T`` is projectively connected."""
    return mt_projective_components(T)[1] == 1


def _normalized(S, x):
    return scale(1 / norm(S, x), x)


def midpoint_pair(T: Operator):
    """Attaining vertices ``x != +-y`` whose normalised sum and difference both miss ``M_T``."""
    if T.domain.dim != 2:
        raise InputError("the midpoint predicate needs a 2-dimensional domain")
    X = T.domain
    M = norm_attainment_set(T)
    pts = sorted({v for c in M.cells for v in c.sample_vertices}, reverse=True)
    for x, y in itertools.combinations(pts, 2):
        if x == tuple(-a for a in y):
            continue
        s = _normalized(X, tuple(a + b for a, b in zip(x, y)))
        d = _normalized(X, tuple(a - b for a, b in zip(x, y)))
        if not in_mt(T, s, M) and not in_mt(T, d, M):
            return x, y
    return None


def corollary_midpoint_predicate(T: Operator) -> bool:
    pair = midpoint_pair(T)
    if pair is not None and bs_check_2d(T):
        raise BJError(f"midpoint pair {pair} found for an operator with connected M_T")
    return pair is not None


@dataclass(frozen=True)
class CorollaryResult:
    status: str  # "violates_bs" | "construction_failed" | "inconclusive"
    operator: Operator | None = None
    construction: Construction | None = None
    reasons: tuple = ()
    hypotheses: dict = field(default_factory=dict)

    @property
    def violates(self) -> bool:
        return self.status == "violates_bs"


def corollary_pn_bs(T: Operator, m: int, spec: CounterexampleSpec) -> CorollaryResult:
    """Constructive BS failure from ``|M_T| >= 4``, at most ``m`` image classes and P_m.

    Only ever reports a violation with a verified operator; a failed or
    uncheckable hypothesis yields ``inconclusive``, never a positive verdict.
    """
    if m < 1:
        raise InputError("m must be a positive integer")
    M = norm_attainment_set(T)
    hyp = {}
    reasons = []
    count = M.point_count
    hyp["mt_at_least_4"] = count is None or count >= 4
    if not hyp["mt_at_least_4"]:
        reasons.append(f"|M_T| = {count} < 4")
    hyp["finite_image"] = M.all_constant
    if not M.all_constant:
        reasons.append("T is not constant on some cell of M_T")
    classes = image_classes(T, M)
    hyp["image_classes_at_most_m"] = M.all_constant and len(classes) <= m
    if M.all_constant and len(classes) > m:
        reasons.append(f"{len(classes)} image classes exceed m = {m}")
    hyp["codomain_has_pm"] = has_property_pn(T.codomain, m).has_pn
    if not hyp["codomain_has_pm"]:
        reasons.append(f"codomain lacks Property P_{m}")
    if reasons:
        return CorollaryResult("inconclusive", reasons=tuple(reasons), hypotheses=hyp)
    try:
        con = build_counterexample(T, spec, M)
    except (ConditionViolation, UnsupportedInstance, InputError) as exc:
        return CorollaryResult("inconclusive", reasons=(str(exc),), hypotheses=hyp)
    except CounterexampleError as exc:
        return CorollaryResult("construction_failed", reasons=(str(exc),), hypotheses=hyp)
    hyp["construction_verified"] = True
    return CorollaryResult("violates_bs", con.operator, con, (), hyp)


def bs_status(T: Operator) -> str:
    """``satisfies`` / ``violates`` / ``unknown`` from the shape of ``M_T`` alone.

    Projective connectedness is sufficient in every finite dimension for an
    operator on a single space; it is also necessary in dimension 2.
    """
    if T.domain.dim == 2:
        return "satisfies" if bs_check_2d(T) else "violates"
    _, projective = mt_components(T)
    if projective == 1 and same_space(T.domain, T.codomain):
        return "satisfies"
    return "unknown"
