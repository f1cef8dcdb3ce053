"""Linear operators between spaces: operator norm, the norm attainment set as
a complex of faces of the domain ball, operator orthogonality, and the
component structure of the attainment set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UnsupportedInstance
from .geometry import (
    HPolytope,
    ONE,
    ZERO,
    canonical_sign,
    dot,
    is_zero,
    lp_solve,
    vec,
    vertex_enumeration,
)
from .space import EUCLIDEAN, Space, norm, vertex_classes


@dataclass(frozen=True, eq=False)
class Operator:
    """A rational matrix (codomain rows x domain columns) between two spaces."""

    matrix: tuple
    domain: Space
    codomain: Space
    label: str = ""

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.codomain.dim or any(len(r) != self.domain.dim for r in rows):
            raise InputError(
                f"matrix shape does not match {self.domain.dim}-dim domain "
                f"and {self.codomain.dim}-dim codomain"
            )

    def apply(self, x) -> tuple:
        return tuple(dot(row, x) for row in self.matrix)

    __call__ = apply

    @property
    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.matrix)

    def scaled(self, c) -> "Operator":
        c = Fraction(c)
        return Operator(tuple(tuple(c * a for a in r) for r in self.matrix), self.domain, self.codomain)

    def plus(self, other: "Operator", lam=ONE) -> "Operator":
        rows = tuple(
            tuple(a + lam * b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)
        )
        return Operator(rows, self.domain, self.codomain)

    def flatten(self) -> tuple:
        return tuple(a for r in self.matrix for a in r)


def same_space(S1: Space, S2: Space) -> bool:
    if S1 is S2:
        return True
    return (
        S1.kind == S2.kind
        and S1.dim == S2.dim
        and set(S1.vertices) == set(S2.vertices)
        and set(S1.facets) == set(S2.facets)
        and S1.gram == S2.gram
    )


def _check_domain(T: Operator):
    if not T.domain.is_polyhedral:
        raise UnsupportedInstance("operators on a Euclidean domain are not supported")


def _check_pair(T: Operator, A: Operator):
    if not (same_space(T.domain, A.domain) and same_space(T.codomain, A.codomain)):
        raise InputError("T and A must share domain and codomain")
    if T.is_zero:
        raise InputError("T must be nonzero")
    _check_domain(T)


def op_norm(T: Operator) -> Fraction:
    """Max of ``||Tv||`` over domain vertices (squared for a Euclidean codomain)."""
    _check_domain(T)
    return max(norm(T.codomain, T.apply(v)) for v in T.domain.vertices)


@dataclass(frozen=True)
class Cell:
    """A face of the domain ball on which ``T`` attains its norm everywhere."""

    vertex_ids: tuple
    sample_vertices: tuple
    dim: int
    carrier: HPolytope
    active_codomain: tuple  # codomain facets active on the whole cell
    image: tuple | None  # common image point, or None if T is not constant here
    maximal: bool


@dataclass(frozen=True)
class MTComplex:
    op_norm: Fraction
    norm_is_squared: bool
    cells: tuple
    attaining_vertex_ids: tuple

    @property
    def maximal_cells(self) -> tuple:
        return tuple(c for c in self.cells if c.maximal)

    @property
    def is_finite(self) -> bool:
        return all(c.dim == 0 for c in self.cells)

    @property
    def all_constant(self) -> bool:
        return all(c.image is not None for c in self.cells)

    @property
    def point_count(self):
        """``|M_T|``, or ``None`` when it is infinite."""
        return len(self.attaining_vertex_ids) if self.is_finite else None


def _active_codomain(T: Operator, N: Fraction) -> dict:
    """Attaining vertex id -> frozenset of active codomain facet ids."""
    out = {}
    Y = T.codomain
    for i, v in enumerate(T.domain.vertices):
        w = T.apply(v)
        if Y.kind == EUCLIDEAN:
            if Y.inner(w, w) == N:
                out[i] = frozenset()
            continue
        act = frozenset(j for j, g in enumerate(Y.facets) if dot(g, w) == N)
        if act:
            out[i] = act
    return out


def _carrier(X: Space, ids: tuple) -> HPolytope:
    ineqs = tuple((f, ONE) for f in X.facets)
    eqs = tuple((X.facets[j], ONE) for j in X.face_facets(ids))
    return HPolytope(X.dim, ineqs, eqs)


def norm_attainment_set(T: Operator) -> MTComplex:
    """``M_T`` as the union of domain faces on which ``T`` attains its norm.

    A face lies in ``M_T`` iff some codomain facet is active at the image of
    every vertex of the face (polyhedral codomain), or iff all its vertices map
    to one attaining point (Euclidean codomain, by strict convexity).  Only
    faces entirely inside ``M_T`` can meet it, since attaining at a relative
    interior point forces attaining at every vertex of the face.
    """
    _check_domain(T)
    if T.is_zero:
        raise InputError("the zero operator attains its norm everywhere; M_T is the whole sphere")
    X, Y = T.domain, T.codomain
    N = op_norm(T)
    act = _active_codomain(T, N)
    found = []
    for ids in X.faces:
        if not all(i in act for i in ids):
            continue
        images = {T.apply(X.vertices[i]) for i in ids}
        if Y.kind == EUCLIDEAN:
            if len(images) != 1:
                continue
            common = ()
        else:
            common_ids = frozenset.intersection(*(act[i] for i in ids))
            if not common_ids:
                continue
            common = tuple(Y.facets[j] for j in sorted(common_ids))
        image = next(iter(images)) if len(images) == 1 else None
        found.append((ids, common, image))
    idsets = [frozenset(ids) for ids, _, _ in found]
    cells = []
    for k, (ids, common, image) in enumerate(found):
        maximal = not any(idsets[k] < other for other in idsets)
        cells.append(
            Cell(
                ids,
                tuple(X.vertices[i] for i in ids),
                X.face_dim(ids),
                _carrier(X, ids),
                common,
                image,
                maximal,
            )
        )
    return MTComplex(N, Y.kind == EUCLIDEAN, tuple(cells), tuple(sorted(act)))


def in_mt(T: Operator, x, M: MTComplex | None = None) -> bool:
    """Exact membership test ``||x|| = 1`` and ``||Tx|| = ||T||``."""
    N = M.op_norm if M is not None else op_norm(T)
    return norm(T.domain, x) == 1 and norm(T.codomain, T.apply(x)) == N


def image_classes(T: Operator, M: MTComplex) -> list:
    """Constant images of maximal cells up to sign, as ``(representative, multiplicity)``.

    Multiplicity counts the maximal cells mapping into the class.  Cells on
    which ``T`` is not constant contribute nothing; check ``M.all_constant``.
    """
    counts: dict = {}
    for c in M.maximal_cells:
        if c.image is not None:
            rep = canonical_sign(c.image)
            counts[rep] = counts.get(rep, 0) + 1
    return sorted(counts.items(), reverse=True)


def active_pairs(T: Operator, N: Fraction | None = None) -> list:
    """``(v, g)`` with ``g(Tv) = ||T||``; ``g`` is ``None`` for a Euclidean codomain."""
    N = op_norm(T) if N is None else N
    out = []
    for v in T.domain.vertices:
        w = T.apply(v)
        if T.codomain.kind == EUCLIDEAN:
            if T.codomain.inner(w, w) == N:
                out.append((v, None))
            continue
        for g in T.codomain.facets:
            if dot(g, w) == N:
                out.append((v, g))
    return out


def op_is_bj_orthogonal(T: Operator, A: Operator) -> bool:
    """``||T + tA|| >= ||T||`` for all real ``t``, via the active vertex/facet pairs.

    The operator norm is the max of the linear forms ``S -> g(Sv)``, so ``T``
    is orthogonal to ``A`` iff the active forms take both signs (or zero) on
    ``A``.  For a Euclidean codomain the squared norm is a max of quadratics
    and the one-sided derivatives at ``t = 0`` are ``2 <Tv, Av>`` over the
    attaining vertices.
    """
    _check_pair(T, A)
    Y = T.codomain
    vals = []
    for v, g in active_pairs(T):
        if g is None:
            vals.append(Y.inner(T.apply(v), A.apply(v)))
        else:
            vals.append(dot(g, A.apply(v)))
    return min(vals) <= 0 <= max(vals)


def op_bj_oracle(T: Operator, A: Operator) -> bool:
    """Decide ``min_t ||T + tA|| == ||T||`` directly.

    Polyhedral codomain: exact LP in ``(t, s)`` minimising ``s`` subject to
    ``g(Tv) + t g(Av) <= s`` over vertex classes and codomain facets.
    Euclidean codomain: ``f(t) = max_v ||Tv + tAv||^2`` is convex with
    ``f(0) = N``, so ``T`` fails to be orthogonal iff ``f`` dips below ``N``
    on one side of 0.  An explicit rational step ``d`` small enough that no
    inactive vertex can overtake and every strictly decreasing active quadratic
    is still below ``N`` makes the test exact: evaluate ``f(+d)`` and ``f(-d)``.
    """
    _check_pair(T, A)
    X, Y = T.domain, T.codomain
    N = op_norm(T)
    if Y.kind != EUCLIDEAN:
        rows = []
        for v in vertex_classes(X):
            tv, av = T.apply(v), A.apply(v)
            for g in Y.facets:
                rows.append(((dot(g, av), -ONE), -dot(g, tv)))
        out = lp_solve((ZERO, ONE), HPolytope(2, tuple(rows)), "min")
        return out.optimum == N
    quads = []
    for v in vertex_classes(X):
        tv, av = T.apply(v), A.apply(v)
        quads.append((Y.inner(tv, tv), Y.inner(tv, av), Y.inner(av, av)))
    step = ONE
    for c, b, a in quads:
        if c < N:
            step = min(step, (N - c) / (2 * (a + 2 * abs(b)) + 1))
        elif a > 0 and b != 0:
            step = min(step, abs(b) / a)

    def f(t):
        return max(c + 2 * b * t + a * t * t for c, b, a in quads)

    return f(step) >= N and f(-step) >= N


# ---------------------------------------------------------------------------
# connectivity


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _count_components(cells, links) -> int:
    parent = list(range(len(cells)))
    for i, j in links:
        a, b = _find(parent, i), _find(parent, j)
        if a != b:
            parent[a] = b
    return len({_find(parent, i) for i in range(len(cells))})


def mt_components(T: Operator, M: MTComplex | None = None) -> tuple:
    """Connected components of ``M_T`` on the sphere and modulo ``x ~ -x``.

    Closed faces meet iff they share a vertex, so adjacency is shared vertex ids.
    """
    M = M or norm_attainment_set(T)
    X = T.domain
    cells = M.maximal_cells
    sets = [frozenset(c.vertex_ids) for c in cells]
    shared = [(i, j) for i in range(len(cells)) for j in range(i) if sets[i] & sets[j]]
    sphere = _count_components(cells, shared)
    index = {s: k for k, s in enumerate(sets)}
    antipodal = [(k, index[frozenset(X.antipode(i) for i in s)]) for k, s in enumerate(sets)]
    projective = _count_components(cells, shared + antipodal)
    return sphere, projective


def mt_projective_components(T: Operator) -> tuple:
    """``(count_sphere, count_projective)`` for an operator on a 2-dimensional domain."""
    if T.domain.dim != 2:
        raise InputError("projective component analysis needs a 2-dimensional domain")
    return mt_components(T)


# ---------------------------------------------------------------------------
# the operator space itself


def operator_space_facets(X: Space, Y: Space) -> tuple:
    """Deduplicated forms ``S -> g(Sv)`` on flattened matrices (row-major)."""
    if not (X.is_polyhedral and Y.is_polyhedral):
        raise InputError("operator space facets need polyhedral domain and codomain")
    seen = {}
    for g in Y.facets:
        for v in X.vertices:
            seen.setdefault(tuple(gi * vj for gi in g for vj in v), None)
    return tuple(seen)


def operator_space(X: Space, Y: Space) -> Space:
    """``L(X, Y)`` with the operator norm, as a polyhedral space of dimension ``dim X * dim Y``."""
    facets = operator_space_facets(X, Y)
    verts = vertex_enumeration(facets)
    return Space.polyhedral(verts, facets, label=f"L({X.label},{Y.label})")


def zero_operator(X: Space, Y: Space) -> Operator:
    return Operator(tuple((ZERO,) * X.dim for _ in range(Y.dim)), X, Y)


def identity(X: Space) -> Operator:
    return Operator(
        tuple(tuple(ONE if i == j else ZERO for j in range(X.dim)) for i in range(X.dim)), X, X
    )
