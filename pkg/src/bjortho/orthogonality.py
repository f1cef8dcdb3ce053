"""Birkhoff-James orthogonality of points: pointwise tests, orthogonality
sets, two-dimensional normal cones, coverage of the space by finitely many
orthogonality sets, and Property P_n.

For a polyhedral norm the norming functionals of ``x`` form the convex hull of
the facet functionals active at ``x``, so ``x`` is orthogonal to ``y`` iff
those active functionals take both signs (or zero) on ``y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InputError
from .geometry import (
    HPolytope,
    ONE,
    ZERO,
    dot,
    integer_direction,
    is_zero,
    lp_solve,
    neg,
    scale,
    strict_cone_feasible,
    vec,
)
from .parallel import ordered_map
from .space import EUCLIDEAN, Space, norm, norming_face, vertex_classes


def _prepare(S: Space, x, name="x"):
    x = vec(x)
    if len(x) != S.dim:
        raise InputError(f"{name} has length {len(x)} in a {S.dim}-dimensional space")
    return x


def _nonzero(S: Space, x):
    x = _prepare(S, x)
    if is_zero(x):
        raise InputError("x must be nonzero")
    return x


def active_functionals(S: Space, x) -> list:
    """Facet functionals spanning the norming face of ``x`` (polyhedral ``S``)."""
    face = norming_face(S, x)
    return [S.facets[j] for j in face.active_facets]


def is_bj_orthogonal(S: Space, x, y) -> bool:
    x = _nonzero(S, x)
    y = _prepare(S, y, "y")
    if S.kind == EUCLIDEAN:
        return S.inner(x, y) == 0
    vals = [dot(f, y) for f in active_functionals(S, x)]
    return min(vals) <= 0 <= max(vals)


def in_plus_set(S: Space, x, y) -> bool:
    """``||x + t y|| >= ||x||`` for every ``t >= 0``."""
    x = _nonzero(S, x)
    y = _prepare(S, y, "y")
    if S.kind == EUCLIDEAN:
        return S.inner(x, y) >= 0
    return max(dot(f, y) for f in active_functionals(S, x)) >= 0


def in_minus_set(S: Space, x, y) -> bool:
    """``||x + t y|| >= ||x||`` for every ``t <= 0``."""
    x = _nonzero(S, x)
    y = _prepare(S, y, "y")
    if S.kind == EUCLIDEAN:
        return S.inner(x, y) <= 0
    return min(dot(f, y) for f in active_functionals(S, x)) <= 0


def bj_oracle(S: Space, x, y) -> bool:
    """Decide ``x`` orthogonal to ``y`` straight from ``min_t ||x + t y|| == ||x||``.

    Polyhedral: the exact LP ``min s  s.t.  f_j(x) + t f_j(y) <= s`` over all
    facets.  Euclidean: closed-form minimum of the quadratic ``||x + t y||^2``.
    Shares no code with the norming-face test.
    """
    x = _nonzero(S, x)
    y = _prepare(S, y, "y")
    if S.kind == EUCLIDEAN:
        xx, xy, yy = S.inner(x, x), S.inner(x, y), S.inner(y, y)
        if yy == 0:
            return True
        return xx - xy * xy / yy >= xx
    rows = tuple(((dot(f, y), -ONE), -dot(f, x)) for f in S.facets)
    out = lp_solve((ZERO, ONE), HPolytope(2, rows), "min")
    return out.optimum == norm(S, x)


class OrthoSet:
    """The closed set ``x^perp`` of a point in a polyhedral space.

    ``y`` belongs iff the active functionals of ``x`` do not all have the
    same strict sign at ``y``.
    """

    def __init__(self, base_point, active):
        if not active:
            raise InputError("an orthogonality set needs at least one active functional")
        self.base_point = tuple(base_point)
        self.active_functionals = tuple(active)
        self._ints = tuple(integer_direction(f) for f in self.active_functionals)

    def contains(self, y) -> bool:
        lo = hi = None
        for f in self._ints:
            v = sum(a * b for a, b in zip(f, y) if a)
            if v == 0:
                return True
            if v > 0:
                hi = True
            else:
                lo = True
            if lo and hi:
                return True
        return False

    __contains__ = contains

    def __repr__(self):
        return f"OrthoSet(x={self.base_point}, active={len(self.active_functionals)})"


def ortho_set(S: Space, x) -> OrthoSet:
    x = _nonzero(S, x)
    if not S.is_polyhedral:
        raise InputError("orthogonality sets are represented for polyhedral spaces only")
    return OrthoSet(x, active_functionals(S, x))


@dataclass(frozen=True)
class NormalCone2D:
    """``K = {a v1 + b v2 : a, b >= 0} = {f1 >= 0} & {f2 <= 0}`` at a vertex of a 2D ball."""

    generators: tuple
    functionals: tuple

    def contains(self, y) -> bool:
        f1, f2 = self.functionals
        return dot(f1, y) >= 0 and dot(f2, y) <= 0

    def cone_coordinates(self, y) -> tuple:
        """Coefficients ``(a, b)`` with ``y = a v1 + b v2``."""
        (a, b), (c, d) = self.generators
        det = a * d - b * c
        return ((y[0] * d - y[1] * c) / det, (a * y[1] - b * y[0]) / det)


def normal_cone_2d(S: Space, x) -> NormalCone2D:
    x = _nonzero(S, x)
    if S.dim != 2 or not S.is_polyhedral:
        raise InputError("normal cones are computed for 2-dimensional polyhedral spaces")
    if x not in S.vertex_index:
        raise InputError(f"{x} is not a vertex of the unit ball")
    f1, f2 = active_functionals(S, x)

    def kernel_point(f, other, want):
        d = (-f[1], f[0])
        if want * dot(other, d) < 0:
            d = neg(d)
        return scale(1 / norm(S, d), d)

    v1 = kernel_point(f1, f2, -1)
    v2 = kernel_point(f2, f1, 1)
    return NormalCone2D((v1, v2), (f1, f2))


# ---------------------------------------------------------------------------
# coverage and Property P_n


@dataclass(frozen=True)
class CoverageCertificate:
    verdict: str  # "covered" | "not_covered"
    family: tuple
    sign_vector: tuple | None = None
    witness: tuple | None = None
    checked_sign_vectors: int = 0
    lp_calls: int = 0

    @property
    def covered(self) -> bool:
        return self.verdict == "covered"


def _euclidean_witness(S: Space, family) -> tuple:
    # moment-curve points (1, t, t^2, ...) avoid any finite union of hyperplanes
    normals = [S.gram_apply(x) for x in family]
    t = 0
    while True:
        z = tuple(Fraction(t) ** k for k in range(S.dim))
        if all(dot(n, z) != 0 for n in normals):
            return z
        t += 1


def covers(S: Space, family) -> CoverageCertificate:
    """Decide whether ``x_1^perp u ... u x_k^perp`` is the whole space.

    A point ``y`` escapes the union iff, for every member, all its active
    functionals have one common strict sign ``e_i`` at ``y``.  Each sign
    vector (with ``e_1 = +1`` by symmetry) is an open-cone feasibility LP.
    """
    fam = tuple(_nonzero(S, x) for x in family)
    if not fam:
        raise InputError("empty family")
    if S.kind == EUCLIDEAN:
        z = _euclidean_witness(S, fam)
        signs = tuple(1 if S.inner(x, z) > 0 else -1 for x in fam)
        return CoverageCertificate("not_covered", fam, signs, z)
    actives = [active_functionals(S, x) for x in fam]
    vectors = [(1,) + rest for rest in itertools.product((1, -1), repeat=len(fam) - 1)]

    def system(eps):
        rows = {}
        for e, fs in zip(eps, actives):
            for f in fs:
                rows.setdefault(f if e > 0 else neg(f), None)
        return list(rows)

    # lp_calls counts the LPs a sequential scan needs, so it ignores BJORTHO_THREADS
    results = ordered_map(lambda e: strict_cone_feasible(system(e)), vectors)
    for k, (eps, (ok, w)) in enumerate(zip(vectors, results)):
        if ok:
            return CoverageCertificate("not_covered", fam, eps, w, k, k + 1)
    return CoverageCertificate("covered", fam, None, None, len(vectors), len(vectors))


@dataclass(frozen=True)
class PnCertificate:
    verdict: str  # "has_pn" | "lacks_pn"
    n: int
    covering_family: tuple | None = None
    family_witnesses: tuple = ()  # ((family, witness), ...)
    lp_calls: int = 0
    families_checked: int = 0

    @property
    def has_pn(self) -> bool:
        return self.verdict == "has_pn"


def has_property_pn(S: Space, n: int) -> PnCertificate:
    """Decide Property P_n by checking every n-family of antipodal vertex classes.

    A unit vector's orthogonality set is contained in that of any vertex of its
    minimal face (its active facets are a subset of the vertex's), so
    vertex families are the worst case.
    """
    if n < 1:
        raise InputError("n must be a positive integer")
    if S.kind == EUCLIDEAN:
        # finite unions of hyperplanes never cover
        return PnCertificate("has_pn", n)
    classes = vertex_classes(S)
    if n > len(classes):
        cert = covers(S, classes)
        if cert.covered:
            return PnCertificate("lacks_pn", n, tuple(classes), (), cert.lp_calls, 1)
        return PnCertificate(
            "has_pn", n, None, ((tuple(classes), cert.witness),), cert.lp_calls, 1
        )
    witnesses = []
    calls = 0
    for checked, combo in enumerate(itertools.combinations(classes, n), start=1):
        cert = covers(S, combo)
        calls += cert.lp_calls
        if cert.covered:
            return PnCertificate("lacks_pn", n, combo, (), calls, checked)
        witnesses.append((combo, cert.witness))
    return PnCertificate("has_pn", n, None, tuple(witnesses), calls, len(witnesses))


def pn_lp_bound(S: Space, n: int) -> int:
    """Worst-case LP count of :func:`has_property_pn`."""
    k = len(vertex_classes(S))
    if n > k:
        return 2 ** (k - 1)
    return comb(k, n) * 2 ** (n - 1)


def min_covering_number(S: Space):
    """Smallest ``m`` such that some m vertex classes cover; returns ``(m, family)``.

    The space then has Property P_{m-1} but not P_m.
    """
    if not S.is_polyhedral:
        raise InputError("min_covering_number needs a polyhedral space")
    for m in range(1, len(vertex_classes(S)) + 1):
        cert = has_property_pn(S, m)
        if not cert.has_pn:
            return m, cert.covering_family
    raise ArithmeticError("the full family of vertex classes failed to cover")
