"""Finite-dimensional normed spaces: polyhedral (vertex + facet lists) and
Euclidean (rational Gram matrix).

Euclidean spaces report *squared* norms so every comparison stays rational.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InputError
from .geometry import (
    ONE,
    ZERO,
    canonical_sign,
    dot,
    dual_description,
    incidence_matrix,
    is_zero,
    neg,
    rank,
    sub,
    vec,
)

POLYHEDRAL = "polyhedral"
EUCLIDEAN = "euclidean"

# denominator cap for the tan-half-angle parameters of rationalised polygons
POLYGON_DENOMINATOR = 100


@dataclass(frozen=True, eq=False)
class Space:
    kind: str
    dim: int
    vertices: tuple = ()
    facets: tuple = ()
    incidence: tuple = ()
    label: str = ""
    gram: tuple | None = None

    @classmethod
    def polyhedral(cls, vertices, facets=None, label: str = "") -> "Space":
        """Build a polyhedral space; facets are computed when not supplied."""
        verts = tuple(vec(v) for v in vertices)
        if not verts:
            raise InputError("a polyhedral space needs vertices")
        if facets is None:
            hull = dual_description(verts)
            verts, fs, inc = hull.vertices, hull.facets, hull.incidence
        else:
            fs = tuple(vec(f) for f in facets)
            inc = incidence_matrix(verts, fs)
        return cls(POLYHEDRAL, len(verts[0]), verts, fs, inc, label)

    @classmethod
    def euclidean(cls, dim: int, gram=None, label: str = "") -> "Space":
        if dim < 1:
            raise InputError("dimension must be positive")
        if gram is None:
            gram = tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim))
        else:
            gram = tuple(vec(row) for row in gram)
            if len(gram) != dim or any(len(r) != dim for r in gram):
                raise InputError("Gram matrix shape does not match the dimension")
        return cls(EUCLIDEAN, dim, label=label or f"euclid:{dim}", gram=gram)

    @property
    def is_polyhedral(self) -> bool:
        return self.kind == POLYHEDRAL

    @property
    def norm_is_squared(self) -> bool:
        return self.kind == EUCLIDEAN

    def inner(self, x, y) -> Fraction:
        return dot(x, [dot(row, y) for row in self.gram])

    def gram_apply(self, x) -> tuple:
        return tuple(dot(row, x) for row in self.gram)

    def norm(self, x) -> Fraction:
        return norm(self, x)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def int_facets(self) -> tuple:
        """Facets scaled to a common integer denominator, for fast sign tests."""
        den = 1
        for f in self.facets:
            for a in f:
                den = math.lcm(den, a.denominator)
        return tuple(tuple(int(a * den) for a in f) for f in self.facets), den

    @cached_property
    def faces(self) -> tuple:
        """All nonempty proper faces as sorted tuples of vertex indices.

        Every face is an intersection of facets, so the list is the closure of
        the facet vertex sets under intersection.  Ordered by decreasing
        dimension, then lexicographically.
        """
        if not self.is_polyhedral:
            raise InputError("faces are only defined for polyhedral spaces")
        facet_sets = []
        for j in range(len(self.facets)):
            facet_sets.append(frozenset(i for i in range(len(self.vertices)) if self.incidence[i][j]))
        seen = set(facet_sets)
        frontier = list(seen)
        while frontier:
            nxt = []
            for f in frontier:
                for g in facet_sets:
                    h = f & g
                    if h and h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        faces = [tuple(sorted(s)) for s in seen]
        faces.sort(key=lambda s: (-self.face_dim(s), s))
        return tuple(faces)

    def face_dim(self, ids: Sequence[int]) -> int:
        pts = [self.vertices[i] for i in ids]
        return rank([sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0

    def face_facets(self, ids: Sequence[int]) -> tuple:
        """Indices of the facets containing the face spanned by ``ids``."""
        return tuple(
            j for j in range(len(self.facets)) if all(self.incidence[i][j] for i in ids)
        )

    def antipode(self, i: int) -> int:
        return self.vertex_index[neg(self.vertices[i])]

    def __repr__(self):
        return f"Space({self.label or self.kind}, dim={self.dim})"


@dataclass(frozen=True)
class NormingFace:
    point: tuple
    active_facets: tuple
    value: Fraction


def _check_point(S: Space, x) -> tuple:
    x = vec(x)
    if len(x) != S.dim:
        raise InputError(f"point of length {len(x)} in a {S.dim}-dimensional space")
    return x


def norm(S: Space, x) -> Fraction:
    """Polyhedral: ``max_j f_j(x)``.  Euclidean: the *squared* norm."""
    x = _check_point(S, x)
    if S.kind == EUCLIDEAN:
        return S.inner(x, x)
    return max(dot(f, x) for f in S.facets)


def norming_face(S: Space, x) -> NormingFace:
    x = _check_point(S, x)
    if not S.is_polyhedral:
        raise InputError("norming faces are computed for polyhedral spaces only")
    if is_zero(x):
        raise InputError("the zero vector has no norming face")
    vals = [dot(f, x) for f in S.facets]
    top = max(vals)
    return NormingFace(x, tuple(j for j, v in enumerate(vals) if v == top), top)


def vertex_classes(S: Space) -> list:
    """One representative per antipodal vertex pair, in descending lexicographic order."""
    return sorted({canonical_sign(v) for v in S.vertices}, reverse=True)


# ---------------------------------------------------------------------------
# builders


def _unit(d: int, i: int, s=1) -> tuple:
    return tuple(Fraction(s) if j == i else ZERO for j in range(d))


def _circle_point(t: Fraction) -> tuple:
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def rational_polygon_vertices(count: int) -> list:
    """``count`` (even) rational points on the unit circle, spaced roughly evenly.

    Points for angles in ``[0, pi/2]`` come from rationalised tangent
    half-angles; the rest are mirror images across the y-axis and the origin,
    so the set is symmetric under both coordinate reflections and always
    contains ``(+-1, 0)`` (and ``(0, +-1)`` when ``count`` is a multiple of 4).
    Listed counter-clockwise starting at ``(1, 0)``.
    """
    if count < 4 or count % 2:
        raise InputError("polygon needs an even number (>= 4) of vertices")
    n = count // 2
    upper = []
    for j in range(n):
        theta = math.pi * j / n
        if 2 * j <= n:
            if 2 * j == n:
                t = ONE
            else:
                t = Fraction(math.tan(theta / 2)).limit_denominator(POLYGON_DENOMINATOR)
            upper.append(_circle_point(t))
        else:
            x, y = upper[n - j]
            upper.append((-x, y))
    for a, b in zip(upper, upper[1:]):
        if not (math.atan2(b[1], b[0]) > math.atan2(a[1], a[0])):
            raise InputError(f"polygon:{count} is too fine for the rational approximation")
    return upper + [neg(p) for p in upper]


def _polygon_facets(verts: list) -> list:
    out = []
    k = len(verts)
    for i in range(k):
        (a, b), (c, d) = verts[i], verts[(i + 1) % k]
        det = a * d - b * c
        out.append(((d - b) / det, (a - c) / det))
    return out


def polygon(count: int) -> Space:
    verts = rational_polygon_vertices(count)
    return Space.polyhedral(verts, _polygon_facets(verts), label=f"polygon:{count}")


def l1(d: int) -> Space:
    verts = [_unit(d, i, s) for i in range(d) for s in (1, -1)]
    facets = [tuple(map(Fraction, s)) for s in itertools.product((1, -1), repeat=d)]
    return Space.polyhedral(verts, facets, label=f"l1:{d}")


def linf(d: int) -> Space:
    verts = [tuple(map(Fraction, s)) for s in itertools.product((1, -1), repeat=d)]
    facets = [_unit(d, i, s) for i in range(d) for s in (1, -1)]
    return Space.polyhedral(verts, facets, label=f"linf:{d}")


def prism(n: int) -> Space:
    S = direct_sum(polygon(2 * n), linf(1), "inf")
    return Space(S.kind, S.dim, S.vertices, S.facets, S.incidence, f"prism:{n}")


def glued_pyramids() -> Space:
    top = [(1, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1)]
    verts = top + [tuple(-c for c in v) for v in top] + [(0, 0, 2), (0, 0, -2)]
    return Space.polyhedral(verts, label="glued_pyramids")


def bipyramid_prism(n: int) -> Space:
    base = rational_polygon_vertices(2 * n)
    verts = [p + (ONE,) for p in base] + [p + (-ONE,) for p in base]
    verts += [(ZERO, ZERO, Fraction(2)), (ZERO, ZERO, Fraction(-2))]
    return Space.polyhedral(verts, label=f"bipyramid_prism:{n}")


_BUILDERS = {
    "l1": (l1, 1),
    "linf": (linf, 1),
    "euclid": (lambda d: Space.euclidean(d), 1),
    "polygon": (polygon, 4),
    "prism": (prism, 2),
    "bipyramid_prism": (bipyramid_prism, 3),
}


def build_named(name: str, param: int | None = None) -> Space:
    """Build a named space, e.g. ``build_named("prism:3")`` or ``build_named("prism", 3)``.

    Names: ``l1:d``, ``linf:d``, ``euclid:d`` (d >= 1), ``polygon:2n`` (n >= 2),
    ``prism:n`` (n >= 2), ``glued_pyramids`` and ``bipyramid_prism:n`` (n >= 3).
    """
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    if ":" in name:
        if param is not None:
            raise InputError("parameter given twice")
        name, _, raw = name.partition(":")
        try:
            param = int(raw)
        except ValueError:
            raise InputError(f"bad parameter {raw!r} for space {name!r}") from None
    if name == "glued_pyramids":
        if param is not None:
            raise InputError("glued_pyramids takes no parameter")
        return glued_pyramids()
    if name not in _BUILDERS:
        raise InputError(f"unknown space {name!r}")
    builder, lowest = _BUILDERS[name]
    if param is None:
        raise InputError(f"space {name!r} needs a parameter")
    if param < lowest or (name == "polygon" and param % 2):
        raise InputError(f"parameter {param} out of range for {name!r}")
    return builder(param)


def direct_sum(S1: Space, S2: Space, mode: str = "inf") -> Space:
    """``S1 (+)_inf S2`` (max of norms) or ``S1 (+)_1 S2`` (sum of norms)."""
    if not (S1.is_polyhedral and S2.is_polyhedral):
        raise InputError("direct sums are supported for polyhedral operands only")
    z1, z2 = (ZERO,) * S1.dim, (ZERO,) * S2.dim
    if mode == "inf":
        facets = [f + z2 for f in S1.facets] + [z1 + g for g in S2.facets]
        verts = [v + w for v in S1.vertices for w in S2.vertices]
    elif mode == "one":
        verts = [v + z2 for v in S1.vertices] + [z1 + w for w in S2.vertices]
        facets = [f + g for f in S1.facets for g in S2.facets]
    else:
        raise InputError(f"mode must be 'inf' or 'one', got {mode!r}")
    label = f"({S1.label}+{mode}+{S2.label})"
    return Space.polyhedral(verts, facets, label=label)


# ---------------------------------------------------------------------------
# validation


def validate(S: Space) -> list:
    """Return a list of human-readable invariant violations (empty iff valid)."""
    problems = []
    if S.kind == EUCLIDEAN:
        g = S.gram
        if g is None or len(g) != S.dim:
            return ["missing or misshapen Gram matrix"]
        if any(g[i][j] != g[j][i] for i in range(S.dim) for j in range(S.dim)):
            problems.append("Gram matrix is not symmetric")
        for k in range(1, S.dim + 1):
            if _det([row[:k] for row in g[:k]]) <= 0:
                problems.append("Gram matrix is not positive definite")
                break
        return problems
    if S.kind != POLYHEDRAL:
        return [f"unknown kind {S.kind!r}"]
    d = S.dim
    if any(len(v) != d for v in S.vertices) or any(len(f) != d for f in S.facets):
        return ["coordinate length does not match the dimension"]
    vset, fset = set(S.vertices), set(S.facets)
    if len(vset) != len(S.vertices):
        problems.append("repeated vertices")
    if any(neg(v) not in vset for v in vset):
        problems.append("vertex list not centrally symmetric")
    if any(neg(f) not in fset for f in fset):
        problems.append("facet list not centrally symmetric")
    if not S.facets or rank(list(S.facets)) < d:
        problems.append("origin not interior (facets do not span the dual space)")
        return problems
    for v in S.vertices:
        if max(dot(f, v) for f in S.facets) != 1:
            problems.append(f"vertex norm != 1 at {_fmt(v)}")
    for f in S.facets:
        if max(dot(f, v) for v in S.vertices) != 1:
            problems.append(f"facet dual norm != 1 for {_fmt(f)}")
    if S.incidence != incidence_matrix(S.vertices, S.facets):
        problems.append("stale incidence matrix")
    inc = incidence_matrix(S.vertices, S.facets)
    for j, f in enumerate(S.facets):
        on = [S.vertices[i] for i in range(len(S.vertices)) if inc[i][j]]
        if rank(on) < d:
            problems.append(f"redundant facet {_fmt(f)}")
    for i, v in enumerate(S.vertices):
        tight = [S.facets[j] for j in range(len(S.facets)) if inc[i][j]]
        if rank(tight) < d:
            problems.append(f"not an extreme point: {_fmt(v)}")
    return problems


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _det(m) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
