"""Exact rational geometry primitives.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  The module provides

* a two-phase simplex with Bland's rule (``lp_solve``), which solves the
  *dual* of the requested program so that tableaux have one row per variable
  rather than one row per constraint,
* ``strict_cone_feasible`` for deciding nonemptiness of open polyhedral cones,
* ``dual_description`` / ``vertex_enumeration`` for centrally symmetric
  polytopes containing the origin, via the double description method.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError

Point = tuple  # tuple[Fraction, ...]
Functional = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# small vector helpers


def frac(value) -> Fraction:
    """Coerce ``value`` to a Fraction; floats are refused to keep inputs exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def vec(values: Iterable) -> tuple:
    return tuple(frac(v) for v in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    total = 0
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return Fraction(total)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def canonical_sign(a: Sequence) -> tuple:
    """Return ``a`` or ``-a``, whichever has a positive last nonzero entry."""
    for x in reversed(a):
        if x:
            return tuple(a) if x > 0 else neg(a)
    return tuple(a)


def integer_direction(a: Sequence) -> tuple:
    """Positive multiple of ``a`` with coprime integer entries (sign tests only)."""
    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free-ish Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                f = f / pr[c]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> tuple:
    """Solve the square system ``matrix @ x = rhs`` exactly.

    Raises InputError if the matrix is singular.
    """
    n = len(matrix)
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise InputError("singular linear system")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# polyhedra and linear programming


@dataclass(frozen=True)
class HPolytope:
    """``{x : f(x) <= b for (f, b) in inequalities, f(x) == b for (f, b) in equalities}``."""

    dim: int
    inequalities: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        for f, _ in self.inequalities + self.equalities:
            if len(f) != self.dim:
                raise InputError(
                    f"constraint of length {len(f)} in a {self.dim}-dimensional polytope"
                )

    def contains(self, x: Sequence) -> bool:
        return all(dot(f, x) <= b for f, b in self.inequalities) and all(
            dot(f, x) == b for f, b in self.equalities
        )

    def with_constraints(self, inequalities=(), equalities=()) -> "HPolytope":
        return HPolytope(
            self.dim,
            self.inequalities + tuple(inequalities),
            self.equalities + tuple(equalities),
        )


def box(dim: int, radius=ONE) -> HPolytope:
    ineq = []
    for i in range(dim):
        e = tuple(ONE if j == i else ZERO for j in range(dim))
        ineq.append((e, Fraction(radius)))
        ineq.append((neg(e), Fraction(radius)))
    return HPolytope(dim, tuple(ineq))


@dataclass(frozen=True)
class LPOutcome:
    """Result of :func:`lp_solve`.

    ``dual`` holds the multipliers of the inequalities followed by those of
    the equalities.  For an optimal outcome they certify optimality of the
    maximisation form (``c = sum(mu_i f_i) + sum(nu_k g_k)`` with ``mu >= 0``
    and ``sum(mu_i b_i) + sum(nu_k e_k) == optimum``; for ``sense="min"`` the
    same holds with ``c`` replaced by ``-c`` and the optimum negated).  For an
    infeasible outcome they form a Farkas certificate: the combination of the
    constraint rows vanishes while the combination of bounds is negative.
    """

    status: str
    optimum: Fraction | None = None
    witness: tuple | None = None
    dual: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Dense simplex tableau for ``min cost.u  s.t.  A u = b, u >= 0``."""

    def __init__(self, A, b, cost):
        self.m = len(A)
        self.n = len(cost)
        self.sign = []
        self.rows = []
        for i in range(self.m):
            s = -1 if b[i] < 0 else 1
            self.sign.append(s)
            row = [s * a for a in A[i]]
            row.extend(ONE if k == i else ZERO for k in range(self.m))
            row.append(s * b[i])
            self.rows.append(row)
        self.basis = [self.n + i for i in range(self.m)]
        self.width = self.n + self.m

    def reduced_costs(self, cost):
        d = list(cost)
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.rows[i]
                for j in range(self.width):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Bland's rule iterations; returns ("optimal", d) or ("unbounded", column)."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in allowed if d[j] < 0), None)
            if enter is None:
                return "optimal", d
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded", enter
            self.pivot(best[1], enter)

    def values(self):
        u = [ZERO] * self.width
        for i, bi in enumerate(self.basis):
            u[bi] = self.rows[i][-1]
        return u


def _simplex_min(A, b, cost):
    """Two-phase simplex for ``min cost.u  s.t.  A u = b, u >= 0``.

    Returns ``(status, u, y)``; ``y`` are the multipliers of the final basis
    (so ``cost - A^T y >= 0`` at optimum) and, when unbounded, ``u`` is a
    recession ray with ``A u = 0`` and ``cost.u < 0``.
    """
    tab = _Tableau(A, b, cost)
    n, m = tab.n, tab.m
    phase1 = [ZERO] * n + [ONE] * m
    tab.run(phase1, range(tab.width))
    if any(tab.values()[n + i] != 0 for i in range(m)):
        return "infeasible", None, None
    for i in range(m):
        if tab.basis[i] >= n:
            row = tab.rows[i]
            j = next((j for j in range(n) if row[j] != 0), None)
            if j is not None:
                tab.pivot(i, j)
    phase2 = list(cost) + [ZERO] * m
    status, info = tab.run(phase2, range(n))
    if status == "unbounded":
        ray = [ZERO] * n
        ray[info] = ONE
        for i, bi in enumerate(tab.basis):
            if bi < n:
                ray[bi] = -tab.rows[i][info]
        return "unbounded", ray, None
    d = info
    u = tab.values()[:n]
    y = [tab.sign[i] * -d[n + i] for i in range(m)]
    return "optimal", u, y


def lp_solve(objective: Sequence, region: HPolytope, sense: str = "max") -> LPOutcome:
    """Optimise a linear functional over an H-polytope exactly.

    The program ``max c.x  s.t.  Gx <= h, Ex = e`` is handed to the simplex
    in dual form ``min h.mu + e.nu  s.t.  G^T mu + E^T nu = c, mu >= 0``;
    the primal optimum is read off the final simplex multipliers.  Both the
    primal point and the dual certificate are checked before returning.
    """
    if sense not in ("max", "min"):
        raise InputError(f"sense must be 'max' or 'min', got {sense!r}")
    n = region.dim
    if len(objective) != n:
        raise InputError(f"objective has length {len(objective)}, region dimension {n}")
    c = vec(objective)
    if sense == "min":
        c = neg(c)
    ineq = region.inequalities
    eqs = region.equalities
    cols = [f for f, _ in ineq] + [f for f, _ in eqs] + [neg(f) for f, _ in eqs]
    cost = [b for _, b in ineq] + [b for _, b in eqs] + [-b for _, b in eqs]
    A = [[col[i] for col in cols] for i in range(n)]
    status, u, y = _simplex_min(A, list(c), cost)

    mi, me = len(ineq), len(eqs)
    if status == "optimal":
        x = tuple(y)
        opt = dot(c, x)
        mult = tuple(u[:mi]) + tuple(u[mi + k] - u[mi + me + k] for k in range(me))
        _check_optimal(c, region, x, opt, mult)
        return LPOutcome(
            "optimal", opt if sense == "max" else -opt, x, mult
        )
    if status == "unbounded":
        cert = tuple(u[:mi]) + tuple(u[mi + k] - u[mi + me + k] for k in range(me))
        _check_farkas(region, cert)
        return LPOutcome("infeasible", dual=cert)
    # dual infeasible: the primal is either infeasible or unbounded
    cert = _farkas_certificate(region)
    if cert is not None:
        return LPOutcome("infeasible", dual=cert)
    return LPOutcome("unbounded")


def _check_optimal(c, region, x, opt, mult):
    if not region.contains(x):
        raise ArithmeticError("simplex returned an infeasible primal point")
    n = region.dim
    combo = [ZERO] * n
    bound = ZERO
    rows = region.inequalities + region.equalities
    for k, ((f, b), w) in enumerate(zip(rows, mult)):
        if k < len(region.inequalities) and w < 0:
            raise ArithmeticError("negative inequality multiplier")
        if w:
            for i in range(n):
                combo[i] += w * f[i]
            bound += w * b
    if tuple(combo) != tuple(c) or bound != opt:
        raise ArithmeticError("dual certificate does not match the primal optimum")


def _check_farkas(region, cert):
    n = region.dim
    combo = [ZERO] * n
    bound = ZERO
    rows = region.inequalities + region.equalities
    for k, ((f, b), w) in enumerate(zip(rows, cert)):
        if k < len(region.inequalities) and w < 0:
            raise ArithmeticError("negative Farkas multiplier")
        for i in range(n):
            combo[i] += w * f[i]
        bound += w * b
    if any(combo) or bound >= 0:
        raise ArithmeticError("invalid Farkas certificate")


def _farkas_certificate(region: HPolytope):
    """Find ``mu >= 0, nu`` with ``G^T mu + E^T nu = 0`` and ``h.mu + e.nu < 0``."""
    n = region.dim
    ineq, eqs = region.inequalities, region.equalities
    cols = [f for f, _ in ineq] + [f for f, _ in eqs] + [neg(f) for f, _ in eqs]
    if not cols:
        return None
    cost = [b for _, b in ineq] + [b for _, b in eqs] + [-b for _, b in eqs]
    A = [[col[i] for col in cols] for i in range(n)]
    A.append([ONE] * len(cols))
    rhs = [ZERO] * n + [ONE]
    status, u, _ = _simplex_min(A, rhs, cost)
    if status != "optimal" or dot(cost, u) >= 0:
        return None
    mi, me = len(ineq), len(eqs)
    cert = tuple(u[:mi]) + tuple(u[mi + k] - u[mi + me + k] for k in range(me))
    _check_farkas(region, cert)
    return cert


def strict_cone_feasible(functionals: Sequence[Sequence]):
    """Decide whether some ``y`` has ``f(y) > 0`` for every listed functional.

    Solved as ``max t  s.t.  f(y) >= t, -1 <= y_i <= 1``; the open cone is
    nonempty iff the optimum is positive.  Returns ``(feasible, witness)``.
    """
    if not functionals:
        raise InputError("strict_cone_feasible needs at least one functional")
    d = len(functionals[0])
    if any(len(f) != d for f in functionals):
        raise InputError("functionals of different dimensions")
    ineq = []
    for f in functionals:
        ineq.append((tuple(-frac(a) for a in f) + (ONE,), ZERO))
    for i in range(d):
        e = tuple(ONE if j == i else ZERO for j in range(d))
        ineq.append((e + (ZERO,), ONE))
        ineq.append((neg(e) + (ZERO,), ONE))
    region = HPolytope(d + 1, tuple(ineq))
    objective = (ZERO,) * d + (ONE,)
    out = lp_solve(objective, region, "max")
    if out.optimum > 0:
        return True, out.witness[:d]
    return False, None


# ---------------------------------------------------------------------------
# double description


def _int_row(a: Sequence) -> list:
    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in a]


def _primitive(v: list) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _extreme_rays(rows: list, D: int) -> list:
    """Extreme rays of the pointed cone ``{y : a.y <= 0 for a in rows}``.

    Incremental double description with the combinatorial adjacency test.
    ``rows`` are integer vectors of length ``D``.
    """
    basis_idx = []
    for k in range(len(rows)):
        if rank([rows[i] for i in basis_idx + [k]]) == len(basis_idx) + 1:
            basis_idx.append(k)
            if len(basis_idx) == D:
                break
    if len(basis_idx) < D:
        raise InputError("cone is not pointed (constraints do not have full rank)")

    # initial simplicial cone: rays are the columns of -A0^{-1}
    A0 = [rows[k] for k in basis_idx]
    rays = []
    zeros = []
    all_bits = 0
    for k in basis_idx:
        all_bits |= 1 << k
    for pos, k in enumerate(basis_idx):
        e = [ZERO] * D
        e[pos] = -ONE
        col = solve_linear(A0, e)
        rays.append(_primitive(_int_row(col)))
        zeros.append(all_bits & ~(1 << k))

    done = set(basis_idx)
    for k, a in enumerate(rows):
        if k in done:
            continue
        done.add(k)
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        if not plus:
            zeros = [z | (1 << k) if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays, new_zeros = [], []
        for i, v in enumerate(vals):
            if v < 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | (1 << k))
        for p in plus:
            for q in minus:
                common = zeros[p] & zeros[q]
                if common.bit_count() < D - 2:
                    continue
                if any(
                    r != p and r != q and (zeros[r] & common) == common
                    for r in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], vals[q]
                ray = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(ray))
                new_zeros.append(common | (1 << k))
        rays, zeros = new_rays, new_zeros
    return rays


def _check_symmetric(points: Sequence, what: str):
    pts = set(points)
    missing = [p for p in pts if neg(p) not in pts]
    if missing:
        raise InputError(f"{what} list is not centrally symmetric: -({', '.join(map(str, missing[0]))}) missing")


def _bounded_vertices(rows: Sequence, dim: int) -> list:
    """Vertices of ``{x : a.x <= 1}``; caller guarantees boundedness."""
    cons = [_int_row(tuple(a) + (-ONE,)) for a in rows]
    cons.append([0] * dim + [-1])
    rays = _extreme_rays(cons, dim + 1)
    out = []
    for r in rays:
        if r[-1] <= 0:
            raise InputError("region is unbounded")
        s = r[-1]
        out.append(tuple(Fraction(v, s) for v in r[:dim]))
    return out


def _sorted_desc(items: Iterable) -> list:
    return sorted(set(items), reverse=True)


@dataclass(frozen=True)
class HullDescription:
    """Both descriptions of a symmetric polytope ``conv(vertices) = {x : f(x) <= 1}``."""

    vertices: tuple
    facets: tuple
    incidence: tuple  # incidence[i][j] is True iff facets[j](vertices[i]) == 1


def incidence_matrix(vertices: Sequence, facets: Sequence) -> tuple:
    return tuple(tuple(dot(f, v) == 1 for f in facets) for v in vertices)


def dual_description(vertices: Sequence[Sequence]) -> HullDescription:
    """Facet description of the convex hull of a symmetric point set.

    Duplicates and points that are not extreme are dropped (with a
    ``UserWarning``); facets are returned normalised to ``f(x) <= 1`` and
    sorted in descending lexicographic order.
    """
    pts = [vec(v) for v in vertices]
    if not pts:
        raise InputError("empty vertex list")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise InputError("vertices of different dimensions")
    uniq = list(dict.fromkeys(pts))
    if len(uniq) < len(pts):
        warnings.warn(f"dropped {len(pts) - len(uniq)} repeated vertices", stacklevel=2)
    if any(is_zero(p) for p in uniq):
        uniq = [p for p in uniq if not is_zero(p)]
        warnings.warn("dropped the origin from the vertex list", stacklevel=2)
    _check_symmetric(uniq, "vertex")
    if rank(uniq) < dim:
        raise InputError(
            "degenerate hull: the points span a lower-dimensional subspace, "
            "so the origin is not an interior point"
        )
    facets = _sorted_desc(_bounded_vertices(uniq, dim))
    extreme = []
    for p in uniq:
        tight = [f for f in facets if dot(f, p) == 1]
        if len(tight) >= dim and rank(tight) == dim:
            extreme.append(p)
    if len(extreme) < len(uniq):
        warnings.warn(
            f"dropped {len(uniq) - len(extreme)} points that are not extreme", stacklevel=2
        )
    return HullDescription(tuple(extreme), tuple(facets), incidence_matrix(extreme, facets))


def vertex_enumeration(facets: Sequence[Sequence]) -> list:
    """Vertices of ``{x : f(x) <= 1 for f in facets}`` for a symmetric facet list."""
    fs = [vec(f) for f in facets]
    if not fs:
        raise InputError("empty facet list")
    dim = len(fs[0])
    if any(len(f) != dim for f in fs):
        raise InputError("facets of different dimensions")
    uniq = list(dict.fromkeys(fs))
    _check_symmetric(uniq, "facet")
    if rank(uniq) < dim:
        raise InputError("unbounded region: facet functionals do not span the dual space")
    return _sorted_desc(_bounded_vertices(uniq, dim))
