"""Exact polyhedral kernel: types, rational LP, and geometric primitives.

Everything here is pure and exact: polyhedra are immutable, all arithmetic is
over Fraction, and every answer is certified (optimal LP values come with
points and duals, emptiness with Farkas vectors, unboundedness with rays).
Operations are safe to call concurrently on shared inputs; there is no hidden
mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg, simplex
from .errors import (
    EmptyPolyhedronError,
    InputError,
    InvariantViolationError,
    UnboundedPolyhedronError,
)
from .linalg import Mat, Vec, frac, vec

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

def _coerce_rows(rows, dim, what) -> tuple[tuple[Vec, Fraction], ...]:
    out = []
    for entry in rows:
        a, b = entry
        av = vec(a)
        if len(av) != dim:
            raise InputError(f"{what} row has length {len(av)}, expected {dim}")
        out.append((av, frac(b)))
    return tuple(out)


@dataclass(frozen=True)
class HPoly:
    """Polyhedron {x : a·x <= b for all ineqs, c·x = d for all eqs}.

    size() counts inequalities only; equations are free.
    """

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()
    ineq_labels: tuple | None = None
    eq_labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "ineqs", _coerce_rows(self.ineqs, self.dim, "inequality"))
        object.__setattr__(self, "eqs", _coerce_rows(self.eqs, self.dim, "equation"))
        for name, rows in (("ineq_labels", self.ineqs), ("eq_labels", self.eqs)):
            labels = getattr(self, name)
            if labels is not None:
                labels = tuple(str(s) for s in labels)
                if len(labels) != len(rows):
                    raise InputError(f"{name} has {len(labels)} entries for {len(rows)} rows")
                object.__setattr__(self, name, labels)

    def size(self) -> int:
        return len(self.ineqs)

    def contains(self, x: Sequence) -> bool:
        xv = vec(x)
        if len(xv) != self.dim:
            raise InputError("point dimension mismatch")
        return all(linalg.dot(a, xv) <= b for a, b in self.ineqs) and all(
            linalg.dot(c, xv) == d for c, d in self.eqs
        )

    def row_label(self, i: int) -> str:
        if self.ineq_labels is not None:
            return self.ineq_labels[i]
        return f"row{i}"


@dataclass(frozen=True)
class VPoly:
    """Polytope given as the convex hull of an explicit point list."""

    dim: int
    vertices: tuple = ()
    labels: tuple | None = None

    def __post_init__(self):
        pts = tuple(vec(p) for p in self.vertices)
        for p in pts:
            if len(p) != self.dim:
                raise InputError(f"vertex has length {len(p)}, expected {self.dim}")
        if len(set(pts)) != len(pts):
            raise InputError("duplicate vertices are not allowed")
        object.__setattr__(self, "vertices", pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(pts):
                raise InputError("label count does not match vertex count")
            object.__setattr__(self, "labels", labels)

    def point_label(self, j: int) -> str:
        if self.labels is not None:
            return self.labels[j]
        return f"pt{j}"


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix·x + offset, exact."""

    matrix: Mat
    offset: Vec

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.mat(self.matrix))
        object.__setattr__(self, "offset", vec(self.offset))
        if len(self.matrix) != len(self.offset):
            raise InputError("offset length must equal the matrix row count")

    @property
    def out_dim(self) -> int:
        return len(self.offset)

    @property
    def in_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, y: Sequence) -> Vec:
        yv = vec(y)
        if self.matrix and len(yv) != self.in_dim:
            raise InputError("argument dimension mismatch")
        return tuple(linalg.dot(row, yv) + o for row, o in zip(self.matrix, self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """(self ∘ inner)(x) = self(inner(x)); composition is associative."""
        m = linalg.mat_mul(self.matrix, inner.matrix)
        off = vec(linalg.vadd(linalg.mat_vec(self.matrix, inner.offset), self.offset))
        return AffineMap(m, off)

    @staticmethod
    def linear(matrix) -> "AffineMap":
        m = linalg.mat(matrix)
        return AffineMap(m, linalg.zeros(len(m)))

    @staticmethod
    def coordinate_projection(in_dim: int, coords: Sequence[int]) -> "AffineMap":
        rows = [linalg.unit(in_dim, c) for c in coords]
        return AffineMap(tuple(rows), linalg.zeros(len(rows)))


@dataclass(frozen=True)
class LPResult:
    """Exact LP outcome.

    optimal:    optimum and primal_point are set; dual_certificate is
                (y per inequality, z per equation) with A^T y + C^T z = c,
                b·y + d·z = optimum, and y >= 0 for max / y <= 0 for min.
    infeasible: dual_certificate is a Farkas pair (y >= 0 on inequalities)
                with y^T A + z^T C = 0 and y^T b + z^T d < 0.
    unbounded:  primal_point is feasible and dual_certificate is a ray r with
                A r <= 0, C r = 0 and c·r improving for the given sense.
    """

    status: str
    optimum: Fraction | None = None
    primal_point: Vec | None = None
    dual_certificate: Vec | None = None


@dataclass(frozen=True)
class PolyEqualResult:
    equal: bool
    witness: Vec | None = None
    witness_side: int | None = None  # 1 or 2: which input contains the witness

    def __bool__(self) -> bool:
        return self.equal


# ---------------------------------------------------------------------------
# LP layer
# ---------------------------------------------------------------------------

def _assemble_standard(dim, ineqs, eqs, cost_min, nonneg):
    """Build min-form standard data; returns (rows, rhs, cost, var_cols)."""
    var_cols = []
    ncol = 0
    for j in range(dim):
        if nonneg[j]:
            var_cols.append((ncol, None))
            ncol += 1
        else:
            var_cols.append((ncol, ncol + 1))
            ncol += 2
    nslack = len(ineqs)
    total = ncol + nslack
    rows = []
    rhs = []
    for s, (a, b) in enumerate(ineqs):
        row = [ZERO] * total
        for j, coef in enumerate(a):
            if coef:
                p, q = var_cols[j]
                row[p] = coef
                if q is not None:
                    row[q] = -coef
        row[ncol + s] = ONE
        rows.append(row)
        rhs.append(b)
    for c, d in eqs:
        row = [ZERO] * total
        for j, coef in enumerate(c):
            if coef:
                p, q = var_cols[j]
                row[p] = coef
                if q is not None:
                    row[q] = -coef
        rows.append(row)
        rhs.append(d)
    cost = [ZERO] * total
    for j, cj in enumerate(cost_min):
        if cj:
            p, q = var_cols[j]
            cost[p] = cj
            if q is not None:
                cost[q] = -cj
    return rows, rhs, cost, var_cols


def _recover_vector(zvec, var_cols, dim):
    out = []
    for j in range(dim):
        p, q = var_cols[j]
        out.append(zvec[p] - zvec[q] if q is not None else zvec[p])
    return tuple(out)


def lp_solve(objective: Sequence, sense: str, poly: HPoly) -> LPResult:
    """Exact LP over an HPoly with verifiable certificates.

    sense is "max" or "min".  See LPResult for certificate conventions.
    """
    if sense not in ("max", "min"):
        raise InputError("sense must be 'max' or 'min'")
    c = vec(objective)
    if len(c) != poly.dim:
        raise InputError(f"objective has length {len(c)}, expected {poly.dim}")
    cost_min = [-x for x in c] if sense == "max" else list(c)
    nonneg = [False] * poly.dim
    rows, rhs, cost, var_cols = _assemble_standard(poly.dim, poly.ineqs, poly.eqs, cost_min, nonneg)
    res = simplex.solve_standard(rows, rhs, cost, want_dual=True)
    ni = len(poly.ineqs)
    if res.status == simplex.INFEASIBLE:
        far = res.farkas
        cert = tuple(-y for y in far)  # lambda >= 0 on ineqs, free on eqs
        return LPResult(status=INFEASIBLE, dual_certificate=cert)
    if res.status == simplex.UNBOUNDED:
        point = _recover_vector(res.point, var_cols, poly.dim)
        ray = _recover_vector(res.ray, var_cols, poly.dim)
        return LPResult(status=UNBOUNDED, primal_point=point, dual_certificate=ray)
    point = _recover_vector(res.point, var_cols, poly.dim)
    if sense == "max":
        optimum = -res.value
        dual = tuple(-y for y in res.dual)
    else:
        optimum = res.value
        dual = tuple(res.dual)
    return LPResult(status=OPTIMAL, optimum=optimum, primal_point=point, dual_certificate=dual)


# -- fast internal path: presolve, no dual bookkeeping ----------------------

class _Reduction:
    """Presolve record: eliminated variables as affine functions of survivors."""

    def __init__(self, dim):
        self.dim = dim
        self.alive = list(range(dim))
        self.elim: list[tuple[int, list[Fraction], Fraction]] = []
        self.infeasible = False
        self.ineqs: list[tuple[list[Fraction], Fraction]] = []
        self.eqs: list[tuple[list[Fraction], Fraction]] = []
        self.obj: list[Fraction] = []
        self.obj_const = ZERO
        self.nonneg: list[bool] = []

    def back_point(self, xr) -> Vec:
        full: list[Fraction | None] = [None] * self.dim
        for pos, j in enumerate(self.alive):
            full[j] = xr[pos]
        for j, coeffs, const in reversed(self.elim):
            s = const
            for k, ck in enumerate(coeffs):
                if ck:
                    s += ck * full[k]
            full[j] = s
        return tuple(full)

    def back_ray(self, rr) -> Vec:
        full: list[Fraction | None] = [None] * self.dim
        for pos, j in enumerate(self.alive):
            full[j] = rr[pos]
        for j, coeffs, _const in reversed(self.elim):
            s = ZERO
            for k, ck in enumerate(coeffs):
                if ck:
                    s += ck * full[k]
            full[j] = s
        return tuple(full)


def _presolve(poly: HPoly, objective: Sequence[Fraction]) -> _Reduction:
    dim = poly.dim
    red = _Reduction(dim)
    ineqs = [(list(a), b) for a, b in poly.ineqs]
    eqs = [(list(c), d) for c, d in poly.eqs]
    obj = list(objective)
    obj_const = ZERO
    alive = [True] * dim
    nonneg = [False] * dim
    elim: list[tuple[int, list[Fraction], Fraction]] = []

    def substitute(j, expr, const):
        nonlocal obj_const
        for rows in (ineqs, eqs):
            for idx, (a, b) in enumerate(rows):
                f = a[j]
                if f:
                    a[j] = ZERO
                    for k, ek in enumerate(expr):
                        if ek:
                            a[k] += f * ek
                    rows[idx] = (a, b - f * const)
        f = obj[j]
        if f:
            obj[j] = ZERO
            for k, ek in enumerate(expr):
                if ek:
                    obj[k] += f * ek
            obj_const += f * const
        if nonneg[j]:
            # keep the sign constraint of the eliminated variable: -expr <= const
            ineqs.append(([-ek for ek in expr], const))
        alive[j] = False
        elim.append((j, expr, const))

    changed = True
    while changed:
        changed = False
        kept_ineqs = []
        for a, b in ineqs:
            support = [j for j in range(dim) if alive[j] and a[j]]
            if not support:
                if b < 0:
                    red.infeasible = True
                    return red
                continue
            if len(support) == 1 and b == 0 and a[support[0]] < 0:
                nonneg[support[0]] = True
                continue
            kept_ineqs.append((a, b))
        ineqs = kept_ineqs
        # one elimination per pass; substitute() mutates rows in place, so the
        # scan restarts to avoid acting on stale copies
        for idx, (c, d) in enumerate(eqs):
            support = [j for j in range(dim) if alive[j] and c[j]]
            if len(support) > 2:
                continue
            del eqs[idx]
            if not support:
                if d != 0:
                    red.infeasible = True
                    return red
            elif len(support) == 1:
                j = support[0]
                substitute(j, [ZERO] * dim, d / c[j])
            else:
                k, j = support  # eliminate the higher index
                expr = [ZERO] * dim
                expr[k] = -c[k] / c[j]
                substitute(j, expr, d / c[j])
            changed = True
            break

    red.alive = [j for j in range(dim) if alive[j]]
    red.elim = elim
    red.ineqs = [([a[j] for j in red.alive], b) for a, b in ineqs]
    red.eqs = [([c[j] for j in red.alive], d) for c, d in eqs]
    red.obj = [obj[j] for j in red.alive]
    red.obj_const = obj_const
    red.nonneg = [nonneg[j] for j in red.alive]
    return red


@dataclass(frozen=True)
class FastLP:
    status: str
    value: Fraction | None = None
    point: Vec | None = None
    ray: Vec | None = None


def optimize(poly: HPoly, objective: Sequence, sense: str, presolve: bool = True) -> FastLP:
    """Exact optimum and point without dual bookkeeping (internal fast path)."""
    c = vec(objective)
    if len(c) != poly.dim:
        raise InputError("objective dimension mismatch")
    if presolve:
        red = _presolve(poly, c)
        if red.infeasible:
            return FastLP(status=INFEASIBLE)
        k = len(red.alive)
        cost_min = [-x for x in red.obj] if sense == "max" else list(red.obj)
        rows, rhs, cost, var_cols = _assemble_standard(k, red.ineqs, red.eqs, cost_min, red.nonneg)
        res = simplex.solve_standard(rows, rhs, cost)
        if res.status == simplex.INFEASIBLE:
            return FastLP(status=INFEASIBLE)
        if res.status == simplex.UNBOUNDED:
            pr = _recover_vector(res.point, var_cols, k)
            rr = _recover_vector(res.ray, var_cols, k)
            return FastLP(status=UNBOUNDED, point=red.back_point(pr), ray=red.back_ray(rr))
        pr = _recover_vector(res.point, var_cols, k)
        value = (-res.value if sense == "max" else res.value) + red.obj_const
        return FastLP(status=OPTIMAL, value=value, point=red.back_point(pr))
    r = lp_solve(c, sense, poly)
    if r.status == OPTIMAL:
        return FastLP(status=OPTIMAL, value=r.optimum, point=r.primal_point)
    if r.status == UNBOUNDED:
        return FastLP(status=UNBOUNDED, point=r.primal_point, ray=r.dual_certificate)
    return FastLP(status=INFEASIBLE)


def feasible_point(poly: HPoly) -> Vec | None:
    """Any exact point of the polyhedron, or None when it is empty."""
    r = optimize(poly, linalg.zeros(poly.dim), "min")
    return r.point if r.status != INFEASIBLE else None


def lex_min_point(poly: HPoly) -> Vec:
    """Lexicographically smallest point (coordinate-by-coordinate LP fixing)."""
    current = poly
    fixed: list[Fraction] = []
    for j in range(poly.dim):
        r = optimize(current, linalg.unit(poly.dim, j), "min")
        if r.status == INFEASIBLE:
            raise EmptyPolyhedronError("polyhedron is empty")
        if r.status == UNBOUNDED:
            raise UnboundedPolyhedronError(f"coordinate {j} unbounded below")
        fixed.append(r.value)
        current = HPoly(
            poly.dim,
            current.ineqs,
            tuple(current.eqs) + ((linalg.unit(poly.dim, j), r.value),),
        )
    return tuple(fixed)


# ---------------------------------------------------------------------------
# Affine hull
# ---------------------------------------------------------------------------

def _affine_hull_data(poly: HPoly):
    """Returns (equations, feasible point).  Raises on empty input."""
    dim = poly.dim
    # One LP decides full-dimensionality: maximize the common slack eps.
    eps_rows = [(tuple(a) + (ONE,), b) for a, b in poly.ineqs]
    eps_rows.append((linalg.unit(dim + 1, dim), ONE))
    eps_eqs = [(tuple(c) + (ZERO,), d) for c, d in poly.eqs]
    r = optimize(HPoly(dim + 1, eps_rows, eps_eqs), linalg.unit(dim + 1, dim), "max")
    if r.status == UNBOUNDED:
        raise InvariantViolationError("eps objective is capped at 1")
    if r.status == INFEASIBLE or r.value < 0:
        raise EmptyPolyhedronError("polyhedron is empty")
    point = tuple(r.point[:dim])
    implicit = [] if r.value > 0 else _implicit_equalities(poly)
    rows = [(tuple(c), d) for c, d in poly.eqs] + implicit
    if not rows:
        return [], point
    reduced, pivots = linalg.rref(linalg.mat([tuple(a) + (b,) for a, b in rows]))
    eqs = []
    for row in reduced:
        if any(row):
            a, b = linalg.canon_eq(row[:-1], row[-1])
            eqs.append((a, b))
    return eqs, point


def _implicit_equalities(poly: HPoly):
    found = []
    for a, b in poly.ineqs:
        r = optimize(poly, a, "min")
        if r.status == OPTIMAL and r.value == b:
            found.append((tuple(a), b))
    return found


def affine_hull(poly: HPoly) -> list[tuple[Vec, Fraction]]:
    """Irredundant equation system describing aff(poly).

    dim(aff) = poly.dim - len(result).  Raises EmptyPolyhedronError on empty
    input.  Rows are canonical: coprime integer coefficients, first nonzero
    coefficient positive.
    """
    eqs, _ = _affine_hull_data(poly)
    return eqs


# ---------------------------------------------------------------------------
# Double description vertex enumeration
# ---------------------------------------------------------------------------

def _row_value(a, v):
    s = ZERO
    for ai, vi in zip(a, v):
        if ai and vi:
            s += ai * vi
    return s


def _dd_run(k: int, all_rows, verts, tights, start_idx: int):
    """Shared double-description insertion loop.

    verts/tights describe the exact vertex set of the polytope cut out by
    all_rows[:start_idx]; rows from start_idx on are inserted one by one.
    Adjacency is the exact combinatorial test (no third vertex is tight on
    the common tight set), with the cardinality prefilter |common| >= k-1.
    """

    def tight_mask(v, upto):
        m = 0
        for idx in range(upto):
            a, b = all_rows[idx]
            if _row_value(a, v) == b:
                m |= 1 << idx
        return m

    kmin = k - 1
    for idx in range(start_idx, len(all_rows)):
        a, b = all_rows[idx]
        slacks = [b - _row_value(a, v) for v in verts]
        if all(s >= 0 for s in slacks):
            bit = 1 << idx
            for i, s in enumerate(slacks):
                if s == 0:
                    tights[i] |= bit
            continue
        inside = [i for i, s in enumerate(slacks) if s > 0]
        on = [i for i, s in enumerate(slacks) if s == 0]
        outside = [i for i, s in enumerate(slacks) if s < 0]
        new_pts: dict[Vec, int] = {}
        for i in inside:
            ti = tights[i]
            si = slacks[i]
            vi = verts[i]
            for j in outside:
                common = ti & tights[j]
                if common.bit_count() < kmin:
                    continue
                adjacent = True
                for l, tl in enumerate(tights):
                    if (tl & common) == common and l != i and l != j:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                alpha = si / (si - slacks[j])
                pt = tuple(u + alpha * (w - u) for u, w in zip(vi, verts[j]))
                if pt not in new_pts:
                    new_pts[pt] = tight_mask(pt, idx + 1)
        keep_idx = inside + on
        keep_idx.sort()
        verts[:] = [verts[i] for i in keep_idx] + list(new_pts.keys())
        bit = 1 << idx
        tights[:] = [tights[i] | (bit if slacks[i] == 0 else 0) for i in keep_idx] + list(
            new_pts.values()
        )
    return verts


def _dd_polytope(k: int, lo, hi, rows):
    """Vertices of a full-dimensional polytope in R^k, given bounds lo/hi on
    each coordinate and its inequality rows.  Starts from a simplex that
    strictly contains the box [lo-1, hi]."""
    big = sum(hi, ZERO) + ONE
    base: list[tuple[Vec, Fraction]] = []
    for i in range(k):
        a = [ZERO] * k
        a[i] = -ONE
        base.append((tuple(a), ONE - lo[i]))
    base.append(((ONE,) * k, big))
    all_rows = base + [(vec(a), frac(b)) for a, b in rows]

    v0 = tuple(l - 1 for l in lo)
    spread = big - sum(v0, ZERO)
    verts: list[Vec] = [v0]
    for i in range(k):
        w = list(v0)
        w[i] += spread
        verts.append(tuple(w))
    tights = []
    for v in verts:
        m = 0
        for idx in range(len(base)):
            a, b = all_rows[idx]
            if _row_value(a, v) == b:
                m |= 1 << idx
        tights.append(m)
    return _dd_run(k, all_rows, verts, tights, len(base))


def vertices(poly: HPoly) -> VPoly:
    """Exact vertex enumeration of a bounded nonempty HPoly.

    Double description over a parametrization of the affine hull; raises
    EmptyPolyhedronError / UnboundedPolyhedronError with LP certificates
    behind the scenes.
    """
    eqs, x0 = _affine_hull_data(poly)
    dim = poly.dim
    if eqs:
        null = linalg.nullspace(linalg.mat([a for a, _ in eqs]))
    else:
        null = [linalg.unit(dim, i) for i in range(dim)]
    k = len(null)
    if k == 0:
        return VPoly(dim, (x0,))
    # inequality rows in t-coordinates: x = x0 + sum t_j * null[j]
    t_rows = []
    seen = set()
    for a, b in poly.ineqs:
        at = tuple(linalg.dot(a, n) for n in null)
        bt = b - linalg.dot(a, x0)
        if not any(at):
            if bt < 0:
                raise InvariantViolationError("feasible point violates a row")
            continue
        at, bt = linalg.canon_ineq(at, bt)
        if (at, bt) not in seen:
            seen.add((at, bt))
            t_rows.append((at, bt))
    tp = HPoly(k, t_rows)
    lo = []
    hi = []
    for i in range(k):
        e = linalg.unit(k, i)
        up = optimize(tp, e, "max")
        if up.status == UNBOUNDED:
            raise UnboundedPolyhedronError(f"unbounded in direction {i}")
        dn = optimize(tp, e, "min")
        if dn.status == UNBOUNDED:
            raise UnboundedPolyhedronError(f"unbounded in direction {i}")
        lo.append(dn.value)
        hi.append(up.value)
    t_verts = _dd_polytope(k, lo, hi, t_rows)
    out = []
    for t in t_verts:
        x = list(x0)
        for j, tj in enumerate(t):
            if tj:
                x = [xi + tj * nj for xi, nj in zip(x, null[j])]
        out.append(tuple(x))
    out.sort()
    return VPoly(dim, tuple(out))


# ---------------------------------------------------------------------------
# Convex hull (facet enumeration) via polarity
# ---------------------------------------------------------------------------

def hull(points: VPoly) -> HPoly:
    """Irredundant H-description (facets + affine-hull equations) of conv(points)."""
    if not points.vertices:
        raise InputError("hull of an empty point list")
    dim = points.dim
    pts = list(points.vertices)
    if len(pts) == 1:
        p = pts[0]
        eqs = tuple(linalg.canon_eq(linalg.unit(dim, i), p[i]) for i in range(dim))
        return HPoly(dim, (), eqs)
    p0 = pts[0]
    diffs = [linalg.vsub(p, p0) for p in pts[1:]]
    basis_idx = linalg.independent_rows(linalg.mat(diffs))
    dirs = [diffs[i] for i in basis_idx]
    k = len(dirs)
    if k == 0:
        raise InvariantViolationError("distinct points with no direction span")
    eqs = []
    if k < dim:
        for c in linalg.nullspace(linalg.mat(dirs)):
            eqs.append(linalg.canon_eq(c, linalg.dot(c, p0)))
    # coordinates of every point in the dirs-basis
    n_mat = linalg.mat([[dirs[j][i] for j in range(k)] for i in range(dim)])
    coords = []
    for p in pts:
        t = linalg.solve(n_mat, linalg.vsub(p, p0))
        if t is None:
            raise InvariantViolationError("point outside its own affine hull")
        coords.append(t)
    # Polar dual around the centroid of an affinely independent point subset:
    # the polar of that point simplex is again a simplex, which seeds the
    # double description with real geometry (no artificial bounding box).
    base_pts = [0] + [i + 1 for i in basis_idx]
    centroid = tuple(
        sum(coords[i][r] for i in base_pts) / (k + 1) for r in range(k)
    )
    order = base_pts + [i for i in range(len(coords)) if i not in set(base_pts)]
    all_rows = [(linalg.vsub(coords[i], centroid), ONE) for i in order]
    init_verts: list[Vec] = []
    init_tights: list[int] = []
    for leave in range(k + 1):
        sys_rows = [all_rows[j][0] for j in range(k + 1) if j != leave]
        y = linalg.solve(linalg.mat(sys_rows), (ONE,) * k)
        if y is None:
            raise InvariantViolationError("polar simplex is degenerate")
        mask = 0
        for j in range(k + 1):
            val = _row_value(all_rows[j][0], y)
            if val == ONE:
                mask |= 1 << j
            elif val > ONE:
                raise InvariantViolationError("polar simplex vertex infeasible")
        init_verts.append(y)
        init_tights.append(mask)
    dual_verts = _dd_run(k, all_rows, init_verts, init_tights, k + 1)
    lmat = linalg.left_inverse(n_mat)
    rows = []
    for y in dual_verts:
        if not any(y):
            raise InvariantViolationError("origin listed as a polar vertex")
        a_t = y
        a_x = tuple(linalg.dot(a_t, col) for col in zip(*lmat)) if dim else ()
        # a_t·t <= 1 + a_t·centroid with t = L(x - p0)
        rhs = ONE + linalg.dot(a_t, centroid) + linalg.dot(a_x, p0)
        rows.append(linalg.canon_ineq(a_x, rhs))
    rows.sort()
    eqs.sort()
    return HPoly(dim, tuple(rows), tuple(eqs))


# ---------------------------------------------------------------------------
# Redundancy removal, equality test, membership
# ---------------------------------------------------------------------------

def remove_redundancy(poly: HPoly) -> HPoly:
    """Drop inequalities implied by the rest; the point set never changes.

    Each surviving row is certified non-redundant by an LP over the others.
    Raises EmptyPolyhedronError on empty input.
    """
    if feasible_point(poly) is None:
        raise EmptyPolyhedronError("polyhedron is empty")
    rows = list(poly.ineqs)
    labels = list(poly.ineq_labels) if poly.ineq_labels is not None else None
    keep = [True] * len(rows)
    for i, (a, b) in enumerate(rows):
        rest = tuple(rows[j] for j in range(len(rows)) if keep[j] and j != i)
        r = optimize(HPoly(poly.dim, rest, poly.eqs), a, "max")
        if r.status == OPTIMAL and r.value <= b:
            keep[i] = False
        elif r.status == INFEASIBLE:
            raise InvariantViolationError("relaxation of a nonempty polyhedron is empty")
    new_rows = tuple(row for row, k in zip(rows, keep) if k)
    new_labels = tuple(l for l, k in zip(labels, keep) if k) if labels is not None else None
    return HPoly(poly.dim, new_rows, poly.eqs, new_labels, poly.eq_labels)


def _point_in_vpoly(x: Vec, v: VPoly) -> bool:
    """Exact membership of x in conv(v) by feasibility LP over the weights."""
    nv = len(v.vertices)
    eqs = []
    for r in range(v.dim):
        eqs.append((tuple(p[r] for p in v.vertices), x[r]))
    eqs.append(((ONE,) * nv, ONE))
    ineqs = [(tuple(-ONE if j == i else ZERO for j in range(nv)), ZERO) for i in range(nv)]
    return feasible_point(HPoly(nv, ineqs, eqs)) is not None


def is_vertex(points: VPoly, index: int) -> bool:
    """True iff points.vertices[index] is a vertex of the hull of all points."""
    rest = VPoly(
        points.dim,
        tuple(p for i, p in enumerate(points.vertices) if i != index),
    )
    if not rest.vertices:
        return True
    return not _point_in_vpoly(points.vertices[index], rest)


def _hpoly_subset(a: HPoly, b: HPoly):
    """Is the point set of a contained in b?  Returns (bool, witness in a\\b)."""
    fa = feasible_point(a)
    if fa is None:
        return True, None
    checks = [(row, rhs, "le") for row, rhs in b.ineqs]
    for c, d in b.eqs:
        checks.append((c, d, "eq"))
    for rowvec, rhs, kind in checks:
        for sense, bad in (("max", "gt"), ("min", "lt")) if kind == "eq" else (("max", "gt"),):
            r = optimize(a, rowvec, sense)
            if r.status == UNBOUNDED:
                # walk along the improving ray until this row of b is violated
                base = linalg.dot(rowvec, r.point)
                step = linalg.dot(rowvec, r.ray)
                t = max((rhs - base) / step + 1, ONE)
                witness = tuple(p + t * q for p, q in zip(r.point, r.ray))
                return False, witness
            if r.status == OPTIMAL:
                if bad == "gt" and r.value > rhs:
                    return False, r.point
                if bad == "lt" and r.value < rhs:
                    return False, r.point
    return True, None


def poly_equal(p1: HPoly | VPoly, p2: HPoly | VPoly) -> PolyEqualResult:
    """Do two descriptions define the same point set?

    On failure the result carries a point lying in exactly one of them and
    which side (1 or 2) contains it.
    """
    if p1.dim != p2.dim:
        raise InputError("dimension mismatch")

    def empty(p):
        if isinstance(p, VPoly):
            return not p.vertices
        return feasible_point(p) is None

    e1, e2 = empty(p1), empty(p2)
    if e1 or e2:
        if e1 and e2:
            return PolyEqualResult(True)
        side = 2 if e1 else 1
        pt = p2 if e1 else p1
        w = pt.vertices[0] if isinstance(pt, VPoly) else feasible_point(pt)
        return PolyEqualResult(False, w, side)

    if isinstance(p1, VPoly) and isinstance(p2, VPoly):
        for v in p1.vertices:
            if not _point_in_vpoly(v, p2):
                return PolyEqualResult(False, v, 1)
        for v in p2.vertices:
            if not _point_in_vpoly(v, p1):
                return PolyEqualResult(False, v, 2)
        return PolyEqualResult(True)

    def check_v_in_h(v: VPoly, h: HPoly, side):
        for p in v.vertices:
            if not h.contains(p):
                return PolyEqualResult(False, p, side)
        return None

    if isinstance(p1, VPoly):
        bad = check_v_in_h(p1, p2, 1)
        if bad:
            return bad
        ok, w = _hpoly_subset(p2, hull(p1))
        if not ok:
            return PolyEqualResult(False, w, 2)
        return PolyEqualResult(True)
    if isinstance(p2, VPoly):
        bad = check_v_in_h(p2, p1, 2)
        if bad:
            return bad
        ok, w = _hpoly_subset(p1, hull(p2))
        if not ok:
            return PolyEqualResult(False, w, 1)
        return PolyEqualResult(True)

    ok, w = _hpoly_subset(p1, p2)
    if not ok:
        return PolyEqualResult(False, w, 1)
    ok, w = _hpoly_subset(p2, p1)
    if not ok:
        return PolyEqualResult(False, w, 2)
    return PolyEqualResult(True)


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection
# ---------------------------------------------------------------------------

def fm_project(poly: HPoly, keep: Iterable[int]) -> HPoly:
    """Coordinate projection by Fourier-Motzkin elimination.

    keep holds 0-based coordinate indices; the output is over those
    coordinates in ascending order.  Redundant rows are pruned by LP after
    every elimination step to contain the blowup.
    """
    keep_set = sorted(set(keep))
    if any(j < 0 or j >= poly.dim for j in keep_set):
        raise InputError("keep indices out of range")
    dim = poly.dim
    ineqs = [(list(a), b) for a, b in poly.ineqs]
    eqs = [(list(c), d) for c, d in poly.eqs]
    to_drop = [j for j in range(dim) if j not in keep_set]
    empty = False

    def prune():
        nonlocal ineqs, eqs, empty
        kept_eqs = []
        for c, d in eqs:
            if any(c):
                kept_eqs.append((c, d))
            elif d != 0:
                empty = True
        eqs = kept_eqs
        # cheap passes first: zero rows, exact duplicates, dominated rhs
        best: dict[tuple, Fraction] = {}
        for a, b in ineqs:
            if not any(a):
                if b < 0:
                    empty = True
                continue
            ca, cb = linalg.canon_ineq(a, b)
            key = ca
            if key not in best or cb < best[key]:
                best[key] = cb
        if empty:
            ineqs = [([ZERO] * dim, Fraction(-1))]
            eqs = []
            return
        ineqs = [(list(a), b) for a, b in sorted(best.items())]
        current = HPoly(dim, [(tuple(a), b) for a, b in ineqs], [(tuple(c), d) for c, d in eqs])
        if feasible_point(current) is None:
            empty = True
            ineqs = [([ZERO] * dim, Fraction(-1))]
            eqs = []
            return
        keep_flags = [True] * len(ineqs)
        for i, (a, b) in enumerate(ineqs):
            rest = tuple(
                (tuple(ineqs[j][0]), ineqs[j][1])
                for j in range(len(ineqs))
                if keep_flags[j] and j != i
            )
            r = optimize(HPoly(dim, rest, [(tuple(c), d) for c, d in eqs]), tuple(a), "max")
            if r.status == OPTIMAL and r.value <= b:
                keep_flags[i] = False
        ineqs = [row for row, k in zip(ineqs, keep_flags) if k]

    while to_drop and not empty:
        # substitute via an equation when one mentions a variable to eliminate
        sub = None
        for ei, (c, d) in enumerate(eqs):
            for j in to_drop:
                if c[j]:
                    sub = (ei, j)
                    break
            if sub:
                break
        if sub:
            ei, j = sub
            c, d = eqs.pop(ei)
            cj = c[j]
            for rows in (ineqs, eqs):
                for idx, (a, b) in enumerate(rows):
                    f = a[j]
                    if f:
                        ratio = f / cj
                        na = [ak - ratio * ck for ak, ck in zip(a, c)]
                        na[j] = ZERO
                        rows[idx] = (na, b - ratio * d)
            to_drop.remove(j)
            prune()
            continue
        # plain FM step on the cheapest variable
        best_j = None
        best_cost = None
        for j in to_drop:
            npos = sum(1 for a, _ in ineqs if a[j] > 0)
            nneg = sum(1 for a, _ in ineqs if a[j] < 0)
            cost = (npos * nneg, j)
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_j = j
        j = best_j
        pos = [(a, b) for a, b in ineqs if a[j] > 0]
        neg = [(a, b) for a, b in ineqs if a[j] < 0]
        zero = [(a, b) for a, b in ineqs if a[j] == 0]
        new_rows = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                lp = -an[j]
                ln = ap[j]
                row = [lp * x + ln * y for x, y in zip(ap, an)]
                row[j] = ZERO
                new_rows.append((row, lp * bp + ln * bn))
        ineqs = new_rows
        to_drop.remove(j)
        prune()

    out_ineqs = []
    for a, b in ineqs:
        if any(a[j] for j in range(dim) if j not in keep_set):
            raise InvariantViolationError("eliminated variable survived")
        out_ineqs.append((tuple(a[j] for j in keep_set), b))
    out_eqs = []
    for c, d in eqs:
        if any(c[j] for j in range(dim) if j not in keep_set):
            raise InvariantViolationError("eliminated variable survived in equation")
        row = (tuple(c[j] for j in keep_set), d)
        if any(row[0]):
            out_eqs.append(linalg.canon_eq(*row))
        elif d != 0:
            out_ineqs = [((ZERO,) * len(keep_set), Fraction(-1))]
            out_eqs = []
            break
    return HPoly(len(keep_set), tuple(out_ineqs), tuple(out_eqs))
