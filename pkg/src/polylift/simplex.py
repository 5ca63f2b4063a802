"""Exact two-phase primal simplex on standard-form problems.

Solves  min c·z  subject to  A z = b,  z >= 0  over Fractions, with Bland's
smallest-index rule for both the entering and the leaving variable, which
guarantees termination without any tolerance (every comparison is exact).

Artificial variables are kept implicit: phase 1 starts from the all-artificial
basis, their columns are never stored, and after phase 1 remaining zero-level
artificials are pivoted out or their (dependent) rows dropped.  Dual vectors
and Farkas certificates are recovered at the end by solving B^T y = c_B
against a pristine copy of the constraint matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InvariantViolationError

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class StandardResult:
    status: str
    point: list[Fraction] | None = None
    value: Fraction | None = None
    dual: list[Fraction] | None = None    # optimal: y per input row
    ray: list[Fraction] | None = None     # unbounded: improving ray in z
    farkas: list[Fraction] | None = None  # infeasible: y with y^T A <= 0, y^T b > 0


def _pivot(tab, rhs, objs, objvals, basis, r, c):
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        inv = ONE / piv
        tab[r] = prow = [x * inv if x else x for x in prow]
        if rhs[r]:
            rhs[r] *= inv
    nz = [j for j, x in enumerate(prow) if x]
    pb = rhs[r]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            if pb:
                rhs[i] -= f * pb
    for k, obj in enumerate(objs):
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
            if pb:
                objvals[k] -= f * pb
    basis[r] = c


def _run_phase(tab, rhs, objs, objvals, basis, n):
    """Bland pivots until objs[0] is optimal.

    Returns None on optimality, or the entering column index if unbounded.
    """
    obj = objs[0]
    while True:
        enter = next((j for j in range(n) if obj[j] < 0), None)
        if enter is None:
            return None
        leave = None
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return enter
        _pivot(tab, rhs, objs, objvals, basis, leave, enter)


def _basis_dual(rows0, row_ids, basis, cb):
    """Solve B^T y = c_B for the given basis against the pristine rows."""
    bt = []
    for v in basis:
        if v < 0:
            raise InvariantViolationError("negative basis id")
        bt.append(tuple(rows0[ri][v] for ri in row_ids))
    y = linalg.solve(linalg.mat(bt), linalg.vec(cb))
    if y is None:
        raise InvariantViolationError("singular basis in dual recovery")
    return y


def solve_standard(a_rows, b, cost, want_dual: bool = False) -> StandardResult:
    """Solve min cost·z s.t. a_rows z = b, z >= 0 exactly.

    `a_rows` is a sequence of coefficient lists (copied), `b` and `cost`
    sequences of Fractions.  Dual/Farkas vectors index the rows as given.
    """
    m = len(a_rows)
    n = len(cost)
    tab = [list(row) for row in a_rows]
    rhs = list(b)
    flip = [False] * m
    for i in range(m):
        if rhs[i] < 0:
            tab[i] = [-x for x in tab[i]]
            rhs[i] = -rhs[i]
            flip[i] = True
    rows0 = [row[:] for row in tab]  # pristine normalized copy for dual solves
    basis = [n + i for i in range(m)]  # artificial ids n .. n+m-1
    row_ids = list(range(m))           # original row index per surviving row

    # Phase 1: minimize the sum of artificials.
    obj1 = [ZERO] * n
    for row in tab:
        for j, x in enumerate(row):
            if x:
                obj1[j] -= x
    objs = [obj1]
    objvals = [-sum(rhs)]
    hit = _run_phase(tab, rhs, objs, objvals, basis, n)
    if hit is not None:
        raise InvariantViolationError("phase 1 cannot be unbounded")
    if -objvals[0] > 0:
        farkas = None
        if want_dual:
            # Artificial basis columns of the normalized system are units.
            bt = []
            for v in basis:
                if v >= n:
                    bt.append(linalg.unit(m, v - n))
                else:
                    bt.append(tuple(rows0[i][v] for i in range(m)))
            cb = [ONE if v >= n else ZERO for v in basis]
            y0 = linalg.solve(linalg.mat(bt), linalg.vec(cb))
            if y0 is None:
                raise InvariantViolationError("singular basis in Farkas recovery")
            farkas = [(-y if flip[i] else y) for i, y in enumerate(y0)]
        return StandardResult(status=INFEASIBLE, farkas=farkas)

    # Drive zero-level artificials out of the basis; drop dependent rows.
    i = 0
    while i < len(tab):
        if basis[i] >= n:
            enter = next((j for j in range(n) if tab[i][j]), None)
            if enter is None:
                del tab[i], rhs[i], basis[i], row_ids[i]
                continue
            _pivot(tab, rhs, objs, objvals, basis, i, enter)
        i += 1

    # Phase 2 on the real objective.
    obj2 = list(cost)
    objval2 = ZERO
    for i, v in enumerate(basis):
        cv = cost[v]
        if cv:
            row = tab[i]
            for j, x in enumerate(row):
                if x:
                    obj2[j] -= cv * x
            objval2 -= cv * rhs[i]
    objs = [obj2]
    objvals = [objval2]
    hit = _run_phase(tab, rhs, objs, objvals, basis, n)

    if hit is not None:
        ray = [ZERO] * n
        ray[hit] = ONE
        for i, v in enumerate(basis):
            if tab[i][hit]:
                ray[v] = -tab[i][hit]
        point = [ZERO] * n
        for i, v in enumerate(basis):
            point[v] = rhs[i]
        return StandardResult(status=UNBOUNDED, point=point, ray=ray)

    point = [ZERO] * n
    for i, v in enumerate(basis):
        point[v] = rhs[i]
    value = sum((c * x for c, x in zip(cost, point) if c and x), ZERO)
    dual = None
    if want_dual:
        cb = [cost[v] for v in basis]
        y0 = _basis_dual(rows0, row_ids, basis, cb)
        dual = [ZERO] * m
        for k, ri in enumerate(row_ids):
            dual[ri] = -y0[k] if flip[ri] else y0[k]
    return StandardResult(status=OPTIMAL, point=point, value=value, dual=dual)
