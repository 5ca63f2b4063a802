"""Exact rational linear algebra on tuples of fractions.Fraction.

Vectors are tuples of Fraction, matrices are tuples of such tuples.  The
standard library Fraction is always in canonical form (reduced, positive
denominator), which is exactly the invariant the rest of the package needs,
so no wrapper type is introduced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction exactly")


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("inconsistent row lengths")
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot")
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def mat_vec(m: Mat, v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in mat_mul")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    rows = [list(r) for r in m]
    rows, pivots = _rref(rows)
    return tuple(tuple(r) for r in rows), pivots


def rank(m: Mat) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on an integer scaling."""
    if not m or not m[0]:
        return 0
    rows = []
    for r in m:
        den = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([x.numerator * (den // x.denominator) for x in r])
    nrows, ncols = len(rows), len(rows[0])
    rk = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        rk += 1
        r += 1
        if r == nrows:
            break
    return rk


def solve(a: Mat, b: Sequence[Fraction]) -> Vec | None:
    """One exact solution of A x = b (free variables set to 0), or None."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch in solve")
    if not a:
        return ()
    ncols = len(a[0])
    rows = [list(r) + [bi] for r, bi in zip(a, b)]
    rows, pivots = _rref(rows)
    if ncols in pivots:  # pivot in the rhs column: inconsistent system
        return None
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return tuple(x)


def nullspace(m: Mat) -> list[Vec]:
    """Basis of {x : M x = 0}; empty matrix means the whole space is unknown."""
    if not m:
        raise ValueError("nullspace of an empty matrix is ambiguous; pass dims explicitly")
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def independent_rows(m: Mat) -> list[int]:
    """Indices of a maximal linearly independent subset of rows (greedy, stable)."""
    kept: list[int] = []
    echelon: list[list[Fraction]] = []
    pivcols: list[int] = []
    for i, row in enumerate(m):
        work = list(row)
        for er, pc in zip(echelon, pivcols):
            if work[pc]:
                f = work[pc] / er[pc]
                work = [x - f * y for x, y in zip(work, er)]
        pcol = next((c for c, x in enumerate(work) if x), None)
        if pcol is not None:
            kept.append(i)
            echelon.append(work)
            pivcols.append(pcol)
    return kept


def left_inverse(m: Mat) -> Mat:
    """Left inverse of a matrix with full column rank: L @ M = I.

    Built from an invertible square row-subset, so L has zero columns on the
    dependent rows; any left inverse serves the callers here.
    """
    if not m:
        return ()
    ncols = len(m[0])
    idx = independent_rows(m)
    if len(idx) != ncols:
        raise ValueError("matrix does not have full column rank")
    sub = tuple(m[i] for i in idx)  # ncols x ncols invertible
    subinv = inverse(sub)
    nrows = len(m)
    out = []
    for r in range(ncols):
        row = [ZERO] * nrows
        for k, i in enumerate(idx):
            row[i] = subinv[r][k]
        out.append(tuple(row))
    return tuple(out)


def inverse(m: Mat) -> Mat:
    """Exact inverse of a square matrix."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of non-square matrix")
    rows = [list(r) + list(unit(n, i)) for i, r in enumerate(m)]
    rows, pivots = _rref(rows)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def canon_ineq(a: Sequence[Fraction], b: Fraction) -> tuple[Vec, Fraction]:
    """Scale a·x <= b by a positive rational so entries are coprime integers."""
    entries = list(a) + [b]
    den = lcm(*(x.denominator for x in entries))
    ints = [x.numerator * (den // x.denominator) for x in entries]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(ZERO for _ in a), ZERO
    return tuple(Fraction(v // g) for v in ints[:-1]), Fraction(ints[-1] // g)


def canon_eq(c: Sequence[Fraction], d: Fraction) -> tuple[Vec, Fraction]:
    """Like canon_ineq but also fixes the sign: first nonzero coefficient > 0."""
    a, b = canon_ineq(c, d)
    lead = next((x for x in a if x), None)
    if lead is None:
        if b < 0:
            return a, -b
        return a, b
    if lead < 0:
        return tuple(-x for x in a), -b
    return a, b
