"""Lower bounds on extension complexity and the face-lattice embedding check.

All bounds are exact-arithmetic and certificate-bearing: the rectangle cover
search and the fooling-set search are exhaustive branch-and-bound runs gated
by explicit budgets, and anything non-exact is flagged so it is never used as
a lower bound when it must not be.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .constructions import Extension, verify_extension
from .errors import InputError, InvariantViolationError, SizeLimitError, ValidationError
from .kernel import HPoly, VPoly, vertices
from .slack import SlackMatrix, is_binding, slack_matrix

F = Fraction

EXACT = "exact"
GREEDY = "greedy"
EXCEEDS_BUDGET = "exceeds_budget"


# ---------------------------------------------------------------------------
# Face lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceLattice:
    """All faces of a polytope as vertex-index bitmasks, including the empty
    face and the polytope itself; intersection-closed by construction."""

    n_vertices: int
    faces: tuple          # sorted bitmasks
    dims: tuple           # affine dimension per face (-1 for the empty face)

    def face_count(self) -> int:
        return len(self.faces)

    def counts_by_dim(self) -> dict:
        out: dict[int, int] = {}
        for d in self.dims:
            out[d] = out.get(d, 0) + 1
        return out

    def contains_face(self, mask: int) -> bool:
        return mask in set(self.faces)


def face_lattice(hrep: HPoly, vrep: VPoly, *, max_facets: int = 10, max_vertices: int = 12) -> FaceLattice:
    """Closure enumeration of all faces from the vertex-facet incidences.

    Desk-bounded: requires at most max_facets inequalities or at most
    max_vertices vertices.  hrep and vrep must describe the same polytope
    (caller contract); vertex membership in hrep is re-checked here.
    """
    if len(hrep.ineqs) > max_facets and len(vrep.vertices) > max_vertices:
        raise SizeLimitError(
            f"face lattice limited to {max_facets} facets or {max_vertices} vertices"
        )
    if hrep.dim != vrep.dim:
        raise InputError("dimension mismatch")
    for v in vrep.vertices:
        if not hrep.contains(v):
            raise InputError("a listed vertex violates the inequality description")
    nv = len(vrep.vertices)
    full = (1 << nv) - 1
    facet_masks = []
    for a, b in hrep.ineqs:
        m = 0
        for j, v in enumerate(vrep.vertices):
            if linalg.dot(a, v) == b:
                m |= 1 << j
        facet_masks.append(m)
    faces = {full, 0}
    queue = [full]
    while queue:
        cur = queue.pop()
        for fm in facet_masks:
            nxt = cur & fm
            if nxt not in faces:
                faces.add(nxt)
                queue.append(nxt)
    ordered = sorted(faces, key=lambda m: (m.bit_count(), m))
    dims = []
    for mask in ordered:
        pts = [vrep.vertices[j] for j in range(nv) if mask >> j & 1]
        if not pts:
            dims.append(-1)
        elif len(pts) == 1:
            dims.append(0)
        else:
            diffs = [linalg.vsub(p, pts[0]) for p in pts[1:]]
            dims.append(linalg.rank(linalg.mat(diffs)))
    return FaceLattice(nv, tuple(ordered), tuple(dims))


def log_face_bound(lattice: FaceLattice) -> int:
    """ceil(log2(face count)): extension complexity is at least this."""
    beta = lattice.face_count()
    return (beta - 1).bit_length() if beta >= 1 else 0


# ---------------------------------------------------------------------------
# Rectangle covers of the slack-matrix support
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RectangleCover:
    rectangles: tuple  # ((rows...), (cols...)) pairs, support-contained

    def size(self) -> int:
        return len(self.rectangles)


@dataclass
class CoverResult:
    status: str              # exact | greedy | exceeds_budget
    size: int | None
    cover: RectangleCover | None
    nodes: int = 0

    def is_exact(self) -> bool:
        return self.status == EXACT


def _maximal_rectangles(entries):
    """All inclusion-maximal support rectangles, as (row mask, col mask)."""
    m = len(entries)
    n = len(entries[0]) if m else 0
    row_support = [sum(1 << j for j in range(n) if entries[i][j]) for i in range(m)]
    seen = set()
    rects = []
    for i in range(m):
        cols = [j for j in range(n) if entries[i][j]]
        if len(cols) > 16:
            raise SizeLimitError("row support too large for exact rectangle enumeration")
        for sub in range(1, 1 << len(cols)):
            jmask = 0
            for bit, j in enumerate(cols):
                if sub >> bit & 1:
                    jmask |= 1 << j
            imask = 0
            for r in range(m):
                if row_support[r] & jmask == jmask:
                    imask |= 1 << r
            jfull = (1 << n) - 1
            for r in range(m):
                if imask >> r & 1:
                    jfull &= row_support[r]
            key = (imask, jfull)
            if key not in seen:
                seen.add(key)
                rects.append(key)
    return rects


def _greedy_fooling(entry_list, entries):
    """Greedy fooling set among the given support entries (valid lower bound)."""
    chosen = []
    for (i, j) in entry_list:
        ok = True
        for (i2, j2) in chosen:
            if entries[i][j2] != 0 and entries[i2][j] != 0:
                ok = False
                break
        if ok:
            chosen.append((i, j))
    return chosen


def rectangle_cover_min(
    slack: SlackMatrix, budget: int = 200_000, exact_support_limit: int = 60
) -> CoverResult:
    """Minimum number of support rectangles covering the support of the slack
    matrix (exact branch and bound within budget; greedy fallback flagged).

    Only an exact result is a valid lower bound on extension complexity; a
    greedy cover is an upper bound on the cover number and is flagged as such.
    """
    entries = slack.entries
    support = slack.support()
    if not support:
        return CoverResult(EXACT, 0, RectangleCover(()))
    big = len(support) > exact_support_limit
    try:
        rects = _maximal_rectangles(entries)
    except SizeLimitError:
        big = True
        rects = []
    n = slack.ncols
    ent_index = {e: t for t, e in enumerate(support)}
    if big:
        cover = _greedy_cover(support, entries, n)
        return CoverResult(GREEDY, len(cover), RectangleCover(tuple(cover)))

    rect_sets = []
    for imask, jmask in rects:
        s = 0
        for t, (i, j) in enumerate(support):
            if imask >> i & 1 and jmask >> j & 1:
                s |= 1 << t
        rect_sets.append(s)
    full = (1 << len(support)) - 1
    entry_rects = [
        [r for r in range(len(rects)) if rect_sets[r] >> t & 1] for t in range(len(support))
    ]

    greedy = _greedy_cover(support, entries, n)
    best: list[int] = []
    best_size = len(greedy) + 1
    nodes = 0
    exceeded = False

    def fooling_lb(uncovered_mask):
        entry_list = [support[t] for t in range(len(support)) if uncovered_mask >> t & 1]
        return len(_greedy_fooling(entry_list, entries))

    def bb(chosen, covered):
        nonlocal best, best_size, nodes, exceeded
        if exceeded:
            return
        nodes += 1
        if nodes > budget:
            exceeded = True
            return
        if covered == full:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best = list(chosen)
            return
        if len(chosen) + 1 >= best_size:
            return
        uncovered = full & ~covered
        lb = fooling_lb(uncovered)
        if len(chosen) + lb >= best_size:
            return
        # branch on the uncovered entry with the fewest covering rectangles
        pick = None
        pick_opts = None
        for t in range(len(support)):
            if uncovered >> t & 1:
                opts = entry_rects[t]
                if pick is None or len(opts) < len(pick_opts):
                    pick = t
                    pick_opts = opts
        for r in pick_opts:
            chosen.append(r)
            bb(chosen, covered | rect_sets[r])
            chosen.pop()

    bb([], 0)
    if exceeded:
        return CoverResult(EXCEEDS_BUDGET, None, None, nodes)
    out = []
    for r in best:
        imask, jmask = rects[r]
        out.append(
            (
                tuple(i for i in range(slack.nrows) if imask >> i & 1),
                tuple(j for j in range(n) if jmask >> j & 1),
            )
        )
    return CoverResult(EXACT, best_size, RectangleCover(tuple(out)), nodes)


def _greedy_cover(support, entries, ncols):
    """Greedy set cover by maximal rectangles grown from uncovered entries."""
    m = len(entries)
    uncovered = set(support)
    out = []
    while uncovered:
        i, j = min(uncovered)
        # grow a maximal rectangle from (i, j): all columns of row i, closed
        jmask = [c for c in range(ncols) if entries[i][c]]
        rows = [r for r in range(m) if all(entries[r][c] for c in jmask)]
        cols = [c for c in range(ncols) if all(entries[r][c] for r in rows)]
        out.append((tuple(rows), tuple(cols)))
        uncovered -= {(r, c) for r in rows for c in cols}
    return out


# ---------------------------------------------------------------------------
# Fooling sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FoolingSet:
    entries: tuple  # (row, col) support positions, pairwise rectangle-free


@dataclass
class FoolingResult:
    status: str  # exact | greedy
    fooling: FoolingSet
    nodes: int = 0

    def size(self) -> int:
        return len(self.fooling.entries)

    def is_exact(self) -> bool:
        return self.status == EXACT


def fooling_set_max(slack: SlackMatrix, budget: int = 500_000) -> FoolingResult:
    """Maximum fooling set via branch-and-bound max clique on the
    compatibility graph; budget exhaustion degrades to the best set found,
    flagged greedy (still a valid lower bound)."""
    entries = slack.entries
    support = slack.support()
    ne = len(support)
    if ne == 0:
        return FoolingResult(EXACT, FoolingSet(()))
    compat = [0] * ne
    for a in range(ne):
        ia, ja = support[a]
        for b in range(a + 1, ne):
            ib, jb = support[b]
            if entries[ia][jb] == 0 or entries[ib][ja] == 0:
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    best = list(_greedy_fooling(support, entries))
    best_idx = [support.index(e) for e in best]
    nodes = 0
    exceeded = False

    def color_bound(cand_mask):
        """Greedy coloring: number of classes bounds the clique size."""
        colors = []
        m = cand_mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            placed = False
            for cls in range(len(colors)):
                if not (colors[cls][1] >> v & 1):
                    colors[cls] = (colors[cls][0] | (1 << v), colors[cls][1] | compat[v])
                    placed = True
                    break
            if not placed:
                colors.append((1 << v, compat[v]))
        return len(colors)

    def bb(clique, cand_mask):
        nonlocal best_idx, nodes, exceeded
        if exceeded:
            return
        nodes += 1
        if nodes > budget:
            exceeded = True
            return
        if not cand_mask:
            if len(clique) > len(best_idx):
                best_idx = list(clique)
            return
        if len(clique) + color_bound(cand_mask) <= len(best_idx):
            return
        m = cand_mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            cand_mask &= ~(1 << v)
            if len(clique) + 1 + (cand_mask & compat[v]).bit_count() <= len(best_idx):
                continue
            clique.append(v)
            bb(clique, cand_mask & compat[v])
            clique.pop()

    bb([], (1 << ne) - 1)
    chosen = tuple(support[t] for t in sorted(best_idx))
    status = GREEDY if exceeded else EXACT
    return FoolingResult(status, FoolingSet(chosen), nodes)


# ---------------------------------------------------------------------------
# Rank bound and the sandwich report
# ---------------------------------------------------------------------------

def rank_bound(slack: SlackMatrix) -> int:
    """Linear-algebra rank of the slack matrix (fraction-free elimination)."""
    if not slack.entries:
        return 0
    return linalg.rank(slack.entries)


@dataclass
class BoundReport:
    lower: int
    upper: int
    active_lower: str
    upper_source: str
    bounds: dict           # name -> (value, exact flag)
    extensions: list       # (name, size, verified)
    slack_shape: tuple

    def pinned(self) -> bool:
        return self.lower == self.upper


def xc_bounds(
    hrep: HPoly,
    vrep: VPoly,
    extensions=(),
    *,
    cover_budget: int = 200_000,
    fooling_budget: int = 500_000,
    lattice_limits: tuple = (10, 12),
) -> BoundReport:
    """Sandwich [max lower bound, min certified upper bound] on extension
    complexity.

    Lower bounds: slack-matrix rank, exact rectangle cover number, any fooling
    set, and the log face-count bound (when the lattice is within desk
    bounds).  Upper bounds: the given description sizes and every supplied
    extension that verifies.  hrep must be binding and conv(vrep) must be the
    polytope (caller contract for the trivial |X| bound).
    """
    if not is_binding(hrep):
        raise ValidationError("xc_bounds requires a binding inequality system")
    sm = slack_matrix(hrep, vrep)
    bounds: dict[str, tuple] = {}
    bounds["rank"] = (rank_bound(sm), True)
    try:
        lat = face_lattice(
            hrep, vrep, max_facets=lattice_limits[0], max_vertices=lattice_limits[1]
        )
        bounds["log_faces"] = (log_face_bound(lat), True)
    except SizeLimitError:
        pass
    cov = rectangle_cover_min(sm, budget=cover_budget)
    if cov.is_exact():
        bounds["rectangle_cover"] = (cov.size, True)
    elif cov.size is not None:
        bounds["rectangle_cover_greedy"] = (cov.size, False)
    fool = fooling_set_max(sm, budget=fooling_budget)
    bounds["fooling_set"] = (fool.size(), fool.is_exact())

    lower_candidates = {}
    for name, (value, exact) in bounds.items():
        if name == "rectangle_cover_greedy":
            continue  # an inexact cover size is not a lower bound
        lower_candidates[name] = value
    active_lower = max(lower_candidates, key=lambda k: (lower_candidates[k], k))
    lower = lower_candidates[active_lower]

    upper_candidates = {
        "own_description": len(hrep.ineqs),
        "trivial_simplex": len(vrep.vertices),
    }
    ext_results = []
    for ext in extensions:
        rep = verify_extension(hrep, ext, target_vrep=vrep)
        ext_results.append((ext.name, ext.size(), rep.passed))
        if rep.passed:
            upper_candidates[ext.name] = ext.size()
    upper_source = min(upper_candidates, key=lambda k: (upper_candidates[k], k))
    upper = upper_candidates[upper_source]
    if lower > upper:
        raise InvariantViolationError(
            f"lower bound {lower} ({active_lower}) exceeds upper bound {upper} ({upper_source})"
        )
    return BoundReport(
        lower=lower,
        upper=upper,
        active_lower=active_lower,
        upper_source=upper_source,
        bounds=bounds,
        extensions=ext_results,
        slack_shape=(sm.nrows, sm.ncols),
    )


# ---------------------------------------------------------------------------
# Face-lattice embedding (preimage map)
# ---------------------------------------------------------------------------

def embedding_check(
    target_hrep: HPoly,
    target_vrep: VPoly,
    ext: Extension,
    *,
    ext_vrep: VPoly | None = None,
    max_facets: int = 12,
    max_vertices: int = 12,
) -> bool:
    """Mapping each face of P to its preimage in Q embeds L(P) into L(Q).

    Confirms that every preimage is a face of Q and that the map is injective
    and strictly order-preserving on the computed lattices.
    """
    lp = face_lattice(
        target_hrep, target_vrep, max_facets=max_facets, max_vertices=max_vertices
    )
    qv = ext_vrep if ext_vrep is not None else vertices(ext.q)
    lq = face_lattice(ext.q, qv, max_facets=max_facets, max_vertices=max_vertices)
    q_faces = set(lq.faces)

    nv = len(target_vrep.vertices)
    nq = len(qv.vertices)
    proj_pts = [ext.proj.apply(u) for u in qv.vertices]
    images = []
    for fmask in lp.faces:
        if fmask == 0:
            images.append(0)  # the preimage of the empty face is empty
            continue
        # the face equals {x in P : rows tight}, rows = its full tight row set
        rows = [
            (a, b)
            for a, b in target_hrep.ineqs
            if all(
                linalg.dot(a, target_vrep.vertices[j]) == b
                for j in range(nv)
                if fmask >> j & 1
            )
        ]
        gmask = 0
        for uidx in range(nq):
            x = proj_pts[uidx]
            if not target_hrep.contains(x):
                return False  # only verified extensions can embed
            if all(linalg.dot(a, x) == b for a, b in rows):
                gmask |= 1 << uidx
        if gmask not in q_faces:
            return False
        images.append(gmask)
    if len(set(images)) != len(images):
        return False
    # strictly order preserving: F1 subset F2 implies G1 proper subset of G2
    for i, f1 in enumerate(lp.faces):
        for j, f2 in enumerate(lp.faces):
            if f1 != f2 and (f1 & f2) == f1:
                if (images[i] & images[j]) != images[i] or images[i] == images[j]:
                    return False
    return True
