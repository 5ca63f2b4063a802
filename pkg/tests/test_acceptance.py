"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every check is exact (rational arithmetic, no tolerances).  Each criterion
also enforces its wall-clock budget.  Run with `pytest -v tests/test_acceptance.py`
or `pytest -s` to see the per-criterion lines.
"""

import functools
import random
import time
from fractions import Fraction
from itertools import combinations

from polylift import bounds as bd
from polylift import constructions as cx
from polylift import linalg, zoo
from polylift.kernel import (
    HPoly,
    VPoly,
    feasible_point,
    hull,
    poly_equal,
    remove_redundancy,
    vertices,
)
from polylift.slack import (
    NonnegFactorization,
    extension_to_factorization,
    factorization_to_extension,
    slack_matrix,
    verify_factorization,
)

F = Fraction


def criterion(num, desc, limit_s):
    def deco(fn):
        @functools.wraps(fn)
        def inner():
            t0 = time.monotonic()
            try:
                fn()
            except BaseException:
                print(f"ACCEPTANCE {num}: FAIL - {desc}")
                raise
            elapsed = time.monotonic() - t0
            ok = elapsed <= limit_s
            verdict = "PASS" if ok else "FAIL (over time budget)"
            print(f"ACCEPTANCE {num}: {verdict} ({elapsed:.1f}s, limit {limit_s}s) - {desc}")
            assert ok, f"criterion {num} took {elapsed:.1f}s, budget {limit_s}s"
        return inner
    return deco


@criterion(1, "Birkhoff -> permutahedron verified for n=2,3,4 with size n^2", 10)
def test_criterion_01_birkhoff():
    for n in (2, 3, 4):
        ext = cx.birkhoff_extension(n)
        assert ext.size() == n * n
        rep = cx.verify_extension(
            zoo.permutahedron_hrep(n), ext, target_vrep=zoo.permutahedron_vrep(n)
        )
        assert rep.passed, f"birkhoff({n}) failed: {rep}"


@criterion(2, "Rado/Edmonds descriptions: hulls match; irredundancy", 120)
def test_criterion_02_descriptions():
    for n in (1, 2, 3, 4):
        assert poly_equal(zoo.permutahedron_hrep(n), hull(zoo.permutahedron_vrep(n)))
    for n in (2, 3, 4, 5):
        assert poly_equal(zoo.matching_hrep(n), hull(zoo.matching_vrep(n)))
    for n in (2, 3, 4, 5):
        assert poly_equal(zoo.spanning_tree_hrep(n), hull(zoo.spanning_tree_vrep(n)))
    # irredundancy of the classical systems where it holds: for matchings at
    # n=2 the degree rows coincide and at n=3 each degree row is implied by
    # the odd-set row plus nonnegativity (M(3) is a simplex with 4 facets),
    # so only n=4 keeps every row
    for n in (1, 2, 3, 4):
        h = zoo.permutahedron_hrep(n)
        assert remove_redundancy(h).ineqs == h.ineqs
    h4 = zoo.matching_hrep(4)
    assert remove_redundancy(h4).ineqs == h4.ineqs
    r3 = remove_redundancy(zoo.matching_hrep(3))
    assert len(r3.ineqs) == 4 and poly_equal(r3, zoo.matching_hrep(3))
    r2 = remove_redundancy(zoo.matching_hrep(2))
    assert len(r2.ineqs) == 2 and poly_equal(r2, zoo.matching_hrep(2))


@criterion(3, "Martin spanning-tree extension verified for n=3,4,5; sizes 9/30/70", 300)
def test_criterion_03_martin():
    for n, size in ((3, 9), (4, 30), (5, 70)):
        ext = cx.martin_spanning_tree_extension(n)
        assert ext.size() == size == cx.martin_size(n)
        rep = cx.verify_extension(
            zoo.spanning_tree_hrep(n), ext, target_vrep=zoo.spanning_tree_vrep(n)
        )
        assert rep.passed, f"martin({n}) failed"


@criterion(4, "Balas union: 100 random instances equal the brute-force union hull", 120)
def test_criterion_04_balas():
    rng = random.Random(20260808)
    for trial in range(100):
        dim = rng.randint(1, 3)
        q = rng.randint(1, 4)
        parts = []
        union_pts = set()
        for _ in range(q):
            pts = set()
            for _ in range(rng.randint(1, 6)):
                pts.add(
                    tuple(
                        F(rng.randint(-4, 4), rng.choice([1, 1, 1, 2, 3]))
                        for _ in range(dim)
                    )
                )
            parts.append(hull(VPoly(dim, sorted(pts))))
            union_pts |= pts
        ext = cx.balas_union(parts)
        assert ext.size() == sum(len(p.ineqs) for p in parts) + q
        uniq = sorted(union_pts)
        target = hull(VPoly(dim, uniq))
        rep = cx.verify_extension(target, ext, target_vrep=VPoly(dim, uniq))
        assert rep.passed, f"balas trial {trial} failed"


@criterion(5, "Knapsack flow: 50 random instances verified; size = arc count", 120)
def test_criterion_05_knapsack():
    rng = random.Random(4096)
    for trial in range(50):
        n = rng.randint(1, 6)
        cap = rng.randint(0, 12)
        w = [rng.randint(0, 10) for _ in range(n)]
        v = zoo.knapsack_vrep(w, cap)
        ext = cx.knapsack_flow_extension(w, cap)
        assert ext.size() == cx.knapsack_network(w, cap).arc_count()
        rep = cx.verify_extension(hull(v), ext, target_vrep=v)
        assert rep.passed, f"knapsack trial {trial} (w={w}, W={cap}) failed"


@criterion(6, "Sorting networks: 0-1 principle (n<=12) and Pi_n projection (n<=5)", 120)
def test_criterion_06_sortnet():
    for n in range(1, 13):
        assert cx.bubble_network(n).sorts_all_binary()
        assert cx.batcher_network(n).sorts_all_binary()
    for n in range(1, 6):
        for net in (cx.bubble_network(n), cx.batcher_network(n)):
            ext = cx.sorting_network_extension(n, net)
            assert ext.size() == 2 * len(net.comparators)
            rep = cx.verify_extension(
                zoo.permutahedron_hrep(n), ext, target_vrep=zoo.permutahedron_vrep(n)
            )
            assert rep.passed, f"sortnet n={n} failed"


@criterion(7, "Colorful matchings: composed extension equals M_k(n) for (4,2),(5,2),(6,2)", 300)
def test_criterion_07_colorful():
    for n, k in ((4, 2), (5, 2), (6, 2)):
        family, cert = cx.covering_coloring_family(n, k)
        assert cert.complete
        assert len(cert.subsets) == len(list(combinations(range(n), 2 * k)))
        # independent exhaustive re-check of the certificate
        for w, fid in zip(cert.subsets, cert.witness):
            assert family[fid].rainbow(w)
        ext = cx.colorful_matching_extension(n, k)
        target_v = zoo.matching_vrep(n, k)
        rep = cx.verify_extension(hull(target_v), ext, target_vrep=target_v)
        assert rep.passed, f"colorful ({n},{k}) failed"


@criterion(8, "Slack factorization round trip: Phi = TS exactly, size-preserving re-extension", 300)
def test_criterion_08_roundtrip():
    cases = []
    for n in (2, 3):
        cases.append(
            (
                cx.birkhoff_extension(n),
                zoo.permutahedron_hrep(n),
                zoo.permutahedron_vrep(n),
            )
        )
    for n in (3, 4):
        cases.append(
            (
                cx.martin_spanning_tree_extension(n),
                zoo.spanning_tree_hrep(n),
                zoo.spanning_tree_vrep(n),
            )
        )
    for w, cap in (((2, 3, 4), 6), ((1, 1), 2)):
        v = zoo.knapsack_vrep(w, cap)
        cases.append((cx.knapsack_flow_extension(w, cap), hull(v), v))
    for ext, hrep, pts in cases:
        fact = extension_to_factorization(ext, hrep, pts)
        sm = slack_matrix(hrep, pts)
        assert verify_factorization(sm, fact).ok, f"{ext.name}: TS != Phi"
        assert fact.inner_dim == ext.size()
        ext2 = factorization_to_extension(fact, sm, hrep)
        assert ext2.size() == ext.size()
        rep = cx.verify_extension(hrep, ext2, target_vrep=pts)
        assert rep.passed, f"{ext.name}: re-extension failed"


@criterion(9, "Lower bounds: cube fooling sets = 2n; square pinned at 4; dominance", 300)
def test_criterion_09_bounds():
    for n in (2, 3, 4):
        h = zoo.cube_hrep(n)
        v = vertices(h)
        res = bd.fooling_set_max(slack_matrix(h, v))
        assert res.is_exact() and res.size() == 2 * n
    sq_h = zoo.cube_hrep(2)
    sq_v = vertices(sq_h)
    rep = bd.xc_bounds(sq_h, sq_v)
    assert rep.lower == rep.upper == 4
    # dominance chain on the tested zoo polytopes (exact mode throughout)
    tested = [
        (zoo.cube_hrep(2), None),
        (zoo.cube_hrep(3), None),
        (zoo.permutahedron_hrep(2), zoo.permutahedron_vrep(2)),
        (zoo.permutahedron_hrep(3), zoo.permutahedron_vrep(3)),
        (zoo.matching_hrep(3), zoo.matching_vrep(3)),
        (zoo.matching_hrep(4), zoo.matching_vrep(4)),
        (zoo.simplex_hrep(4), None),
        (zoo.simplex_hrep(6), None),
        (zoo.birkhoff_hrep(3), None),
        (hull(zoo.cross_polytope_vrep(3)), zoo.cross_polytope_vrep(3)),
        (hull(zoo.knapsack_vrep((2, 3, 4), 6)), zoo.knapsack_vrep((2, 3, 4), 6)),
        (zoo.spanning_tree_hrep(3), zoo.spanning_tree_vrep(3)),
    ]
    for h, v in tested:
        if v is None:
            v = vertices(h)
        sm = slack_matrix(h, v)
        cov = bd.rectangle_cover_min(sm)
        fool = bd.fooling_set_max(sm)
        assert cov.is_exact() and fool.is_exact()
        assert fool.size() <= cov.size
        srep = bd.xc_bounds(h, v)
        assert cov.size <= srep.upper
        try:
            lat = bd.face_lattice(h, v, max_facets=16, max_vertices=12)
            assert bd.log_face_bound(lat) <= cov.size
        except bd.SizeLimitError:
            pass
        assert srep.lower <= srep.upper


@criterion(10, "Face-lattice embeddings; cross-polytope(4) log bound vs size-8 extension", 120)
def test_criterion_10_embedding():
    # cross-polytope(3) into its trivial simplex extension
    v3 = zoo.cross_polytope_vrep(3)
    h3 = hull(v3)
    sm3 = slack_matrix(h3, v3)
    triv3 = factorization_to_extension(
        NonnegFactorization(sm3.entries, linalg.identity(6)), sm3, h3
    )
    assert triv3.size() == 6
    assert bd.embedding_check(h3, v3, triv3)
    # Birkhoff(3) over Pi_3
    assert bd.embedding_check(
        zoo.permutahedron_hrep(3), zoo.permutahedron_vrep(3), cx.birkhoff_extension(3)
    )
    # cross-polytope(4): log-face bound 7 consistent with the size-8 extension
    v4 = zoo.cross_polytope_vrep(4)
    h4 = hull(v4)
    lat = bd.face_lattice(h4, v4, max_facets=16, max_vertices=12)
    assert lat.face_count() == 3**4 + 1
    lb = bd.log_face_bound(lat)
    assert lb == 7
    sm4 = slack_matrix(h4, v4)
    triv4 = factorization_to_extension(
        NonnegFactorization(sm4.entries, linalg.identity(8)), sm4, h4
    )
    assert triv4.size() == 8
    rep = cx.verify_extension(h4, triv4, target_vrep=v4)
    assert rep.passed
    assert lb <= triv4.size()
