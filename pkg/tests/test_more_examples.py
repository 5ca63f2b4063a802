"""Cross-checks tying independent code paths to each other, plus edge cases."""

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from polylift import constructions as cx
from polylift import zoo
from polylift.kernel import (
    HPoly,
    VPoly,
    fm_project,
    hull,
    lp_solve,
    poly_equal,
    remove_redundancy,
    vertices,
)

F = Fraction


def test_sortnet_n2_projection_by_elimination():
    # eliminating the final stage of the one-comparator network must leave
    # exactly the Rado description of Pi_2
    ext = cx.sorting_network_extension(2, cx.bubble_network(2))
    projected = fm_project(ext.q, [0, 1])
    assert poly_equal(projected, zoo.permutahedron_hrep(2))


def test_birkhoff2_projection_by_elimination():
    ext = cx.birkhoff_extension(2)
    dim = ext.q.dim
    rows = [(tuple(a) + (F(0), F(0)), b) for a, b in ext.q.ineqs]
    eqs = [(tuple(c) + (F(0), F(0)), d) for c, d in ext.q.eqs]
    for i in range(2):
        c = list(ext.proj.matrix[i]) + [F(0), F(0)]
        c[dim + i] = F(-1)
        eqs.append((tuple(c), F(0)))
    projected = fm_project(HPoly(dim + 2, rows, eqs), [dim, dim + 1])
    assert poly_equal(projected, zoo.permutahedron_hrep(2))


def test_colorful_trivial_family_is_single_part():
    ext = cx.colorful_matching_extension(4, 2)
    assert "q=1" in ext.name  # n = 2k: one coloring suffices


def test_colorful_k1():
    ext = cx.colorful_matching_extension(4, 1)
    target = zoo.matching_vrep(4, 1)
    rep = cx.verify_extension(hull(target), ext, target_vrep=target)
    assert rep.passed


def test_hull_tolerates_interior_points():
    pts = VPoly(2, [(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
    h = hull(pts)
    assert len(h.ineqs) == 4
    assert poly_equal(h, zoo.cube_hrep(2))


def test_remove_redundancy_preserves_point_set_random():
    rng = random.Random(1717)
    for _ in range(20):
        dim = rng.randint(1, 3)
        rows = []
        for i in range(dim):
            a = [0] * dim
            a[i] = -1
            rows.append((a, rng.randint(0, 2)))
            b = [0] * dim
            b[i] = 1
            rows.append((b, rng.randint(1, 3)))
        for _ in range(rng.randint(1, 4)):
            rows.append(([rng.randint(-2, 2) for _ in range(dim)], rng.randint(0, 6)))
        p = HPoly(dim, rows)
        r = remove_redundancy(p)
        assert poly_equal(p, r)
        # and the survivors really are irredundant: dropping any one grows P
        for i in range(len(r.ineqs)):
            rest = HPoly(dim, r.ineqs[:i] + r.ineqs[i + 1 :], r.eqs)
            assert not poly_equal(rest, r)


def test_concurrent_use_of_shared_polyhedra():
    # all operations are pure functions of immutable inputs
    poly = zoo.permutahedron_hrep(3)
    objectives = [[i, j, k] for i in (1, 2) for j in (0, 3) for k in (-1, 1)]
    serial = [lp_solve(c, "max", poly).optimum for c in objectives]
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = list(pool.map(lambda c: lp_solve(c, "max", poly).optimum, objectives))
    assert serial == parallel
    with ThreadPoolExecutor(max_workers=4) as pool:
        reps = list(
            pool.map(
                lambda n: cx.verify_extension(
                    zoo.permutahedron_hrep(n),
                    cx.birkhoff_extension(n),
                    target_vrep=zoo.permutahedron_vrep(n),
                ).passed,
                [2, 3, 2, 3],
            )
        )
    assert reps == [True, True, True, True]


def test_vertices_of_vpoly_match_hull_roundtrip_trees():
    v = zoo.spanning_tree_vrep(4)
    h = hull(v)
    back = vertices(h)
    assert set(back.vertices) == set(v.vertices)


def test_fm_project_keep_everything_and_nothing():
    sq = zoo.cube_hrep(2)
    same = fm_project(sq, [0, 1])
    assert poly_equal(same, sq)
    from polylift.kernel import feasible_point

    zero_dim = fm_project(sq, [])
    assert zero_dim.dim == 0
    assert feasible_point(zero_dim) == ()


def test_verify_reports_empty_extension():
    empty_q = HPoly(1, [([1], -1), ([-1], 0)])
    ext = cx.Extension(empty_q, cx.AffineMap.linear([[1]]), 1, "empty")
    seg = HPoly(1, [([1], 1), ([-1], 0)])
    rep = cx.verify_extension(seg, ext, target_vrep=VPoly(1, [(0,), (1,)]))
    assert not rep.passed
    assert rep.extension_empty


def test_remove_redundancy_keeps_labels_of_survivors():
    p = zoo.matching_hrep(3)
    r = remove_redundancy(p)
    assert r.ineq_labels is not None
    assert len(r.ineq_labels) == len(r.ineqs)
    kept = set(r.ineqs)
    for row, lab in zip(p.ineqs, p.ineq_labels):
        if row in kept:
            assert lab in r.ineq_labels
