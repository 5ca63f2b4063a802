"""Budget behavior: exhausted searches report themselves and never lie."""

import json

from polylift import bounds as bd
from polylift import zoo
from polylift.cli import main
from polylift.kernel import vertices
from polylift.slack import slack_matrix


def test_cover_budget_exhaustion_is_explicit():
    h = zoo.permutahedron_hrep(3)
    sm = slack_matrix(h, zoo.permutahedron_vrep(3))
    res = bd.rectangle_cover_min(sm, budget=2)
    assert res.status == bd.EXCEEDS_BUDGET
    assert res.size is None and res.cover is None


def test_fooling_budget_degrades_to_valid_set():
    h = zoo.cube_hrep(3)
    v = vertices(h)
    sm = slack_matrix(h, v)
    res = bd.fooling_set_max(sm, budget=1)
    assert res.status == bd.GREEDY
    # still a genuine fooling set, hence a valid lower bound
    ents = res.fooling.entries
    for a in range(len(ents)):
        for b in range(a + 1, len(ents)):
            i, j = ents[a]
            i2, j2 = ents[b]
            assert sm.entries[i][j2] == 0 or sm.entries[i2][j] == 0


def test_greedy_cover_not_used_as_lower_bound():
    # with a tiny budget the exact cover is unavailable; xc_bounds must fall
    # back to the other bounds, never to a non-exact cover size
    h = zoo.permutahedron_hrep(3)
    v = zoo.permutahedron_vrep(3)
    rep = bd.xc_bounds(h, v, cover_budget=2)
    assert "rectangle_cover" not in rep.bounds
    assert rep.lower <= rep.upper


def test_cli_bounds_exact_budget_exit3(tmp_path, capsys):
    h = tmp_path / "pi3.hpoly"
    v = tmp_path / "pi3.vpoly"
    main(["zoo", "permutahedron", "3", "--hrep", str(h), "--vrep", str(v)])
    capsys.readouterr()
    assert main(["bounds", str(h), str(v), "--exact", "--cover-budget", "2"]) == 3
    assert "budget" in capsys.readouterr().err
    assert main(["bounds", str(h), str(v), "--exact"]) == 0


def test_cli_construct_colorful_deterministic(capsys):
    assert main(["construct", "colorful", "6", "--k", "2", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["construct", "colorful", "6", "--k", "2", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["provenance"]["seed"] == 2024
