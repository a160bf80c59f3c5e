import json

import pytest

from affplucker.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_space_info(capsys):
    code, out = run(capsys, "space-info", "-n", "3", "-p", "2")
    data = json.loads(out)
    assert code == 0
    assert (data["witnesses"]["points"], data["witnesses"]["lines"], data["witnesses"]["star"]) == (8, 28, 7)
    code, out = run(capsys, "space-info", "-n", "3", "-p", "3")
    w = json.loads(out)["witnesses"]
    assert (w["points"], w["lines"], w["star"]) == (27, 117, 13)


def test_space_info_field_string(capsys):
    _, out = run(capsys, "space-info", "-n", "2", "-p", "2", "-h", "2")
    assert json.loads(out)["witnesses"]["field"] == "GF(4); modulus=[1,1,1]"


def test_parameter_error(capsys):
    code, out = run(capsys, "space-info", "-n", "0", "-p", "2")
    assert code == 2 and json.loads(out)["status"] == "ERROR"
    code, out = run(capsys, "space-info", "-n", "3", "-p", "4")
    assert code == 2


def test_unknown_claim():
    with pytest.raises(SystemExit):
        main(["verify", "theorem9"])


def test_theorem1(capsys):
    code, out = run(capsys, "verify", "theorem1", "-n", "3", "-p", "3", "--trials", "100", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["status"] == "PASS"
    assert data["witnesses"]["round_trips"] == "100/100"
    assert data["seed"] == 7


def test_theorem1_plane_is_dimension_error(capsys):
    code, out = run(capsys, "verify", "theorem1", "-n", "2", "-p", "3")
    data = json.loads(out)
    assert code == 2 and data["witnesses"]["error"] == "DimensionError"


def test_plucker_group(capsys):
    code, out = run(capsys, "verify", "plucker-group", "-n", "3", "-p", "2")
    w = json.loads(out)["witnesses"]
    assert code == 0
    assert w["graph_automorphism_order"] == w["collineation_order"] == 40320


@pytest.mark.parametrize("claim", ["theorem2", "theorem3", "theorem4-finite", "stars", "cliques"])
def test_other_claims_pass(capsys, claim):
    code, _ = run(capsys, "verify", claim, "-n", "3", "-p", "2", "--trials", "10")
    assert code == 0


def test_theorem4_count(capsys):
    code, out = run(capsys, "verify", "theorem4-count", "--n-max", "8", "--q-max", "9")
    assert code == 0
    assert json.loads(out)["witnesses"]["solutions"] == [[n, n, 2, 1] for n in range(3, 9)]


def test_plane_order(capsys):
    code, out = run(capsys, "verify", "plane-order", "-n", "2", "-p", "2", "-N", "2", "-P", "3")
    assert code == 0 and json.loads(out)["witnesses"]["isomorphic"] is False
    code, out = run(capsys, "verify", "plane-order", "-n", "2", "-p", "3", "-N", "2", "-P", "3")
    assert code == 0 and json.loads(out)["witnesses"]["isomorphism_verified"] is True


def test_counterexamples(capsys):
    code, out = run(capsys, "counterexample", "plane-transposition", "-n", "2", "-p", "3")
    w = json.loads(out)["witnesses"]
    assert code == 0 and w["isomorphism"] is True and w["reconstruction"] == "WellDefinednessViolation"
    code, out = run(capsys, "counterexample", "nonstar-clique", "-n", "3", "-p", "2")
    w = json.loads(out)["witnesses"]
    assert code == 0 and w["size"] == 3 and w["maximal"] is True and w["star"] is False
    assert w["construction"]["type"] == "nonstar" and w["construction"]["center"] is None
    code, out = run(capsys, "counterexample", "plane-transposition", "-n", "3", "-p", "2")
    assert code == 2
    code, out = run(capsys, "counterexample", "plane-scramble", "-n", "2", "-p", "2", "-h", "2")
    w = json.loads(out)["witnesses"]
    assert code == 0 and w["isomorphism"] and not w["stems_from_collineation"]


def test_determinism(capsys):
    argv = ["verify", "theorem4-finite", "-n", "3", "-p", "3", "--trials", "20", "--seed", "5"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_text_format(capsys):
    _, out = run(capsys, "space-info", "-n", "3", "-p", "2", "--format", "text")
    assert "lines: 28" in out and out.startswith("space-info: PASS")


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code = main(["verify", "stars", "-n", "2", "-p", "3", "--out", str(path)])
    assert code == 0 and json.loads(path.read_text())["status"] == "PASS"
    assert capsys.readouterr().out == ""


def test_graph_export(capsys):
    code, out = run(capsys, "graph", "-n", "2", "-p", "2")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 6
    assert rows[0].startswith("0: ")
    for i, row in enumerate(rows):
        key, rest = row.split(":")
        nbrs = list(map(int, rest.split()))
        assert int(key) == i and nbrs == sorted(nbrs) and len(nbrs) == 4


def test_check_map_file(tmp_path, capsys):
    from affplucker.geometry import make_space
    from affplucker.groups import random_affinity
    from affplucker.maps import induced_line_map
    from affplucker.rng import SplitMix64

    S = make_space(3, 3)
    f = induced_line_map(random_affinity(S, SplitMix64(1)))
    path = tmp_path / "map.json"
    path.write_text(json.dumps(f.to_json()))
    code, out = run(capsys, "check-map", str(path))
    w = json.loads(out)["witnesses"]
    assert code == 0 and w["isomorphism"] and w["forward"]
    assert w["point_map"]["kind"] == "lambda"


def test_timing_flag(capsys):
    _, out = run(capsys, "verify", "plucker-group", "-n", "3", "-p", "2", "--timing")
    assert json.loads(out)["elapsed_ms"] >= 0


def test_env_vertex_bound(capsys, monkeypatch):
    monkeypatch.setenv("PLUECKER_MAX_VERTICES", "20")
    code, out = run(capsys, "verify", "cliques", "-n", "3", "-p", "2")
    assert code == 2 and json.loads(out)["witnesses"]["error"] == "BoundExceeded"
