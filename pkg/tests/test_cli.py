import json
import subprocess
import sys

import pydot
import pytest

from alexpara import poset as P
from alexpara import suite
from alexpara.cli import main
from alexpara.result import failed


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_dot(text):
    [g] = pydot.graph_from_dot_data(text)
    nodes = [n.get_name() for n in g.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    edges = [(e.get_source(), e.get_destination()) for e in g.get_edges()]
    return g, nodes, edges


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and len(out.strip().splitlines()) == 8
    code, out, _ = run(capsys, "--json", "catalog", "list")
    assert len(json.loads(out)["examples"]) == 8


def test_catalog_show(capsys):
    code, out, _ = run(capsys, "catalog", "show", "int_vectors", "k=2", "--json")
    data = json.loads(out)
    assert code == 0 and data["expected"]["radius"] == 2 and data["seed"] == 0
    code, _, err = run(capsys, "catalog", "show", "nosuch")
    assert code == 2 and "UnknownExample" in err
    code, _, err = run(capsys, "catalog", "show", "width_join", "n=0")
    assert code == 2 and "BadParameter" in err


def test_hasse_examples(capsys):
    code, out, _ = run(capsys, "hasse", "--example", "int_vectors", "k=2", "--depth", "1")
    g, nodes, edges = parse_dot(out)
    assert code == 0 and len(nodes) == 5 and len(edges) == 4
    ident = [n for n in g.get_nodes() if n.get_name() == '"(0,0)"'][0]
    assert ident.get("style") == "filled"
    _, out, _ = run(capsys, "hasse", "--example", "int_chain", "--depth", "3")
    _, nodes, edges = parse_dot(out)
    assert len(nodes) == 7 and len(edges) == 6
    assert sorted(edges) == sorted((f'"{i}"', f'"{i + 1}"') for i in range(-3, 3))


def test_hasse_width_join_ladder(capsys):
    _, out, _ = run(capsys, "hasse", "--example", "width_join", "n=2", "--depth", "2", "--shape", "box")
    _, nodes, edges = parse_dot(out)
    level = lambda s: int(s.strip('"()').split(",")[0])  # noqa: E731
    assert len(nodes) == 10 and len(edges) == 16
    assert all(level(b) == level(a) + 1 for a, b in edges)
    _, out, _ = run(capsys, "hasse", "--example", "width_join", "n=2", "--depth", "2")
    _, nodes, edges = parse_dot(out)
    assert len(nodes) == 8 and all(level(b) == level(a) + 1 for a, b in edges)


def test_window_json_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "window", "--example", "int_vectors", "--depth", "2", "--shape", "box")
    data = json.loads(out)
    p = P.from_json_dict(data)
    assert code == 0 and len(p) == 25 and P.width(p) == 5
    assert data["oracle"]["name"] == "int_vectors" and data["config"]["seed"] == 0
    f = tmp_path / "w.json"
    f.write_text(out)
    code, out, _ = run(capsys, "invariants", "--file", str(f), "--json")
    assert code == 0 and json.loads(out)["invariants"]["width"] == 5


def test_invariants_example(capsys):
    code, out, _ = run(capsys, "invariants", "--example", "width_join", "n=3", "--shape", "box", "--json")
    inv = json.loads(out)["invariants"]
    assert code == 0 and inv["iterated_antichain_join"] == 3 and inv["width"] == 3
    code, _, err = run(capsys, "invariants")
    assert code == 2


def test_check_all_int_vectors(capsys):
    code, out, _ = run(capsys, "check", "--law", "all", "--example", "int_vectors", "--depth", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    outcomes = {r["law_id"]: r["outcome"] for r in data["results"]}
    assert outcomes.pop("inversion_monotone") == "expected_fail"
    assert set(outcomes.values()) == {"ok"}


def test_check_expected_failures(capsys):
    code, out, _ = run(capsys, "check", "--law", "inversion_monotone", "--example", "int_chain", "--json")
    data = json.loads(out)
    assert code == 1 and data["outcome"] == "expected_fail" and data["witness"] == {"a": "0", "b": "1"}
    code, out, _ = run(capsys, "check", "--law", "hyperconnected", "--example", "disjoint_chains_int", "n=2",
                       "--json")
    assert code == 1 and json.loads(out)["outcome"] == "expected_fail"
    code, _, _ = run(capsys, "check", "--law", "inverse_flip", "--example", "int_chain")
    assert code == 0


def test_check_inapplicable_and_errors(capsys):
    code, out, _ = run(capsys, "check", "--law", "beat_dichotomy", "--example", "rat_chain")
    assert code == 2 and "SKIP" in out
    with pytest.raises(SystemExit) as exc:
        main(["check", "--law", "no_such_law", "--example", "int_chain"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["hasse", "--example", "int_chain", "--depth", "-1"])
    assert exc.value.code == 2


def test_check_unexpected_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setitem(suite.LAWS, "inverse_flip", lambda c: failed("inverse_flip", {"x": "1"}))
    code, out, _ = run(capsys, "check", "--law", "inverse_flip,unbounded_height", "--example", "int_chain")
    assert code == 1 and "FAILED" in out


def test_json_output_is_reproducible(capsys):
    argv = ["check", "--law", "all", "--example", "width_join", "n=2", "--json", "--seed", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and json.loads(first)["config"]["seed"] == 7


def test_budget_flag_and_environment(capsys, monkeypatch):
    far = ["check", "--law", "hyperconnected", "--example", "int_vectors", "--json"]
    code, out, _ = run(capsys, *far, "--budget", "0")
    data = json.loads(out)
    assert data["config"]["budget"] == 0 and data["status"] == "inapplicable" and code == 2
    monkeypatch.setenv("ALEXPARA_BUDGET", "0")
    code, out, _ = run(capsys, *far)
    assert json.loads(out)["config"]["budget"] == 0


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-order", "6", "--json")
    data = json.loads(out)
    assert code == 0 and data["confirmed"] and len(data["reports"]) == 8
    assert all("runtime" not in r for r in data["reports"])
    code, out, _ = run(capsys, "enumerate", "--max-order", "6", "--topological", "--json")
    data = json.loads(out)
    assert [r["group"] for r in data["reports"] if r["connected_survivors"]] == ["C1"]
    code, _, err = run(capsys, "enumerate", "--max-order", "7")
    assert code == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "alexpara.cli", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "width_join" in proc.stdout
