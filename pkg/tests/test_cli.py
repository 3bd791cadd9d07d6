import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from extremecut.cli import main
from extremecut.formats import format_beta, format_graph, parse_beta, parse_graph
from extremecut.graph import GraphError

from conftest import B6_EDGES, graphs

B6_TEXT = "# barbell\n6 7\n" + "".join(f"{u + 1} {v + 1} {w}\n" for u, v, w in B6_EDGES)


@pytest.fixture
def b6_file(tmp_path):
    p = tmp_path / "b6.txt"
    p.write_text(B6_TEXT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- formats -----------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(graphs(min_n=1, max_n=9))
def test_graph_round_trip(G):
    assert parse_graph(format_graph(G)) == G
    assert format_graph(parse_graph(format_graph(G))) == format_graph(G)


@pytest.mark.parametrize("text", ["", "3 1\n", "3 1\n1 4 1\n", "3 1\n1 2 0\n", "3 1\n1 2\n", "2 1\n1 x 1\n"])
def test_bad_graph_files(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_beta_file():
    beta = parse_beta("# bounds\n1 2\n3 -1\n", 4)
    assert beta == [2, None, None, None]
    assert parse_beta(format_beta([0, None, 5]), 3) == [0, None, 5]
    with pytest.raises(GraphError):
        parse_beta("1 2\n1 3\n", 2)
    with pytest.raises(GraphError):
        parse_beta("5 1\n", 2)


# --- commands ----------------------------------------------------------------

def test_extreme_sets_text(capsys, b6_file):
    code, out, _ = run(capsys, "extreme-sets", "--input", b6_file, "--check-oracle")
    assert code == 0
    lines = out.splitlines()
    assert sum(l.strip().startswith("set") for l in lines) == 2
    assert sum(l.strip().startswith("leaf") for l in lines) == 6


def test_extreme_sets_json(capsys, b6_file):
    code, out, _ = run(capsys, "extreme-sets", "--input", b6_file, "--json", "--backend", "accelerated")
    nodes = json.loads(out)["nodes"]
    assert code == 0 and len(nodes) == 9
    sets = sorted(n["members"] for n in nodes if len(n["members"]) == 3)
    assert sets == [[1, 2, 3], [4, 5, 6]]


def test_check_oracle_triangle(capsys, tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("3 3\n1 2 1\n2 3 1\n1 3 1\n")
    assert run(capsys, "extreme-sets", "--input", str(p), "--check-oracle")[0] == 0


def test_augment(capsys, b6_file):
    code, out, _ = run(capsys, "augment", "--input", b6_file, "--tau", "3", "--verify")
    assert code == 0
    assert out.splitlines()[:3] == ["1 5 1", "2 6 1", "total 2"]
    assert "verify pass" in out


def test_augment_infeasible(capsys, b6_file):
    code, _, err = run(capsys, "augment", "--input", b6_file, "--tau", "2", "--beta", "0")
    assert code == 2 and "infeasible" in err


def test_augment_beta_file_and_json(capsys, b6_file, tmp_path):
    beta = tmp_path / "beta.txt"
    beta.write_text("1 0\n2 0\n3 1\n")
    code, out, _ = run(capsys, "augment", "--input", b6_file, "--tau", "2", "--beta", str(beta), "--json", "--verify")
    data = json.loads(out)
    assert code == 0 and data["total"] == 1 and data["edges"][0][0] == 3
    assert data["verification"]["pass"]


def test_augment_connected_tau_one(capsys, b6_file):
    code, out, _ = run(capsys, "augment", "--input", b6_file, "--tau", "1")
    assert code == 0 and out == "total 0\n"


def test_input_errors(capsys, tmp_path, b6_file):
    assert run(capsys, "augment", "--input", str(tmp_path / "missing.txt"), "--tau", "2")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 2 1\n")
    assert run(capsys, "extreme-sets", "--input", str(bad))[0] == 1
    assert run(capsys, "cut-threshold", "--input", b6_file, "--source", "9", "--phi", "1")[0] == 1


def test_splitoff(capsys, tmp_path, b6_file):
    p = tmp_path / "path.txt"
    p.write_text("3 2\n1 2 1\n2 3 1\n")
    code, out, _ = run(capsys, "splitoff", "--input", str(p), "--vertex", "2", "--verify")
    assert code == 0 and out.splitlines() == ["1 3 1", "verify pass"]
    code, _, err = run(capsys, "splitoff", "--input", b6_file, "--vertex", "3")
    assert code == 1 and "odd degree" in err


@pytest.mark.parametrize("backend", ["naive", "accelerated"])
def test_cut_threshold(capsys, b6_file, backend):
    code, out, _ = run(capsys, "cut-threshold", "--input", b6_file, "--source", "1", "--phi", "1", "--backend", backend)
    assert code == 0 and out == "4 5 6\n"
    code, out, _ = run(capsys, "cut-threshold", "--input", b6_file, "--source", "1", "--phi", "0", "--backend", backend)
    assert out == "\n"


def test_bench_records(capsys):
    code, out, _ = run(capsys, "bench", "--random", "60", "200", "4", "--repeat", "3", "--seed", "5")
    recs = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and len(recs) == 3
    for r in recs:
        r.pop("seconds")
        r.pop("repeat")
    assert recs[0] == recs[1] == recs[2]
    assert recs[0]["max_flow_calls"] > 0 and recs[0]["recursion_depth"] >= 1


def test_seed_from_environment(capsys, monkeypatch, b6_file):
    monkeypatch.setenv("EXTREMECUT_SEED", "17")
    code, out, _ = run(capsys, "bench", "--input", b6_file)
    assert code == 0 and json.loads(out)["seed"] == 17
    monkeypatch.setenv("EXTREMECUT_SEED", "nope")
    assert run(capsys, "bench", "--input", b6_file)[0] == 1


def test_module_entry_point(b6_file):
    res = subprocess.run(
        [sys.executable, "-m", "extremecut", "cut-threshold", "--input", b6_file, "--source", "1", "--phi", "2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and res.stdout == "2 3 4 5 6\n"
