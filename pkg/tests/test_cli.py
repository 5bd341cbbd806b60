import json
import subprocess
import sys

import networkx as nx
import pytest

from reference import to_nx
from spectral_gauge.cli import main
from spectral_gauge.graph import parse_graph, petersen


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_xi_petersen(capsys):
    code, out, _ = run(["compute", "--graph", "gen:petersen", "--bound", "xi", "--matrix", "adjacency"], capsys)
    assert code == 0 and "value       4.0000000" in out


def test_compute_theta_c5(capsys):
    code, out, _ = run(["compute", "--graph", "gen:cycle:5", "--bound", "theta"], capsys)
    assert code == 0 and "2.2360680" in out


def test_compute_chif_json(capsys):
    code, out, _ = run(["--format", "json", "compute", "--graph", "gen:complete:4", "--bound", "chif"], capsys)
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"graph", "bound", "matrix", "value", "gap", "iterations", "certificate"}
    assert data["graph"] == {"n": 4, "m": 6, "source": "gen:complete:4"}
    assert data["value"] == pytest.approx(4.0, abs=1e-10)


def test_infinity_is_a_string(capsys):
    code, out, _ = run(["compute", "--graph", "gen:cycle:5", "--bound", "luz",
                        "--matrix", "neg-adjacency", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["value"] == "inf"


@pytest.mark.parametrize("bound", ["xi", "theta", "hoffman", "luz", "best_xi"])
def test_json_roundtrip_and_determinism(bound, capsys):
    args = ["compute", "--graph", "gen:erdos_renyi:7:0.5:3", "--bound", bound, "--matrix",
            "random:4", "--weights", "0.1,0.2,0.3,0.4,0.5,0.6,0.7", "--format", "json",
            "--budget", "30"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert first == second
    data = json.loads(first)

    def numbers(obj):
        if isinstance(obj, dict):
            for v in obj.values():
                yield from numbers(v)
        elif isinstance(obj, list):
            for v in obj:
                yield from numbers(v)
        elif isinstance(obj, float):
            yield obj

    for v in numbers(data):
        assert abs(float(repr(v)) - v) <= 1e-12 * max(1.0, abs(v))
        assert float(json.dumps(v)) == v


def test_weights_and_matrix_files(tmp_path, capsys):
    wf = tmp_path / "w.txt"
    wf.write_text("1 2 1 2 1\n")
    mf = tmp_path / "a.txt"
    mf.write_text("0 1 0 0 1\n1 0 1 0 0\n0 1 0 1 0\n0 0 1 0 1\n1 0 0 1 0\n")
    gf = tmp_path / "g.dimacs"
    gf.write_text("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    code, out, _ = run(["compute", "--graph", str(gf), "--bound", "xi", "--matrix", f"file:{mf}",
                        "--weights", f"file:{wf}", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["value"] > 4.0


@pytest.mark.parametrize("args", [
    ["compute", "--graph", "gen:cycle:5"],
    ["compute", "--graph", "missing-file", "--bound", "xi"],
    ["compute", "--graph", "gen:bogus:3", "--bound", "xi"],
    ["compute", "--graph", "gen:cycle:5", "--bound", "xi", "--matrix", "random:x"],
    ["compute", "--graph", "gen:cycle:5", "--bound", "xi", "--weights", "1,2"],
    ["compute", "--graph", "gen:star:3", "--bound", "ratio"],
    ["compute", "--graph", "gen:cycle:5", "--bound", "xi", "--tol", "-1"],
    ["gen", "bogus"],
    ["frobnicate"],
])
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 1 and err


def test_solver_failure_exit_code(monkeypatch, capsys):
    from spectral_gauge import cli
    from spectral_gauge.errors import NumericalError

    def broken(*a, **k):
        raise NumericalError("Newton iteration cap reached", mu=1e-9)

    monkeypatch.setattr(cli, "xi", broken)
    code, _, err = run(["compute", "--graph", "gen:cycle:5", "--bound", "xi"], capsys)
    assert code == 2 and "solver failure" in err


def test_verify_exit_codes(monkeypatch, capsys):
    code, out, _ = run(["verify", "--suite", "theta", "--graph", "gen:cycle:5"], capsys)
    assert code == 0 and "theta-product-equals-n-vertex-transitive" in out
    from spectral_gauge import cli
    from spectral_gauge.verify import Check
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [Check("always-fails", False, 1.0)])
    code, out, _ = run(["verify", "--suite", "luz", "--graph", "gen:cycle:5", "--format", "json"], capsys)
    assert code == 3 and json.loads(out)["passed"] is False


def test_verify_json_sorted(capsys):
    code, out, _ = run(["verify", "--suite", "sandwich", "--graph", "gen:erdos_renyi:9:0.4:7",
                        "--format", "json"], capsys)
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert code == 0 and names == sorted(names)


def test_gen(capsys):
    code, out, _ = run(["gen", "petersen"], capsys)
    assert code == 0 and out.startswith("p edge 10 15")
    assert parse_graph(out) == petersen()
    _, out, _ = run(["gen", "cycle:7"], capsys)
    assert parse_graph(out).m == 7
    _, out, _ = run(["gen", "kneser:5:2"], capsys)
    assert nx.is_isomorphic(to_nx(parse_graph(out)), to_nx(petersen()))


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "spectral_gauge.cli", "gen", "cycle:4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "p edge 4 4"
    r = subprocess.run([sys.executable, "-m", "spectral_gauge.cli", "compute"],
                       capture_output=True, text=True)
    assert r.returncode == 1
