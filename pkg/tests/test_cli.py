import json
import os
import subprocess
import sys

import pytest

from flowpoly.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return FIXTURES / f"{name}.json"


def test_info(capsys):
    code, out, _ = run(capsys, "info", fx("b4"))
    data = json.loads(out)["graph"]
    assert code == 0 and data["cycle_rank"] == 3 and data["bridgeless"]
    _, out, _ = run(capsys, "info", fx("single_edge"))
    data = json.loads(out)["graph"]
    assert data["bridges"] == [0] and not data["bridgeless"]
    _, out, _ = run(capsys, "info", fx("edgeless"))
    assert json.loads(out)["graph"]["cycle_rank"] == 0


def test_modular_all(capsys):
    code, out, _ = run(capsys, "modular", fx("b4"), "--method", "all")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["polynomial"]["coeffs"] == ["-3/1", "6/1", "-4/1", "1/1"]
    assert len(data["reports"]) == 4


def test_orientations_classes(capsys):
    code, out, _ = run(capsys, "orientations", fx("b4"), "--totally-cyclic", "--classes")
    data = json.loads(out)
    assert code == 0 and data["count"] == 14
    assert data["class_sizes"] == [4, 6, 4]
    _, out, _ = run(capsys, "orientations", fx("b4"), "--classes")
    data = json.loads(out)
    assert data["count"] == 16 and sorted(data["class_sizes"]) == [1, 1, 4, 4, 6]
    cut = next(o for o in data["orientations"] if o["bits"] == "0000")["directed_cut"]
    assert cut == {"side": ["u"], "edges": [0, 1, 2, 3]}


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", fx("b2"), "--orientation", "00", "--flow", "[1,2]",
                       "--mod", "3")
    assert code == 0 and json.loads(out)["flow"] == [1, -1]
    code, out, _ = run(capsys, "lift", fx("b2"), "--orientation", "00",
                       "--flow", '{"values": [1, 2], "mod": 3}')
    assert code == 0 and json.loads(out)["flow"] == [1, -1]


def test_integral_with_dual(capsys):
    code, out, _ = run(capsys, "integral", fx("b4"), "--method", "all", "--dual")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["polynomial"]["coeffs"] == ["-14/1", "86/3", "-20/1", "16/3"]
    assert data["dual"]["reciprocity_holds"]


def test_local_and_tutte(capsys):
    code, out, _ = run(capsys, "local", fx("b2"), "--orientation", "01")
    data = json.loads(out)
    assert code == 0 and data["open"]["coeffs"] == ["-1/1", "1/1"]
    code, out, _ = run(capsys, "local", fx("b4"), "--orientation", "0000")
    assert code == 0 and "warning" in json.loads(out)
    code, out, _ = run(capsys, "tutte", fx("c3"))
    data = json.loads(out)
    assert data["T(0,1)"] == "1" and data["T(0,2)"] == "2"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", fx("b4"))
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", fx("bridge"), "--qmax", "2")
    data = json.loads(out)
    assert code == 0 and data["graph"]["hypothesis"].startswith("not met")


def test_text_format_both_positions(capsys):
    code, out, _ = run(capsys, "--format", "text", "modular", fx("b4"))
    assert code == 0 and "t^3 - 4*t^2 + 6*t - 3" in out
    code, out2, _ = run(capsys, "modular", fx("b4"), "--format", "text")
    assert out2 == out


@pytest.mark.parametrize("argv, code, kind", [
    (["info", "missing.json"], 2, "io"),
    (["modular", "b4", "--method", "magic"], 2, "usage"),
    (["frobnicate", "b4"], 2, "usage"),
    (["local", "b4", "--orientation", "01"], 2, "domain"),
    (["local", "b4", "--orientation", "01x1"], 2, "domain"),
    (["lift", "b2", "--orientation", "00", "--flow", "[1,1]", "--mod", "3"], 2, "domain"),
    (["lift", "b2", "--orientation", "00", "--flow", "[1,"], 2, "domain"),
    (["orientations", "b4", "--max-edges", "3"], 3, "resource"),
    (["modular", "k4", "--method", "interp", "--max-enum", "10"], 3, "resource"),
])
def test_error_paths(capsys, argv, code, kind):
    argv = [str(fx(a)) if a in ("b4", "b2", "k4") else a for a in argv]
    got, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert got == code and data["exit_code"] == code
    assert data["error"] and data["kind"] == kind


def test_parse_error_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a"], "edges": [["a", "z"]]}')
    code, out, _ = run(capsys, "info", bad)
    data = json.loads(out)
    assert code == 2 and data["location"] == "$.edges[0][1]"
    bad.write_text('{"vertices": ["a"],\n  "edges": [[}')
    code, out, _ = run(capsys, "info", bad)
    assert code == 2 and json.loads(out)["location"].startswith("line 2")


def test_method_mismatch_exit_code(capsys, monkeypatch):
    from flowpoly import counting
    from flowpoly.polyalg import Poly
    real = counting.modular_flow_poly

    def broken(g, method="tutte"):
        rep = real(g, method)
        if method == "charpoly":
            rep.poly = rep.poly + Poly([1])
        return rep
    monkeypatch.setattr(counting, "modular_flow_poly", broken)
    code, out, _ = run(capsys, "modular", fx("b4"), "--method", "all")
    data = json.loads(out)
    assert code == 1 and not data["agree"] and "error" in data


def test_invariant_exit_code(capsys, monkeypatch):
    from flowpoly import flowspace
    monkeypatch.setattr(flowspace, "_augmenting_path", lambda *a: None)
    code, out, _ = run(capsys, "lift", fx("b2"), "--orientation", "00", "--flow", "[1,2]",
                       "--mod", "3")
    data = json.loads(out)
    assert code == 4 and data["kind"] == "invariant"


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "modular", fx("b4"), "--timing")
    assert "millis" in json.loads(out)["reports"][0]
    _, out, _ = run(capsys, "modular", fx("b4"))
    assert "millis" not in out


def _cli(*args, env=None):
    return subprocess.run([sys.executable, "-m", "flowpoly.cli", *map(str, args)],
                          capture_output=True, text=True, env=env)


def test_output_independent_of_jobs():
    a = _cli("integral", fx("theta"), "--method", "all", "--dual", "--jobs", "1")
    b = _cli("integral", fx("theta"), "--method", "all", "--dual", "--jobs", "3")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_env_edge_cap_and_pure_python():
    env = dict(os.environ, FLOWPOLY_MAX_EDGES="3")
    r = _cli("orientations", fx("b4"), env=env)
    assert r.returncode == 3 and json.loads(r.stdout)["cap"] == "max_edges"
    env = dict(os.environ, FLOWPOLY_PURE_PYTHON="1")
    r = _cli("modular", fx("b4"), "--method", "all", env=env)
    assert r.returncode == 0
    assert json.loads(r.stdout)["polynomial"]["coeffs"] == ["-3/1", "6/1", "-4/1", "1/1"]
