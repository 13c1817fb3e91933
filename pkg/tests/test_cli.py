import json
import subprocess
import sys
from fractions import Fraction

import pytest

import lagrel.diagio as dio
import lagrel.diagrams as dg
from lagrel.cli import main
from lagrel.scalars import qi


def run_cli(args, **kw):
    return subprocess.run([sys.executable, "-m", "lagrel.cli", *args],
                          capture_output=True, text=True, **kw)


@pytest.fixture
def fixtures(tmp_path):
    ident = tmp_path / "id.diagram.json"
    ident.write_text(dio.diagram_to_json(dg.spider_diagram(dg.Z, 1, 1, (0, 0))))
    white = tmp_path / "w.diagram.json"
    white.write_text(dio.diagram_to_json(
        dg.spider_diagram(dg.X, 1, 1, (qi(Fraction(1, 2)), 0))))
    circ = tmp_path / "circ.json"
    circ.write_text(json.dumps({
        "wires": 2,
        "gates": [
            {"kind": "bs", "wires": [0, 1], "angle": {"tan_half": "1/2"}},
            {"kind": "ps", "wires": [0], "angle": {"cos": "3/5", "sin": "4/5"}},
            {"kind": "pbs", "wires": [0, 1]},
        ]}))
    return tmp_path, ident, white, circ


def test_eq_exit_codes(fixtures):
    _, ident, white, _ = fixtures
    r = run_cli(["eq", str(ident), str(ident)])
    assert r.returncode == 0 and "EQUAL" in r.stdout
    r = run_cli(["eq", str(ident), str(white)])
    assert r.returncode == 1 and "DISTINCT" in r.stdout
    assert "AP[" in r.stdout


def test_interpret_and_canon_round_trip(fixtures, tmp_path):
    _, ident, _, _ = fixtures
    out = tmp_path / "rel.relation.json"
    r = run_cli(["interpret", str(ident), "--out", str(out)])
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "relation" and doc["modes"] == {"in": 1, "out": 1}
    r = run_cli(["canon", str(out)])
    assert r.returncode == 0 and "AP[" in r.stdout


def test_check_predicates(fixtures):
    _, ident, _, _ = fixtures
    for pred in ("lagrangian", "positive", "quasi-real"):
        r = run_cli(["check", str(ident), "--predicate", pred])
        assert r.returncode == 0 and "TRUE" in r.stdout


def test_check_false_path(tmp_path):
    conj = tmp_path / "conj.diagram.json"
    conj.write_text(dio.diagram_to_json(
        dg.spider_diagram(dg.X, 0, 1, (0, qi(0, -1)))))
    r = run_cli(["check", str(conj), "--predicate", "positive"])
    assert r.returncode == 1 and "FALSE" in r.stdout


def test_axioms_verb(tmp_path):
    rep = tmp_path / "ax.tsv"
    r = run_cli(["axioms", "--calculus", "gaa", "--report", str(rep)])
    assert r.returncode == 0
    assert "axioms hold" in r.stdout
    assert rep.read_text().count("pass") >= 12


def test_demo_teleport_verb():
    r = run_cli(["demo-teleport", "--epsilon", "0"])
    assert r.returncode == 0
    assert "perfect channel: pass" in r.stdout
    r = run_cli(["demo-teleport", "--epsilon", "1/4", "--outcome", "1,2"])
    assert r.returncode == 0
    assert "two-path agreement: pass" in r.stdout
    r = run_cli(["demo-teleport", "--epsilon", "-1"])
    assert r.returncode == 2
    assert "NegativeEpsilon" in r.stderr


def test_import_graph_and_export(fixtures, tmp_path):
    out = tmp_path / "g.diagram.json"
    r = run_cli(["import-graph", "--u", "0,1;1,0", "--v", "1,0;0,1",
                 "--out", str(out)])
    assert r.returncode == 0
    dot = tmp_path / "g.dot"
    tikz = tmp_path / "g.tex"
    png = tmp_path / "g.png"
    r = run_cli(["export", str(out), "--dot", str(dot), "--tikz", str(tikz),
                 "--png", str(png)])
    assert r.returncode == 0
    assert dot.read_text().startswith("graph diagram {")
    assert "tikzpicture" in tikz.read_text()
    assert png.stat().st_size > 1000


def test_lov_verb(fixtures, tmp_path):
    _, _, _, circ = fixtures
    out = tmp_path / "lov.diagram.json"
    r = run_cli(["lov", str(circ), "--check", "--out", str(out)])
    assert r.returncode == 0
    assert "symplectic: pass" in r.stdout and "orthogonal: pass" in r.stdout
    doc = json.loads(out.read_text())
    assert doc["wires"] == {"in": 4, "out": 4}


def test_unknown_verb_rejected():
    r = run_cli(["frobnicate"])
    assert r.returncode == 2
    assert "usage" in (r.stderr + r.stdout).lower()


def test_deterministic_output(fixtures):
    _, ident, _, _ = fixtures
    a = run_cli(["interpret", str(ident)]).stdout
    b = run_cli(["interpret", str(ident)]).stdout
    assert a == b


def test_main_entry_point(fixtures, capsys):
    _, ident, _, _ = fixtures
    code = main(["eq", str(ident), str(ident)])
    assert code == 0
    assert "EQUAL" in capsys.readouterr().out


def test_backend_env_var(fixtures):
    import os
    _, ident, _, _ = fixtures
    env = dict(os.environ, LAGREL_BACKEND="exact")
    r = run_cli(["check", str(ident), "--predicate", "lagrangian"], env=env)
    assert r.returncode == 0 and "TRUE" in r.stdout
    # decision procedures refuse the float backend
    env = dict(os.environ, LAGREL_BACKEND="float")
    r = run_cli(["check", str(ident), "--predicate", "lagrangian"], env=env)
    assert r.returncode == 2 and "BackendMismatch" in r.stderr
