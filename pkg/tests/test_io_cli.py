import json
import subprocess
import sys
from pathlib import Path

import pytest

from orikami import io
from orikami.analysis import PropernessVerdict, properness_verdict
from orikami.cli import run
from orikami.construct import StickDiagram
from orikami.fixtures import pentagram_trefoil
from orikami.folding import fold_loop
from orikami.generators import improper_fixture, torus_folding
from orikami.knotid import CertificationReport, certify

DATA = Path(__file__).resolve().parent.parent / "data"


def _rewrite(tmp_path, name, data, parse, emit):
    p1, p2 = tmp_path / f"{name}1.json", tmp_path / f"{name}2.json"
    io.write_json(p1, data)
    io.write_json(p2, emit(parse(io.read_json(p1))))
    assert p1.read_bytes() == p2.read_bytes()


def test_json_round_trips_are_fixed_points(tmp_path):
    f, loop = torus_folding(1)
    pl = fold_loop(f, loop)
    _rewrite(tmp_path, "folding", io.folding_to_dict(f), io.folding_from_dict, io.folding_to_dict)
    _rewrite(tmp_path, "loop", io.loop_to_dict(loop), io.loop_from_dict, io.loop_to_dict)
    _rewrite(tmp_path, "poly", io.polyline_to_dict(pl), io.polyline_from_dict, io.polyline_to_dict)
    _rewrite(tmp_path, "sticks", pentagram_trefoil().to_dict(), io.sticks_from_dict, StickDiagram.to_dict)
    rep = certify(pl)
    _rewrite(tmp_path, "report", rep.to_dict(), CertificationReport.from_dict, CertificationReport.to_dict)
    v = properness_verdict(improper_fixture())
    _rewrite(tmp_path, "verdict", v.to_dict(), PropernessVerdict.from_dict, PropernessVerdict.to_dict)


def test_schema_errors_name_the_key():
    with pytest.raises(io.SchemaError, match="face_maps"):
        io.folding_from_dict({"vertices": [], "creases": []})
    with pytest.raises(io.SchemaError, match="waypoints"):
        io.loop_from_dict({"format": "orikami/1"})
    with pytest.raises(io.SchemaError, match="format"):
        io.loop_from_dict({"format": "other/9", "waypoints": []})
    with pytest.raises(io.SchemaError, match="over"):
        io.sticks_from_dict({"vertices": [[0, 0]], "crossings": [{"edges": [0, 2]}]})


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(io.SchemaError, match="malformed"):
        io.read_json(p)


def test_bundled_stick_files_load():
    for name in ("pentagram", "figure_eight"):
        s = io.read_sticks(DATA / f"{name}.json")
        assert s.n in (5, 8)


# -- CLI -------------------------------------------------------------------


def test_cli_torus_then_identify(tmp_path, capsys):
    out = tmp_path / "t0"
    assert run(["torus", "--n", "0", "-o", str(out)]) == 0
    assert {p.name for p in out.iterdir()} == {"folding.json", "loop.json", "report.json"}
    capsys.readouterr()
    assert run(["fold", "--folding", str(out / "folding.json"), "--loop", str(out / "loop.json"), "-o", str(tmp_path / "pl.json")]) == 0
    assert run(["identify", str(tmp_path / "pl.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["determinant"] == 3
    assert run(["identify", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["determinant"] == 3


def test_cli_validate_identity(tmp_path, capsys):
    p = tmp_path / "id.json"
    p.write_text(json.dumps({
        "format": "orikami/1",
        "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]],
        "creases": [],
        "face_maps": [{"linear": [[1, 0], [0, 1], [0, 0]], "translation": [0, 0, 0]}],
    }))
    assert run(["validate", str(p)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["valid"] and out["crease_defects"] == [] and out["orthonormality_defects"] == []


def test_cli_validate_failure_exit_code(tmp_path, capsys):
    f, _ = torus_folding(0)
    d = io.folding_to_dict(f)
    d["face_maps"][0]["translation"] = [0, 0, 0.5]
    p = tmp_path / "torn.json"
    io.write_json(p, d)
    assert run(["validate", str(p)]) == 1
    assert json.loads(capsys.readouterr().out)["valid"] is False


def test_cli_construct_pentagram(tmp_path, capsys):
    out = tmp_path / "pent"
    assert run(["construct", "--sticks", str(DATA / "pentagram.json"), "-o", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["crease_count"] == 5 and rep["determinant"] == 3 and rep["matches_reference"]
    capsys.readouterr()
    assert run(["identify", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["determinant"] == 3


def test_cli_analyze_and_exports(tmp_path, capsys):
    run(["torus", "--n", "0", "-o", str(tmp_path)])
    capsys.readouterr()
    assert run(["analyze", str(tmp_path / "folding.json")]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "ImproperTransversal"
    svg, obj = tmp_path / "cp.svg", tmp_path / "f.obj"
    args = [str(tmp_path / "folding.json"), "--loop", str(tmp_path / "loop.json")]
    assert run(["export-svg", *args, "-o", str(svg)]) == 0
    assert run(["export-obj", *args, "-o", str(obj)]) == 0
    text = svg.read_text()
    assert 'viewBox="0 0 1000 1000"' in text and text.count('class="crease"') == 2 and "stroke-dasharray" in text
    lines = obj.read_text().splitlines()
    assert "o paper" in lines and "o loop" in lines
    assert sum(l.startswith("f ") for l in lines) == 3 and sum(l.startswith("l ") for l in lines) == 1


def test_cli_errors(tmp_path, capsys):
    assert run(["identify", str(tmp_path / "missing.json")]) == 2
    assert run(["bogus"]) == 2
    assert run(["validate", "x.json", "--what"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["analyze", str(bad)]) == 1
    assert "malformed" in capsys.readouterr().err
    nokey = tmp_path / "nokey.json"
    nokey.write_text('{"vertices": [], "creases": []}')
    assert run(["analyze", str(nokey)]) == 1
    assert "face_maps" in capsys.readouterr().err


def test_cli_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run(["construct", "--sticks", str(DATA / "figure_eight.json"), "-o", str(tmp_path / d)]) == 0
    for name in ("folding.json", "loop.json", "report.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_seed_environment_variable(tmp_path, capsys, monkeypatch):
    run(["torus", "--n", "1", "-o", str(tmp_path)])
    capsys.readouterr()
    monkeypatch.setenv("ORIKAMI_SEED", "7")
    run(["identify", str(tmp_path)])
    by_env = json.loads(capsys.readouterr().out)
    run(["identify", str(tmp_path), "--seed", "7"])
    assert json.loads(capsys.readouterr().out) == by_env
    monkeypatch.setenv("ORIKAMI_SEED", "seven")
    assert run(["identify", str(tmp_path)]) == 2


def test_tolerance_flag(tmp_path, capsys):
    run(["torus", "--n", "0", "-o", str(tmp_path)])
    assert run(["--tolerance", "100", "validate", str(tmp_path / "folding.json")]) == 0
    assert run(["--tolerance", "0", "validate", str(tmp_path / "folding.json")]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "orikami", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "torus" in res.stdout
