import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from qgw.cli import main, parse_params
from qgw.errors import ConfigError
from qgw.presentations import data_dir

SCHEMA = json.loads((data_dir() / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--algebra", "gmk", "d*c")
    assert code == 0 and out.strip() == "c*d - m*c*c"


def test_normalize_trace_and_params(capsys):
    code, out, _ = run(capsys, "normalize", "--algebra", "grs", "--trace", "b*a")
    assert code == 0
    assert out.splitlines() == ["   1  b*a  [rule b*a at position 1]", "r*a*b"]
    code, out, _ = run(capsys, "normalize", "--algebra", "grs", "--params", "r=2", "b*a")
    assert out.strip() == "2*a*b"


def test_normalize_errors(capsys):
    code, _, err = run(capsys, "normalize", "--algebra", "grs", "a*x")
    assert code == 2 and "UnknownGenerator" in err
    code, _, err = run(capsys, "normalize", "--algebra", "grs", "a*(b")
    assert code == 2 and "syntax error" in err


def test_contract_json_matches_shipped(capsys):
    code, out, _ = run(capsys, "contract", "--plan", "paper9", "--emit", "json")
    assert code == 0
    data = json.loads(out)
    shipped = json.loads((data_dir() / "R_Gmk.json").read_text())
    assert data["order"] == "block9" and data["name"] == "R_Gmk"
    assert data["entries"] == shipped["entries"]


def test_contract_k_zero(capsys):
    code, out, _ = run(capsys, "contract", "--plan", "paper9", "--emit", "json", "--params", "k=0")
    entries = json.loads(out)["entries"]
    assert code == 0 and entries[4][5] == "0" and entries[0][1] == "m"


def test_rmatrix_commands(capsys):
    assert run(capsys, "rmatrix", "qybe", "R_Grs")[0] == 0
    assert run(capsys, "rmatrix", "triangular", "R_Gmk")[0] == 0
    code, out, _ = run(capsys, "rmatrix", "triangular", "R_Grs", "--params", "r=2,s=3")
    assert code == 1 and "FAIL" in out
    code, _, err = run(capsys, "rmatrix", "qybe", "R_Grs", "--params", "r=0")
    assert code == 2 and "DenominatorVanishes" in err
    code, out, _ = run(capsys, "rmatrix", "show", "R_Grs", "--order", "block9", "--json")
    shipped = json.loads((data_dir() / "R_q_blocked.json").read_text())
    assert code == 0 and json.loads(out)["entries"] == shipped["entries"]


def test_check_json_schema_and_determinism(capsys):
    argv = ("check", "rtt", "--json", "--deterministic")
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
    doc = json.loads(first)
    jsonschema.validate(doc, SCHEMA)
    assert doc["status"] == "pass"
    assert all(r["elapsed_ms"] == 0 for r in doc["reports"])


def test_check_failures_have_witnesses(capsys):
    code, out, _ = run(capsys, "check", "triangularity", "--json", "--algebra", "Grs")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    for report in doc["reports"]:
        if report["status"] == "fail":
            assert report["witnesses"]


def test_check_errors(capsys):
    assert run(capsys, "check", "nope")[0] == 2
    assert run(capsys, "check", "morphism", "--N", "0")[0] == 2
    assert run(capsys, "check", "rtt", "--algebra", "SL2")[0] == 2


def test_derive_relations(capsys):
    code, out, _ = run(capsys, "derive-relations", "--algebra", "GLr2")
    assert code == 0 and len(out.strip().splitlines()) >= 6


def test_morphism(capsys):
    code, out, _ = run(capsys, "morphism", "--source", "grs", "--N", "2")
    assert code == 0
    assert "b'*a' = p^-1*a'*b'" in out
    code, out, _ = run(capsys, "morphism", "--source", "gmk", "--N", "2", "--json", "--deterministic")
    jsonschema.validate(json.loads(out), SCHEMA)


def test_parse_roundtrip(capsys, tmp_path):
    src = data_dir() / "gmk.qgw"
    code, out, _ = run(capsys, "parse", str(src))
    assert code == 0
    path = tmp_path / "again.qgw"
    path.write_text(out)
    _, again, _ = run(capsys, "parse", str(path))
    assert again == out


def test_parse_errors(capsys, tmp_path):
    assert run(capsys, "parse", str(tmp_path / "missing.qgw"))[0] == 2
    bad = tmp_path / "bad.qgw"
    bad.write_text("algebra X\ngens a < b\nrel b*a = a*$\n")
    code, _, err = run(capsys, "parse", str(bad))
    assert code == 2 and "line 3" in err


def test_parse_params():
    assert str(parse_params("r=2,s=3/2")["s"]) == "3/2"
    with pytest.raises(ConfigError):
        parse_params("r")
    with pytest.raises(ConfigError):
        parse_params("r=s")


def test_data_dir_override(tmp_path):
    for f in data_dir().iterdir():
        if f.is_file():
            shutil.copy(f, tmp_path / f.name)
    text = (tmp_path / "glr2.qgw").read_text().replace("rel b*c = c*b", "rel b*c = c*b + a*a")
    (tmp_path / "glr2.qgw").write_text(text)
    env = {"QGW_DATA_DIR": str(tmp_path), "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "qgw.cli", "normalize", "--algebra", "GLr2", "c*b"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert proc.stdout.strip() != "b*c"
