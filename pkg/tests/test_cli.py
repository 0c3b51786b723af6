import json
import subprocess
import sys

import pytest

from ybcubes.cli import main
from ybcubes.fixtures import fixture
from ybcubes.presentation import Presentation


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_build_fixture(capsys):
    code, out = run(capsys, "build", "--fixture", "gamma1")
    doc = json.loads(out)
    assert code == 0
    pres = doc["presentation"]
    assert len(pres["labels"]) == 18
    assert len(pres["involution_pairs"]) == 9
    assert len(pres["square_names"]) == 27
    assert pres["valency_vector"] == [6, 6, 6]
    assert doc["checks"][0]["pass"]


def test_build_round_trip(capsys, tmp_path):
    path = tmp_path / "g.json"
    assert main(["build", "--q", "5", "--cosets", "1,2,3", "--delta-exp", "19", "-o", str(path)]) == 0
    first = path.read_text()
    assert json.loads(first)["field"]["delta_exponent"] == 19
    code, out = run(capsys, "build", "--input", str(path))
    again = json.loads(out)
    assert code == 0
    assert again["presentation"] == json.loads(first)["presentation"]
    pres = Presentation.from_json(again["presentation"])
    assert pres.same_squares(fixture("gamma1"))


def test_verify_all(capsys):
    code, out = run(capsys, "verify", "--fixture", "gamma2", "--all")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert [r["check"] for r in doc["reports"]] == ["vh", "cube", "ybe", "qybe"]


def test_verify_mutated(capsys):
    code, out = run(capsys, "verify", "--fixture", "gamma1", "--drop-square", "4", "--ybe")
    doc = json.loads(out)
    assert code == 1 and not doc["pass"]
    assert doc["reports"][0]["witnesses"]


def test_verify_extended(capsys):
    code, out = run(capsys, "verify", "--fixture", "gamma1", "--extend", "1", "--vh", "--cube")
    assert code == 0 and json.loads(out)["pass"]


def test_invariants(capsys):
    code, out = run(capsys, "invariants", "--fixture", "gamma1")
    assert code == 0 and out == "H1 = Z/2 x Z/10 x Z/10\n"
    code, out = run(capsys, "invariants", "--fixture", "gamma2", "--json")
    doc = json.loads(out)
    assert doc["H1"] == "Z/2 x Z/2 x Z/4 x Z/4"
    assert doc["fixed_pairs"] == 116


def test_export_formats(capsys, tmp_path):
    code, out = run(capsys, "export", "--fixture", "gamma1", "--matrix", "mm")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("%%MatrixMarket matrix coordinate integer general")
    assert "324 324 324" in lines
    _, again = run(capsys, "export", "--fixture", "gamma1", "--matrix", "mm")
    assert again == out
    _, csv = run(capsys, "export", "--fixture", "gamma1", "--matrix", "csv")
    assert csv.splitlines()[0] == "source_index,target_index"
    _, sol = run(capsys, "export", "--fixture", "gamma1")
    assert len(json.loads(sol)["map"]) == 324
    _, dot = run(capsys, "export", "--fixture", "gamma1", "--link", "0,1")
    assert dot.startswith("graph") and "a1" in dot


def test_census(capsys, tmp_path):
    stream = tmp_path / "c.jsonl"
    code, out = run(capsys, "census", "--m", "2", "--l", "2", "--k", "2", "--stream", str(stream))
    doc = json.loads(out)
    assert code == 0
    assert doc["labeled_enumeration"] == doc["labeled_mass_formula"] == 541
    assert doc["cube_lower_bound"] == 541
    assert doc["streamed_failing_vh"] == 0
    assert len(stream.read_text().splitlines()) == 541


def test_census_guard(capsys):
    assert main(["census", "--m", "3", "--l", "4"]) == 2
    assert main(["census", "--m", "1", "--l", "2", "--guard", "20"]) == 2
    code, out = run(capsys, "census", "--m", "1", "--l", "2", "--guard", "20", "--allow-large")
    assert code == 0 and json.loads(out)["agree"]


def test_iso(capsys):
    _, out = run(capsys, "iso", "gamma1", "gamma2")
    assert json.loads(out)["verdict"] == "non-isomorphic"
    _, out = run(capsys, "iso", "gamma1", "gamma1", "--relabel-seed", "4")
    doc = json.loads(out)
    assert doc["verdict"] == "isomorphic" and len(doc["nu"]) == 18


@pytest.mark.parametrize("argv", [
    ["build"],
    ["build", "--fixture", "gamma1", "--q", "5"],
    ["build", "--q", "6", "--cosets", "1"],
    ["build", "--q", "5"],
])
def test_bad_sources(argv):
    assert main(argv) == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ybcubes", "invariants", "--fixture", "gamma2"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "H1 = Z/2 x Z/2 x Z/4 x Z/4\n"
