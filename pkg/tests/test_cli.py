import json

import pytest

from rotorlab.cli import run
from rotorlab.tangle import Orientation, random_rotor_link


@pytest.fixture
def files(tmp_path):
    unknot = tmp_path / "unknot.json"
    unknot.write_text(json.dumps({"crossings": [], "free_loops": 1}))
    trefoil = tmp_path / "trefoil.json"
    trefoil.write_text(json.dumps({"crossings": [[3, 1, 4, 0], [5, 3, 0, 2], [1, 5, 2, 4]]}))
    triv = tmp_path / "trivial_rotor.json"
    rl = random_rotor_link(3, 0, 3, Orientation.PRESERVING, 2)
    assert not rl.rotor.crossings
    triv.write_text(json.dumps(rl.as_json()))
    link = tmp_path / "link.json"
    link.write_text(json.dumps(random_rotor_link(4, 1, 3, Orientation.REVERSING, 6).as_json()))
    return tmp_path


def call(argv, capsys):
    code = run([str(a) for a in argv])
    return code, capsys.readouterr()


def test_invariants_unknot(files, capsys):
    code, out = call(["invariants", files / "unknot.json", "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    assert rep["conway"] == {"0": "1"} and rep["murasugi"] == 0
    assert rep["h1_double_cover"] == {"factors": [], "free_rank": 0}


def test_invariants_text_and_omega(files, capsys):
    code, out = call(["invariants", files / "trefoil.json", "--omega", "1/2", "--omega", "inf"], capsys)
    assert code == 0 and "z^2 + 1" in out.out and "Z3" in out.out


def test_output_is_deterministic(files, capsys):
    _, a = call(["invariants", files / "trefoil.json", "--json"], capsys)
    _, b = call(["invariants", files / "trefoil.json", "--json"], capsys)
    assert a.out == b.out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["invariants"], ["invariants", "x.json", "--omega", "0.5"],
                                  ["suite", "--trials", "3"], ["search", "jones", "--seed", "1", "--budget", "1"],
                                  ["invariants", "x.json", "--frobnicate"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_file_errors(files, capsys):
    assert run(["invariants", str(files / "missing.json")]) == 3
    bad = files / "bad.json"
    bad.write_text('{"crossings": [[0, 1, 2, 3]]}')
    assert run(["invariants", str(bad)]) == 3
    assert run(["compare", str(files / "trefoil.json")]) == 3


def test_compare_trivial_rotor(files, capsys):
    code, out = call(["compare", files / "trivial_rotor.json"], capsys)
    rep = json.loads(out.out)
    assert code == 0 and "violated" not in rep["verdicts"].values()


def test_rotant_writes_both_files(files, capsys):
    code, _ = call(["rotant", files / "link.json", "-o", files / "out.json", "--k", "1"], capsys)
    assert code == 0
    d = json.loads((files / "out.json").read_text())
    link = json.loads((files / "out.link.json").read_text())
    assert d["crossings"] and link["n"] == 4
    code, out = call(["compare", files / "out.link.json"], capsys)
    assert code == 0


def test_oracle_and_suite(files, capsys):
    code, out = call(["oracle", "conway", files / "trefoil.json"], capsys)
    assert code == 0 and json.loads(out.out) == {"conway": {"0": "1", "2": "1"}}
    code, out = call(["suite", "--trials", "0", "--seed", "1", "--json"], capsys)
    assert code == 0 and json.loads(out.out)["trials"] == 0
    code, out = call(["suite", "--trials", "3", "--seed", "7", "--nmin", "3", "--nmax", "3",
                      "--max-crossings", "9", "--threads", "1"], capsys)
    assert code == 0 and "clean" in out.out


def test_search_runs_to_budget(files, capsys, monkeypatch):
    monkeypatch.chdir(files)
    code, out = call(["search", "homology", "--seed", "1", "--budget", "2"], capsys)
    assert code == 0
