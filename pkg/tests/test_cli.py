import json
import subprocess
import sys

import pytest

from cgsieve import cli
from cgsieve.errors import RankDeficient


@pytest.fixture
def field_file(tmp_path):
    def make(T):
        p = tmp_path / f"field_{'_'.join(map(str, T))}.json"
        p.write_text(json.dumps({"T": T}))
        return str(p)

    return make


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_field(field_file, capsys):
    code, out, _ = run(["plan", "--field", field_file([5, 0, 1])], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["concrete"]["B"] == 30 and data["concrete"]["t"] == 1
    assert data["provenance"]["field"]["T"] == [5, 0, 1]
    assert len(data["provenance"]["field"]["hash"]) == 64


def test_plan_hint(capsys):
    code, out, _ = run(["plan", "--alpha", "0.5", "--gamma", "0.5"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["regime"] == "Medium" and data["strategy"] == "Sieve(Medium)"
    assert data["exponent"][0] == pytest.approx(1 / 3)


def test_bad_field_is_input_error(field_file, capsys):
    code, _, err = run(["plan", "--field", field_file([-4, 0, 1])], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run(["plan", "--field", "/nonexistent.json"], capsys)
    assert code == 2
    code, _, _ = run(["plan", "--alpha", "0.5"], capsys)
    assert code == 2


def test_classgroup_and_verify(field_file, tmp_path, capsys):
    f = field_file([6, 1, 1])
    out = tmp_path / "cg.json"
    code, text, _ = run(["classgroup", "--field", f, "--out", str(out), "--oracle"], capsys)
    assert code == 0 and text.startswith("h = 3")
    data = json.loads(out.read_text())
    assert data["h"] == "3" and data["certified"] and data["invariants"] == [3]
    assert data["provenance"]["fb_hash"]
    assert (tmp_path / "cg.json.rels").exists()
    code, text, _ = run(["verify", "--field", f, "--result", str(out)], capsys)
    assert code == 0 and json.loads(text)["certified"]
    code, text, _ = run(["verify", "--field", f, "--h", "2"], capsys)
    assert code == 1 and not json.loads(text)["certified"]


def test_verify_non_quadratic(field_file, capsys):
    f = field_file([-1, -1, 0, 1])
    assert run(["verify", "--field", f, "--h", "1"], capsys)[0] == 2
    assert run(["verify", "--field", f, "--h", "1", "--expect-h", "1"], capsys)[0] == 0


def test_classgroup_budget(field_file, tmp_path, capsys):
    f = field_file([5, 0, 1])
    db = tmp_path / "p.rels"
    code, _, err = run(["classgroup", "--field", f, "--budget", "5", "--db", str(db)], capsys)
    assert code == 4 and "budget" in err
    code, text, _ = run(["classgroup", "--field", f, "--resume", str(db), "--json"], capsys)
    assert code == 0 and json.loads(text)["h"] == "2"


def test_pip_commands(field_file, tmp_path, capsys):
    f = field_file([5, 0, 1])
    db = tmp_path / "x5.rels"
    assert run(["classgroup", "--field", f, "--db", str(db)], capsys)[0] == 0
    ideal = tmp_path / "a.json"
    ideal.write_text(json.dumps({"generators": [[3, 1]]}))
    code, text, _ = run(["pip", "--field", f, "--ideal", str(ideal), "--db", str(db)], capsys)
    data = json.loads(text)
    assert code == 0 and data["verified"] and data["value"] in ([3, 1], [-3, -1])
    ideal.write_text(json.dumps({"hnf": [[2, 0], [1, 1]]}))
    code, _, _ = run(["pip", "--field", f, "--ideal", str(ideal), "--db", str(db)], capsys)
    assert code == 3
    other = field_file([6, 0, 1])
    code, _, _ = run(["pip", "--field", other, "--ideal", str(ideal), "--db", str(db)], capsys)
    assert code == 2
    ideal.write_text("{}")
    assert run(["pip", "--field", f, "--ideal", str(ideal), "--db", str(db)], capsys)[0] == 2


def test_regions(tmp_path, capsys):
    code, text, _ = run(["regions", "--step", "0.1"], capsys)
    assert code == 0 and text.startswith("alpha,gamma_0,exponent,strategy,valid")
    out = tmp_path / "r.csv"
    assert run(["regions", "--step", "0.05", "--out", str(out)], capsys)[0] == 0
    assert len(out.read_text().splitlines()) == 1 + 21 * 25


def test_exit_code_mapping():
    assert cli._exit_code(RankDeficient([1], rank=0, ncols=1)) == 5


def test_console_module(field_file):
    proc = subprocess.run([sys.executable, "-m", "cgsieve", "plan", "--field", field_file([1, 0, 1])],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["provenance"]["command"] == "plan"
