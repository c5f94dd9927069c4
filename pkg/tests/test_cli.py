import json
import subprocess
import sys

import pytest

from nleibniz.catalog import load_algebra, save_algebra
from nleibniz.cli import main
from _oracles import mutate


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def files(tmp_path, catalog):
    paths = {}
    for name, A in catalog.items():
        p = tmp_path / f"{name}.json"
        save_algebra(A, p)
        paths[name] = p
    return paths


def test_check_exit_codes(capsys, files, tmp_path, catalog):
    code, out, _ = run(capsys, "check", files["example_3_10"])
    assert code == 0 and json.loads(out)["identity"]["passed"]
    broken = tmp_path / "broken.json"
    save_algebra(mutate(catalog["example_3_10"], (0, 0, 0), 0), broken)
    code, out, _ = run(capsys, "check", broken)
    doc = json.loads(out)
    assert code == 1 and doc["identity"]["violations"]
    assert doc["identity"]["violations"][0]["x"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 1" in err


def test_check_example_5_4_export(capsys, tmp_path):
    p = tmp_path / "e54.json"
    assert main(["catalog", "example_5_4", "--params", "n=4", "m=5", "s=2", "-o", str(p)]) == 0
    code, out, _ = run(capsys, "check", p)
    assert code == 0, f"{json.loads(out)['identity']['violation_count']} violations"


def test_report_dossiers(capsys, files):
    code, out, _ = run(capsys, "report", files["abelian"])
    doc = json.loads(out)
    assert code == 0
    assert doc["series"]["lower"]["index"] == 2 and doc["derivations"]["dim"] == 9
    assert doc["frattini"]["dim"] == 0
    assert (doc["seed"], doc["trials"]) == (0, 64)
    code, out, _ = run(capsys, "report", files["example_5_2"])
    doc = json.loads(out)
    assert doc["frattini"]["dim"] == 0 and doc["frattini"]["exactness"] == "exact_zero_bound"
    assert doc["frattini"]["quotient_bound"]["simplicity"]["simple"]
    assert any(c["level"] == "proven_codim1" for c in doc["frattini"]["certificates"])


def test_report_example_5_4_cartan_spectrum(capsys, files):
    code, out, _ = run(capsys, "report", files["example_5_4"])
    assert json.loads(out)["cartan"]["dimension_spectrum"] == [3, 4, 7, 8]


def test_report_is_deterministic(capsys, files):
    a = run(capsys, "report", files["example_3_11"], "--seed", "3", "--trials", "8")[1]
    b = run(capsys, "report", files["example_3_11"], "--seed", "3", "--trials", "8")[1]
    assert a == b and json.loads(a)["seed"] == 3


def test_series_command(capsys, files):
    code, out, _ = run(capsys, "series", files["chain"], "--kind", "s", "--s", "2")
    assert json.loads(out)["series"]["dims"] == [4, 3, 0]
    code, out, _ = run(capsys, "series", files["example_5_2"], "--kind", "kder", "--k", "2",
                       "--ideal", "x1,x2")
    assert json.loads(out)["series"]["dims"] == [2, 0]
    code, out, _ = run(capsys, "series", files["example_3_10"], "--kind", "k1", "--ideal", "1,2,3")
    assert json.loads(out)["series"]["dims"] == [3, 0]
    code, _, err = run(capsys, "series", files["chain"], "--kind", "kder", "--ideal", "e9")
    assert code == 2 and "e9" in err


def test_text_format(capsys, files):
    code, out, _ = run(capsys, "series", files["chain"], "--kind", "lower", "--format", "text")
    assert "series.dims: [4, 3, 2, 1, 0]" in out.splitlines()


def test_derivations_fitting_frattini_radical(capsys, files):
    assert json.loads(run(capsys, "derivations", files["example_3_11"])[1])["dim"] == 4
    doc = json.loads(run(capsys, "fitting", files["example_3_10"], "--tuple", "e1,e1")[1])
    assert doc["null_component"]["dim"] == 1 and doc["one_component"]["dim"] == 3
    assert doc["roots"]["roots"] == ["0", "1"]
    assert run(capsys, "fitting", files["example_3_10"], "--tuple", "e1")[0] == 2
    doc = json.loads(run(capsys, "frattini", files["chain"])[1])
    assert doc["frattini"]["exactness"] == "exact_by_theorem" and doc["frattini"]["dim"] == 3
    doc = json.loads(run(capsys, "radical", files["example_5_2"], "--kind", "ksol", "--param", "2")[1])
    assert doc["radical"]["dim"] == 2 and "lower bound" in doc["radical"]["soundness"]


def test_cartan_with_candidates_file(capsys, files, tmp_path):
    cand = tmp_path / "cand.json"
    cand.write_text(json.dumps({"H": ["e1", "e2", "e3"], "small": ["e1", "e2"]}))
    doc = json.loads(run(capsys, "cartan", files["example_5_4"], "--candidates", cand,
                         "--trials", "4")[1])
    labels = {r["label"] for r in doc["reports"]}
    assert "H" in labels and "small" not in labels


def test_catalog_command(capsys, tmp_path, catalog):
    p = tmp_path / "e311.json"
    code = main(["catalog", "example_3_11", "--params", "n=4", "m=5", "k=2",
                 "alpha=[1,-1,2,3]", "-o", str(p)])
    assert code == 0 and load_algebra(p) == catalog["example_3_11"]
    z = tmp_path / "zero.json"
    assert main(["catalog", "abelian", "--params", "d=0", "-o", str(z)]) == 0
    assert load_algebra(z).dim == 0
    alpha = [[[0, 1], [1, 0], [0, 0], [0, 0]], [[0, 0]] * 4]
    code, _, err = run(capsys, "catalog", "supplemented", "--params", "n=3", "m=2",
                       f"alpha={json.dumps(alpha)}")
    assert code == 2 and "BadParams" in err


def test_quotient_command(capsys, files, tmp_path):
    q = tmp_path / "q.json"
    assert main(["quotient", str(files["example_5_2"]), "--ideal", "x1,x2", "-o", str(q)]) == 0
    Q = load_algebra(q)
    assert Q.dim == 4 and Q.is_lie()
    code, _, err = run(capsys, "quotient", files["example_5_2"], "--ideal", "e1")
    assert code == 2 and "NotAnIdeal" in err


def test_console_script_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "nleibniz.cli", "check", str(files["chain"])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["identity"]["passed"]
