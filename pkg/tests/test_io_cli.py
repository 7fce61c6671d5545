import json
import shutil
import subprocess
import sys

import pytest

from lielab import GF, QQ, DocumentError, make_chevalley, make_ga1_twisted, make_sl2, make_witt
from lielab import io as docio
from lielab.cli import main
from lielab.constructions import build
from lielab.lemmas import default_catalog

F5 = GF(5)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    lines = [line for line in out.splitlines() if line.strip()]
    return code, json.loads(lines[-1]) if lines else None, err


# -- documents -------------------------------------------------------------------


def _catalog():
    rings = default_catalog(F5) + default_catalog(GF(7))
    rings += [make_sl2(QQ), make_chevalley("G2", QQ), make_ga1_twisted(5, 3), make_sl2(GF(5, 2)),
              build("chevalley:C3", "p=7"), build("abelian:4", "q=49")]
    return rings


@pytest.mark.parametrize("L", _catalog(), ids=lambda L: f"{L.name}/{L.field!r}")
def test_document_round_trip_is_byte_identical(L):
    text = docio.dumps(L)
    L2 = docio.loads(text)
    assert docio.dumps(L2) == text
    assert L2.brackets == L.brackets and L2.field == L.field and L2.name == L.name


def test_sl2_document_layout():
    doc = docio.to_document(make_sl2(F5))
    assert doc["brackets"] == [[1, 2, [0, 2, 0]], [1, 3, [0, 0, 3]], [2, 3, [1, 0, 0]]]
    assert doc["dim"] == 3 and doc["format_version"] == 1
    q = docio.to_document(make_sl2(QQ))
    assert q["brackets"][1] == [1, 3, ["0/1", "0/1", "-2/1"]]
    e = docio.to_document(make_sl2(GF(5, 2)))
    assert e["brackets"][0] == [1, 2, [[0, 0], [2, 0], [0, 0]]]
    assert "1.0" not in docio.dumps(make_witt(7))


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("dim"), "dim"),
    (lambda d: d.__setitem__("format_version", 9), "format_version"),
    (lambda d: d["brackets"][1].__setitem__(2, [0, 0.5, 0]), "brackets[1]"),
    (lambda d: d["brackets"][0].__setitem__(0, 2), "brackets[0]"),
    (lambda d: d["brackets"][0].__setitem__(2, [0, 2]), "brackets[0]"),
    (lambda d: d.__setitem__("field", {"characteristic": 6, "degree": 1, "modulus": None}), "field"),
])
def test_malformed_documents(mutate, fragment):
    doc = docio.to_document(make_sl2(F5))
    mutate(doc)
    with pytest.raises(DocumentError) as info:
        docio.from_document(doc)
    assert fragment in str(info.value)


def test_syntax_error_reports_position():
    with pytest.raises(DocumentError) as info:
        docio.loads('{"dim": 3,\n  "brackets": [}')
    assert "line 2" in str(info.value)


# -- CLI ---------------------------------------------------------------------------


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, field in [("sl2", "p=5"), ("ga1", "p=5"), ("heisenberg", "p=5"), ("witt", "p=5"), ("sl2", "Q"),
                        ("sl2", "p=2"), ("ga1-twisted", "q=25")]:
        path = tmp_path / f"{name}-{field.replace('=', '').replace(',', '')}.json"
        assert main(["build", name, "--field", field, "--out", str(path)]) == 0
        paths[(name, field)] = str(path)
    return paths


def test_build_examples(capsys):
    assert main(["build", "sl2", "--field", "p=5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["brackets"] == [[1, 2, [0, 2, 0]], [1, 3, [0, 0, 3]], [2, 3, [1, 0, 0]]]
    main(["build", "abelian:4", "--field", "p=7"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["brackets"] == [] and doc["dim"] == 4
    code, payload, err = run(capsys, "build", "witt", "--field", "p=3")
    assert code == 1 and payload["type"] == "ExcludedCharacteristicError"
    code, payload, _ = run(capsys, "build", "nonsense", "--field", "p=5")
    assert code == 1


def test_build_alpha(capsys, tmp_path):
    out = tmp_path / "t.json"
    assert main(["build", "ga1-twisted", "--field", "p=5,k=2", "--alpha", "[[1,0],[0,0]]", "--out", str(out)]) == 0
    capsys.readouterr()
    code, payload, _ = run(capsys, "check", str(out), "center")
    assert code == 0 and payload["dim"] == 1


def test_check_examples(capsys, docs, tmp_path):
    code, payload, _ = run(capsys, "check", docs[("sl2", "p=5")], "simple")
    assert code == 0 and payload["value"] is True and payload["seed"] == 0
    code, payload, _ = run(capsys, "check", docs[("ga1", "p=5")], "simple")
    assert code == 2 and payload["value"] is False and payload["proper_ideal"] == [[0, 1]]
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, ')
    code, payload, err = run(capsys, "check", str(bad), "jacobi")
    assert code == 1 and "error" in payload and err
    code, payload, _ = run(capsys, "check", str(tmp_path / "missing.json"), "jacobi")
    assert code == 1


def test_check_properties(capsys, docs):
    h = docs[("heisenberg", "p=5")]
    assert run(capsys, "check", h, "nilpotent")[0] == 0
    assert run(capsys, "check", docs[("sl2", "p=5")], "soluble")[0] == 2
    code, payload, _ = run(capsys, "check", h, "series")
    assert payload["derived"] == [3, 1, 0] and payload["lower_central"] == [3, 1, 0]
    assert payload["upper_central"] == [0, 1, 3]
    code, payload, _ = run(capsys, "check", h, "center")
    assert payload["basis"] == [[0, 0, 1]]
    assert run(capsys, "check", docs[("sl2", "Q")], "simple")[0] == 0


def test_check_jacobi_false(capsys, tmp_path):
    doc = {"format_version": 1, "field": {"characteristic": 5, "degree": 1, "modulus": None}, "dim": 3,
           "brackets": [[1, 2, [1, 0, 0]], [1, 3, [0, 1, 0]]], "metadata": {}}
    p = tmp_path / "nj.json"
    p.write_text(json.dumps(doc))
    code, payload, _ = run(capsys, "check", str(p), "jacobi")
    assert code == 2 and payload["value"] is False and payload["triple"] == [1, 2, 3]
    code, payload, _ = run(capsys, "check", str(p), "simple")
    assert code == 1 and payload["type"] == "DocumentError" and "Jacobi" in payload["error"]


def test_eigen_examples(capsys, docs):
    code, payload, err = run(capsys, "eigen", docs[("sl2", "p=5")], "h")
    assert code == 0 and payload["sum"] == "full"
    assert {k: len(v) for k, v in payload["components"].items()} == {"0": 1, "2": 1, "3": 1}
    assert "sum = full" in err
    code, payload, _ = run(capsys, "eigen", docs[("witt", "p=5")], "0,1,0,0,0")
    assert payload["sum"] == "full" and len(payload["components"]) == 5
    code, payload, err = run(capsys, "eigen", docs[("sl2", "p=5")], "[0,1,0]")
    assert payload["components"] == {"0": [[0, 1, 0]]} and payload["sum"] == "proper"
    assert run(capsys, "eigen", docs[("sl2", "Q")], "h")[0] == 1


def test_recognize_examples(capsys, docs, tmp_path):
    from lielab.constructions import random_basis_change
    scrambled = tmp_path / "s.json"
    docio.save(random_basis_change(make_sl2(GF(7)), 5), scrambled)
    code, payload, _ = run(capsys, "recognize", str(scrambled), "--target", "sl2")
    assert code == 0 and payload["verdict"] == "recognized" and len(payload["isomorphism"]) == 3
    code, payload, _ = run(capsys, "recognize", docs[("heisenberg", "p=5")], "--target", "sl2")
    assert code == 2 and payload["failure_reason"] == "nilpotent"
    code, payload, _ = run(capsys, "recognize", docs[("sl2", "p=2")], "--target", "sl2")
    assert code == 1 and payload["type"] == "ExcludedCharacteristicError"
    code, payload, _ = run(capsys, "recognize", docs[("ga1", "p=5")], "--target", "ga1")
    assert code == 0
    code, payload, _ = run(capsys, "recognize", docs[("ga1", "p=5")], "--target", "sl2")
    assert code == 1 and payload["type"] == "DimensionMismatchError"


def test_recognize_inconclusive_exit_code(capsys, tmp_path):
    from lielab import LieRing
    so3 = LieRing.from_values(QQ, 3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]})
    p = tmp_path / "so3.json"
    docio.save(so3, p)
    code, payload, _ = run(capsys, "recognize", str(p), "--budget", "16")
    assert code == 3 and payload["verdict"] == "inconclusive"


def test_lemmas_command(capsys, docs):
    code, payload, err = run(capsys, "lemmas", "--catalog", "--trials", "10", "--seed", "1")
    assert code == 0 and payload["counterexamples"] == [] and payload["seed"] == 1
    assert all(s["holds"] == s["checked"] for s in payload["summary"].values())
    code, payload, _ = run(capsys, "lemmas", docs[("sl2", "p=5")], "--trials", "5")
    assert code == 0 and payload["rings"] == ["sl2"]
    assert run(capsys, "lemmas")[0] == 1


def test_census_command(capsys):
    code, payload, err = run(capsys, "census", "--dim", "4", "--p", "5")
    assert code == 1 and payload["type"] == "BudgetError" and "budget" in payload["error"]
    code, payload, _ = run(capsys, "census", "--p", "3", "--explore")
    assert code == 0 and payload["jacobi_count"] == 1431
    assert run(capsys, "census", "--p", "3")[0] == 1


def test_seed_from_environment(capsys, docs, monkeypatch):
    monkeypatch.setenv("LIE_LAB_SEED", "17")
    code, payload, _ = run(capsys, "check", docs[("sl2", "p=5")], "simple")
    assert payload["seed"] == 17
    monkeypatch.setenv("LIE_LAB_SEED", "x")
    assert run(capsys, "check", docs[("sl2", "p=5")], "simple")[0] == 1


def test_usage_error_exits_1(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "check")[0] == 1


@pytest.mark.skipif(shutil.which("lielab") is None, reason="console script not installed")
def test_console_script(tmp_path):
    out = tmp_path / "w.json"
    r = subprocess.run(["lielab", "build", "witt", "--field", "p=7", "--out", str(out)], capture_output=True, text=True)
    assert r.returncode == 0
    r = subprocess.run(["lielab", "check", str(out), "simple"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["value"] is True and "simple: true" in r.stderr


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lielab.cli", "build", "sl2", "--field", "p=7"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 3
