import json
import subprocess
import sys

import pytest

from xmod import catalog, io
from xmod.cli import BAD_INPUT, FAIL, OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_verify_ok_and_fail(capsys, tmp_path):
    code, doc = run(capsys, "verify", "--in", "builtin:from2cm(Z2->Z2->1)")
    assert code == OK and doc["report"]["ok"]
    bad = catalog.get("Z2->Z2->1").mutate("peiffer", (1, 1), 1)
    path = tmp_path / "bad.json"
    io.save(bad, path)
    code, doc = run(capsys, "verify", "--in", str(path))
    assert code == FAIL
    failing = [a["id"] for a in doc["report"]["axioms"] if a["status"] == "fail"]
    assert failing and all(a["witness"] for a in doc["report"]["axioms"]
                           if a["status"] == "fail")


def test_verify_three_crossed_mutation(capsys, tmp_path):
    T = catalog.get("zero(Z2,Z2,Z2,Z2)").mutate("peiffer", (0, 1), 1)
    path = tmp_path / "t.json"
    io.save(T, path)
    code, doc = run(capsys, "verify", "--in", str(path), "--kind", "xmod3")
    assert code == FAIL
    assert [a["id"] for a in doc["report"]["axioms"] if a["status"] == "fail"] == [11, 19]


def test_bad_input_exit_codes(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{oops")
    assert main(["verify", "--in", str(path)]) == BAD_INPUT
    assert main(["verify", "--in", str(tmp_path / "missing.json")]) == BAD_INPUT
    assert main(["verify", "--in", "builtin:nothing"]) == BAD_INPUT
    assert main(["frobnicate"]) == BAD_INPUT
    capsys.readouterr()


def test_group_table_that_is_not_a_group(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"schema_version": 1, "kind": "group",
                                "table": [[0, 1], [0, 1]]}))
    code, doc = run(capsys, "verify", "--in", str(path), "--kind", "group")
    assert code == FAIL and doc["ok"] is False


def test_horn_certify(capsys):
    code, doc = run(capsys, "horn-certify", "--structure", "builtin:1->Z2->Z2", "--nmax", "3")
    assert code == OK and doc["certificate"]["certified"]
    code, doc = run(capsys, "horn-certify", "--structure", "builtin:1->Z2->Z2", "--nmax", "3",
                    "--budget", "0")
    assert code == FAIL and doc["certificate"]["partial"]


def test_moore_and_emit(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, doc = run(capsys, "moore", "--in", "builtin:E(Z2)", "--emit-structure", str(out))
    assert code == OK and doc["ok"] and doc["structure_orders"] == [1, 1, 2, 2]
    code, _ = run(capsys, "verify", "--in", str(out))
    assert code == OK


def test_lift2to3(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, _ = run(capsys, "lift2to3", "--in", "builtin:S3->S3->1", "--out", str(out))
    assert code == OK
    assert io.load(out, "xmod3") == catalog.get("from2cm(S3->S3->1)")


def test_enumerate(capsys):
    code, doc = run(capsys, "enumerate", "--in", "builtin:Z2->Z2->1", "--n", "3")
    assert code == OK and doc["count"] == 16 and not doc["partial"]
    code, doc = run(capsys, "enumerate", "--in", "builtin:Z2->Z2->1", "--n", "2",
                    "--mode", "rejection", "--list")
    assert len(doc["simplices"]) == doc["count"] == 2


def test_search(capsys, tmp_path):
    doc = io.to_json(catalog.get("zero(Z2,Z2,Z2,Z2)"))
    del doc["liftings"]
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(doc))
    code, out = run(capsys, "search", "--spec", str(spec))
    assert code == OK and out["count"] == 40 and not out["partial"]
    code, out = run(capsys, "search", "--spec", str(spec), "--cap", "5")
    assert out["partial"]
    code, out = run(capsys, "search", "--spec", "builtin:zero(Z2,Z2,Z2,Z2)")
    assert code == OK and out["count"] == 40


def test_builtins_and_export(capsys, tmp_path):
    code, doc = run(capsys, "builtins")
    assert code == OK and "E(Z2)" in doc["builtins"]["sgroup"]
    out = tmp_path / "x.json"
    assert main(["export", "1->A3->S3", "--out", str(out)]) == OK
    assert io.load(out) == catalog.get("1->A3->S3")


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["verify", "--in", "builtin:from2cm(1->A3->S3)", "--out", str(p)]) == OK
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "xmod.cli", "verify", "--in", "builtin:1->1->1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["report"]["ok"]
