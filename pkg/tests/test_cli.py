from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from groupoids.cli import run

DATA = Path(__file__).parent / "data"


def call(*argv, stdin=None):
    buf = io.StringIO()
    code = run([str(a) for a in argv], out=buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def test_classify():
    code, out, _ = call("classify", "--order", 6)
    assert code == 0 and out["count"] == 16 and out["agree"]


def test_index_example():
    code, out, _ = call("index", DATA / "a3_s2.json", "--sub", DATA / "a3_s2_H.json")
    assert code == 0
    assert (out["formula"], out["bruteforce"], out["agree"]) == (9, 9, True)


def test_sylow_k7():
    code, out, _ = call("sylow", DATA / "k7_z105.json", "--D", "1,3,3", "--P", "3,5,7")
    assert code == 0 and out["count"] == 140 and out["formula"]["N"] == [1, 1, 1]
    code, out, _ = call("sylow", DATA / "k7_z35_z3.json", "--D", "1,3,3", "--P", "3,5,7", "--witnesses", 0)
    assert code == 0 and out["count"] == 980 and out["formula"]["N"] == [7, 1, 1]


def test_sylow_dp_and_witness():
    code, out, _ = call("sylow", DATA / "a3_d3.json", "--d", 2, "--p", 2)
    assert code == 0 and out["count"] == 9 and len(out["witnesses"]) == 1
    code, out, _ = call("sylow", DATA / "a3_d3.json", "--d", 2, "--p", 3, "--n", 1)
    assert out["order"] == 12


def test_sylow_per_component(tmp_path):
    doc = {"components": [
        {"identities": ["a", "b"], "group": {"kind": "catalog", "name": "dihedral", "params": [3]}},
        {"identities": ["c"], "group": {"kind": "catalog", "name": "cyclic", "params": [4]}}]}
    f = tmp_path / "g.json"
    f.write_text(json.dumps(doc))
    code, out, _ = call("sylow", f, "--d", 1, "--p", 2)
    assert code == 0
    assert [c["count"] for c in out["components"]] == [6, 1]
    code, out, _ = call("sylow", f, "--d", 2, "--p", 3)
    assert out["components"][1]["error"]["kind"] == "ProfileInfeasible"


def test_check_and_info():
    code, out, _ = call("check", DATA / "a2_raw.json")
    assert code == 0 and out["valid"]
    code, out, _ = call("check", DATA / "a2_raw_broken.json")
    assert code == 1 and not out["valid"] and out["errors"][0]["kind"] == "CompositionDomainError"
    code, out, _ = call("info", DATA / "a2_raw.json")
    assert out["k"] == 2 and out["connected"] and len(out["isomorphism"]) == 4


def test_cosets_and_lagrange():
    code, out, _ = call("cosets", DATA / "a3_s2.json", "--sub", DATA / "a3_s2_K.json", "--element", "0/e1/e3/0")
    assert out["right"] == [] and out["in_left"]
    code, out, _ = call("lagrange", DATA / "a3_s2.json", "--sub", DATA / "a3_s2_H.json")
    assert code == 0 and out["pass"]


def test_atlas():
    code, out, _ = call("atlas", "--order", 4)
    assert out["count"] == 7 and len(out["classes"]) == 7


@pytest.mark.parametrize("argv,code,kind", [
    (["classify"], 2, "UsageError"),
    (["classify", "--order", "4", "--bogus"], 2, "UsageError"),
    (["sylow", str(DATA / "a3_d3.json")], 2, "UsageError"),
    (["info", str(DATA / "missing.json")], 2, "UsageError"),
    (["--max-order", "10", "info", str(DATA / "a3_d3.json")], 3, "CapExceeded"),
    (["sylow", str(DATA / "a3_d3.json"), "--d", "4", "--p", "2"], 1, "ProfileInfeasible"),
    (["sylow", str(DATA / "a3_d3.json"), "--d", "2", "--p", "4"], 2, "NotPrime"),
    (["sylow", str(DATA / "a3_d3.json"), "--d", "1", "--p", "2", "--n", "3"], 1, "NoSuchGroupOrder"),
])
def test_error_exit_codes(argv, code, kind):
    got, out, _ = call(*argv)
    assert got == code and out["error"]["kind"] == kind


def test_unknown_catalog_name(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"components": [{"identities": ["a"], "group": {"kind": "catalog", "name": "nope"}}]}))
    code, out, _ = call("info", f)
    assert code == 2 and out["error"]["kind"] == "UnknownName"


def test_output_is_deterministic():
    a = call("sylow", DATA / "a3_d3.json", "--D", "1,2", "--P", "2,3", "--witnesses", 3)[2]
    b = call("sylow", DATA / "a3_d3.json", "--D", "1,2", "--P", "2,3", "--witnesses", 3)[2]
    assert a == b


def test_module_entry_point_and_stdin():
    doc = (DATA / "a3_s2.json").read_text()
    proc = subprocess.run([sys.executable, "-m", "groupoids", "info", "-", "--pretty"], input=doc,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 18
