import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from asymcg.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, schema_name, *argv):
    code, out = run(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema(schema_name))
    return code, data


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


def test_kernel_alpha_fourth(capsys):
    code, out = run(capsys, "kernel", "alpha^4")
    assert code == 0 and out.strip() == "in-kernel: true"
    code, data = run_json(capsys, "kernel", "kernel", "alpha^4")
    assert data["inKernel"] is True
    code, data = run_json(capsys, "kernel", "kernel", "beta")
    assert data["inKernel"] is False


def test_project_beta_cubed(capsys):
    code, out = run(capsys, "project-v", "beta^3")
    assert code == 0 and out.strip() == "identity"
    code, data = run_json(capsys, "projection", "project-v", "beta^3")
    assert data["identity"] is True and data["treePair"] == "(0 1 2 | 0 1 2 | 0 1 2)"


def test_project_dot(capsys):
    code, out = run(capsys, "project-v", "alpha", "--dot")
    assert out.startswith("graph treepair {")
    code, data = run_json(capsys, "projection", "project-v", "alpha", "--dot")
    assert data["circular"] is True and data["dot"].startswith("graph")


def test_rigid_cocycle_is_one(capsys):
    code, out = run(capsys, "cocycle", "alpha", "beta")
    assert code == 0 and out.strip() == "C_1 = 1"
    code, data = run_json(capsys, "cocycle", "cocycle", "alpha", "beta")
    assert data["c1"] == {"re_num": 1, "re_den": 1, "im_num": 0, "im_den": 1}


def test_cocycle_with_root(capsys):
    code, data = run_json(capsys, "cocycle", "cocycle", "t_a1", "t_b1", "--n=-1/2")
    assert data["c1Text"] == "11/10-1/5i"
    c1 = complex(1.1, -0.2)
    assert complex(data["cn"]["re"], data["cn"]["im"]) == pytest.approx(c1 ** -2)
    code, out = run(capsys, "cocycle", "t_a1", "t_b1", "--n", "abc")
    assert code == 2
    jsonschema.validate(json.loads(out), schema("error"))


def test_matrix_and_blocks(capsys):
    code, data = run_json(capsys, "finsymplectic", "matrix", "t_a1")
    assert data["block"] == [[1, -1], [0, 1]]
    code, data = run_json(capsys, "blockpair", "blocks", "t_a1 tw[0,1L]")
    assert data["relations"] is True
    assert data["psiRank"] >= 1
    code, out = run(capsys, "blocks", "t_a1")
    assert "relations hold" in out and "hs_norm_sq 1/4" in out


@pytest.mark.parametrize("argv, kind, offset", [
    (["kernel", "foo"], "parse-error", 0),
    (["matrix", "alpha t_b1^0"], "parse-error", 11),
    (["blocks", "tw[0,1X]"], "parse-error", 3),
    (["frobnicate"], "usage", None),
    (["verify", "--suite", "nope"], "usage", None),
])
def test_errors_are_json(capsys, argv, kind, offset):
    code, out = run(capsys, *argv)
    assert code == 2
    data = json.loads(out)
    jsonschema.validate(data, schema("error"))
    assert data["error"]["kind"] == kind
    assert data["error"].get("offset") == offset


def test_support_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ASYMCG_MAX_SUPPORT", "4")
    code, out = run(capsys, "matrix", "tw[0LLL,2RRR]")
    assert code == 3
    assert json.loads(out)["error"]["kind"] == "support-limit"
    monkeypatch.setenv("ASYMCG_MAX_SUPPORT", "many")
    code, out = run(capsys, "matrix", "t_a1")
    assert code == 2 and json.loads(out)["error"]["kind"] == "invalid-input"
    monkeypatch.delenv("ASYMCG_MAX_SUPPORT")
    code, out = run(capsys, "matrix", "tw[0LLL,2RRR]")
    assert code == 0


def test_verify_is_deterministic(capsys):
    args = ("verify", "--suite", "symplectic", "--seed", "42", "--count", "20")
    code, first = run_json(capsys, "verify", *args)
    _, second = run_json(capsys, "verify", *args)
    assert code == 0 and first["passed"]
    for r in (first, second):
        for res in r["results"]:
            res.pop("seconds")
    assert first == second


def test_verify_sharding(capsys):
    code, data = run_json(capsys, "verify", "verify", "--suite", "blocks", "--seed", "7",
                          "--count", "12", "--shards", "3", "--workers", "2")
    assert code == 0 and data["results"][0]["checks"] == 24


def test_verify_rejects_bad_seed(capsys):
    code, out = run(capsys, "verify", "--suite", "torsion", "--seed", "-1")
    assert code == 2


def test_verify_all_small(capsys):
    code, data = run_json(capsys, "verify", "verify", "--suite", "all", "--count", "3")
    assert code == 0
    assert len(data["results"]) == 12


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "asymcg", "kernel", "alpha^4", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["inKernel"] is True


def test_help_documents_composition_order(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "rightmost term acts" in capsys.readouterr().out
