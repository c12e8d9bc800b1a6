"""End-to-end tests that run the installed ``roughif`` executable."""
import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from roughif import io
from conftest import fixture_path

GOLDEN = Path(__file__).parent / "golden"
EXE = shutil.which("roughif")
CMD = [EXE] if EXE else [sys.executable, "-m", "roughif"]


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("RIF_SEED", None)
    full_env.update(env or {})
    return subprocess.run([*CMD, *map(str, args)], capture_output=True, text=True,
                          env=full_env, cwd=cwd)


def run_json(*args, **kw):
    p = run(*args, "--json", **kw)
    return p.returncode, json.loads(p.stdout) if p.stdout else None, p


EX1 = fixture_path("ex_5_2_1.json")
EX2 = fixture_path("ex_5_2_2.json")
EX3 = fixture_path("ex_5_3_counter.json")


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_golden_compare():
    p = run("compare", EX1, "X", "Y", "--json")
    assert p.returncode == 0
    assert p.stdout == (GOLDEN / "compare_ex_5_2_1.json").read_text()


def test_golden_approx():
    p = run("approx", EX2, "Y", "--side", "upper", "--json")
    assert p.returncode == 0
    assert p.stdout == (GOLDEN / "approx_ex_5_2_2_Y_upper.json").read_text()


def test_approx_text():
    p = run("approx", EX1, "X", "--side", "lower")
    assert p.returncode == 0
    assert "x7       0.7    0.2" in p.stdout and "upper" not in p.stdout


def test_approx_crisp(tmp_path):
    doc = {"universe": ["a", "b", "c"], "partition": [["a", "b"], ["c"]],
           "sets": {"S": {"a": ["1", "0"], "b": ["1", "0"], "c": ["0", "1"]},
                    "T": {"a": ["1", "0"], "b": ["0", "1"], "c": ["0", "1"]}}}
    f = write(tmp_path, "c.json", doc)
    code, out, _ = run_json("approx", f, "S", "--kind", "crisp")
    assert code == 0 and out["lower"] == out["upper"] == ["a", "b"] and out["definable"]
    code, out, _ = run_json("approx", f, "T", "--kind", "crisp")
    assert out["lower"] == [] and out["upper"] == ["a", "b"] and out["boundary"] == ["a", "b"]


def test_approx_fuzzy_kind_mismatch():
    p = run("approx", EX1, "X", "--kind", "fuzzy")
    assert p.returncode == 1 and "not fuzzy" in p.stderr


def test_compare_second_example():
    code, out, _ = run_json("compare", EX2, "X", "Y", "--alpha", "0.1", "--beta", "0.8")
    assert code == 0
    assert [k for k, v in out["kinds"].items() if v] == ["rough_equivalence"]
    assert out["top"]["left_cut"] == ["x3", "x4", "x5", "x6", "x7", "x8"]


def test_compare_reflexive_default_params():
    code, out, _ = run_json("compare", EX1, "Y", "Y")
    assert code == 0 and all(out["kinds"].values())


def test_compare_default_params_without_file_params(tmp_path):
    doc = io.to_dict(io.load(EX1))
    del doc["params"]
    code, out, _ = run_json("compare", write(tmp_path, "np.json", doc), "X", "Y")
    assert out["params"] == {"alpha": "0", "beta": "0.9999"}


def test_compare_text_explains_cuts():
    p = run("compare", EX1, "X", "Y")
    assert "cut of X: {x1, x2, x7, x8}" in p.stdout
    assert "Approximate rough equivalence: yes" in p.stdout


@pytest.mark.parametrize("args, code, msg", [
    (("compare", EX1, "X", "Y", "--alpha", "0.5", "--beta", "0.6"), 1, "alpha+beta exceeds 1"),
    (("compare", EX1, "X", "Q"), 1, "no set named 'Q'"),
    (("compare", EX1, "X", "Y", "--alpha", "0.123456"), 1, "4 fractional digits"),
    (("compare", "/nonexistent.json", "X", "Y"), 1, "cannot read"),
    (("search", "9.9.9"), 3, "unknown property"),
    (("frobnicate",), 3, "invalid choice"),
    (("compare", EX1), 3, "required"),
    (("search", "5.3.1", "--budget", "many"), 3, "invalid int"),
])
def test_exit_codes(args, code, msg):
    p = run(*args)
    assert p.returncode == code
    assert msg in p.stderr


def test_bad_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert run("approx", f, "X").returncode == 1


def test_props_examples_hold():
    for f in (EX1, EX2):
        code, out, _ = run_json("props", f, "--sweep")
        assert code == 0 and out["params_checked"] == 66
        assert {r["status"] for r in out["reports"]} == {"Holds"}


def test_props_strictness_note():
    code, out, _ = run_json("props", EX3, "--properties", "5.3.2")
    assert code == 0
    (rep,) = out["reports"]
    assert rep["status"] == "Holds" and "strict at (0.25, 0.65)" in rep["note"]


def test_props_single_set_is_vacuous(tmp_path):
    doc = io.to_dict(io.load(EX1))
    del doc["sets"]["Y"]
    code, out, _ = run_json("props", write(tmp_path, "one.json", doc))
    assert code == 0
    assert all(r["checked"] == 0 and "vacuous" in r["note"] for r in out["reports"])


def test_props_theorem_failure_exits_2(tmp_path):
    doc = {"universe": ["x1"], "partition": [["x1"]],
           "sets": {"X": {"x1": ["0", "0"]}, "Y": {"x1": ["0", "0.1"]}},
           "params": {"alpha": "0", "beta": "0.1"}}
    code, out, _ = run_json("props", write(tmp_path, "w.json", doc), "--properties", "5.4.9")
    assert code == 2 and out["theorem_failures"] == ["5.4.9"]


def test_props_non_theorem_witness_is_not_a_failure():
    code, out, _ = run_json("props", EX3, "--properties", "5.3.2-strict")
    assert code == 0 and out["reports"][0]["status"] == "WitnessFound"


def test_search_witness_and_replay(tmp_path):
    out_file = tmp_path / "w.json"
    code, out, _ = run_json("search", "5.3.2-strict", "--universe-size", "5", "--step", "0.1",
                            "--out", out_file)
    assert code == 0 and out["status"] == "WitnessFound"
    assert io.load(out_file).property == "5.3.2-strict"
    assert io.to_dict(io.load(out_file)) == out["witness"]
    code, again, _ = run_json("search", "--replay", out_file)
    assert code == 0 and again["status"] == "WitnessFound"


def test_search_theorem_no_witness(tmp_path):
    p = run("search", "5.3.1", "--universe-size", "3", "--step", "0.25", "--budget", "20000",
            cwd=tmp_path)
    assert p.returncode == 0 and "NoWitnessInSpace" in p.stdout
    assert not list(tmp_path.iterdir())


def test_search_is_byte_identical(tmp_path):
    args = ("search", "5.5.5", "--universe-size", "4", "--out", tmp_path / "a.json", "--json")
    a, b = run(*args), run(*args)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_search_seed_from_env(tmp_path):
    base = ("search", "5.5.6", "--out", tmp_path / "w.json", "--json")
    via_env = run(*base, env={"RIF_SEED": "5"}).stdout
    via_flag = run(*base, "--seed", "5").stdout
    assert via_env == via_flag
    assert run(*base, env={"RIF_SEED": "x"}).returncode == 3


def test_search_space_too_large():
    assert run("search", "5.3.1", "--universe-size", "9").returncode == 1


def test_partition_and_table(tmp_path):
    table = tmp_path / "t.csv"
    table.write_text("id,ward\nx1,A\nx2,A\nx3,B\nx4,C\nx5,C\n")
    code, out, _ = run_json("partition", table, "--attrs", "ward")
    assert code == 0 and out["partition"] == [["x1", "x2"], ["x3"], ["x4", "x5"]]
    doc = io.to_dict(io.load(EX3))
    del doc["partition"]
    f = write(tmp_path, "nop.json", doc)
    assert run("approx", f, "X").returncode == 1
    code, out, _ = run_json("approx", f, "X", "--side", "lower", "--table", table, "--attrs", "ward")
    assert code == 0 and out["lower"]["x1"] == ["0.1", "0.8"]
    assert run("partition", table, "--attrs", "colour").returncode == 1


def test_list():
    code, out, _ = run_json("list")
    ids = [p["property"] for p in out["properties"]]
    assert code == 0 and "5.4.9" in ids and "lattice" in ids
