import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import ALGEBRAS, BOUNDS, SCENARIOS
from reltc.cli import DEFAULT_N, main
from reltc.scenarios import load_scenario, resolve


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


@pytest.mark.parametrize("scenario", sorted(p.name for p in SCENARIOS.glob("*.json")))
def test_plan_every_shipped_scenario(capsys, scenario):
    code, out, _ = run(capsys, "plan", SCENARIOS / scenario, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["queries"] and all(q["samples"] for q in doc["queries"])


def test_plan_json_reevaluates_within_tolerance(capsys):
    path = SCENARIOS / "sphere.json"
    code, out, _ = run(capsys, "plan", path)
    assert code == 0
    doc = json.loads(out)
    assert [q["rule"] for q in doc["queries"]] == [1, 2, 3]
    sc = load_scenario(path)
    planner = resolve(sc.planner_spec).planner
    for q, (a, b) in zip(doc["queries"], sc.queries):
        p = planner.select(a, b).section(a, b)
        for s in q["samples"]:
            assert np.max(np.abs(np.asarray(s["point"]) - p(s["t"]))) <= 1e-9
        assert q["breakpoints"][0] == 0.0 and q["breakpoints"][-1] == 1.0


def test_plan_csv_columns_include_height(capsys):
    code, out, err = run(capsys, "plan", SCENARIOS / "config_sphere_lifted_n2.json", "--samples", "11")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["query_id", "robot_index", "t", "coord_0", "coord_1", "coord_2", "height"]
    body = rows[1:]
    assert len(body) == 2 * 2 * 11
    heights = {(r[0], r[1]): [] for r in body}
    for r in body:
        heights[(r[0], r[1])].append(float(r[-1]))
    assert heights[("0", "0")][0] == 0.0 and heights[("0", "0")][5] == 1.0
    assert heights[("0", "1")][5] == 0.5
    assert "query 0: rule" in err


def test_plan_out_file(capsys, tmp_path):
    target = tmp_path / "plan.json"
    code, out, _ = run(capsys, "plan", SCENARIOS / "join.json", "--out", target)
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["queries"][0]["samples"][0]["point"]["space"] == "join"


def test_plan_errors(capsys, tmp_path):
    bad = _write(tmp_path, "bad.json", "{not json")
    assert run(capsys, "plan", bad)[0] == 2
    unknown = _write(tmp_path, "unknown.json", {"planner": {"family": "klein-bottle"}, "queries": []})
    assert run(capsys, "plan", unknown)[0] == 2
    dup = _write(tmp_path, "dup.json", {
        "planner": {"family": "config-sphere", "n": 2},
        "queries": [{"start": [[1, 0, 0], [1, 0, 0]], "end": [[0, 1, 0], [0, 0, 1]]}],
    })
    code, _, err = run(capsys, "plan", dup)
    assert code == 3
    assert '"query_id": 0' in err and "[1.0, 0.0, 0.0]" in err


def test_verify_pass_and_fixture(capsys):
    code, out, err = run(capsys, "verify", SCENARIOS / "config_sphere_n3.json", "-N", 300, "--seed", 5)
    assert code == 0 and json.loads(out)["passed"]
    assert "continuity" in err
    code, out, _ = run(capsys, "verify", SCENARIOS / "corrupted_lift.json", "-N", 300)
    assert code == 1
    failed = [c["check"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed == ["collision"]


def test_verify_default_samples(capsys, tmp_path):
    sc = _write(tmp_path, "line.json", {"planner": {"family": "line-sigma"}, "queries": []})
    code, out, _ = run(capsys, "verify", sc)
    assert code == 0 and json.loads(out)["samples"] == DEFAULT_N == 10_000


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", SCENARIOS / "join.json", "-N", 50, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["check", "passed", "key", "value"]


def test_identical_invocations_are_byte_identical(capsys):
    args = ("verify", SCENARIOS / "config_sphere_lifted_n2.json", "-N", 200, "--seed", 11)
    first = run(capsys, *args)
    assert run(capsys, *args) == first
    args = ("plan", SCENARIOS / "sphere.json", "--seed", 3)
    first = run(capsys, *args)
    assert run(capsys, *args) == first


def test_zcl(capsys):
    code, out, _ = run(capsys, "zcl", ALGEBRAS / "s1_gf2.json")
    assert code == 0 and json.loads(out)["statement"] == "TC ≥ 2"
    code, out, _ = run(capsys, "zcl", ALGEBRAS / "torus_gf2.json", "--map", ALGEBRAS / "torus_to_wedge_gf2.map.json")
    doc = json.loads(out)
    assert code == 0 and doc["statement"] == "TC_X(Y×Y) ≥ 3"
    assert doc["witness"] == ["zd(alpha)", "zd(beta)"]
    code, _, err = run(capsys, "zcl", ALGEBRAS / "nonassociative_gf2.json")
    assert code == 2 and "associativity" in err and "(x, x, y)" in err


def test_bounds(capsys, tmp_path):
    code, out, _ = run(capsys, "bounds", BOUNDS / "dumbbell_n2.json")
    doc = json.loads(out)
    assert code == 0 and (doc["lower"]["value"], doc["upper"]["value"]) == (5, 5)
    code, out, _ = run(capsys, "bounds", BOUNDS / "sphere_config_n2.json")
    doc = json.loads(out)
    assert (doc["lower"]["value"], doc["upper"]["value"]) == (1, 4)
    assert run(capsys, "bounds", BOUNDS / "contradictory.json")[0] == 4
    assert run(capsys, "bounds", tmp_path / "missing.json")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reltc", "zcl", str(ALGEBRAS / "s3_rational.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["tc_lower"] == 2


def test_verify_sphere_scenario_full_size(capsys):
    code, out, _ = run(capsys, "verify", SCENARIOS / "sphere.json", "--seed", 42, "-N", 100_000)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["samples"] == 100_000
