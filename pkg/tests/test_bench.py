import csv
import io
import json

import pytest

from distkcenter.bench import (BENCH_FORMAT, CSV_COLUMNS, ConfigError, expand_config, make_graph, report_to_json,
                               rows_to_csv, run_bench, run_row)
from distkcenter.graph import write_graph, cycle_graph

CFG = {
    "seed": 11,
    "runs": [
        {"gen": {"kind": "gnp", "n": [5, 9], "p": [0.3, 0.6]}, "k": [1, 2], "algo": "greedy", "repeat": 3},
        {"gen": {"kind": "gnp", "n": 8, "p": 0.4}, "k": 2, "algo": "greedy", "params": {"alpha": "3/2"}},
        {"gen": {"kind": "cycle", "n": 12}, "k": [1, 3], "algo": "congest"},
        {"gen": {"kind": "weighted-gnp", "n": 7, "p": 0.5, "max_weight": 5}, "k": 2, "algo": "clique",
         "params": {"phase1": "inject:2:1", "elect": True}},
        {"gen": {"kind": "cycle", "n": 30}, "k": 2, "model": "local", "params": {"eps": "1"}},
    ],
}


def test_expand_is_deterministic():
    a, b = expand_config(CFG), expand_config(CFG)
    assert a == b
    assert [t["row"] for t in a] == list(range(len(a)))
    assert len(a) == 3 * 2 + 1 + 2 + 1 + 1
    assert all(5 <= t["gen"]["n"] <= 9 for t in a[:6])
    assert a[0]["gen"] == a[1]["gen"] and a[0]["k"] == 1 and a[1]["k"] == 2


@pytest.mark.parametrize("cfg", [
    [],
    {"runs": [{"gen": {"kind": "cycle", "n": 5}, "algo": "magic"}]},
    {"runs": [{"gen": {"kind": "cycle", "n": 5}, "file": "x", "algo": "greedy"}]},
    {"runs": [{"algo": "greedy"}]},
    {"runs": [{"gen": {"kind": "cycle", "n": 5}, "algo": "congest", "model": "clique"}]},
    {"runs": [{"gen": {"kind": "gnp", "n": [1, 2, 3], "p": 0.5}, "algo": "greedy"}]},
])
def test_bad_configs(cfg):
    with pytest.raises(ConfigError):
        expand_config(cfg)


def test_make_graph():
    g, label = make_graph({"kind": "star", "n": 5, "center": 5})
    assert g.degree(5) == 4 and label == "star(n=5,center=5)"
    for spec in ({"kind": "torus", "n": 4}, {"kind": "cycle", "n": 0}):
        with pytest.raises(ConfigError):
            make_graph(spec)


def test_run_and_report():
    rep = run_bench(CFG)
    assert rep["format"] == BENCH_FORMAT and rep["ok"]
    rows = rep["rows"]
    assert all(r["status"] == "ok" and r["bound_ok"] for r in rows)
    assert rows[6]["algorithm"] == "greedy-approx:3/2" and rows[6]["bound"] == "3"
    assert rows[7]["rounds"] is not None and rows[7]["opt"] == 6
    assert rows[9]["algorithm"] == "clique:inject:2:1"
    assert rows[10]["algorithm"] == "local:eps=1" and rows[10]["opt"] == 7
    assert set(rep["aggregate"]) == {r["algorithm"] for r in rows}


def test_reports_are_byte_identical_across_runs_and_workers():
    a = report_to_json(run_bench(CFG), volatile=False)
    b = report_to_json(run_bench(CFG, jobs=2), volatile=False)
    assert a == b
    assert "wallclock_s" not in a
    assert rows_to_csv(run_bench(CFG), volatile=False) == rows_to_csv(run_bench(CFG, jobs=1), volatile=False)


def test_csv_columns():
    text = rows_to_csv(run_bench(CFG))
    reader = csv.DictReader(io.StringIO(text))
    assert reader.fieldnames == CSV_COLUMNS
    assert len(list(reader)) == len(expand_config(CFG))
    assert "\r" not in text


def test_errors_are_rows(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 0\n1 2\n")
    row = run_row({"row": 0, "run": 0, "rep": 0, "k": 1, "algo": "greedy", "params": {}, "file": str(bad)})
    assert row["status"] == "error" and "DisconnectedGraphError" in row["error"]
    rep = run_bench({"runs": [{"file": str(bad), "algo": "greedy"}]})
    assert not rep["ok"] and rep["aggregate"]["greedy"]["errors"] == 1


def test_file_rows_and_oracle_limit(tmp_path):
    p = tmp_path / "c.txt"
    write_graph(cycle_graph(10), p)
    rep = run_bench({"runs": [{"file": str(p), "k": 3, "algo": "clique"}]}, oracle_limit=10)
    row = rep["rows"][0]
    assert row["opt"] is None and row["bound_ok"] is None and row["status"] == "ok"


def test_zero_optimum_has_no_ratio():
    rep = run_bench({"runs": [{"gen": {"kind": "path", "n": 2}, "k": 2, "algo": "greedy"}]})
    row = rep["rows"][0]
    assert row["opt"] == 0 and row["ratio"] is None and row["bound_ok"] is True


def test_json_sorted_and_parsable():
    text = report_to_json(run_bench(CFG))
    assert json.loads(text)["seed"] == 11 and text.endswith("\n")


def test_large_suites_respect_bounds():
    rep = run_bench({"seed": 3, "runs": [
        {"gen": {"kind": "gnp", "n": [2, 12], "p": [0.2, 0.7]}, "k": [1, 2, 3], "algo": "congest", "repeat": 200},
        {"gen": {"kind": "gnp", "n": [2, 12], "p": [0.2, 0.7]}, "k": [1, 2, 3], "algo": "clique", "repeat": 40,
         "params": {"phase1": "inject:3/2:5"}},
    ]})
    assert rep["ok"]
    agg = rep["aggregate"]
    assert agg["congest"]["rows"] == 600 and agg["congest"]["max_ratio"] <= 2
    assert agg["clique:inject:3/2:5"]["max_ratio"] <= 3
