"""Batch experiments: generate or load graphs, run algorithms, compare with
the exact oracle and check each algorithm's proven ratio bound.

A config is JSON::

    {"seed": 7,
     "runs": [{"gen": {"kind": "gnp", "n": [6, 12], "p": [0.2, 0.6]},
               "k": [1, 2, 3], "algo": "congest", "repeat": 50},
              {"file": "g.txt", "k": 2, "algo": "clique",
               "params": {"phase1": "inject:1.5:3"}}]}

``n`` and ``p`` may be fixed values or ``[lo, hi]`` ranges sampled per
repetition. Rows come out in config order whatever the degree of
parallelism (``DISTKCENTER_JOBS``, default 1).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .clique import clique_kcenter, parse_phase1
from .congest import ROUND_CONSTANT, congest_kcenter
from .graph import cycle_graph, complete_graph, diameter, gnp_graph, path_graph, read_graph, star_graph
from .kcenter import ORACLE_WORK_LIMIT, greedy_gonzalez, make_stretch_oracle, opt_k_bruteforce
from .local import cycle_opt_k, local_kcenter_alg1

__all__ = [
    "BENCH_FORMAT",
    "CSV_COLUMNS",
    "VOLATILE_COLUMNS",
    "JOBS_ENV",
    "ALGORITHMS",
    "ConfigError",
    "make_graph",
    "expand_config",
    "run_row",
    "run_bench",
    "rows_to_csv",
    "report_to_json",
]

BENCH_FORMAT = "distkcenter-bench/1"
CSV_COLUMNS = ["row", "run", "rep", "instance", "n", "m", "k", "algorithm", "model", "radius", "opt",
               "ratio", "bound", "bound_ok", "rounds", "max_message_bits", "status", "error", "wallclock_s"]
VOLATILE_COLUMNS = ("wallclock_s",)
JOBS_ENV = "DISTKCENTER_JOBS"

# algorithm -> model it runs in
ALGORITHMS = {"greedy": "centralized", "congest": "congest", "clique": "clique", "local": "local"}


class ConfigError(ValueError):
    pass


def make_graph(spec: dict):
    """Build a graph from ``{"kind": ..., "n": ..., ...}``; returns ``(graph, label)``."""
    kind = spec.get("kind")
    n = spec.get("n")
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"generator needs a positive integer n, got {n!r}")
    if kind == "cycle":
        return cycle_graph(n), f"cycle(n={n})"
    if kind == "path":
        return path_graph(n), f"path(n={n})"
    if kind == "star":
        c = spec.get("center", 1)
        return star_graph(n, c), f"star(n={n},center={c})"
    if kind == "complete":
        return complete_graph(n), f"complete(n={n})"
    if kind in ("gnp", "weighted-gnp"):
        p, seed = spec.get("p"), spec.get("seed", 0)
        weighted = kind == "weighted-gnp"
        g = gnp_graph(n, p, seed, weighted=weighted, max_weight=spec.get("max_weight"))
        return g, f"{kind}(n={n},p={p},seed={seed})"
    raise ConfigError(f"unknown generator kind {kind!r}")


def _pick(value, rng, integer: bool):
    if isinstance(value, list):
        if len(value) != 2:
            raise ConfigError(f"range must be [lo, hi], got {value!r}")
        lo, hi = value
        if integer:
            return int(rng.integers(lo, hi + 1))
        return round(float(rng.uniform(lo, hi)), 6)
    return value


def expand_config(cfg: dict) -> list[dict]:
    """Flatten a config into one task per row, with all randomness resolved."""
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    seed = int(cfg.get("seed", 0))
    tasks = []
    for ri, run in enumerate(cfg.get("runs", [])):
        algo = run.get("algo")
        model = run.get("model")
        if algo is None and model is not None:
            algo = {v: k for k, v in ALGORITHMS.items()}.get(model)
        if algo not in ALGORITHMS:
            raise ConfigError(f"run {ri}: unknown algorithm {algo!r}")
        if model is not None and model != ALGORITHMS[algo]:
            raise ConfigError(f"run {ri}: algorithm {algo} runs in {ALGORITHMS[algo]}, not {model}")
        if ("gen" in run) == ("file" in run):
            raise ConfigError(f"run {ri}: give exactly one of 'gen' and 'file'")
        ks = run.get("k", 1)
        ks = ks if isinstance(ks, list) else [ks]
        for rep in range(int(run.get("repeat", 1))):
            rng = np.random.default_rng([seed, ri, rep])
            if "gen" in run:
                gen = dict(run["gen"])
                gen["n"] = _pick(gen.get("n"), rng, True)
                if "p" in gen:
                    gen["p"] = _pick(gen["p"], rng, False)
                gen.setdefault("seed", int(rng.integers(2**31)))
                source = {"gen": gen}
            else:
                source = {"file": run["file"]}
            for k in ks:
                tasks.append({"run": ri, "rep": rep, "k": int(k), "algo": algo,
                              "params": dict(run.get("params", {})), **source})
    for i, t in enumerate(tasks):
        t["row"] = i
    return tasks


def _opt(g, k, cycle_n, limit):
    if cycle_n is not None:
        return cycle_opt_k(cycle_n, k)
    if k >= g.n or math.comb(g.n, k) <= limit:
        return opt_k_bruteforce(g, k, work_limit=limit).radius
    return None


def run_row(task: dict, oracle_limit: int = ORACLE_WORK_LIMIT) -> dict:
    """Execute one task; never raises (errors land in the row)."""
    row = {c: None for c in CSV_COLUMNS}
    row.update(row=task["row"], run=task["run"], rep=task["rep"], k=task["k"],
               algorithm=task["algo"], model=ALGORITHMS[task["algo"]])
    t0 = time.perf_counter()
    stats = None
    try:
        if "gen" in task:
            g, label = make_graph(task["gen"])
            cycle_n = g.n if task["gen"]["kind"] == "cycle" else None
        else:
            g, label, cycle_n = read_graph(task["file"]), os.path.basename(task["file"]), None
        row.update(instance=label, n=g.n, m=g.m)
        k, algo, params = task["k"], task["algo"], task["params"]
        if algo == "greedy":
            alpha = Fraction(str(params.get("alpha", 1)))
            ds = None if alpha == 1 else make_stretch_oracle(g, alpha, int(params.get("oracle_seed", 0)))
            sol = greedy_gonzalez(g, ds, k, int(params.get("seed_node", 1)))
            bound = 2 * alpha
            row["algorithm"] = "greedy" if alpha == 1 else f"greedy-approx:{alpha}"
        elif algo == "congest":
            sol, stats = congest_kcenter(g, k)
            bound = Fraction(2)
            if stats.rounds > ROUND_CONSTANT * k * max(diameter(g), 1):
                raise RuntimeError(f"{stats.rounds} rounds exceed {ROUND_CONSTANT}*k*D")
        elif algo == "clique":
            spec = params.get("phase1", "exact")
            mode, alpha, oseed = parse_phase1(spec)
            phase1 = "exact" if mode == "exact" else make_stretch_oracle(g, alpha, oseed)
            sol, stats = clique_kcenter(g, k, phase1, elect=bool(params.get("elect", False)))
            if stats.extra["phase2_rounds"] != k - 1:
                raise RuntimeError("phase 2 did not take k - 1 rounds")
            bound = Fraction(2) if mode == "exact" else 2 * alpha
            row["algorithm"] = f"clique:{spec}"
        else:
            eps = Fraction(str(params.get("eps", 1)))
            sol, stats = local_kcenter_alg1(g, k, eps)
            bound = (2 + eps) * k
            row["algorithm"] = f"local:eps={eps}"
        opt = _opt(g, k, cycle_n, oracle_limit)
        row.update(radius=sol.radius, opt=opt, bound=str(bound), status="ok")
        if stats is not None:
            row.update(rounds=stats.rounds, max_message_bits=stats.max_message_bits)
        if opt is not None:
            if opt:  # with opt == 0 the ratio is undefined; the bound still applies
                row["ratio"] = round(sol.radius / opt, 9)
            row["bound_ok"] = bool(sol.radius <= bound * opt)
    except Exception as exc:  # recorded per row, the batch goes on
        row.update(status="error", error=f"{type(exc).__name__}: {exc}")
        row["trace"] = traceback.format_exc(limit=3)
    row["wallclock_s"] = round(time.perf_counter() - t0, 6)
    row["stats"] = stats.to_dict() if stats is not None else None
    return row


def _jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def run_bench(cfg: dict, *, jobs: int | None = None, oracle_limit: int = ORACLE_WORK_LIMIT) -> dict:
    """Run every task of ``cfg``; returns the JSON-ready report."""
    tasks = expand_config(cfg)
    jobs = jobs or _jobs()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(run_row, tasks, [oracle_limit] * len(tasks)))
    else:
        rows = [run_row(t, oracle_limit) for t in tasks]
    agg: dict[str, dict] = {}
    for r in rows:
        a = agg.setdefault(r["algorithm"], {"rows": 0, "errors": 0, "violations": 0, "max_ratio": None})
        a["rows"] += 1
        if r["status"] != "ok":
            a["errors"] += 1
        if r["bound_ok"] is False:
            a["violations"] += 1
        if r["ratio"] is not None:
            a["max_ratio"] = r["ratio"] if a["max_ratio"] is None else max(a["max_ratio"], r["ratio"])
    return {
        "format": BENCH_FORMAT,
        "seed": int(cfg.get("seed", 0)),
        "rows": rows,
        "aggregate": {k: agg[k] for k in sorted(agg)},
        "ok": all(r["status"] == "ok" and r["bound_ok"] is not False for r in rows),
    }


def rows_to_csv(report: dict, *, volatile: bool = True) -> str:
    cols = [c for c in CSV_COLUMNS if volatile or c not in VOLATILE_COLUMNS]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in report["rows"]:
        w.writerow({c: "" if r[c] is None else r[c] for c in cols})
    return buf.getvalue()


def report_to_json(report: dict, *, volatile: bool = True) -> str:
    if not volatile:
        report = dict(report, rows=[{k: v for k, v in r.items() if k not in VOLATILE_COLUMNS}
                                    for r in report["rows"]])
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
