"""Command-line front end: ``distkcenter <command> ...``.

Every command prints one JSON document on stdout. Exit status is 0 on
success, 1 when a bound or verification check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .bench import BENCH_FORMAT, CSV_COLUMNS, ConfigError, make_graph, report_to_json, rows_to_csv, run_bench
from .clique import clique_kcenter, parse_phase1
from .congest import ROUND_CONSTANT, congest_kcenter
from .gadgets import (SIDECAR_FORMAT, DisjointnessInstance, GadgetVariant, all_instances, build_gkxy,
                      build_gxy, random_instances, verify_claim1, verify_claim2, verify_lemma4, write_gadget)
from .graph import GraphError, cycle_graph, diameter, format_graph, read_graph
from .kcenter import ORACLE_WORK_LIMIT, make_stretch_oracle, opt_k_bruteforce
from .local import AdversaryError, VIEW_ALGORITHMS, build_rearranged_cycle, cycle_opt_k, local_kcenter_alg1, make_view_algorithm
from .sim import Model, ModelConfig, SimulationError

GRAPH_FORMAT = "distkcenter-graph/1"


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True, default=str)
    sys.stdout.write("\n")


def _oracle(g, k, limit):
    if k < g.n and math.comb(g.n, k) > limit:
        return None
    return opt_k_bruteforce(g, k, work_limit=limit).radius


def _ratio(radius, opt):
    return None if not opt else round(radius / opt, 9)


# -- commands ----------------------------------------------------------------


def cmd_gen(a) -> int:
    spec = {"kind": a.kind, "n": a.n, "seed": a.seed}
    if a.p is not None:
        spec["p"] = a.p
    if a.max_weight is not None:
        spec["max_weight"] = a.max_weight
    if a.center is not None:
        spec["center"] = a.center
    if a.kind in ("gnp", "weighted-gnp") and a.p is None:
        raise ConfigError("gnp generators need --p")
    g, label = make_graph(spec)
    text = format_graph(g)
    if a.out:
        with open(a.out, "w", newline="\n") as fh:
            fh.write(text)
        _emit({"instance": label, "n": g.n, "m": g.m, "weighted": g.weighted,
               "diameter": diameter(g), "out": a.out})
    else:
        sys.stdout.write(text)
    return 0


def _load(a):
    if a.graph:
        return read_graph(a.graph), None
    if a.n:
        return cycle_graph(a.n), a.n
    raise ConfigError("give --graph FILE or --n N (an N-cycle)")


def cmd_local_run(a) -> int:
    g, cycle_n = _load(a)
    eps = Fraction(a.eps)
    sol, stats = local_kcenter_alg1(g, a.k, eps, trace=a.trace)
    opt = cycle_opt_k(cycle_n, a.k) if cycle_n else _oracle(g, a.k, a.oracle_limit)
    bound = (2 + eps) * a.k
    ok = opt is None or sol.radius <= bound * opt
    _emit({"centers": sorted(sol.centers), "radius": sol.radius, "opt": opt, "ratio": _ratio(sol.radius, opt),
           "bound": str(bound), "bound_ok": ok, "rounds": stats.rounds, **stats.extra})
    return 0 if ok else 1


def cmd_local_adversary(a) -> int:
    alg = make_view_algorithm(a.alg, a.t, a.beta)
    rep = build_rearranged_cycle(alg, a.n, a.k)
    d = rep.to_dict()
    _emit(d)
    ok = d["views_identical"] and d["max_segment_length"] <= 2 * a.t + 1
    return 0 if ok else 1


def cmd_congest_run(a) -> int:
    g = read_graph(a.graph)
    cfg = ModelConfig(Model.CONGEST, kappa=a.kappa)
    sol, stats = congest_kcenter(g, a.k, cfg=cfg, trace=a.trace)
    opt = _oracle(g, a.k, a.oracle_limit)
    D = diameter(g)
    kd_ok = stats.rounds <= ROUND_CONSTANT * a.k * max(D, 1)
    ok = kd_ok and (opt is None or sol.radius <= 2 * opt)
    _emit({"centers": sorted(sol.centers), "selection_order": list(sol.centers), "radius": sol.radius,
           "opt": opt, "ratio": _ratio(sol.radius, opt), "rounds": stats.rounds, "diameter": D,
           "kD_bound_ok": kd_ok, "max_message_bits": stats.max_message_bits,
           "budget_bits": cfg.budget_bits(g.n), "total_messages": stats.total_messages})
    return 0 if ok else 1


def cmd_clique_run(a) -> int:
    g = read_graph(a.graph)
    mode, alpha, seed = parse_phase1(a.phase1)
    phase1 = "exact" if mode == "exact" else make_stretch_oracle(g, alpha, seed)
    cfg = ModelConfig(Model.CLIQUE, kappa=a.kappa)
    sol, stats = clique_kcenter(g, a.k, phase1, elect=a.elect, cfg=cfg, trace=a.trace)
    opt = _oracle(g, a.k, a.oracle_limit)
    bound = 2 if mode == "exact" else 2 * alpha
    ok = opt is None or sol.radius <= bound * opt
    _emit({"centers": sorted(sol.centers), "selection_order": list(sol.centers), "radius": sol.radius,
           "opt": opt, "ratio_vs_oracle": _ratio(sol.radius, opt), "bound": str(bound), "bound_ok": ok,
           "phase1": a.phase1, "phase1_rounds": stats.extra["phase1_rounds"],
           "phase2_rounds": stats.extra["phase2_rounds"], "rounds": stats.rounds,
           "max_message_bits": stats.max_message_bits, "budget_bits": cfg.budget_bits(g.n)})
    return 0 if ok else 1


def _variant(a) -> GadgetVariant:
    return GadgetVariant(ft_edge=not a.no_ft_edge, c_path=a.c_path)


def cmd_gadget_build(a) -> int:
    inst = DisjointnessInstance(a.ell, a.x, a.y)
    var = _variant(a)
    gg = build_gxy(inst, var, check=False) if a.copies == 1 else build_gkxy(inst, a.copies, var)
    side = write_gadget(gg, a.out)
    _emit({"out": a.out, "sidecar": side, "n": gg.graph.n, "m": gg.graph.m, "copies": gg.copies,
           "disjoint": inst.disjoint, "variant": var.to_dict()})
    return 0


def cmd_gadget_verify(a) -> int:
    var = _variant(a)
    if a.exhaustive:
        insts = list(all_instances(a.ell))
    elif a.random:
        insts = list(random_instances(a.ell, a.random, a.seed))
    elif a.x is not None and a.y is not None:
        insts = [DisjointnessInstance(a.ell, a.x, a.y)]
    else:
        raise ConfigError("give --exhaustive, --random N, or both --x and --y")
    results = []
    for inst in insts:
        r = {"x": inst.x, "y": inst.y, "disjoint": inst.disjoint}
        lem = verify_lemma4(inst, var)
        c1 = verify_claim1(build_gxy(inst, var, check=False))
        r.update(opt1=lem["opt1"], radius_ok=lem["ok"], distance_ok=c1["ok"])
        if not c1["ok"]:
            r["distance_witnesses"] = c1
        if a.copies > 1:
            c2 = verify_claim2(inst, a.copies, var)
            r.update(opt_k=c2["opt_k"], one_per_copy_ok=c2["ok"], one_per_copy_counterexamples=c2["counterexamples"])
        results.append(r)
    ok = all(r["radius_ok"] and r["distance_ok"] and r.get("one_per_copy_ok", True) for r in results)
    _emit({"ell": a.ell, "copies": a.copies, "variant": var.to_dict(), "instances": len(results),
           "failures": sum(1 for r in results if not (r["radius_ok"] and r["distance_ok"]
                                                     and r.get("one_per_copy_ok", True))),
           "ok": ok, "results": results})
    return 0 if ok else 1


def cmd_bench(a) -> int:
    with open(a.config) as fh:
        cfg = json.load(fh)
    report = run_bench(cfg, oracle_limit=a.oracle_limit)
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            fh.write(rows_to_csv(report, volatile=not a.no_wallclock))
    text = report_to_json(report, volatile=not a.no_wallclock)
    if a.json:
        with open(a.json, "w", newline="\n") as fh:
            fh.write(text)
    _emit({"rows": len(report["rows"]), "aggregate": report["aggregate"], "ok": report["ok"],
           "csv": a.csv, "json": a.json})
    return 0 if report["ok"] else 1


# -- parser ------------------------------------------------------------------


def _version_text() -> str:
    return (f"distkcenter {__version__}\n"
            f"graph format: {GRAPH_FORMAT}\n"
            f"gadget sidecar: {SIDECAR_FORMAT}\n"
            f"bench report: {BENCH_FORMAT} ({len(CSV_COLUMNS)} csv columns)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="distkcenter", description="Distributed k-center simulator.",
                                formatter_class=argparse.RawTextHelpFormatter)
    p.add_argument("--version", action="version", version=_version_text())
    sub = p.add_subparsers(dest="command", required=True)

    def oracle_opt(sp):
        sp.add_argument("--oracle-limit", type=int, default=ORACLE_WORK_LIMIT,
                        help="skip the exact oracle when C(n, k) exceeds this")

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("kind", choices=["cycle", "path", "star", "complete", "gnp", "weighted-gnp"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-weight", type=int)
    g.add_argument("--center", type=int, help="hub id for star graphs")
    g.add_argument("--out", help="output file (default: stdout)")
    g.set_defaults(func=cmd_gen)

    lr = sub.add_parser("local-run", help="LOCAL BFS-or-single-center algorithm")
    lr.add_argument("--graph")
    lr.add_argument("--n", type=int, help="run on the n-cycle instead of a file")
    lr.add_argument("--k", type=int, required=True)
    lr.add_argument("--eps", required=True, help="rational, e.g. 1 or 1/2")
    lr.add_argument("--trace")
    oracle_opt(lr)
    lr.set_defaults(func=cmd_local_run)

    la = sub.add_parser("local-adversary", help="cycle rearrangement against a view algorithm")
    la.add_argument("--n", type=int, required=True)
    la.add_argument("--k", type=int, required=True)
    la.add_argument("--t", type=int, required=True)
    la.add_argument("--beta", type=int, default=1)
    la.add_argument("--alg", choices=sorted(VIEW_ALGORITHMS), default="spacing")
    la.set_defaults(func=cmd_local_adversary)

    cr = sub.add_parser("congest-run", help="farthest-first greedy in CONGEST")
    cr.add_argument("--graph", required=True)
    cr.add_argument("--k", type=int, required=True)
    cr.add_argument("--kappa", type=int, default=8, help="words per message")
    cr.add_argument("--trace")
    oracle_opt(cr)
    cr.set_defaults(func=cmd_congest_run)

    qr = sub.add_parser("clique-run", help="distances then greedy in the congested clique")
    qr.add_argument("--graph", required=True)
    qr.add_argument("--k", type=int, required=True)
    qr.add_argument("--phase1", default="exact", help="'exact' or 'inject:ALPHA:SEED'")
    qr.add_argument("--elect", action="store_true", help="spend a round electing the minimum id")
    qr.add_argument("--kappa", type=int, default=8)
    qr.add_argument("--trace")
    oracle_opt(qr)
    qr.set_defaults(func=cmd_clique_run)

    gd = sub.add_parser("gadget", help="disjointness gadget graphs")
    gsub = gd.add_subparsers(dest="gadget_command", required=True)

    def variant_opts(sp):
        sp.add_argument("--no-ft-edge", action="store_true", help="omit the f_A - t_A edges")
        sp.add_argument("--c-path", choices=["cbar-cbar", "cbar-c"], default="cbar-cbar")

    gb = gsub.add_parser("build")
    gb.add_argument("--ell", type=int, required=True)
    gb.add_argument("--x", required=True)
    gb.add_argument("--y", required=True)
    gb.add_argument("--copies", type=int, default=1)
    gb.add_argument("--out", required=True)
    variant_opts(gb)
    gb.set_defaults(func=cmd_gadget_build)

    gv = gsub.add_parser("verify")
    gv.add_argument("--ell", type=int, required=True)
    gv.add_argument("--exhaustive", action="store_true")
    gv.add_argument("--random", type=int, metavar="N")
    gv.add_argument("--seed", type=int, default=0)
    gv.add_argument("--x")
    gv.add_argument("--y")
    gv.add_argument("--copies", type=int, default=1, help="also check the one-center-per-copy property")
    variant_opts(gv)
    gv.set_defaults(func=cmd_gadget_verify)

    b = sub.add_parser("bench", help="run a JSON experiment config")
    b.add_argument("config")
    b.add_argument("--csv")
    b.add_argument("--json")
    b.add_argument("--no-wallclock", action="store_true", help="drop the volatile wallclock column")
    oracle_opt(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GraphError, AdversaryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
