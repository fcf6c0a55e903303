"""Small worked examples, each checked against an independent computation."""

import json

import pytest

from distkcenter.bench import run_bench
from distkcenter.cli import main
from distkcenter.clique import clique_kcenter
from distkcenter.congest import congest_kcenter
from distkcenter.gadgets import DisjointnessInstance, build_gxy
from distkcenter.graph import Graph, cycle_graph, diameter, eccentricity, gnp_graph, path_graph, sssp, star_graph
from distkcenter.kcenter import (coverage_radius, exact_distances, greedy_gonzalez, make_stretch_oracle,
                                 opt_k_bruteforce)
from distkcenter.local import (ViewGatherProgram, build_rearranged_cycle, cycle_opt_k, local_kcenter_alg1,
                               make_view_algorithm)
from distkcenter.sim import (TAG_BITS, BandwidthError, Model, ModelConfig, NodeProgram, local_views, message_bits,
                             run_sync)

from . import oracles

TRIANGLE = Graph(3, [(1, 2, 5), (2, 3, 1), (1, 3, 1)])


def test_distance_examples():
    assert list(sssp(path_graph(3), 1)) == [0, 1, 2]
    assert list(sssp(TRIANGLE, 1)) == [0, 2, 1]
    assert oracles.apsp(TRIANGLE)[1] == {1: 0, 2: 2, 3: 1}
    assert eccentricity(cycle_graph(10), 7) == 5
    assert eccentricity(path_graph(8), 8) == 7
    g = gnp_graph(9, 0.4, 2)
    assert diameter(g) == max(eccentricity(g, v) for v in g.nodes)


def test_radius_examples():
    assert coverage_radius(cycle_graph(12), [1, 5, 9]) == 2
    assert coverage_radius(path_graph(5), [1]) == 4
    assert coverage_radius(path_graph(5), range(1, 6)) == 0
    assert opt_k_bruteforce(cycle_graph(12), 3).radius == 2
    gg = build_gxy(DisjointnessInstance(4, "1000", "1000"))
    assert opt_k_bruteforce(gg.graph, 1).radius == 3


def test_greedy_examples():
    sol = greedy_gonzalez(path_graph(7), None, 2)
    assert sol.center_set == {1, 7} and sol.radius == 3
    assert opt_k_bruteforce(path_graph(7), 2).radius == 2
    g = gnp_graph(10, 0.35, 3)
    for seed in (1, 4, 10):
        sol = greedy_gonzalez(g, None, 1, seed=seed)
        assert sol.centers == (seed,) and sol.radius == eccentricity(g, seed)
    exact = make_stretch_oracle(g, 1, 9)
    assert (exact.matrix == exact_distances(g).matrix).all()


@pytest.mark.parametrize("n", range(3, 17))
def test_cycle_optimum_formula(n):
    for k in range(1, 5):
        assert opt_k_bruteforce(cycle_graph(n), k).radius == cycle_opt_k(n, k)


class FloodMin(NodeProgram):
    model = Model.CONGEST

    def init(self, node):
        return {"best": node.id, "nbrs": node.neighbor_ids, "id": node.id}

    def on_round(self, st, rnd, inbox):
        for _, m in inbox:
            st["best"] = min(st["best"], m[0][1])
        return st, [(v, (("id", st["best"]),)) for v in st["nbrs"]], rnd > 2


def test_flooding_on_a_short_path():
    outs, stats = run_sync(path_graph(3), FloodMin(), ModelConfig(Model.CONGEST), 10)
    assert all(o["best"] == 1 for o in outs.values())
    assert stats.rounds <= 2 * diameter(path_graph(3))
    again = run_sync(path_graph(3), FloodMin(), ModelConfig(Model.CONGEST), 10)
    assert again[1] == stats and again[0] == outs


class OneShot(NodeProgram):
    model = Model.CONGEST

    def __init__(self, fields):
        self.fields = fields

    def init(self, node):
        return node.id

    def on_round(self, st, rnd, inbox):
        return st, ([(2, self.fields)] if st == 1 else []), True


def test_budget_boundary():
    n = 16
    cfg = ModelConfig(Model.CONGEST, kappa=1)  # 4 bits per message
    g = path_graph(n)
    with pytest.raises(BandwidthError):
        run_sync(g, OneShot((("op", 1),)), cfg, 2)  # tag + 4 = 6 bits
    run_sync(g, OneShot((("op", 1),)), ModelConfig(Model.CONGEST, kappa=2), 2)


def test_codec_examples():
    assert message_bits((("id", 16),), 16) == TAG_BITS + 5
    assert message_bits((), 16) == 0
    assert message_bits((("id", 3), ("dist", 99)), 100) == 2 * (TAG_BITS + 7)


def test_view_examples():
    g = cycle_graph(10)
    assert local_views(g, 0)[4].nodes == {4} and not local_views(g, 0)[4].edges
    v = local_views(g, 2)[5]
    assert v.nodes == {3, 4, 5, 6, 7}
    assert v.edges == {(3, 4, 1), (4, 5, 1), (5, 6, 1), (6, 7, 1)}
    full = local_views(g, 5)
    assert all(view.edges == frozenset(g.edges()) for view in full.values())


def test_outputs_depend_only_on_views():
    # node 1 has the same 2-view on the 9-cycle and on this longer graph
    alg = make_view_algorithm("view-spacing", 2, 1)
    a = cycle_graph(9)
    b = Graph(9, [(8, 9), (9, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)])
    assert local_views(a, 2)[1] == local_views(b, 2)[1]
    outs_a, _ = run_sync(a, ViewGatherProgram(alg, 3), ModelConfig(Model.LOCAL), 3)
    outs_b, _ = run_sync(b, ViewGatherProgram(alg, 3), ModelConfig(Model.LOCAL), 3)
    assert outs_a[1] == outs_b[1]


def test_local_examples():
    sol, st = local_kcenter_alg1(cycle_graph(50), 1, 2)
    assert st.extra["branch"] == "sole" and sol.centers == (1,) and sol.radius == 25
    assert opt_k_bruteforce(cycle_graph(50), 1).radius == 25
    sol, st = local_kcenter_alg1(path_graph(6), 2, 2)
    assert st.extra["branch"] == "aggregate" and sol.radius <= 2 * opt_k_bruteforce(path_graph(6), 2).radius == 2
    sol, _ = local_kcenter_alg1(path_graph(4), 6, 1)
    assert sol.radius == 0


def test_adversary_example():
    r = build_rearranged_cycle(make_view_algorithm("view-spacing", 2, 1), 40, 2)
    assert r.views_identical and set(r.centers_c) <= set(r.centers_c_prime)
    assert r.max_segment_length <= 5
    assert 2 * r.far_gap_distance >= r.gap_bound - 1


@pytest.mark.parametrize("n", [9, 14, 20, 24])
def test_rearranged_cycle_optimum_by_enumeration(n):
    r = build_rearranged_cycle(make_view_algorithm("spacing", 1, 1), n, 2)
    c_prime = Graph(n, [(r.order[i], r.order[(i + 1) % n]) for i in range(n)])
    assert oracles.opt_k(c_prime, 2)[0] == r.opt_k


def test_congest_examples():
    g = cycle_graph(12)
    sol, _ = congest_kcenter(g, 3)
    assert sol.center_set == greedy_gonzalez(g, None, 3).center_set and sol.radius <= 4
    sol, _ = congest_kcenter(g, 1)
    assert sol.centers == (1,) and sol.radius == eccentricity(g, 1)
    # hub with id 1: the greedy's second pick is a leaf and the radius is already optimal
    sol, _ = congest_kcenter(star_graph(9, 1), 2)
    assert sol.centers == (1, 2) and sol.radius == 1 == opt_k_bruteforce(star_graph(9, 1), 2).radius
    # hub with the largest id: the factor 2 is attained
    sol, _ = congest_kcenter(star_graph(9, 9), 2)
    assert sol.centers == (1, 2) and sol.radius == 2 and opt_k_bruteforce(star_graph(9, 9), 2).radius == 1


def test_clique_examples():
    sol, st = clique_kcenter(TRIANGLE, 1)
    assert sol.centers == (1,) and sol.radius == 2 and st.extra["phase2_rounds"] == 0


def test_cli_examples(capsys, tmp_path):
    assert main(["gen", "cycle", "--n", "12"]) == 0
    assert capsys.readouterr().out.startswith("12 12 0\n")
    main(["gen", "gnp", "--n", "10", "--p", "0.4", "--seed", "7"])
    first = capsys.readouterr().out
    main(["gen", "gnp", "--n", "10", "--p", "0.4", "--seed", "7"])
    assert capsys.readouterr().out == first
    p = tmp_path / "p.txt"
    main(["gen", "path", "--n", "5", "--out", str(p)])
    assert json.loads(capsys.readouterr().out)["diameter"] == 4
    cfg = tmp_path / "empty.json"
    cfg.write_text("{}")
    assert main(["bench", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["rows"] == 0
    assert run_bench({})["rows"] == []
