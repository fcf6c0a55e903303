from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from distkcenter.clique import clique_kcenter, parse_phase1
from distkcenter.graph import Graph, cycle_graph, path_graph, star_graph
from distkcenter.kcenter import DistanceSource, greedy_gonzalez, make_stretch_oracle, opt_k_bruteforce
from distkcenter.sim import BandwidthError, Model, ModelConfig, NonTerminationError

from . import oracles
from .strategies import connected_graphs


@given(connected_graphs(max_n=9), st.integers(1, 4), st.booleans())
def test_exact_phase_equals_reference(g, k, elect):
    sol, stats = clique_kcenter(g, k, elect=elect)
    d = oracles.apsp(g)
    assert list(sol.centers) == oracles.farthest_first(d, g.n, k)
    assert stats.extra["phase2_rounds"] == k - 1
    assert sol.radius <= 2 * opt_k_bruteforce(g, k).radius


@given(connected_graphs(max_n=9), st.integers(1, 4), st.integers(0, 1000))
def test_injected_phase_equals_greedy_on_estimates(g, k, seed):
    ds = make_stretch_oracle(g, Fraction(3, 2), seed)
    sol, stats = clique_kcenter(g, k, ds)
    assert sol == greedy_gonzalez(g, ds, k)
    assert stats.extra["phase1_rounds"] == 0
    assert stats.extra["phase2_rounds"] == k - 1


@pytest.mark.parametrize("g", [cycle_graph(12), path_graph(7), star_graph(6, 6)])
def test_frozen_phase_lengths(g):
    sol, stats = clique_kcenter(g, 3)
    assert stats.extra == {"phase1_rounds": 3, "phase2_rounds": 2}
    assert stats.rounds == 6


def test_dense_graph_needs_more_relay_rounds():
    g = Graph(8, [(u, v) for u in range(1, 9) for v in range(u + 1, 9)])
    _, stats = clique_kcenter(g, 2)
    # count round, hand-off round, then ceil(28 / 8) = 4 relay rounds
    assert stats.extra["phase1_rounds"] == 6


def test_elect_adds_one_round():
    g = cycle_graph(9)
    a = clique_kcenter(g, 3)[1].extra["phase1_rounds"]
    b = clique_kcenter(g, 3, elect=True)[1].extra["phase1_rounds"]
    assert b == a + 1


def test_weighted_triangle():
    g = Graph(3, [(1, 2, 2), (2, 3, 2), (1, 3, 3)])
    sol, _ = clique_kcenter(g, 1)
    assert sol.centers == (1,) and sol.radius == 3
    sol, _ = clique_kcenter(g, 2)
    assert sol.centers == (1, 3) and sol.radius == 2


def test_parse_phase1():
    assert parse_phase1("exact") == ("exact", None, None)
    assert parse_phase1("inject:3/2:7") == ("inject", Fraction(3, 2), 7)
    for bad in ("inject:2", "approx:2:1", "inject:x:1"):
        with pytest.raises(ValueError):
            parse_phase1(bad)


def test_errors():
    g = path_graph(4)
    with pytest.raises(ValueError):
        clique_kcenter(g, 0)
    with pytest.raises(ValueError):
        clique_kcenter(g, 1, "fast")
    with pytest.raises(ValueError):
        clique_kcenter(g, 1, DistanceSource(cycle_graph(5).distances()))
    with pytest.raises(ValueError):
        clique_kcenter(g, 1, cfg=ModelConfig(Model.CONGEST))
    with pytest.raises(BandwidthError):
        clique_kcenter(Graph(5, [(1, 2, 1000), (2, 3), (3, 4), (4, 5)]), 2, cfg=ModelConfig(Model.CLIQUE, kappa=1))
    with pytest.raises(NonTerminationError):
        clique_kcenter(g, 3, max_rounds=2)
