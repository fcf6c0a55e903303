from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from distkcenter.graph import cycle_graph, gnp_graph, path_graph, star_graph
from distkcenter.kcenter import (DistanceSource, OracleLimitError, coverage_radius, exact_distances,
                                 greedy_gonzalez, greedy_order, make_stretch_oracle, opt_k_bruteforce)

from . import oracles
from .strategies import connected_graphs

ks = st.integers(1, 4)
alphas = st.sampled_from([Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2), Fraction(7, 3)])


@given(connected_graphs(max_n=8), ks)
def test_bruteforce_matches_reference(g, k):
    r, S = oracles.opt_k(g, k)
    sol = opt_k_bruteforce(g, k)
    assert sol.radius == r
    assert sol.centers == S


@given(connected_graphs(), ks)
def test_greedy_matches_reference_traversal(g, k):
    d = oracles.apsp(g)
    sol = greedy_gonzalez(g, None, k)
    assert list(sol.centers) == oracles.farthest_first(d, g.n, k)
    assert sol.radius == oracles.radius_of(d, g.nodes, sol.centers)


@given(connected_graphs(), ks)
def test_greedy_within_twice_optimal(g, k):
    assert greedy_gonzalez(g, None, k).radius <= 2 * opt_k_bruteforce(g, k).radius


@given(connected_graphs(), ks, alphas, st.integers(0, 2**16))
def test_stretch_greedy_within_2alpha(g, k, alpha, seed):
    ds = make_stretch_oracle(g, alpha, seed)
    sol = greedy_gonzalez(g, ds, k)
    assert sol.radius <= 2 * alpha * opt_k_bruteforce(g, k).radius
    assert len(sol.center_set) == min(k, g.n)


@given(connected_graphs(), alphas, st.integers(0, 2**16))
def test_stretch_oracle_is_one_sided(g, alpha, seed):
    ds = make_stretch_oracle(g, alpha, seed)
    d = g.distances()
    q = ds.matrix
    assert (q >= d).all()
    assert (q * alpha.denominator <= d * alpha.numerator).all()
    assert (q == q.T).all() and q.dtype.kind == "i"
    assert ds.alpha == alpha
    assert ds.kind == ("exact" if alpha == 1 else "approximate")


def test_stretch_oracle_seeded():
    g = gnp_graph(9, 0.4, 1)
    a, b = make_stretch_oracle(g, 2, 3), make_stretch_oracle(g, 2, 3)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, make_stretch_oracle(g, 2, 4).matrix)


def test_frozen_values():
    # reference values from the itertools/networkx oracle
    g = gnp_graph(10, 0.3, 5)
    assert [opt_k_bruteforce(g, k).radius for k in (1, 2, 3)] == [2, 2, 1]
    assert opt_k_bruteforce(g, 3).centers == (5, 8, 10)
    assert greedy_gonzalez(g, None, 3).centers == (1, 2, 3)
    w = gnp_graph(8, 0.4, 3, weighted=True, max_weight=9)
    assert [opt_k_bruteforce(w, k).radius for k in (1, 2, 3)] == [9, 8, 3]
    assert greedy_gonzalez(w, None, 3).centers == (1, 8, 2)
    assert greedy_gonzalez(w, None, 1).radius == 17


def test_tight_star():
    # hub carries the largest id: greedy from node 1 lands on two leaves
    g = star_graph(7, center=7)
    sol = greedy_gonzalez(g, None, 2)
    assert sol.centers == (1, 2) and sol.radius == 2
    assert opt_k_bruteforce(g, 2).radius == 1


@pytest.mark.parametrize("n, k, opt", [(12, 1, 6), (12, 2, 3), (12, 3, 2), (7, 3, 1), (5, 5, 0)])
def test_cycle_optimum(n, k, opt):
    assert opt_k_bruteforce(cycle_graph(n), k).radius == opt


def test_k_at_least_n():
    sol = opt_k_bruteforce(path_graph(3), 5)
    assert sol.radius == 0 and sol.centers == (1, 2, 3)
    g = path_graph(3)
    assert greedy_gonzalez(g, None, 5).center_set == {1, 2, 3}


def test_work_limit():
    with pytest.raises(OracleLimitError):
        opt_k_bruteforce(path_graph(30), 5, work_limit=1000)


def test_invalid_k():
    with pytest.raises(ValueError):
        opt_k_bruteforce(path_graph(3), 0)
    with pytest.raises(ValueError):
        greedy_gonzalez(path_graph(3), None, 0)


def test_coverage_radius():
    g = path_graph(7)
    assert coverage_radius(g, [4]) == 3
    assert coverage_radius(g, [2, 6]) == 2
    assert coverage_radius(g, [1, 4, 7]) == 1
    with pytest.raises(ValueError):
        coverage_radius(g, [])


def test_greedy_seed_and_order():
    g = path_graph(5)
    assert greedy_order(g.distances(), 3, 3) == [3, 1, 5]
    assert greedy_gonzalez(g, None, 2, seed=5).centers == (5, 1)


def test_distance_source_validation():
    with pytest.raises(ValueError):
        DistanceSource(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValueError):
        DistanceSource(np.array([[1, 1], [1, 0]]))
    with pytest.raises(ValueError):
        DistanceSource(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        DistanceSource(np.zeros((2, 2)), alpha=0.5)
    ds = exact_distances(path_graph(3))
    assert ds.query(1, 3) == 2 and list(ds.row(2)) == [1, 0, 1]
    with pytest.raises(ValueError):
        ds.matrix[0, 1] = 5
