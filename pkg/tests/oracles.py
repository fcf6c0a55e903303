"""Reference implementations that share no code with the package.

Distances come from networkx, subsets from itertools; everything is plain
Python so a bug in the numpy paths cannot hide behind a matching bug here.
"""

from __future__ import annotations

import itertools

import networkx as nx


def to_nx(g) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(1, g.n + 1))
    for u, v, w in g.edges():
        G.add_edge(u, v, weight=w)
    return G


def apsp(g) -> dict[int, dict[int, int]]:
    return {u: dict(d) for u, d in nx.all_pairs_dijkstra_path_length(to_nx(g), weight="weight")}


def radius_of(d, nodes, centers) -> int:
    return max(min(d[c][v] for c in centers) for v in nodes)


def opt_k(g, k) -> tuple[int, tuple[int, ...]]:
    """Minimum radius over all k-subsets, with the lexicographically first optimum."""
    d = apsp(g)
    nodes = list(range(1, g.n + 1))
    if k >= g.n:
        return 0, tuple(nodes)
    best = None
    for S in itertools.combinations(nodes, k):
        r = radius_of(d, nodes, S)
        if best is None or r < best[0]:
            best = (r, S)
    return best


def farthest_first(d, n, k, seed=1) -> list[int]:
    """Farthest-first traversal on a dict-of-dicts metric; ties go to the smaller id."""
    S = [seed]
    while len(S) < min(k, n):
        far, pick = -1, None
        for v in range(1, n + 1):
            dv = min(d[s][v] for s in S)
            if dv > far:
                far, pick = dv, v
        S.append(pick)
    return S


def hop_ball(g, v, t) -> set[int]:
    return set(nx.single_source_shortest_path_length(to_nx(g), v, cutoff=t))


def cycle_opt_bruteforce(n, k) -> int:
    d = {u: {v: min(abs(u - v), n - abs(u - v)) for v in range(1, n + 1)} for u in range(1, n + 1)}
    nodes = list(range(1, n + 1))
    return min(radius_of(d, nodes, S) for S in itertools.combinations(nodes, k))
