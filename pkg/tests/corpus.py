"""Deterministic graph corpus shared by the unit and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from distkcenter.graph import complete_graph, cycle_graph, gnp_graph, path_graph, star_graph

CORPUS_SEED = 20240611
N_RANDOM = 200


@lru_cache(maxsize=None)
def corpus(weighted_extra: int = 0) -> tuple:
    """``(label, graph)`` pairs: random connected graphs with n <= 12 plus
    cycles, paths, stars with the hub at either end of the id range, and
    small complete graphs. ``weighted_extra`` appends weighted samples."""
    rng = np.random.default_rng(CORPUS_SEED)
    out = []
    for i in range(N_RANDOM):
        n = int(rng.integers(2, 13))
        p = round(float(rng.uniform(0.15, 0.7)), 3)
        seed = int(rng.integers(2**31))
        out.append((f"gnp#{i}(n={n},p={p},seed={seed})", gnp_graph(n, p, seed)))
    for n in range(3, 13):
        out.append((f"cycle({n})", cycle_graph(n)))
    for n in range(1, 13):
        out.append((f"path({n})", path_graph(n)))
    for n in range(2, 13):
        out.append((f"star({n},hub=1)", star_graph(n, 1)))
        out.append((f"star({n},hub={n})", star_graph(n, n)))
    for n in range(1, 7):
        out.append((f"complete({n})", complete_graph(n)))
    for i in range(weighted_extra):
        n = int(rng.integers(2, 11))
        p = round(float(rng.uniform(0.2, 0.7)), 3)
        seed = int(rng.integers(2**31))
        out.append((f"wgnp#{i}(n={n},p={p},seed={seed})", gnp_graph(n, p, seed, weighted=True, max_weight=9)))
    return tuple(out)
