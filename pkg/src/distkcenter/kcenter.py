"""k-center objective, exhaustive oracle and farthest-first greedy."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import Graph

__all__ = [
    "CenterSolution",
    "DistanceSource",
    "OracleLimitError",
    "ORACLE_WORK_LIMIT",
    "coverage_radius",
    "exact_distances",
    "make_stretch_oracle",
    "opt_k_bruteforce",
    "greedy_gonzalez",
    "greedy_order",
]

ORACLE_WORK_LIMIT = 10**8


class OracleLimitError(RuntimeError):
    """The exhaustive oracle would exceed its candidate budget."""


@dataclass(frozen=True)
class CenterSolution:
    """Chosen centers (in selection order) and their true coverage radius."""

    centers: tuple[int, ...]
    radius: int

    @property
    def center_set(self) -> frozenset[int]:
        return frozenset(self.centers)

    def to_dict(self) -> dict:
        return {"centers": sorted(self.centers), "radius": self.radius}


class DistanceSource:
    """Pairwise distance estimates ``query(u, v)`` over nodes ``1..n``.

    ``kind`` is ``"exact"`` or ``"approximate"``; ``alpha`` is the promised
    one-sided stretch, ``d <= query <= alpha * d``.
    """

    def __init__(self, matrix: np.ndarray, kind: str = "exact", alpha=1):
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("distance matrix must be square")
        if kind not in ("exact", "approximate"):
            raise ValueError(f"unknown kind {kind!r}")
        if alpha < 1:
            raise ValueError(f"stretch must be >= 1, got {alpha}")
        if not np.array_equal(matrix, matrix.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diag(matrix) != 0) or np.any(matrix < 0):
            raise ValueError("distances must be nonnegative with a zero diagonal")
        m = matrix.copy()
        m.setflags(write=False)
        self.matrix = m
        self.kind = kind
        self.alpha = Fraction(alpha)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def query(self, u: int, v: int):
        return self.matrix[u - 1, v - 1].item()

    def row(self, u: int) -> np.ndarray:
        return self.matrix[u - 1]

    def __repr__(self):
        return f"DistanceSource(n={self.n}, kind={self.kind!r}, alpha={self.alpha})"


def exact_distances(g: Graph) -> DistanceSource:
    return DistanceSource(g.distances(), "exact", 1)


def make_stretch_oracle(g: Graph, alpha, rng_seed: int) -> DistanceSource:
    """One-sided ``alpha``-approximate distances.

    Each unordered pair gets an integer estimate drawn uniformly from
    ``d(u, v) .. floor(alpha * d(u, v))``, so the stretch factor
    ``query / d`` lies in ``[1, alpha]`` and estimates stay integral.
    """
    a = Fraction(alpha)
    if a < 1:
        raise ValueError(f"stretch must be >= 1, got {alpha}")
    d = g.distances()
    n = g.n
    rng = np.random.default_rng(rng_seed)
    iu, ju = np.triu_indices(n, k=1)
    lo = d[iu, ju]
    hi = (lo * a.numerator) // a.denominator
    est = rng.integers(lo, hi + 1) if n > 1 else lo
    q = np.zeros_like(d)
    q[iu, ju] = est
    q[ju, iu] = est
    return DistanceSource(q, "exact" if a == 1 else "approximate", a)


def coverage_radius(g: Graph, centers: Iterable[int]) -> int:
    """``max_v min_{s in centers} d(v, s)``."""
    s = sorted(set(centers))
    if not s:
        raise ValueError("center set is empty")
    for c in s:
        g._check(c)
    d = g.distances()
    return int(d[np.array(s) - 1].min(axis=0).max())


def opt_k_bruteforce(g: Graph, k: int, *, work_limit: int = ORACLE_WORK_LIMIT,
                     chunk: int = 1 << 15) -> CenterSolution:
    """Exact k-center by enumerating every center set of size ``min(k, n)``.

    Among optimal sets the lexicographically smallest is returned. Raises
    :class:`OracleLimitError` when ``C(n, k)`` exceeds ``work_limit``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = g.n
    if k >= n:
        return CenterSolution(tuple(g.nodes), 0)
    work = math.comb(n, k)
    if work > work_limit:
        raise OracleLimitError(f"C({n}, {k}) = {work} candidate sets exceeds limit {work_limit}")
    d = g.distances()
    best_r = None
    best_set = None
    combos = itertools.combinations(range(n), k)
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, chunk)),
                            dtype=np.int64)
        if block.size == 0:
            break
        block = block.reshape(-1, k)
        radii = d[block].min(axis=1).max(axis=1)
        i = int(np.argmin(radii))
        if best_r is None or radii[i] < best_r:
            best_r = int(radii[i])
            best_set = tuple(int(x) + 1 for x in block[i])
    return CenterSolution(best_set, best_r)


def greedy_order(dist: np.ndarray, k: int, seed: int) -> list[int]:
    """Farthest-first selection on a 0-indexed matrix; returns 1-based ids.

    Stops after ``min(k, n)`` picks; ties go to the smallest id.
    """
    n = dist.shape[0]
    chosen = [seed]
    to_s = dist[seed - 1].copy()
    for _ in range(min(k, n) - 1):
        v = int(np.argmax(to_s))  # first maximum = smallest id
        chosen.append(v + 1)
        np.minimum(to_s, dist[v], out=to_s)
    return chosen


def greedy_gonzalez(g: Graph, ds: DistanceSource | None, k: int, seed: int = 1) -> CenterSolution:
    """Farthest-first traversal under ``ds``; radius reported with true distances.

    ``ds=None`` means exact distances.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    g._check(seed)
    if ds is None:
        ds = exact_distances(g)
    if ds.n != g.n:
        raise ValueError(f"distance source covers {ds.n} nodes, graph has {g.n}")
    centers = greedy_order(ds.matrix, k, seed)
    return CenterSolution(tuple(centers), coverage_radius(g, centers))
