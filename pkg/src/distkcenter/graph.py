"""Undirected graphs on nodes ``1..n`` and their shortest-path metric.

Distances are computed once per graph with :mod:`scipy.sparse.csgraph`
(breadth-first for unweighted graphs, Dijkstra otherwise) and cached; a
:class:`Graph` is never mutated after construction, so the cache is safe to
share.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, Iterator, TextIO

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

__all__ = [
    "Graph",
    "GraphError",
    "GraphFormatError",
    "DisconnectedGraphError",
    "UnknownNodeError",
    "sssp",
    "distance_matrix",
    "eccentricity",
    "diameter",
    "parse_graph",
    "format_graph",
    "read_graph",
    "write_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_graph",
    "gnp_graph",
    "relabel",
]


class GraphError(ValueError):
    """Invalid graph structure."""


class GraphFormatError(GraphError):
    """Malformed graph text; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class DisconnectedGraphError(GraphError):
    pass


class UnknownNodeError(GraphError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class Graph:
    """Undirected simple graph with node ids ``1..n``.

    Parameters
    ----------
    n : int
        Number of nodes.
    edges : iterable
        Pairs ``(u, v)`` or triples ``(u, v, w)``. Weights must be positive
        integers.
    weighted : bool, optional
        Defaults to True iff any edge carries a weight other than 1. An
        unweighted graph rejects weights other than 1.
    """

    __slots__ = ("n", "weighted", "_w", "_adj", "_dist", "_conn")

    def __init__(self, n: int, edges: Iterable = (), weighted: bool | None = None):
        if int(n) != n or n < 1:
            raise GraphError(f"node count must be a positive integer, got {n!r}")
        self.n = int(n)
        w: dict[tuple[int, int], int] = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                wt = 1
            elif len(e) == 3:
                u, v, wt = e
            else:
                raise GraphError(f"edge must be (u, v) or (u, v, w), got {e!r}")
            u, v = int(u), int(v)
            for x in (u, v):
                if not 1 <= x <= self.n:
                    raise UnknownNodeError(f"node id {x} outside 1..{self.n}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if int(wt) != wt or wt < 1:
                raise GraphError(f"weight of ({u}, {v}) must be a positive integer, got {wt!r}")
            key = (u, v) if u < v else (v, u)
            if key in w:
                raise GraphError(f"duplicate edge {key}")
            w[key] = int(wt)
        if weighted is None:
            weighted = any(x != 1 for x in w.values())
        elif not weighted and any(x != 1 for x in w.values()):
            raise GraphError("unweighted graph given edge weights other than 1")
        self.weighted = bool(weighted)
        self._w = w
        adj: list[dict[int, int]] = [dict() for _ in range(self.n + 1)]
        for (u, v), wt in w.items():
            adj[u][v] = wt
            adj[v][u] = wt
        self._adj = adj
        self._dist = None
        self._conn = None

    @property
    def m(self) -> int:
        return len(self._w)

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def max_weight(self) -> int:
        return max(self._w.values(), default=1)

    def edges(self) -> list[tuple[int, int, int]]:
        """Sorted ``(u, v, w)`` triples with ``u < v``."""
        return sorted((u, v, wt) for (u, v), wt in self._w.items())

    def neighbors(self, v: int) -> dict[int, int]:
        """Map neighbor id -> edge weight (a copy)."""
        self._check(v)
        return dict(self._adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._w

    def weight(self, u: int, v: int) -> int:
        return self._w[(min(u, v), max(u, v))]

    def is_connected(self) -> bool:
        if self._conn is None:
            ncomp, _ = connected_components(self._csr(), directed=False)
            self._conn = ncomp == 1
        return self._conn

    def require_connected(self):
        if not self.is_connected():
            raise DisconnectedGraphError("graph is disconnected")

    def _check(self, v):
        if not (isinstance(v, (int, np.integer)) and 1 <= v <= self.n):
            raise UnknownNodeError(f"unknown node id {v!r} (ids are 1..{self.n})")

    def _csr(self):
        if not self._w:
            return csr_matrix((self.n, self.n), dtype=np.int64)
        uv = np.array(list(self._w), dtype=np.int64) - 1
        wt = np.fromiter(self._w.values(), dtype=np.int64, count=len(self._w))
        rows = np.concatenate([uv[:, 0], uv[:, 1]])
        cols = np.concatenate([uv[:, 1], uv[:, 0]])
        return csr_matrix((np.concatenate([wt, wt]), (rows, cols)), shape=(self.n, self.n))

    def distances(self) -> np.ndarray:
        """All-pairs distance matrix, 0-indexed (``D[u-1, v-1] = d(u, v)``).

        The returned array is read-only and shared between calls.
        """
        if self._dist is None:
            self.require_connected()
            d = shortest_path(self._csr(), directed=False, unweighted=not self.weighted)
            dist = np.rint(d).astype(np.int64)
            dist.setflags(write=False)
            self._dist = dist
        return self._dist

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.weighted == other.weighted and self._w == other._w

    def __hash__(self):
        return hash((self.n, self.weighted, frozenset(self._w.items())))

    def __repr__(self):
        kind = "weighted" if self.weighted else "unweighted"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def sssp(g: Graph, src: int) -> np.ndarray:
    """Distances from ``src``; entry ``i`` is ``d(src, i + 1)``."""
    g._check(src)
    if g._dist is not None:
        return g._dist[src - 1].copy()
    g.require_connected()
    d = shortest_path(g._csr(), directed=False, unweighted=not g.weighted, indices=src - 1)
    return np.rint(d).astype(np.int64)


def distance_matrix(g: Graph) -> np.ndarray:
    return g.distances()


def eccentricity(g: Graph, v: int) -> int:
    g._check(v)
    return int(g.distances()[v - 1].max())


def diameter(g: Graph) -> int:
    return int(g.distances().max())


# -- text format -------------------------------------------------------------
#
#   n m W          W = 0 unweighted, 1 weighted
#   u v [w]        m lines, ids 1-based


def _lines(src) -> Iterator[str]:
    if isinstance(src, str):
        yield from src.split("\n")
    else:
        for line in src:
            yield line.rstrip("\n")


def parse_graph(src: str | TextIO) -> Graph:
    """Parse the ``n m W`` edge-list format from a string or text stream."""
    lines = list(_lines(src))
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError(1, "missing header 'n m W'")
    head = lines[0].split()
    if len(head) != 3 or not all(t.lstrip("-").isdigit() for t in head):
        raise GraphFormatError(1, f"header must be three integers 'n m W', got {lines[0]!r}")
    n, m, flag = map(int, head)
    if n < 1:
        raise GraphFormatError(1, f"n must be positive, got {n}")
    if flag not in (0, 1):
        raise GraphFormatError(1, f"W must be 0 or 1, got {flag}")
    if m < 0:
        raise GraphFormatError(1, f"m must be nonnegative, got {m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(len(lines) if len(body) > m else 0,
                               f"header declares {m} edges, found {len(body)} edge lines")
    width = 3 if flag else 2
    seen = set()
    edges = []
    for i, line in enumerate(body, start=2):
        if "\r" in line:
            raise GraphFormatError(i, "CR line endings are not allowed")
        toks = line.split()
        if len(toks) != width or not all(t.lstrip("-").isdigit() for t in toks):
            raise GraphFormatError(i, f"expected {width} integers, got {line!r}")
        vals = list(map(int, toks))
        u, v = vals[0], vals[1]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(i, f"node id out of range 1..{n}")
        if u == v:
            raise GraphFormatError(i, f"self-loop at node {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(i, f"duplicate edge {key}")
        seen.add(key)
        if flag and vals[2] < 1:
            raise GraphFormatError(i, f"weight must be a positive integer, got {vals[2]}")
        edges.append(tuple(vals))
    return Graph(n, edges, weighted=bool(flag))


def format_graph(g: Graph) -> str:
    out = io.StringIO()
    out.write(f"{g.n} {g.m} {int(g.weighted)}\n")
    for u, v, w in g.edges():
        out.write(f"{u} {v} {w}\n" if g.weighted else f"{u} {v}\n")
    return out.getvalue()


def read_graph(path: str | os.PathLike) -> Graph:
    with open(path, newline="") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_graph(g))


# -- generators --------------------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)], weighted=False)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)], weighted=False)


def star_graph(n: int, center: int = 1) -> Graph:
    return Graph(n, [(center, v) for v in range(1, n + 1) if v != center], weighted=False)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)], weighted=False)


def gnp_graph(n: int, p: float, seed: int, *, weighted: bool = False,
              max_weight: int | None = None, attempts: int = 1000) -> Graph:
    """Connected Erdos-Renyi graph, resampled until connected.

    Deterministic for fixed arguments. Weights, when requested, are uniform
    in ``1..max_weight`` (default ``n``).
    """
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    wmax = max_weight or n
    for _ in range(attempts):
        keep = rng.random(iu.size) < p
        if weighted:
            wts = rng.integers(1, wmax + 1, size=iu.size)
            edges = [(int(a) + 1, int(b) + 1, int(c)) for a, b, c in zip(iu[keep], ju[keep], wts[keep])]
        else:
            edges = [(int(a) + 1, int(b) + 1) for a, b in zip(iu[keep], ju[keep])]
        g = Graph(n, edges, weighted=weighted)
        if g.is_connected():
            return g
    raise DisconnectedGraphError(f"no connected G({n}, {p}) sample in {attempts} attempts (seed={seed})")


def relabel(g: Graph, mapping) -> Graph:
    """Rename nodes: ``mapping[old] = new`` (a dict or a sequence indexed by old id - 1)."""
    if isinstance(mapping, dict):
        if set(mapping) != set(g.nodes):
            raise GraphError("mapping must name every node exactly once")
        f = mapping.__getitem__
    else:
        f = lambda v: mapping[v - 1]  # noqa: E731
    new_ids = sorted(f(v) for v in g.nodes)
    if new_ids != list(g.nodes):
        raise GraphError("mapping is not a permutation of 1..n")
    return Graph(g.n, [(f(u), f(v), w) for u, v, w in g.edges()], weighted=g.weighted)
