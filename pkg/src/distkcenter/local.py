"""k-center in the LOCAL model: the BFS-or-single-center algorithm and the
cycle rearrangement adversary for view-based algorithms.

The algorithm grows a BFS tree of depth ``R = ceil(t * k)`` from node 1,
``t = 2 + 4 / eps``. Every node reports up the tree whether its branch saw
the whole graph. If it did, node 1 learns every edge, runs the farthest-first
greedy on its own copy of the graph and pushes the center list down the tree.
Otherwise node 1 is the only center; the eccentricity of node 1 then exceeds
``R``, so its radius is within ``(2 + eps) * k`` of optimal.

The adversary takes a view algorithm (a decision that only sees the
distance-``t`` neighborhood), runs it on the canonical cycle, cuts a segment
of at most ``2t + 1`` nodes around each chosen center, and glues the
segments back together so that every chosen center keeps exactly the same
view while all unused nodes end up in one long stretch with no center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graph import Graph, GraphError, cycle_graph
from .kcenter import CenterSolution, coverage_radius, greedy_order
from .sim import Model, ModelConfig, NodeInput, NodeProgram, SimulationError, View, local_views, run_sync

__all__ = [
    "LocalKCenter",
    "local_kcenter_alg1",
    "bfs_depth",
    "ViewAlgorithm",
    "SpacingRule",
    "ViewSpacingRule",
    "PrefixRule",
    "VIEW_ALGORITHMS",
    "make_view_algorithm",
    "ViewGatherProgram",
    "run_view_algorithm",
    "decide_all",
    "cycle_opt_k",
    "RearrangementReport",
    "AdversaryError",
    "compute_segments",
    "build_rearranged_cycle",
    "lower_bound_ratio",
]


def bfs_depth(k: int, eps) -> tuple[Fraction, int]:
    """``(t, ceil(t * k))`` with ``t = 2 + 4 / eps`` in exact arithmetic."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    t = 2 + 4 / eps
    return t, math.ceil(t * k)


# -- BFS, convergecast, decision broadcast -------------------------------------


@dataclass
class _LState:
    id: int
    n: int
    k: int
    R: int
    nbrs: tuple
    depth: int | None = None
    parent: int | None = None
    sent_at: int | None = None  # round in which this node forwarded the BFS
    skip: set = field(default_factory=set)  # neighbors one level up
    children: set = field(default_factory=set)
    replies: set = field(default_factory=set)
    beyond: bool = False
    reports: dict = field(default_factory=dict)
    reported: bool = False
    centers: list | None = None
    branch: str | None = None


class LocalKCenter(NodeProgram):
    """Node program; reads ``k`` and ``R`` (the BFS depth) from params.

    Messages are plain tuples; LOCAL puts no limit on their size.
    """

    model = Model.LOCAL

    def init(self, node: NodeInput):
        st = _LState(node.id, node.n, int(node.params["k"]), int(node.params["R"]), node.neighbor_ids)
        if node.id == 1:
            st.depth = 0
        return st

    def output(self, st: _LState):
        return {
            "is_center": bool(st.centers) and st.id in st.centers,
            "centers": list(st.centers or []),
            "depth": st.depth,
            "branch": st.branch,
        }

    def on_round(self, st: _LState, rnd: int, inbox: list):
        out: list = []
        bfs = sorted((u, m[1]) for u, m in inbox if m[0] == "bfs")
        if st.id == 1 and rnd == 1:
            self._forward(st, rnd, set(), out)
        elif bfs:
            senders = {u for u, _ in bfs}
            sender_depth = bfs[0][1]
            if st.depth is None and sender_depth < st.R:
                st.depth = sender_depth + 1
                st.parent = bfs[0][0]
                for u in sorted(senders):
                    out.append((u, ("join",) if u == st.parent else ("nack",)))
                self._forward(st, rnd, senders, out)
            elif st.depth is None:
                # one hop past the depth limit: tell the senders and stop
                out += [(u, ("beyond",)) for u in sorted(senders)]
                return st, out, True
            else:
                out += [(u, ("nack",)) for u in sorted(senders)]

        for u, m in inbox:
            tag = m[0]
            if tag == "join":
                st.children.add(u)
                st.replies.add(u)
            elif tag == "nack":
                st.replies.add(u)
            elif tag == "beyond":
                st.replies.add(u)
                st.beyond = True
            elif tag == "report":
                st.reports[u] = (m[1], m[2])
            elif tag == "decide" and u == st.parent:
                st.centers, st.branch = list(m[1]), m[2]
                out += [(c, m) for c in sorted(st.children)]
                return st, out, True

        if st.depth is None:
            # never reached: nothing can arrive after round R + 2
            return st, out, rnd >= st.R + 2

        if (not st.reported and st.sent_at is not None and st.sent_at < rnd
                and set(st.nbrs) - st.skip <= st.replies and set(st.reports) == st.children):
            st.reported = True
            complete = not st.beyond and all(c for c, _ in st.reports.values())
            edges = {(min(st.id, v), max(st.id, v)) for v in st.nbrs}
            for _, e in st.reports.values():
                edges |= e
            if st.parent is not None:
                out.append((st.parent, ("report", complete, frozenset(edges))))
                return st, out, False
            self._decide(st, complete, edges)
            out += [(c, ("decide", tuple(st.centers), st.branch)) for c in sorted(st.children)]
            return st, out, True
        return st, out, False

    def _forward(self, st: _LState, rnd: int, senders: set, out: list):
        st.skip = senders  # they get join/nack instead
        st.sent_at = rnd
        out += [(u, ("bfs", st.depth)) for u in st.nbrs if u not in senders]

    @staticmethod
    def _decide(st: _LState, complete: bool, edges):
        if complete:
            g = Graph(st.n, sorted(edges), weighted=False)
            st.centers = greedy_order(g.distances(), st.k, 1)
            st.branch = "aggregate"
        else:
            st.centers = [1]
            st.branch = "sole"


def local_kcenter_alg1(g: Graph, k: int, eps, *, max_rounds: int | None = None, trace=None):
    """Run the LOCAL algorithm; returns ``(CenterSolution, SimStats)``.

    ``stats.extra`` holds ``branch`` (``"aggregate"`` when the BFS of depth
    ``ceil(t * k)`` covered the graph, else ``"sole"``), ``t`` and
    ``bfs_depth``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    t, R = bfs_depth(k, eps)
    if g.weighted:
        raise GraphError("the LOCAL algorithm handles unweighted graphs only")
    g.require_connected()
    if max_rounds is None:
        max_rounds = 3 * R + 8
    outs, stats = run_sync(g, LocalKCenter(), ModelConfig(Model.LOCAL), max_rounds,
                           params={"k": k, "R": R}, trace=trace)
    order = outs[1]["centers"]
    flagged = sorted(v for v, o in outs.items() if o["is_center"])
    if flagged != sorted(order):
        raise SimulationError("center flags do not match the decision of node 1")
    stats.extra.update(branch=outs[1]["branch"], t=str(t), bfs_depth=R)
    return CenterSolution(tuple(order), coverage_radius(g, order)), stats


# -- view algorithms ---------------------------------------------------------


class ViewAlgorithm:
    """A LOCAL algorithm given as a decision on the distance-``t`` view.

    Subclasses implement :meth:`decide`. ``beta`` bounds the number of
    centers by ``beta * k`` on every cycle of the sizes it is used on.
    """

    name = "view"

    def __init__(self, t: int, beta: int = 1):
        if t < 0:
            raise ValueError("t must be >= 0")
        if beta < 1:
            raise ValueError("beta must be >= 1")
        self.t = int(t)
        self.beta = beta

    def decide(self, view: View, k: int, n: int) -> bool:
        raise NotImplementedError

    def max_centers(self, k: int) -> int:
        return self.beta * k

    def __repr__(self):
        return f"{type(self).__name__}(t={self.t}, beta={self.beta})"


class SpacingRule(ViewAlgorithm):
    """Center iff ``id = 1 (mod ceil(n / (beta k)))``; reads only its own id."""

    name = "spacing"

    def decide(self, view, k, n):
        step = math.ceil(n / (self.beta * k))
        return (view.center - 1) % step == 0


class ViewSpacingRule(SpacingRule):
    """Spacing candidates that also hold the smallest candidate id in view."""

    name = "view-spacing"

    def decide(self, view, k, n):
        step = math.ceil(n / (self.beta * k))
        cands = [u for u in view.nodes if (u - 1) % step == 0]
        return view.center in cands and view.center == min(cands)


class PrefixRule(ViewAlgorithm):
    """The ``beta * k`` smallest ids are centers."""

    name = "prefix"

    def decide(self, view, k, n):
        return view.center <= self.beta * k


VIEW_ALGORITHMS: dict[str, Callable[..., ViewAlgorithm]] = {
    cls.name: cls for cls in (SpacingRule, ViewSpacingRule, PrefixRule)
}


def make_view_algorithm(name: str, t: int, beta: int = 1) -> ViewAlgorithm:
    try:
        return VIEW_ALGORITHMS[name](t, beta)
    except KeyError:
        raise ValueError(f"unknown view algorithm {name!r}; choose from {sorted(VIEW_ALGORITHMS)}") from None


def decide_all(g: Graph, alg: ViewAlgorithm, k: int, views: dict | None = None) -> list[int]:
    """Sorted ids of the nodes that ``alg`` makes centers on ``g``."""
    if views is None:
        views = local_views(g, alg.t)
    return [v for v in g.nodes if alg.decide(views[v], k, g.n)]


class ViewGatherProgram(NodeProgram):
    """Collect the distance-``t`` view by flooding edge sets, then decide.

    After ``r`` exchanges a node knows every edge incident to a node within
    ``r - 1`` hops; ``t`` exchanges therefore cover every edge of the ball.
    """

    model = Model.LOCAL

    def __init__(self, alg: ViewAlgorithm, k: int):
        self.alg = alg
        self.k = k

    def init(self, node: NodeInput):
        edges = {(min(node.id, v), max(node.id, v), w) for v, w in node.neighbors}
        return {"id": node.id, "n": node.n, "nbrs": node.neighbor_ids, "edges": edges, "center": None}

    def on_round(self, st, rnd, inbox):
        for _, e in inbox:
            st["edges"] |= e
        t = self.alg.t
        if rnd <= t:
            known = frozenset(st["edges"])
            return st, [(u, known) for u in st["nbrs"]], False
        ball = _ball(st["id"], st["edges"], t)
        view = View(st["id"], t, frozenset(ball),
                    frozenset(e for e in st["edges"] if e[0] in ball and e[1] in ball))
        st["center"] = self.alg.decide(view, self.k, st["n"])
        return st, [], True

    def output(self, st):
        return st["center"]


def _ball(src: int, edges, t: int) -> set:
    adj: dict[int, list] = {}
    for u, v, _ in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = {src}
    frontier = [src]
    for _ in range(t):
        frontier = [w for u in frontier for w in adj.get(u, ()) if w not in seen and not seen.add(w)]
    return seen


def run_view_algorithm(g: Graph, alg: ViewAlgorithm, k: int):
    """Run ``alg`` as a real LOCAL program; returns ``(sorted centers, stats)``."""
    outs, stats = run_sync(g, ViewGatherProgram(alg, k), ModelConfig(Model.LOCAL), alg.t + 1)
    return sorted(v for v, c in outs.items() if c), stats


# -- cycle rearrangement -----------------------------------------------------


def cycle_opt_k(n: int, k: int) -> int:
    """Optimal k-center radius of the n-cycle: ``ceil((n - k) / (2k))``, 0 if k >= n."""
    if k >= n:
        return 0
    return -(-(n - k) // (2 * k))


def lower_bound_ratio(n: int, k: int, t: int, beta) -> Fraction:
    """``k - (k^2 + k (beta k - 1)(2t + 1)) / (n + k)``."""
    beta = Fraction(beta)
    return k - Fraction(k * k + k * (beta * k - 1) * (2 * t + 1)) / (n + k)


class AdversaryError(ValueError):
    pass


@dataclass
class RearrangementReport:
    """Result of the rearrangement; ``order`` lists node ids around C'."""

    algorithm: str
    n: int
    k: int
    t: int
    beta: int
    centers_c: list[int]
    segments: list[tuple[int, int]]  # (b_i, e_i), unreduced; may leave 1..n
    segment_nodes: list[list[int]]
    i_star: int  # 1-based
    order: list[int]
    leftovers: list[int]
    centers_c_prime: list[int]
    views_identical: bool
    view_mismatches: list[int]
    radius_c_prime: int
    opt_k: int
    ratio: Fraction
    lower_bound: Fraction
    gap_length: int  # edges on the center-free arc from c_{i*} to c_{i*+1} in C'
    gap_bound: int  # n - (k' - 1)(2t + 1)
    far_gap_distance: int  # largest distance to a center along that arc

    @property
    def max_segment_length(self) -> int:
        return max(len(s) for s in self.segment_nodes)

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items()}
        d["segments"] = [list(s) for s in self.segments]
        for key in ("ratio", "lower_bound"):
            d[key] = float(d[key])
            d[key + "_exact"] = str(getattr(self, key))
        d["max_segment_length"] = self.max_segment_length
        d["ratio_bound_ok"] = self.ratio >= self.lower_bound
        return d


def compute_segments(centers: list[int], n: int, t: int) -> list[tuple[int, int]]:
    """Segment ``(b_i, e_i)`` around each sorted center on the canonical n-cycle.

    ``e_i = min(c_i + t, c_{i+1} - 1)``, with ``c_1 + n`` in place of
    ``c_{i+1}`` for the last center; ``b_i = max(c_i - t, e_{i-1} + 1)``
    with ``e_last - n`` in place of ``e_0``. Values outside ``1..n`` wrap.
    """
    c = sorted(centers)
    kp = len(c)
    e = [min(c[i] + t, (c[i + 1] if i + 1 < kp else c[0] + n) - 1) for i in range(kp)]
    b = [max(c[0] - t, e[-1] - n + 1)] + [max(c[i] - t, e[i - 1] + 1) for i in range(1, kp)]
    return list(zip(b, e))


def _wrap(x: int, n: int) -> int:
    return (x - 1) % n + 1


def _cycle_from_order(order: list[int]) -> Graph:
    n = len(order)
    return Graph(n, [(order[i], order[(i + 1) % n]) for i in range(n)], weighted=False)


def _ring_distances(order: list[int], centers) -> dict[int, int]:
    n = len(order)
    pos = [i for i, v in enumerate(order) if v in set(centers)]
    dist = {}
    for i, v in enumerate(order):
        dist[v] = min(min(abs(i - p), n - abs(i - p)) for p in pos)
    return dist


def build_rearranged_cycle(alg: ViewAlgorithm, n: int, k: int) -> RearrangementReport:
    """Run ``alg`` on the canonical n-cycle and on its rearrangement C'.

    Raises :class:`AdversaryError` when ``n <= 2 * beta * k * t``, when the
    algorithm picks no center or more than ``beta * k``, when ``k >= n``, or when no two
    cyclically consecutive centers are more than ``2t`` apart.
    """
    t, beta = alg.t, alg.beta
    if n <= 2 * beta * k * t:
        raise AdversaryError(f"need n > 2*beta*k*t = {2 * beta * k * t}, got n = {n}")
    if n < 3:
        raise AdversaryError("a cycle needs at least 3 nodes")
    if k >= n:
        raise AdversaryError("k >= n makes every ratio 0/0")
    c_graph = cycle_graph(n)
    va = local_views(c_graph, t)
    centers = decide_all(c_graph, alg, k, va)
    if not centers:
        raise AdversaryError(f"{alg!r} chose no center on the {n}-cycle")
    if len(centers) > alg.max_centers(k):
        raise AdversaryError(f"{alg!r} chose {len(centers)} centers, more than beta*k = {alg.max_centers(k)}")
    kp = len(centers)
    gaps = [(centers[i + 1] if i + 1 < kp else centers[0] + n) - centers[i] for i in range(kp)]
    try:
        i_star = next(i for i, gap in enumerate(gaps) if gap > 2 * t)
    except StopIteration:
        raise AdversaryError("no two consecutive centers are more than 2t apart") from None

    segs = compute_segments(centers, n, t)
    seg_nodes = [[_wrap(x, n) for x in range(b, e + 1)] for b, e in segs]
    order: list[int] = []
    for i in list(range(i_star + 1, kp)) + list(range(i_star + 1)):
        order += seg_nodes[i]
    used = set(order)
    if len(used) != len(order):
        raise AdversaryError("segments overlap")  # cannot happen with the formulas above
    start = segs[i_star][1] + 1
    leftovers = [v for v in (_wrap(start + j, n) for j in range(n)) if v not in used]
    order += leftovers

    c_prime = _cycle_from_order(order)
    vb = local_views(c_prime, t)
    centers_p = decide_all(c_prime, alg, k, vb)
    mismatches = [c for c in centers if va[c].nodes != vb[c].nodes or va[c].edges != vb[c].edges]
    if not centers_p:
        raise AdversaryError(f"{alg!r} chose no center on the rearranged cycle")
    dist = _ring_distances(order, centers_p)
    radius = max(dist.values())
    pos = {v: i for i, v in enumerate(order)}
    p0 = pos[centers[i_star]]
    gap_len = (pos[centers[(i_star + 1) % kp]] - p0) % n or n
    far = max(dist[order[(p0 + j) % n]] for j in range(gap_len + 1))
    opt = cycle_opt_k(n, k)
    return RearrangementReport(
        algorithm=alg.name, n=n, k=k, t=t, beta=beta,
        centers_c=centers, segments=segs, segment_nodes=seg_nodes, i_star=i_star + 1,
        order=order, leftovers=leftovers, centers_c_prime=centers_p,
        views_identical=not mismatches, view_mismatches=mismatches,
        radius_c_prime=radius, opt_k=opt,
        ratio=Fraction(radius, opt),
        lower_bound=lower_bound_ratio(n, k, t, beta),
        gap_length=gap_len,
        gap_bound=n - (kp - 1) * (2 * t + 1),
        far_gap_distance=far,
    )
