"""Two-phase k-center in the congested clique.

Phase 1 gives every node its row of (possibly approximate) distances. The
in-model option is an exact broadcast of the edge list: nodes announce how
many edges they own, assign each edge a global index, hand edge ``g`` to relay
``g mod n``, and relays then send their at most ``ceil(m / n)`` records to
everyone, one record per recipient per round. Alternatively a
:class:`~distkcenter.kcenter.DistanceSource` is injected, standing in for the
fast all-pairs algorithms the model admits.

Phase 2 is the greedy: one round per iteration in which every node sends its
distance to the current center set to all nodes, after which all nodes agree
on the farthest node (ties to the smaller id).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, sssp
from .kcenter import CenterSolution, DistanceSource, coverage_radius
from .sim import Model, ModelConfig, NodeInput, NodeProgram, SimulationError, run_sync

__all__ = ["CliqueKCenter", "clique_kcenter", "parse_phase1"]


@dataclass
class _State:
    id: int
    n: int
    k: int
    own: list  # incident edges (u, v, w) with u == id < v
    row: np.ndarray | None = None
    vmin: int | None = None
    counts: dict = field(default_factory=dict)
    relay: list = field(default_factory=list)
    known: list = field(default_factory=list)
    relay_rounds: int = 0
    p2_start: int | None = None
    centers: list = field(default_factory=list)
    to_s: int | None = None
    halted_at: int | None = None


class CliqueKCenter(NodeProgram):
    """Node program. ``exact=False`` reads the node's row from ``params["rows"]``.

    ``elect=True`` spends one extra round finding the minimum id instead of
    assuming id 1 exists.
    """

    model = Model.CLIQUE

    def __init__(self, exact: bool = True, elect: bool = False, dist_cap: int | None = None):
        self.exact = exact
        self.elect = elect
        self._cap = dist_cap

    def dist_cap(self, g: Graph) -> int:
        return self._cap if self._cap is not None else super().dist_cap(g)

    def init(self, node: NodeInput):
        own = [(node.id, v, w) for v, w in node.neighbors if v > node.id]
        st = _State(node.id, node.n, int(node.params["k"]), own)
        if not self.exact:
            st.row = np.asarray(node.params["rows"][node.id])
        return st

    def output(self, st: _State):
        return {
            "is_center": st.id in st.centers,
            "centers": list(st.centers),
            "dist": st.to_s,
            "phase2_start": st.p2_start,
            "halted_at": st.halted_at,
        }

    def on_round(self, st: _State, rnd: int, inbox: list):
        out: list = []
        others = [v for v in range(1, st.n + 1) if v != st.id]
        r = rnd
        if self.elect:
            if rnd == 1:
                out += [(v, (("id", st.id),)) for v in others]
                return st, out, False
            if rnd == 2:
                st.vmin = min([st.id] + [m[0][1] for _, m in inbox])
                inbox = []
            r = rnd - 1
        else:
            st.vmin = 1

        if st.p2_start is None:
            if self.exact:
                done = self._broadcast(st, r, rnd, inbox, out, others)
                if not done:
                    return st, out, False
                inbox = []
            st.p2_start = rnd
            st.centers = [st.vmin]

        return self._greedy(st, rnd, inbox, out, others)

    def _broadcast(self, st, r, rnd, inbox, out, others) -> bool:
        if r == 1:
            out += [(v, (("count", len(st.own)),)) for v in others]
            return False
        if r == 2:
            st.counts = {u: m[0][1] for u, m in inbox}
            st.counts[st.id] = len(st.own)
            offset = sum(c for u, c in st.counts.items() if u < st.id)
            total = sum(st.counts.values())
            st.relay_rounds = math.ceil(total / st.n)
            for j, (u, v, w) in enumerate(st.own):
                dest = (offset + j) % st.n + 1
                if dest == st.id:
                    st.relay.append((u, v, w))
                else:
                    out.append((dest, (("id", u), ("id", v), ("dist", w))))
            st.known = list(st.own)
            return False
        if r == 3:
            st.relay += [(m[0][1], m[1][1], m[2][1]) for _, m in inbox]
            st.relay.sort()
        else:
            st.known += [(m[0][1], m[1][1], m[2][1]) for _, m in inbox]
        i = r - 3
        if i < st.relay_rounds:
            if i < len(st.relay):
                u, v, w = st.relay[i]
                st.known.append((u, v, w))
                out += [(x, (("id", u), ("id", v), ("dist", w))) for x in others]
            return False
        # every record has arrived
        g = Graph(st.n, sorted(set(st.known)), weighted=True)
        st.row = sssp(g, st.id)
        return True

    def _greedy(self, st, rnd, inbox, out, others):
        dists = {u: m[0][1] for u, m in inbox}
        if dists:
            dists[st.id] = st.to_s
            far = max(dists.values())
            v_star = min(u for u, d in dists.items() if d == far)
            if v_star not in st.centers:
                st.centers.append(v_star)
        st.to_s = int(min(st.row[s - 1] for s in st.centers))
        if rnd - st.p2_start < st.k - 1:
            out += [(v, (("dist", st.to_s),)) for v in others]
            return st, out, False
        st.halted_at = rnd
        return st, out, True


def parse_phase1(spec: str) -> tuple[str, Fraction | None, int | None]:
    """``"exact"`` or ``"inject:ALPHA:SEED"`` -> (mode, alpha, seed)."""
    if spec == "exact":
        return "exact", None, None
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "inject":
        raise ValueError(f"phase1 must be 'exact' or 'inject:ALPHA:SEED', got {spec!r}")
    return "inject", Fraction(parts[1]), int(parts[2])


def clique_kcenter(g: Graph, k: int, phase1: str | DistanceSource = "exact", *,
                   elect: bool = False, cfg: ModelConfig | None = None,
                   max_rounds: int | None = None, trace=None):
    """Run the CLIQUE program; returns ``(CenterSolution, SimStats)``.

    ``phase1`` is ``"exact"`` (in-model edge broadcast) or a
    :class:`DistanceSource` handed to the nodes row by row. ``stats.extra``
    records ``phase1_rounds`` (rounds before the greedy starts, including the
    election round if any) and ``phase2_rounds`` (rounds carrying greedy
    traffic, always ``k - 1``).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    g.require_connected()
    cfg = cfg or ModelConfig(Model.CLIQUE)
    if cfg.model is not Model.CLIQUE:
        raise ValueError("clique_kcenter needs a CLIQUE model config")
    params = {"k": k}
    if isinstance(phase1, DistanceSource):
        if phase1.n != g.n:
            raise ValueError("distance source does not match the graph")
        params["rows"] = {v: phase1.row(v) for v in g.nodes}
        cap = max(int(phase1.matrix.max()), g.n * g.max_weight)
        prog = CliqueKCenter(exact=False, elect=elect, dist_cap=cap)
    elif phase1 == "exact":
        prog = CliqueKCenter(exact=True, elect=elect)
    else:
        raise ValueError(f"unknown phase1 {phase1!r}")
    if max_rounds is None:
        max_rounds = g.m // g.n + k + 16
    outs, stats = run_sync(g, prog, cfg, max_rounds, params=params, trace=trace)
    order = outs[1]["centers"]
    if any(o["centers"] != order for o in outs.values()):
        raise SimulationError("nodes disagree on the center set")
    o1 = outs[1]
    stats.extra["phase1_rounds"] = o1["phase2_start"] - 1
    stats.extra["phase2_rounds"] = o1["halted_at"] - o1["phase2_start"]
    return CenterSolution(tuple(order), coverage_radius(g, order)), stats
