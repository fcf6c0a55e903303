"""Farthest-first k-center as a CONGEST node program.

Phase A elects the minimum id by competing BFS floods: a node only keeps
forwarding the smallest source it has seen, so only the minimum-id flood is
never paused. Every node answers every flood of its current source (a JOIN to
its parent, its own FLOOD to everybody else), which lets leaves detect that
their branch is finished and report the subtree depth up the tree. The
surviving root learns the depth ``D'`` of its tree and sends it back down;
from then on every node runs on a shared clock with window ``L = 2 * D'``
(enough, since ``D <= 2 * D'``).

Phase B runs ``k - 1`` iterations of ``2 * L`` rounds each:

* rounds ``0 .. L-1``: multi-source BFS from the current center set;
* rounds ``L .. 2L-1``: every node floods the (max distance, min id) pair it
  knows of, so after ``L >= D`` hops every node knows the farthest node
  ``v*``, which joins the center set at the start of the next iteration.

A last BFS window gives every node its distance to the final center set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError
from .kcenter import CenterSolution, coverage_radius
from .sim import Model, ModelConfig, NodeInput, NodeProgram, SimulationError, run_sync

__all__ = ["CongestKCenter", "congest_kcenter", "ROUND_CONSTANT"]

# rounds <= ROUND_CONSTANT * k * max(D, 1) on every graph
ROUND_CONSTANT = 10

FLOOD, JOIN, DONE, DEPTH, BFS, MAX = range(1, 7)


@dataclass
class _State:
    id: int
    n: int
    k: int
    nbrs: tuple
    # phase A
    best: int = 0
    parent: int | None = None
    dist: int = 0
    pending: set = field(default_factory=set)
    children: set = field(default_factory=set)
    done: dict = field(default_factory=dict)
    reported: bool = False
    depth: int | None = None  # D'
    start_b: int | None = None  # first round of phase B
    # phase B
    centers: list = field(default_factory=list)
    to_s: int | None = None
    cand: tuple | None = None  # (dist, id)
    halted_at: int | None = None


class CongestKCenter(NodeProgram):
    """Node program; ``k`` is read from ``params["k"]``."""

    model = Model.CONGEST

    def init(self, node: NodeInput):
        st = _State(node.id, node.n, int(node.params["k"]), node.neighbor_ids)
        st.best = node.id
        st.pending = set(node.neighbor_ids)
        return st

    def output(self, st: _State):
        return {
            "is_center": st.id in st.centers,
            "centers": list(st.centers),
            "dist": st.to_s,
            "tree_depth": st.depth,
            "phase_b_start": st.start_b,
            "halted_at": st.halted_at,
        }

    def on_round(self, st: _State, rnd: int, inbox: list):
        out: list = []
        if st.start_b is None or rnd < st.start_b:
            self._phase_a(st, rnd, inbox, out)
            return st, out, False
        return self._phase_b(st, rnd, inbox, out)

    # -- phase A: election, termination reports, depth dissemination ---------

    def _phase_a(self, st: _State, rnd: int, inbox: list, out: list):
        if rnd == 1:
            for u in st.nbrs:
                out.append((u, (("op", FLOOD), ("id", st.id), ("dist", 0))))
        floods = [(m[1][1], m[2][1], u) for u, m in inbox if m[0][1] == FLOOD]
        if floods:
            s_min = min(s for s, _, _ in floods)
            if s_min < st.best:
                senders = sorted((u, d) for s, d, u in floods if s == s_min)
                st.best = s_min
                st.parent, pd = senders[0]
                st.dist = pd + 1
                st.children = set()
                st.done = {}
                st.reported = False
                st.pending = set(st.nbrs) - {st.parent}
                out.append((st.parent, (("op", JOIN), ("id", st.best))))
                for u in sorted(st.pending):
                    out.append((u, (("op", FLOOD), ("id", st.best), ("dist", st.dist))))
        for u, m in inbox:
            op = m[0][1]
            if op == FLOOD and m[1][1] == st.best and u != st.parent:
                st.pending.discard(u)
            elif op == JOIN and m[1][1] == st.best:
                st.children.add(u)
                st.pending.discard(u)
            elif op == DONE and m[1][1] == st.best:
                # a DONE also stands in for the JOIN of a child that finished at once
                st.children.add(u)
                st.pending.discard(u)
                st.done[u] = m[2][1]
            elif op == DEPTH and u == st.parent:
                st.depth = m[1][1]
                self._schedule(st, rnd - st.dist)
                for c in sorted(st.children):
                    out.append((c, (("op", DEPTH), ("dist", st.depth))))
        if (not st.reported and st.depth is None and not st.pending
                and set(st.done) == st.children):
            depth = max([st.dist, *st.done.values()])
            st.reported = True
            if st.parent is None:
                st.depth = depth
                self._schedule(st, rnd)
                for c in sorted(st.children):
                    out.append((c, (("op", DEPTH), ("dist", depth))))
            else:
                join = (st.parent, (("op", JOIN), ("id", st.best)))
                if join in out:
                    out.remove(join)
                out.append((st.parent, (("op", DONE), ("id", st.best), ("dist", depth))))

    @staticmethod
    def _schedule(st: _State, root_round: int):
        # the depth message leaves the root at root_round and needs D' hops
        st.start_b = root_round + st.depth + 1
        st.centers = [st.best]

    # -- phase B: k-1 greedy iterations plus a final BFS ---------------------

    def _phase_b(self, st: _State, rnd: int, inbox: list, out: list):
        window = 2 * max(st.depth, 1)
        rel = rnd - st.start_b
        it, off = divmod(rel, 2 * window)
        last = st.k - 1  # index of the final BFS-only window

        bfs_in = [m[1][1] for _, m in inbox if m[0][1] == BFS]
        improved = False
        for _, m in inbox:
            if m[0][1] == MAX:
                c = (m[1][1], m[2][1])
                if st.cand is None or c[0] > st.cand[0] or (c[0] == st.cand[0] and c[1] < st.cand[1]):
                    st.cand = c
                    improved = True

        if off == 0:
            if it >= 1:
                v_star = st.cand[1]
                if v_star not in st.centers:
                    st.centers.append(v_star)
            st.cand = None
            st.to_s = None
            if st.id in st.centers:
                st.to_s = 0
                for u in st.nbrs:
                    out.append((u, (("op", BFS), ("dist", 0))))
            return st, out, False

        if off <= window and bfs_in and st.to_s is None:
            st.to_s = min(bfs_in) + 1
            if off < window:
                senders = {u for u, m in inbox if m[0][1] == BFS}
                for u in st.nbrs:
                    if u not in senders:
                        out.append((u, (("op", BFS), ("dist", st.to_s))))
        if it == last:
            if off == window:
                st.halted_at = rnd
                return st, out, True
            return st, out, False
        if off < window:
            return st, out, False

        # off in [window, 2*window): flood (max dist, min id)
        if off == window:
            mine = (st.to_s, st.id)
            if st.cand is None or mine[0] > st.cand[0] or (mine[0] == st.cand[0] and mine[1] < st.cand[1]):
                st.cand = mine
            improved = True
        if improved:
            for u in st.nbrs:
                out.append((u, (("op", MAX), ("dist", st.cand[0]), ("id", st.cand[1]))))
        return st, out, False


def congest_kcenter(g: Graph, k: int, *, cfg: ModelConfig | None = None,
                    max_rounds: int | None = None, trace=None):
    """Run the CONGEST program on ``g``; returns ``(CenterSolution, SimStats)``.

    Centers are listed in selection order. The solution's radius is the true
    coverage radius and equals the largest distance-to-centers any node
    learned.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if g.weighted:
        raise GraphError("the CONGEST program handles unweighted graphs only")
    g.require_connected()
    cfg = cfg or ModelConfig(Model.CONGEST)
    if cfg.model is not Model.CONGEST:
        raise ValueError("congest_kcenter needs a CONGEST model config")
    if max_rounds is None:
        max_rounds = 4 * ROUND_CONSTANT * k * g.n + 16
    outs, stats = run_sync(g, CongestKCenter(), cfg, max_rounds, params={"k": k}, trace=trace)
    order = outs[1]["centers"]
    if any(o["centers"] != order for o in outs.values()):
        raise SimulationError("nodes disagree on the center set")
    flagged = sorted(v for v, o in outs.items() if o["is_center"])
    if flagged != sorted(order):
        raise SimulationError("center flags do not match the agreed center set")
    radius = coverage_radius(g, order)
    if max(o["dist"] for o in outs.values()) != radius:
        raise SimulationError("learned distances disagree with the coverage radius")
    return CenterSolution(tuple(order), radius), stats
