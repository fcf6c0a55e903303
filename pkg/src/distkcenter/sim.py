"""Synchronous round engine for the LOCAL, CONGEST and CLIQUE models.

A run steps every live node once per round in id order. Messages sent in
round ``r`` sit in the recipient's inbox at round ``r + 1``. Under CONGEST
and CLIQUE every message is serialized with the canonical field encoding
(:func:`message_bits`) and checked against the per-pair budget before it is
delivered.
"""

from __future__ import annotations

import enum
import json
import math
import numbers
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Any, Mapping

from .graph import Graph

__all__ = [
    "Model",
    "ModelConfig",
    "NodeInput",
    "NodeProgram",
    "SimStats",
    "View",
    "SimulationError",
    "BandwidthError",
    "IllegalRecipientError",
    "NonTerminationError",
    "UnencodableFieldError",
    "FIELD_KINDS",
    "TAG_BITS",
    "OP_BITS",
    "field_bits",
    "message_bits",
    "run_sync",
    "local_views",
    "view_of",
    "hop_distances",
]


class Model(str, enum.Enum):
    LOCAL = "local"
    CONGEST = "congest"
    CLIQUE = "clique"


@dataclass(frozen=True)
class ModelConfig:
    """Model plus bandwidth.

    Under CONGEST and CLIQUE one message per ordered pair per round may use
    at most ``kappa * word_bits(n)`` bits, where a word is ``ceil(log2 n)``
    bits but never fewer than ``min_word_bits`` (ids alone need
    ``ceil(log2(n + 1))`` bits, which exceeds ``ceil(log2 n)`` at tiny n).
    """

    model: Model = Model.CONGEST
    kappa: int = 8
    min_word_bits: int = 3

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        if self.kappa < 1:
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    def word_bits(self, n: int) -> int:
        return max(math.ceil(math.log2(n)) if n > 1 else 0, self.min_word_bits)

    def budget_bits(self, n: int) -> int | None:
        if self.model is Model.LOCAL:
            return None
        return self.kappa * self.word_bits(n)


class SimulationError(RuntimeError):
    pass


class BandwidthError(SimulationError):
    def __init__(self, rnd, sender, recipient, bits, budget):
        self.round, self.sender, self.recipient = rnd, sender, recipient
        self.bits, self.budget = bits, budget
        super().__init__(f"round {rnd}: message {sender}->{recipient} has {bits} bits, budget is {budget}")


class IllegalRecipientError(SimulationError):
    def __init__(self, rnd, sender, recipient, model):
        self.round, self.sender, self.recipient = rnd, sender, recipient
        super().__init__(f"round {rnd}: node {sender} cannot send to {recipient} under {model.name}")


class NonTerminationError(SimulationError):
    pass


class UnencodableFieldError(ValueError):
    pass


# -- canonical message encoding ----------------------------------------------
#
# A message is a tuple of (kind, value) fields. Each field costs TAG_BITS for
# the kind plus a fixed-width payload: ids and counters use ceil(log2(n+1))
# bits, distances ceil(log2(dist_cap+1)) bits with dist_cap defaulting to
# n * maxweight, opcodes OP_BITS.

FIELD_KINDS = ("op", "id", "dist", "count")
TAG_BITS = 2
OP_BITS = 4


def _width(cap: int) -> int:
    return max(1, math.ceil(math.log2(cap + 1)))


def field_bits(kind: str, n: int, dist_cap: int | None = None) -> int:
    """Payload width of one field (tag excluded)."""
    if kind == "op":
        return OP_BITS
    if kind in ("id", "count"):
        return _width(n)
    if kind == "dist":
        return _width(n if dist_cap is None else dist_cap)
    raise UnencodableFieldError(f"unknown field kind {kind!r}")


def message_bits(msg, n: int, dist_cap: int | None = None) -> int:
    """Exact encoded size of ``msg`` in bits."""
    if not isinstance(msg, tuple):
        raise UnencodableFieldError(f"message must be a tuple of fields, got {type(msg).__name__}")
    total = 0
    for f in msg:
        if not (isinstance(f, tuple) and len(f) == 2):
            raise UnencodableFieldError(f"field must be a (kind, value) pair, got {f!r}")
        kind, value = f
        width = field_bits(kind, n, dist_cap)
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            raise UnencodableFieldError(f"field {kind} value {value!r} is not an integer")
        if not 0 <= value < (1 << width):
            raise UnencodableFieldError(f"field {kind}={value} does not fit in {width} bits")
        if kind == "id" and not 1 <= value <= n:
            raise UnencodableFieldError(f"node id {value} outside 1..{n}")
        total += TAG_BITS + width
    return total


# -- node programs ----------------------------------------------------------


@dataclass(frozen=True)
class NodeInput:
    """What a node knows before round 1."""

    id: int
    n: int
    neighbors: tuple[tuple[int, int], ...]  # (neighbor id, edge weight), sorted
    params: Mapping[str, Any] = field(default_factory=dict)

    @property
    def neighbor_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.neighbors)


class NodeProgram:
    """Per-node state machine.

    Subclasses implement :meth:`init`, :meth:`on_round` and optionally
    :meth:`output`. ``on_round`` receives the round number and the inbox as
    a list of ``(sender, message)`` sorted by sender, and returns
    ``(state, outbox, halted)`` with ``outbox`` a list of
    ``(recipient, message)``. It must be deterministic.
    """

    model = Model.LOCAL

    def init(self, node: NodeInput):
        raise NotImplementedError

    def on_round(self, state, rnd: int, inbox: list):
        raise NotImplementedError

    def output(self, state):
        return state

    def dist_cap(self, g: Graph) -> int:
        """Largest distance value carried in a ``dist`` field."""
        return g.n * g.max_weight


@dataclass
class SimStats:
    rounds: int = 0
    total_messages: int = 0
    max_message_bits: int = 0
    bits_per_round: list[int] = field(default_factory=list)
    messages_per_round: list[int] = field(default_factory=list)
    extra: dict = field(default_factory=dict)  # algorithm-specific counters

    def to_dict(self) -> dict:
        return asdict(self)


def _open_trace(trace):
    if trace is None:
        return None, False
    if hasattr(trace, "write"):
        return trace, False
    return open(trace, "w", newline="\n"), True


def run_sync(g: Graph, prog: NodeProgram, cfg: ModelConfig, max_rounds: int, *,
             params: Mapping[str, Any] | None = None, trace=None):
    """Run ``prog`` on every node of ``g`` until all halt.

    Returns ``(outputs, stats)`` where ``outputs[v]`` is ``prog.output`` of
    node ``v``'s final state.

    Parameters
    ----------
    trace : path or text stream, optional
        Receives one JSON line per round:
        ``{"round", "messages": [{"from", "to", "bits"}], "halted"}``.

    Raises
    ------
    BandwidthError, IllegalRecipientError
        On the first offending message.
    NonTerminationError
        If some node is still running after ``max_rounds`` rounds.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    n = g.n
    model = cfg.model
    budget = cfg.budget_bits(n)
    cap = prog.dist_cap(g)
    params = dict(params or {})
    adj = [set()] + [set(g.neighbors(v)) for v in g.nodes]
    states = {v: prog.init(NodeInput(v, n, tuple(sorted(g.neighbors(v).items())), params))
              for v in g.nodes}
    halted: set[int] = set()
    inbox: dict[int, list] = {v: [] for v in g.nodes}
    stats = SimStats()
    out, close = _open_trace(trace)
    try:
        for rnd in range(1, max_rounds + 1):
            nxt: dict[int, list] = {v: [] for v in g.nodes}
            rec = []
            round_bits = 0
            for v in g.nodes:
                if v in halted:
                    continue
                state, outbox, done = prog.on_round(states[v], rnd, inbox[v])
                states[v] = state
                sizes: dict[int, int] = {}
                for to, msg in outbox:
                    if to == v or not 1 <= to <= n:
                        raise IllegalRecipientError(rnd, v, to, model)
                    if model is not Model.CLIQUE and to not in adj[v]:
                        raise IllegalRecipientError(rnd, v, to, model)
                    if budget is not None:
                        b = message_bits(msg, n, cap)
                        sizes[to] = sizes.get(to, 0) + b
                        if sizes[to] > budget:
                            raise BandwidthError(rnd, v, to, sizes[to], budget)
                    else:
                        b = None
                    nxt[to].append((v, msg))
                    rec.append({"from": v, "to": to, "bits": b})
                    if b is not None:
                        round_bits += b
                for b in sizes.values():
                    stats.max_message_bits = max(stats.max_message_bits, b)
                if done:
                    halted.add(v)
            stats.rounds = rnd
            stats.total_messages += len(rec)
            stats.messages_per_round.append(len(rec))
            stats.bits_per_round.append(round_bits)
            if out is not None:
                out.write(json.dumps({"round": rnd, "messages": rec, "halted": sorted(halted)}) + "\n")
            if len(halted) == n:
                break
            # late messages to halted nodes are dropped on delivery
            inbox = {v: ([] if v in halted else nxt[v]) for v in g.nodes}
        else:
            live = sorted(set(g.nodes) - halted)
            raise NonTerminationError(f"{len(live)} node(s) still running after {max_rounds} rounds, "
                                      f"first {live[:5]}")
    finally:
        if close:
            out.close()
    return {v: prog.output(states[v]) for v in g.nodes}, stats


# -- local views ------------------------------------------------------------


@dataclass(frozen=True)
class View:
    """Induced labeled subgraph on the nodes within ``t`` hops of ``center``."""

    center: int
    t: int
    nodes: frozenset
    edges: frozenset  # (u, v, w) with u < v

    def to_graph_dict(self) -> dict:
        return {"center": self.center, "t": self.t, "nodes": sorted(self.nodes),
                "edges": sorted(self.edges)}


def hop_distances(g: Graph, src: int, cutoff: int | None = None) -> dict[int, int]:
    """Unweighted BFS distances from ``src``, optionally truncated at ``cutoff``."""
    g._check(src)
    adj = g._adj
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        if cutoff is not None and dist[u] >= cutoff:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def view_of(g: Graph, v: int, t: int) -> View:
    """Distance-``t`` view of a single node (hop distances, any weights)."""
    ball = hop_distances(g, v, t)
    adj = g._adj
    edges = frozenset((u, w, adj[u][w]) for u in ball for w in adj[u] if u < w and w in ball)
    return View(v, t, frozenset(ball), edges)


def local_views(g: Graph, t: int) -> dict[int, View]:
    """Distance-``t`` neighborhood of every node, with original ids."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return {v: view_of(g, v, t) for v in g.nodes}
