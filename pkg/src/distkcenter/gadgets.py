"""Disjointness gadget graphs for the 1-center and k-center lower bounds.

Given bit strings ``x, y`` of length ``ell`` (a power of two), the gadget has
node sets ``A = {a^i}``, ``B = {b^i}``, bit-encoding sets ``F_A, T_A, F_B, T_B``
of ``log2(ell)`` nodes each, a 4-node path through ``c_A, cbar_A, cbar_B, c_B``
and a tail ``w^0 - w^1 - w^2`` hanging off ``A``. Node ``a^i`` is wired to the
``F``/``T`` nodes spelling ``i`` in binary, and to ``cbar_A`` iff ``x[i] = 1``
(likewise ``b^i``, ``cbar_B`` and ``y``). The point of the wiring: some node
has eccentricity 3 iff the strings intersect, otherwise the best is 4.

The k-copy version glues ``k`` gadgets at their ``w^2`` node.

Node ids are assigned by role, copy by copy:
``A, B, F_A, T_A, F_B, T_B, c_A, cbar_A, c_B, cbar_B, w^0, w^1`` followed by
the single shared ``w^2`` with the last id.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import random
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, format_graph, read_graph, write_graph
from .kcenter import ORACLE_WORK_LIMIT, OracleLimitError, opt_k_bruteforce

__all__ = [
    "DisjointnessInstance",
    "GadgetGraph",
    "GadgetVariant",
    "GadgetError",
    "DEFAULT_VARIANT",
    "C_PATH_CHOICES",
    "SIDECAR_FORMAT",
    "build_gxy",
    "build_gkxy",
    "gadget_size",
    "verify_claim1",
    "verify_lemma4",
    "verify_claim2",
    "all_instances",
    "random_instances",
    "write_gadget",
    "read_gadget",
]

SIDECAR_FORMAT = "distkcenter-gadget/1"

# How the four path nodes are chained. "cbar-cbar" is c_A - cbar_A - cbar_B - c_B;
# "cbar-c" is c_A - cbar_A - c_B - cbar_B.
C_PATH_CHOICES = ("cbar-cbar", "cbar-c")


@dataclass(frozen=True)
class DisjointnessInstance:
    """Two ``ell``-bit strings, written as ``'0'``/``'1'`` text, index 0 first."""

    ell: int
    x: str
    y: str

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError(f"ell must be >= 2, got {self.ell}")
        for name, s in (("x", self.x), ("y", self.y)):
            if len(s) != self.ell or set(s) - {"0", "1"}:
                raise ValueError(f"{name} must be a {self.ell}-character 0/1 string, got {s!r}")

    @property
    def intersection(self) -> list[int]:
        return [i for i in range(self.ell) if self.x[i] == self.y[i] == "1"]

    @property
    def disjoint(self) -> bool:
        return not self.intersection


@dataclass(frozen=True)
class GadgetVariant:
    """Construction switches for the two ambiguous parts of the wiring.

    ``ft_edge`` adds the edges ``f_A^h - t_A^h`` next to the cross edges
    ``f_A^h - t_B^h`` and ``t_A^h - f_B^h``; ``c_path`` picks the path wiring.
    """

    ft_edge: bool = True
    c_path: str = "cbar-cbar"

    def __post_init__(self):
        if self.c_path not in C_PATH_CHOICES:
            raise ValueError(f"c_path must be one of {C_PATH_CHOICES}, got {self.c_path!r}")

    def to_dict(self):
        return {"ft_edge": self.ft_edge, "c_path": self.c_path}


# the only combination that passes both verifiers on all 256 inputs at ell = 4
DEFAULT_VARIANT = GadgetVariant(ft_edge=True, c_path="cbar-cbar")


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    inst: DisjointnessInstance
    copies: int
    variant: GadgetVariant
    roles: dict = field(repr=False)  # id -> role name, e.g. "a^2", "f_A^0", "cbar_B"
    copy_of: dict = field(repr=False)  # id -> copy index, None for the shared w^2

    def node(self, role: str, copy: int = 0) -> int:
        """Id of the node with ``role`` in ``copy`` (``w^2`` ignores ``copy``)."""
        for v, r in self.roles.items():
            if r == role and (role == "w^2" or self.copy_of[v] == copy):
                return v
        raise KeyError(f"no node {role!r} in copy {copy}")

    def nodes_with(self, prefix: str, copy: int = 0) -> list[int]:
        return sorted(v for v, r in self.roles.items()
                      if r.startswith(prefix) and self.copy_of[v] == copy)

    def with_graph(self, g: Graph) -> "GadgetGraph":
        """Same labels on a different edge set (for negative controls)."""
        if g.n != self.graph.n:
            raise ValueError("node count must not change")
        return GadgetGraph(g, self.inst, self.copies, self.variant, self.roles, self.copy_of)

    def sidecar(self) -> dict:
        return {
            "format": SIDECAR_FORMAT,
            "ell": self.inst.ell,
            "x": self.inst.x,
            "y": self.inst.y,
            "copies": self.copies,
            "variant": self.variant.to_dict(),
            "n": self.graph.n,
            "roles": {str(v): self.roles[v] for v in sorted(self.roles)},
            "copy": {str(v): self.copy_of[v] for v in sorted(self.copy_of)},
        }


def gadget_size(ell: int) -> int:
    """Nodes in one copy: ``2 ell + 4 log2(ell) + 7``."""
    return 2 * ell + 4 * int(math.log2(ell)) + 7


def _role_list(ell: int) -> list[str]:
    L = int(math.log2(ell))
    roles = [f"a^{i}" for i in range(ell)] + [f"b^{i}" for i in range(ell)]
    for s in ("f_A", "t_A", "f_B", "t_B"):
        roles += [f"{s}^{h}" for h in range(L)]
    return roles + ["c_A", "cbar_A", "c_B", "cbar_B", "w^0", "w^1", "w^2"]


def _copy_edges(inst: DisjointnessInstance, var: GadgetVariant, ident) -> list[tuple[int, int]]:
    ell, L = inst.ell, int(math.log2(inst.ell))
    a = [ident(f"a^{i}") for i in range(ell)]
    b = [ident(f"b^{i}") for i in range(ell)]
    fa, ta, fb, tb = ([ident(f"{s}^{h}") for h in range(L)] for s in ("f_A", "t_A", "f_B", "t_B"))
    cA, cbA, cB, cbB = (ident(r) for r in ("c_A", "cbar_A", "c_B", "cbar_B"))
    w0, w1, w2 = (ident(r) for r in ("w^0", "w^1", "w^2"))

    E = []
    for i in range(ell):
        for h in range(L):
            bit = (i >> h) & 1
            E.append((a[i], ta[h] if bit else fa[h]))
            E.append((b[i], tb[h] if bit else fb[h]))
        if inst.x[i] == "1":
            E.append((a[i], cbA))
        if inst.y[i] == "1":
            E.append((b[i], cbB))
        E += [(cA, a[i]), (cB, b[i]), (w0, a[i])]
    E += [(cbA, u) for u in fa + ta] + [(cbB, u) for u in fb + tb]
    for h in range(L):
        E += [(fa[h], tb[h]), (ta[h], fb[h])]
        if var.ft_edge:
            E.append((fa[h], ta[h]))
    if var.c_path == "cbar-cbar":
        E += [(cA, cbA), (cbA, cbB), (cbB, cB)]
    else:
        E += [(cA, cbA), (cbA, cB), (cB, cbB)]
    E += [(w0, w1), (w1, w2)]
    return E


def build_gkxy(inst: DisjointnessInstance, k: int, variant: GadgetVariant = DEFAULT_VARIANT) -> GadgetGraph:
    """``k`` copies of the gadget sharing one ``w^2`` node."""
    ell = inst.ell
    if ell & (ell - 1):
        raise ValueError(f"ell must be a power of two, got {ell}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    roles = _role_list(ell)
    per = len(roles) - 1  # ids per copy, w^2 excluded
    n = k * per + 1
    role_of, copy_of = {n: "w^2"}, {n: None}
    edges = []
    for c in range(k):
        base = c * per
        ids = {r: base + j + 1 for j, r in enumerate(roles[:-1])}
        ids["w^2"] = n
        for r, v in ids.items():
            if r != "w^2":
                role_of[v], copy_of[v] = r, c
        edges += _copy_edges(inst, variant, ids.__getitem__)
    return GadgetGraph(Graph(n, edges, weighted=False), inst, k, variant, role_of, copy_of)


class GadgetError(ValueError):
    """A built gadget fails its distance properties."""


def build_gxy(inst: DisjointnessInstance, variant: GadgetVariant = DEFAULT_VARIANT, *,
              check: bool = True) -> GadgetGraph:
    """Single-copy gadget.

    With ``check`` (the default) and ``ell <= 16`` the distance properties of
    :func:`verify_claim1` are confirmed before returning; pass ``check=False``
    to inspect variants that break them.
    """
    gg = build_gkxy(inst, 1, variant)
    if check and inst.ell <= 16:
        rep = verify_claim1(gg)
        if not rep["ok"]:
            raise GadgetError(f"gadget fails its distance properties: {rep}")
    return gg


# -- verifiers ----------------------------------------------------------------


def verify_claim1(gg: GadgetGraph) -> dict:
    """Check both distance properties on every node of a single-copy gadget.

    Part 1: every node outside ``A`` has eccentricity at least 4.
    Part 2: ``d(a^i, u) <= 3`` for every ``u`` other than ``b^i`` and ``c_B``.
    Each part reports ``ok`` and, on failure, the first witness.
    """
    if gg.copies != 1:
        raise ValueError("verify_claim1 expects a single-copy gadget")
    if gg.inst.ell > 16:
        raise OracleLimitError("verify_claim1 is meant for ell <= 16")
    d = gg.graph.distances()
    ecc = d.max(axis=1)
    A = set(gg.nodes_with("a^"))
    p1 = None
    for v in gg.graph.nodes:
        if v not in A and ecc[v - 1] < 4:
            p1 = {"node": v, "role": gg.roles[v], "ecc": int(ecc[v - 1])}
            break
    p2 = None
    cB = gg.node("c_B")
    for i in range(gg.inst.ell):
        a, skip = gg.node(f"a^{i}"), {gg.node(f"b^{i}"), cB}
        far = [u for u in gg.graph.nodes if u not in skip and d[a - 1, u - 1] > 3]
        if far:
            u = far[0]
            p2 = {"a": a, "role_a": f"a^{i}", "node": u, "role": gg.roles[u], "dist": int(d[a - 1, u - 1])}
            break
    return {
        "ok": p1 is None and p2 is None,
        "part1": {"ok": p1 is None, "witness": p1},
        "part2": {"ok": p2 is None, "witness": p2},
    }


def verify_lemma4(inst: DisjointnessInstance, variant: GadgetVariant = DEFAULT_VARIANT) -> dict:
    """OPT_1 must be 4 when the strings are disjoint and 3 otherwise."""
    if inst.ell > 8:
        raise OracleLimitError("verify_lemma4 is meant for ell <= 8")
    gg = build_gxy(inst, variant, check=False)
    ecc = gg.graph.distances().max(axis=1)
    opt = opt_k_bruteforce(gg.graph, 1).radius
    centers = [int(v) + 1 for v in np.flatnonzero(ecc == opt)]
    expected = 4 if inst.disjoint else 3
    return {
        "ell": inst.ell, "x": inst.x, "y": inst.y,
        "disjoint": inst.disjoint,
        "opt1": opt,
        "expected": expected,
        "ok": opt == expected,
        "optimal_centers": [gg.roles[v] for v in centers],
    }


def verify_claim2(inst: DisjointnessInstance, k: int, variant: GadgetVariant = DEFAULT_VARIANT, *,
                  work_limit: int = ORACLE_WORK_LIMIT) -> dict:
    """Enumerate every k-set with radius below ``1.5 * OPT_k``; each must use
    exactly one center per copy (the shared ``w^2`` belongs to none)."""
    gg = build_gkxy(inst, k, variant)
    g = gg.graph
    if math.comb(g.n, k) > work_limit:
        raise OracleLimitError(f"C({g.n}, {k}) exceeds the work limit")
    d = g.distances()
    opt = opt_k_bruteforce(g, k, work_limit=work_limit).radius
    copy_idx = np.array([-1 if gg.copy_of[v] is None else gg.copy_of[v] for v in g.nodes])
    near, bad = 0, []
    combos = itertools.combinations(range(g.n), k)
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, 1 << 14)), dtype=np.int64)
        if block.size == 0:
            break
        block = block.reshape(-1, k)
        radii = d[block].min(axis=1).max(axis=1)
        keep = 2 * radii < 3 * opt
        near += int(keep.sum())
        for row in block[keep]:
            cp = sorted(copy_idx[row].tolist())
            if cp != list(range(k)):
                bad.append([int(v) + 1 for v in row])
    return {
        "ell": inst.ell, "x": inst.x, "y": inst.y, "k": k,
        "opt_k": opt,
        "near_optimal_sets": near,
        "counterexamples": bad,
        "ok": not bad,
    }


def all_instances(ell: int):
    """Every ``(x, y)`` pair of ``ell``-bit strings, in lexicographic order."""
    for xs in itertools.product("01", repeat=ell):
        for ys in itertools.product("01", repeat=ell):
            yield DisjointnessInstance(ell, "".join(xs), "".join(ys))


def random_instances(ell: int, count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        x = "".join(rng.choice("01") for _ in range(ell))
        y = "".join(rng.choice("01") for _ in range(ell))
        yield DisjointnessInstance(ell, x, y)


# -- files ------------------------------------------------------------------


def write_gadget(gg: GadgetGraph, path: str | os.PathLike) -> str:
    """Write the graph file and a ``<path>.roles.json`` sidecar; returns the sidecar path."""
    write_graph(gg.graph, path)
    side = os.fspath(path) + ".roles.json"
    with open(side, "w", newline="\n") as fh:
        json.dump(gg.sidecar(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return side


def read_gadget(path: str | os.PathLike) -> GadgetGraph:
    g = read_graph(path)
    with open(os.fspath(path) + ".roles.json") as fh:
        meta = json.load(fh)
    if meta.get("format") != SIDECAR_FORMAT:
        raise ValueError(f"unsupported sidecar format {meta.get('format')!r}")
    inst = DisjointnessInstance(meta["ell"], meta["x"], meta["y"])
    gg = build_gkxy(inst, meta["copies"], GadgetVariant(**meta["variant"]))
    if format_graph(gg.graph) != format_graph(g):
        raise ValueError("graph file does not match the construction named in its sidecar")
    return gg
