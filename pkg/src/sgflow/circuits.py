"""Signed rooted trees, fundamental circuits and their integer vectors.

For a connected unbalanced graph the graph is first switched so that a BFS
spanning tree T is all positive.  The smallest negative edge becomes the root
edge e0; T + e0 holds exactly one circuit C0, which is unbalanced.  Every other
edge e closes a unique signed circuit C_e inside T + e0 + e (a balanced circuit
or a barbell) and carries a vector f_e with f_e(e) = 1, entries +-2 on a
barbell path and +-1 elsewhere on C_e.  C0 carries the vector g, which is only
a flow modulo 2.

Vectors are computed by walking the circuit once (barbell paths twice) and
propagating the value across each vertex so that the two half-edges met there
cancel in the conservation law.  Conservation is then checked explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BalancedGraphError, DisconnectedGraphError, InconsistencyError
from .report import Report
from .sgraph import (
    EdgeSet,
    Orientation,
    SignedGraph,
    bfs_tree,
    canonical_orientation,
    incidence_matrix,
    is_balanced,
    is_connected,
    switch_set,
)

BALANCED = "balanced"
BARBELL = "barbell"


class FundamentalCircuit(NamedTuple):
    edges: EdgeSet
    vector: tuple[int, ...]
    kind: str  # BALANCED or BARBELL
    barbell_path: tuple[int, ...] = ()


@dataclass(frozen=True)
class FundamentalSystem:
    """Everything the flow generators need, all expressed on ``graph``.

    ``graph`` is ``source`` switched at ``switched``; both carry the same flows
    once orientations are transported (see :func:`sgflow.flows.lift_flow`).
    For balanced input ``root_edge`` is None, ``root_vector`` is zero and the
    circuits are ordinary fundamental cycles of T.
    """

    source: SignedGraph
    graph: SignedGraph
    switched: frozenset[int]
    orientation: Orientation
    tree: EdgeSet
    root_edge: int | None
    cotree: tuple[int, ...]
    root_circuit: EdgeSet
    root_vector: tuple[int, ...]
    circuits: dict[int, FundamentalCircuit]

    @property
    def balanced(self) -> bool:
        return self.root_edge is None

    @property
    def negative_edges(self) -> list[int]:
        return self.graph.negative_edges()

    def to_json(self) -> dict:
        G, D = self.graph, self.orientation
        return {
            "switched": sorted(self.switched),
            "signs": ["+" if e.sign > 0 else "-" for e in G.edges],
            "orientation": [D.describe(G, i) for i in range(G.m)],
            "tree": sorted(self.tree),
            "root_edge": self.root_edge,
            "cotree": list(self.cotree),
            "root_circuit": sorted(self.root_circuit),
            "root_vector": list(self.root_vector),
            "circuits": {
                str(e): {
                    "edges": sorted(c.edges),
                    "kind": c.kind,
                    "barbell_path": list(c.barbell_path),
                    "vector": list(c.vector),
                }
                for e, c in self.circuits.items()
            },
        }


# ---------------------------------------------------------------------------
# tree helpers
# ---------------------------------------------------------------------------


class _RootedTree:
    def __init__(self, G: SignedGraph):
        tree, parent_edge, order = bfs_tree(G, 0)
        self.G = G
        self.edges = tree
        self.parent_edge = parent_edge
        self.depth = [0] * G.n
        for y in order[1:]:
            self.depth[y] = self.depth[self.parent(y)] + 1

    def parent(self, y):
        return self.G.edges[self.parent_edge[y]].other(y)

    def path(self, x: int, y: int) -> tuple[list[int], list[int]]:
        """Vertices and edges of the tree path from x to y."""
        left_v, left_e, right_v, right_e = [x], [], [y], []
        a, b = x, y
        while a != b:
            if self.depth[a] >= self.depth[b]:
                left_e.append(self.parent_edge[a])
                a = self.parent(a)
                left_v.append(a)
            else:
                right_e.append(self.parent_edge[b])
                b = self.parent(b)
                right_v.append(b)
        verts = left_v + right_v[-2::-1]
        return verts, left_e + right_e[::-1]


class _Step(NamedTuple):
    edge: int
    start: int  # vertex left
    start_end: int  # 0 = the edge's u-end, 1 = its v-end
    stop: int
    stop_end: int


def _step(G: SignedGraph, e: int, start: int) -> _Step:
    edge = G.edges[e]
    if edge.is_loop:
        return _Step(e, start, 0, start, 1)
    if start == edge.u:
        return _Step(e, edge.u, 0, edge.v, 1)
    return _Step(e, edge.v, 1, edge.u, 0)


def _path_steps(G: SignedGraph, verts: list[int], edges: list[int]) -> list[_Step]:
    return [_step(G, e, x) for x, e in zip(verts, edges)]


def _cycle_steps(G: SignedGraph, start_edge: int, start: int, rest_verts: list[int], rest_edges: list[int]) -> list[_Step]:
    """``start_edge`` leaving ``start``, then the path ``rest`` back to ``start``."""
    first = _step(G, start_edge, start)
    return [first] + _path_steps(G, rest_verts, rest_edges)


def walk_vector(G: SignedGraph, D: Orientation, walk: list[_Step]) -> list[int]:
    """Integer edge vector of a closed walk, normalised so the first step is +1.

    Crossing a vertex, the half-edge we arrive on and the one we leave on must
    cancel in the conservation law, which fixes the next value from the last.
    """
    f = [0] * G.m
    w = 1
    prev_tau = None
    for st in walk:
        leave_tau = D.tau[st.edge][st.start_end]
        if prev_tau is not None:
            w = -prev_tau * leave_tau * w
        f[st.edge] += w
        prev_tau = D.tau[st.edge][st.stop_end]
    # closing the walk must reproduce the starting value
    if walk and -prev_tau * D.tau[walk[0].edge][walk[0].start_end] * w != 1:
        raise InconsistencyError("circuit walk does not close consistently")
    return f


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _normalise(G: SignedGraph):
    if G.n == 0 or not is_connected(G):
        raise DisconnectedGraphError("fundamental systems need a connected graph")
    rt = _RootedTree(G)
    s = [1] * G.n
    for y in sorted(range(1, G.n), key=lambda v: rt.depth[v]):
        s[y] = s[rt.parent(y)] * G.edges[rt.parent_edge[y]].sign
    switched = frozenset(v for v in range(G.n) if s[v] == -1)
    H = switch_set(G, switched)
    # switching keeps endpoints, so the same tree is reused on H
    rt.G = H
    return H, switched, rt


def _ordinary_circuit(H, D, rt, e) -> FundamentalCircuit:
    edge = H.edges[e]
    verts, pedges = rt.path(edge.v, edge.u)
    walk = _cycle_steps(H, e, edge.u, verts, pedges)
    return FundamentalCircuit(EdgeSet([e, *pedges]), tuple(walk_vector(H, D, walk)), BALANCED)


def _rotate_to(walk: list[_Step], e: int) -> list[_Step]:
    k = next(i for i, st in enumerate(walk) if st.edge == e)
    return walk[k:] + walk[:k]


def _negative_circuit(H, D, rt, e, e0) -> FundamentalCircuit:
    a, b = H.edges[e], H.edges[e0]
    pv, pe = rt.path(a.v, a.u)  # cycle e + pe, unbalanced
    qv, qe = rt.path(b.v, b.u)  # cycle e0 + qe = C0, unbalanced
    shared = set(pe) & set(qe)
    if shared:
        # theta: the symmetric difference is a balanced circuit through e and e0
        cedges = (set(pe) ^ set(qe)) | {e, e0}
        walk = _closed_walk(H, cedges, e)
        return FundamentalCircuit(EdgeSet(cedges), tuple(walk_vector(H, D, walk)), BALANCED)

    cyc_e = set(pv)
    cyc_0 = set(qv)
    common = cyc_e & cyc_0
    if common:
        (j,) = common
        link_v, link_e = [j], []
    else:
        # tree path between the two cycles, trimmed to its internally disjoint part
        lv, le = rt.path(pv[0], qv[0])
        last = max(i for i, x in enumerate(lv) if x in cyc_e)
        first = next(i for i in range(last, len(lv)) if lv[i] in cyc_0)
        link_v, link_e = lv[last : first + 1], le[last:first]
    ja, jb = link_v[0], link_v[-1]
    walk = (
        _closed_walk(H, {e, *pe}, None, start=ja)
        + _path_steps(H, link_v, link_e)
        + _closed_walk(H, {e0, *qe}, None, start=jb)
        + _path_steps(H, link_v[::-1], link_e[::-1])
    )
    walk = _rotate_to(walk, e)
    cedges = {e, e0, *pe, *qe, *link_e}
    return FundamentalCircuit(EdgeSet(cedges), tuple(walk_vector(H, D, walk)), BARBELL, tuple(link_e))


def _closed_walk(G: SignedGraph, cedges: set[int], first: int | None, start: int | None = None) -> list[_Step]:
    """Walk once around the circuit formed by ``cedges``.

    Starts with edge ``first`` (from its u-end) or, if None, at vertex ``start``.
    """
    unused = set(cedges)
    if first is None:
        first = min(i for i in unused if start in (G.edges[i].u, G.edges[i].v))
        x = start
    else:
        x = G.edges[first].u
    steps = []
    cur = first
    while True:
        st = _step(G, cur, x)
        steps.append(st)
        unused.discard(cur)
        x = st.stop
        nxt = [i for i in unused if x in (G.edges[i].u, G.edges[i].v)]
        if not nxt:
            break
        cur = min(nxt)
    if unused:
        raise InconsistencyError(f"edges {sorted(cedges)} do not form a single circuit")
    return steps


def _root_circuit(fs_graph: SignedGraph, D: Orientation, rt: _RootedTree, e0: int) -> tuple[EdgeSet, tuple[int, ...]]:
    """C0 and the vector g: e0 extroverted, tree path of C0 directed from the
    smaller endpoint of e0 to the larger one, which becomes the sink."""
    edge = fs_graph.edges[e0]
    x, y = sorted((edge.u, edge.v))
    verts, pedges = rt.path(x, y)
    g = [0] * fs_graph.m
    g[e0] = 1 if D.is_extroverted(e0) else -1
    for st in _path_steps(fs_graph, verts, pedges):
        g[st.edge] = -D.tau[st.edge][st.start_end]
    return EdgeSet([e0, *pedges]), tuple(g)


def build_fundamental_system(G: SignedGraph) -> FundamentalSystem:
    """Signed rooted tree, orientation and all fundamental circuit vectors of a
    connected unbalanced graph."""
    H, switched, rt = _normalise(G)
    negs = H.negative_edges()
    if not negs:
        raise BalancedGraphError("graph is balanced; use build_cycle_system")
    e0 = negs[0]
    D = canonical_orientation(H, e0)
    tree = EdgeSet(rt.edges)
    cotree = tuple(i for i in range(H.m) if i not in tree and i != e0)
    c0, g = _root_circuit(H, D, rt, e0)
    circuits = {}
    for e in cotree:
        if H.edges[e].is_negative:
            circuits[e] = _negative_circuit(H, D, rt, e, e0)
        else:
            circuits[e] = _ordinary_circuit(H, D, rt, e)
    return FundamentalSystem(G, H, switched, D, tree, e0, cotree, c0, g, circuits)


def build_cycle_system(G: SignedGraph) -> FundamentalSystem:
    """Ordinary fundamental cycles of a connected balanced graph, after switching
    it to all-positive."""
    if not is_balanced(G):
        raise ValueError("build_cycle_system needs a balanced graph")
    H, switched, rt = _normalise(G)
    if H.negative_edges():
        raise InconsistencyError("balanced graph kept a negative edge after switching")
    D = canonical_orientation(H)
    tree = EdgeSet(rt.edges)
    cotree = tuple(i for i in range(H.m) if i not in tree)
    circuits = {e: _ordinary_circuit(H, D, rt, e) for e in cotree}
    return FundamentalSystem(G, H, switched, D, tree, None, cotree, EdgeSet(), (0,) * H.m, circuits)


def system_for(G: SignedGraph) -> FundamentalSystem:
    """Fundamental system for unbalanced input, cycle system for balanced input."""
    return build_cycle_system(G) if is_balanced(G) else build_fundamental_system(G)


def root_vector(fs: FundamentalSystem) -> tuple[int, ...]:
    """The vector g of the fundamental root circuit (all zero for balanced systems)."""
    return fs.root_vector


def verify_circuit_vectors(fs: FundamentalSystem) -> Report:
    """Integer conservation of every f_e; conservation mod 2 of g."""
    M = incidence_matrix(fs.graph, fs.orientation)
    failures = []
    for e, c in fs.circuits.items():
        sums = M @ np.asarray(c.vector, dtype=np.int64)
        for v in np.flatnonzero(sums):
            failures.append({"vector": f"f_{e}", "vertex": int(v), "sum": int(sums[v])})
    if not fs.balanced:
        sums = M @ np.asarray(fs.root_vector, dtype=np.int64)
        for v in np.flatnonzero(sums % 2):
            failures.append({"vector": "g", "vertex": int(v), "sum": int(sums[v])})
    return Report("circuit_vectors", not failures, {"circuits": len(fs.circuits)}, failures)
