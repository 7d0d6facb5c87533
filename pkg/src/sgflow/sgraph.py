"""Signed multigraphs: signs, switching, balance, orientations and the
component invariants beta and kappa.

Vertices are ``0..n-1``.  Edges are kept in a tuple and an edge's id is its
position, which doubles as the default linear order on E(G).  Loops and
parallel edges are allowed everywhere.

An orientation is stored per edge as a pair ``(tau_u, tau_v)`` of half-edge
directions at the edge's two ends, +1 meaning the half-edge points into the
vertex.  A positive edge ``u -> v`` is ``(-1, +1)``, an extroverted negative
edge ``(+1, +1)`` and an introverted one ``(-1, -1)``.  With that convention the
net incidence of an edge at a vertex is just the sum of its tau values there.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DisconnectedGraphError, GraphParseError, InvalidGraphError

POSITIVE = 1
NEGATIVE = -1

_SIGN_TOKENS = {"+": POSITIVE, "-": NEGATIVE, "+1": POSITIVE, "-1": NEGATIVE, "1": POSITIVE}

EdgeSet = frozenset
MAX_VERTICES = 10**6


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def is_negative(self) -> bool:
        return self.sign == NEGATIVE

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


def _coerce_sign(s) -> int:
    if s in (POSITIVE, NEGATIVE) and not isinstance(s, bool):
        return s
    if isinstance(s, str) and s in _SIGN_TOKENS:
        return _SIGN_TOKENS[s]
    raise InvalidGraphError(f"unknown sign {s!r}")


@dataclass(frozen=True)
class SignedGraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        edges = tuple(self.edges)
        for i, e in enumerate(edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InvalidGraphError(f"edge {i} has an endpoint outside 0..{self.n - 1}")
            if e.sign not in (POSITIVE, NEGATIVE):
                raise InvalidGraphError(f"edge {i} has sign {e.sign!r}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "SignedGraph":
        """Build from ``(u, v)`` or ``(u, v, sign)`` items; sign may be ``'+'``/``'-'`` or +-1."""
        out = []
        for item in edges:
            if len(item) == 2:
                u, v = item
                s = POSITIVE
            else:
                u, v, s = item
            out.append(Edge(int(u), int(v), _coerce_sign(s)))
        return cls(n, tuple(out))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident with each vertex; a loop is listed once."""
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            inc[e.u].append(i)
            if not e.is_loop:
                inc[e.v].append(i)
        return tuple(tuple(x) for x in inc)

    def negative_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.is_negative]

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        return SignedGraph(self.n, tuple(Edge(e.u, e.v, s) for e, s in zip(self.edges, signs)))

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"e {e.u} {e.v} {'+' if e.sign == POSITIVE else '-'}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        body = ", ".join(f"{e.u}{'+' if e.sign > 0 else '-'}{e.v}" for e in self.edges)
        return f"SignedGraph(n={self.n}: {body})"


def parse_graph(text: str) -> SignedGraph:
    """Parse the line format ``n <count>`` followed by ``e <u> <v> <+|->`` lines.

    ``#`` starts a comment; blank lines are ignored.  Edge ids follow file order.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if n is not None:
                raise GraphParseError("duplicate 'n' line", lineno)
            if len(tok) != 2:
                raise GraphParseError("expected 'n <count>'", lineno)
            try:
                n = int(tok[1])
            except ValueError:
                raise GraphParseError(f"bad vertex count {tok[1]!r}", lineno) from None
            if not 0 <= n <= MAX_VERTICES:
                raise GraphParseError(f"vertex count must be in 0..{MAX_VERTICES}", lineno)
        elif tok[0] == "e":
            if n is None:
                raise GraphParseError("edge before 'n' line", lineno)
            if len(tok) != 4:
                raise GraphParseError("expected 'e <u> <v> <+|->'", lineno)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise GraphParseError("vertex ids must be integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"vertex index out of range 0..{n - 1}", lineno)
            if tok[3] not in ("+", "-"):
                raise GraphParseError(f"unknown sign {tok[3]!r}", lineno)
            edges.append(Edge(u, v, POSITIVE if tok[3] == "+" else NEGATIVE))
        else:
            raise GraphParseError(f"unknown record {tok[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'n' line")
    return SignedGraph(n, tuple(edges))


def read_graph(path) -> SignedGraph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# components and balance
# ---------------------------------------------------------------------------


class Component(NamedTuple):
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def components(G: SignedGraph) -> list[Component]:
    """Connected components of the underlying multigraph, ordered by least vertex."""
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        verts, eids = [s], set()
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for i in G.incident[x]:
                eids.add(i)
                y = G.edges[i].other(x)
                if not seen[y]:
                    seen[y] = True
                    verts.append(y)
                    queue.append(y)
        out.append(Component(tuple(sorted(verts)), tuple(sorted(eids))))
    return out


def induced_subgraph(G: SignedGraph, vertices: Iterable[int]) -> tuple[SignedGraph, list[int], list[int]]:
    """``G[X]`` relabelled to ``0..|X|-1``; also returns the vertex and edge id maps."""
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    eids = [i for i, e in enumerate(G.edges) if e.u in pos and e.v in pos]
    sub = SignedGraph(len(vs), tuple(Edge(pos[G.edges[i].u], pos[G.edges[i].v], G.edges[i].sign) for i in eids))
    return sub, vs, eids


class _ParityForest:
    """Union-find that tracks, per vertex, the parity of negative edges on a
    path to its root and, per root, whether the class contains an unbalanced
    circuit."""

    __slots__ = ("parent", "parity", "unbalanced")

    def __init__(self, n):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.unbalanced = [False] * n

    def find(self, x):
        parent, parity = self.parent, self.parity
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        # path compression, accumulating parity from the root outwards
        acc = 0
        for y in reversed(path):
            acc ^= parity[y]
            parity[y] = acc
            parent[y] = x
        return x

    def add_edge(self, u, v, negative):
        ru, rv = self.find(u), self.find(v)
        p = self.parity[u] ^ self.parity[v] ^ (1 if negative else 0)
        if ru == rv:
            if p:
                self.unbalanced[ru] = True
            return
        self.parent[rv] = ru
        self.parity[rv] = p
        self.unbalanced[ru] = self.unbalanced[ru] or self.unbalanced[rv]


def balance_profile(G: SignedGraph, edge_ids: Iterable[int] | None = None) -> tuple[int, int]:
    """``(balanced, unbalanced)`` component counts of the spanning subgraph
    ``(V(G), edge_ids)``; all edges when ``edge_ids`` is None."""
    uf = _ParityForest(G.n)
    ids = range(G.m) if edge_ids is None else edge_ids
    for i in ids:
        e = G.edges[i]
        uf.add_edge(e.u, e.v, e.sign == NEGATIVE)
    bal = unb = 0
    for x in range(G.n):
        if uf.find(x) == x:
            if uf.unbalanced[x]:
                unb += 1
            else:
                bal += 1
    return bal, unb


def is_balanced(G: SignedGraph, edge_ids: Iterable[int] | None = None) -> bool:
    """True iff no circuit (loops included) carries an odd number of negative edges."""
    return balance_profile(G, edge_ids)[1] == 0


def beta(G: SignedGraph) -> int:
    """Sum over components of m - n, plus one for every balanced component."""
    bal, _ = balance_profile(G)
    return G.m - G.n + bal


def kappa(G: SignedGraph) -> int:
    """Number of unbalanced components."""
    return balance_profile(G)[1]


def beta_after_deleting(G: SignedGraph, removed: Iterable[int]) -> int:
    """beta(G - F) without materialising G - F."""
    removed = set(removed)
    kept = [i for i in range(G.m) if i not in removed]
    bal, _ = balance_profile(G, kept)
    return len(kept) - G.n + bal


def is_connected(G: SignedGraph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


# ---------------------------------------------------------------------------
# switching and edge deletion
# ---------------------------------------------------------------------------


def switch_set(G: SignedGraph, S: Iterable[int]) -> SignedGraph:
    """Switch at every vertex of ``S``; an edge flips iff exactly one end is in S."""
    S = set(S)
    for v in S:
        if not 0 <= v < G.n:
            raise InvalidGraphError(f"vertex {v} out of range")
    return SignedGraph(
        G.n, tuple(Edge(e.u, e.v, -e.sign if (e.u in S) != (e.v in S) else e.sign) for e in G.edges)
    )


def switch_at(G: SignedGraph, v: int) -> SignedGraph:
    return switch_set(G, (v,))


def bfs_tree(G: SignedGraph, root: int = 0) -> tuple[list[int], list[int | None], list[int]]:
    """Spanning tree of the component of ``root``.

    Vertices are scanned in BFS order; at each vertex incident edges are tried
    positive first, then by increasing id.  Returns the tree edge ids, the
    parent edge of each vertex (None for the root and unreached vertices) and
    the vertices in discovery order.
    """
    parent_edge: list[int | None] = [None] * G.n
    seen = [False] * G.n
    seen[root] = True
    tree, order = [], [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for i in sorted(G.incident[x], key=lambda i: (G.edges[i].is_negative, i)):
            y = G.edges[i].other(x)
            if not seen[y]:
                seen[y] = True
                parent_edge[y] = i
                tree.append(i)
                order.append(y)
                queue.append(y)
    return tree, parent_edge, order


def positive_tree_switching(G: SignedGraph) -> tuple[EdgeSet, frozenset[int]]:
    """Spanning tree of a connected graph and the vertex set whose switching
    makes every tree edge positive."""
    if not is_connected(G):
        raise DisconnectedGraphError("a spanning tree needs a connected graph")
    if G.n == 0:
        return EdgeSet(), frozenset()
    tree, parent_edge, order = bfs_tree(G, 0)
    # s(v) = product of the signs on the tree path from the root
    s = [1] * G.n
    for y in order[1:]:
        e = G.edges[parent_edge[y]]
        s[y] = s[e.other(y)] * e.sign
    return EdgeSet(tree), frozenset(v for v in range(G.n) if s[v] == -1)


def normalize_positive_tree(G: SignedGraph) -> tuple[SignedGraph, EdgeSet]:
    """Switching-equivalent copy of G in which a BFS spanning tree is all positive."""
    tree, switched = positive_tree_switching(G)
    return switch_set(G, switched), tree


def delete_edges(G: SignedGraph, F: Iterable[int]) -> tuple[SignedGraph, tuple[int, ...]]:
    """``G - F`` on the same vertices, with the map new edge id -> old edge id."""
    F = set(F)
    for i in F:
        if not 0 <= i < G.m:
            raise InvalidGraphError(f"edge id {i} out of range")
    keep = tuple(i for i in range(G.m) if i not in F)
    return SignedGraph(G.n, tuple(G.edges[i] for i in keep)), keep


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    edges, off = [], 0
    for H in graphs:
        edges += [Edge(e.u + off, e.v + off, e.sign) for e in H.edges]
        off += H.n
    return SignedGraph(off, tuple(edges))


# ---------------------------------------------------------------------------
# orientations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Half-edge directions ``(tau at u, tau at v)`` per edge; +1 = into the vertex."""

    tau: tuple[tuple[int, int], ...]

    def is_extroverted(self, e: int) -> bool:
        return self.tau[e] == (1, 1)

    def is_introverted(self, e: int) -> bool:
        return self.tau[e] == (-1, -1)

    def direction(self, G: SignedGraph, e: int) -> tuple[int, int]:
        """(tail, head) of a positive edge."""
        edge = G.edges[e]
        return (edge.u, edge.v) if self.tau[e] == (-1, 1) else (edge.v, edge.u)

    def reversed(self, e: int) -> "Orientation":
        """Reverse both half-edges of edge ``e``."""
        tau = list(self.tau)
        a, b = tau[e]
        tau[e] = (-a, -b)
        return Orientation(tuple(tau))

    def switched(self, G: SignedGraph, S: Iterable[int]) -> "Orientation":
        """The orientation of ``switch_set(G, S)`` carrying exactly the same flows."""
        S = set(S)
        return Orientation(
            tuple(
                (-a if e.u in S else a, -b if e.v in S else b) for e, (a, b) in zip(G.edges, self.tau)
            )
        )

    def describe(self, G: SignedGraph, e: int):
        edge = G.edges[e]
        if edge.is_negative:
            return "extroverted" if self.is_extroverted(e) else "introverted"
        return list(self.direction(G, e))

    def check(self, G: SignedGraph) -> None:
        if len(self.tau) != G.m:
            raise InvalidGraphError("orientation does not cover every edge")
        for i, (e, (a, b)) in enumerate(zip(G.edges, self.tau)):
            if a not in (1, -1) or b not in (1, -1):
                raise InvalidGraphError(f"edge {i}: half-edge directions must be +-1")
            if e.is_negative and a != b:
                raise InvalidGraphError(f"negative edge {i} must be extro- or introverted")
            if not e.is_negative and a == b:
                raise InvalidGraphError(f"positive edge {i} must be directed")


def canonical_orientation(G: SignedGraph, root_edge: int | None = None) -> Orientation:
    """Positive edges run from the lower to the higher endpoint (loops u -> u);
    the root negative edge is extroverted and all other negative edges are
    introverted."""
    if root_edge is not None:
        if not 0 <= root_edge < G.m:
            raise InvalidGraphError(f"root edge {root_edge} out of range")
        if not G.edges[root_edge].is_negative:
            raise InvalidGraphError(f"root edge {root_edge} is positive")
    tau = []
    for i, e in enumerate(G.edges):
        if e.is_negative:
            tau.append((1, 1) if i == root_edge else (-1, -1))
        elif e.u <= e.v:
            tau.append((-1, 1))
        else:
            tau.append((1, -1))
    return Orientation(tuple(tau))


def default_orientation(G: SignedGraph) -> Orientation:
    """Canonical orientation rooted at the smallest-id negative edge, if any."""
    neg = G.negative_edges()
    return canonical_orientation(G, neg[0] if neg else None)


def incidence_coefficient(G: SignedGraph, D: Orientation, v: int, e: int) -> int:
    """Net coefficient of edge ``e`` in the conservation law at ``v``.

    Conservation reads ``sum_e eta(v, e) f(e) = 0``: +1 for every half-edge of
    ``e`` pointing into ``v``, -1 for every one pointing away.
    """
    edge = G.edges[e]
    a, b = D.tau[e]
    return (a if edge.u == v else 0) + (b if edge.v == v else 0)


def incidence_matrix(G: SignedGraph, D: Orientation) -> np.ndarray:
    """The ``n x m`` integer matrix of :func:`incidence_coefficient` values."""
    M = np.zeros((G.n, G.m), dtype=np.int64)
    for i, (e, (a, b)) in enumerate(zip(G.edges, D.tau)):
        M[e.u, i] += a
        M[e.v, i] += b
    return M
