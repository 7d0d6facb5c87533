"""Cuts, bonds and broken bonds of a signed graph, the complex of edge sets
free of broken bonds, and the tree family G_T.

A cut is ``[X, X^c] + E_X`` for a non-empty vertex set X and an inclusion
minimal E_X inside G[X] whose removal balances G[X]; a bond is an inclusion
minimal cut.  Two enumerators are provided:

``literal``
    every non-empty X, every minimal E_X, then an inclusion-minimality
    filter over all cuts.  Exponential in n and quadratic in the cut count.
``connected`` (default)
    only X inducing a connected subgraph, and only those for which G[X^c]
    has as many balanced components as G.  Each surviving cut is a bond and
    every bond shows up this way, so no minimality filter is needed.  The two
    enumerators are cross-checked in the test suite.

Edge orders are given as a sequence of edge ids from smallest to largest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import BudgetExceededError, InvalidGraphError
from .flowpoly import IntPolynomial
from .report import Report
from .sgraph import (
    EdgeSet,
    SignedGraph,
    _ParityForest,
    balance_profile,
    components,
    is_balanced,
    is_connected,
)

VERTEX_SUBSET_BUDGET = 1 << 20
FACE_BUDGET = 10**7


class Bond(NamedTuple):
    edges: EdgeSet
    X: frozenset[int]
    E_X: EdgeSet


@dataclass(frozen=True)
class ComplexFVector:
    """``a[i]`` = number of i-edge sets containing no broken bond."""

    a: tuple[int, ...]

    def to_json(self) -> list[int]:
        return list(self.a)


def check_order(G: SignedGraph, order: Sequence[int] | None) -> list[int]:
    """Validate a linear order (ids smallest first); None means id order."""
    if order is None:
        return list(range(G.m))
    order = [int(e) for e in order]
    if sorted(order) != list(range(G.m)):
        raise InvalidGraphError(f"order must be a permutation of 0..{G.m - 1}")
    return order


# ---------------------------------------------------------------------------
# minimal balancing sets
# ---------------------------------------------------------------------------


def _blocks(G: SignedGraph, edge_ids: Sequence[int]) -> list[list[int]]:
    """Edge sets of the blocks (2-connected pieces) of the subgraph on
    ``edge_ids``; every loop is a block of its own."""
    adj: dict[int, list[tuple[int, int]]] = {}
    blocks = []
    for i in edge_ids:
        e = G.edges[i]
        if e.is_loop:
            blocks.append([i])
            continue
        adj.setdefault(e.u, []).append((e.v, i))
        adj.setdefault(e.v, []).append((e.u, i))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        estack: list[int] = []
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, i in it:
                if i == via:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(i)
                    stack.append((w, i, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(i)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    block = []
                    while True:
                        j = estack.pop()
                        block.append(j)
                        if j == via:
                            break
                    blocks.append(block)
    return blocks


def _inclusion_minimal(sets) -> list[frozenset]:
    out: list[frozenset] = []
    for s in sorted(set(sets), key=lambda s: (len(s), sorted(s))):
        if not any(t <= s for t in out):
            out.append(s)
    return out


def _block_balancing_sets(G: SignedGraph, block: list[int]) -> list[frozenset]:
    if is_balanced(G, block):
        return [frozenset()]
    if len(block) == 1:  # a negative loop
        return [frozenset(block)]
    verts = sorted({x for i in block for x in (G.edges[i].u, G.edges[i].v)})
    pos = {v: j for j, v in enumerate(verts)}
    cands = []
    # one vertex stays unswitched; every signature of the rest yields a violator set
    for bits in range(1 << (len(verts) - 1)):
        s = lambda v: -1 if (bits << 1) >> pos[v] & 1 else 1  # noqa: E731
        cands.append(frozenset(i for i in block if G.edges[i].sign != s(G.edges[i].u) * s(G.edges[i].v)))
    return _inclusion_minimal(cands)


def minimal_balancing_sets(G: SignedGraph, X) -> list[EdgeSet]:
    """Every inclusion-minimal E_X inside G[X] whose removal leaves G[X] balanced.

    An edge set balances a graph iff it balances each block, so the minimal
    sets are products of per-block minimal sets; per block they are the
    minimal violator sets of the vertex signatures.
    """
    X = set(X)
    if not X:
        raise InvalidGraphError("X must be non-empty")
    inside = [i for i, e in enumerate(G.edges) if e.u in X and e.v in X]
    per_block = [_block_balancing_sets(G, b) for b in _blocks(G, inside)]
    per_block = [p for p in per_block if p != [frozenset()]]
    out = []
    for combo in itertools.product(*per_block):
        out.append(EdgeSet().union(*combo))
    return sorted(out, key=lambda s: (len(s), sorted(s))) if out else [EdgeSet()]


# ---------------------------------------------------------------------------
# bonds
# ---------------------------------------------------------------------------


def _cut_edges(G: SignedGraph, X: set[int]) -> set[int]:
    return {i for i, e in enumerate(G.edges) if (e.u in X) != (e.v in X)}


def _connected_vertex_sets(G: SignedGraph) -> Iterator[frozenset[int]]:
    """Each vertex set inducing a connected subgraph, exactly once."""
    nbrs = [set() for _ in range(G.n)]
    for e in G.edges:
        if not e.is_loop:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)

    def grow(v, X, ext, excl):
        yield X
        ext = set(ext)
        while ext:
            w = ext.pop()
            new_ext = ext | {u for u in nbrs[w] if u > v and u not in X and u not in excl}
            yield from grow(v, X | {w}, new_ext, excl)
            excl = excl | {w}

    for v in range(G.n):
        yield from grow(v, frozenset([v]), {u for u in nbrs[v] if u > v}, frozenset())


def _balanced_components_outside(G: SignedGraph, X) -> int:
    uf = _ParityForest(G.n)
    for e in G.edges:
        if e.u not in X and e.v not in X:
            uf.add_edge(e.u, e.v, e.is_negative)
    return sum(1 for v in range(G.n) if v not in X and uf.find(v) == v and not uf.unbalanced[v])


def enumerate_bonds(G: SignedGraph, method: str = "connected", budget: int | None = None) -> list[Bond]:
    """All bonds, deduplicated by edge set, sorted by size then edge ids.

    The recorded witness ``(X, E_X)`` is the first one found.
    """
    if method == "literal":
        return _bonds_literal(G, VERTEX_SUBSET_BUDGET if budget is None else budget)
    if method != "connected":
        raise ValueError(f"unknown method {method!r}")
    budget = VERTEX_SUBSET_BUDGET if budget is None else budget
    b_G = balance_profile(G)[0]
    found: dict[EdgeSet, Bond] = {}
    visited = 0
    for X in _connected_vertex_sets(G):
        visited += 1
        if visited > budget:
            raise BudgetExceededError("connected vertex sets", visited, budget)
        if _balanced_components_outside(G, X) != b_G:
            continue
        boundary = _cut_edges(G, X)
        for E_X in minimal_balancing_sets(G, X):
            B = EdgeSet(boundary | E_X)
            if B and B not in found:
                found[B] = Bond(B, X, E_X)
    return sorted(found.values(), key=lambda b: (len(b.edges), sorted(b.edges)))


def enumerate_cuts(G: SignedGraph, budget: int | None = None) -> list[Bond]:
    """Every cut over every non-empty X, deduplicated by edge set."""
    budget = VERTEX_SUBSET_BUDGET if budget is None else budget
    if (1 << G.n) > budget:
        raise BudgetExceededError("vertex subsets", 1 << G.n, budget)
    found: dict[EdgeSet, Bond] = {}
    for mask in range(1, 1 << G.n):
        X = frozenset(v for v in range(G.n) if mask >> v & 1)
        boundary = _cut_edges(G, X)
        for E_X in minimal_balancing_sets(G, X):
            B = EdgeSet(boundary | E_X)
            if B and B not in found:
                found[B] = Bond(B, X, E_X)
    return list(found.values())


def _bonds_literal(G: SignedGraph, budget: int) -> list[Bond]:
    cuts = enumerate_cuts(G, budget)
    by_edges = {c.edges: c for c in cuts}
    minimal = _inclusion_minimal(by_edges)
    return sorted((by_edges[B] for B in minimal), key=lambda b: (len(b.edges), sorted(b.edges)))


def broken_bonds(G: SignedGraph, order: Sequence[int] | None = None, bonds: list[Bond] | None = None) -> list[EdgeSet]:
    """Each bond minus its largest edge under ``order``; may contain the empty set."""
    order = check_order(G, order)
    rank = {e: i for i, e in enumerate(order)}
    if bonds is None:
        bonds = enumerate_bonds(G)
    out = {B.edges - {max(B.edges, key=rank.__getitem__)} for B in bonds}
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# the complex of broken-bond-free sets
# ---------------------------------------------------------------------------


def bb_free_sets(G: SignedGraph, order: Sequence[int] | None = None, budget: int = FACE_BUDGET, broken: list[EdgeSet] | None = None) -> Iterator[EdgeSet]:
    """Every edge set containing no broken bond, by depth-first extension.

    The family is closed under subsets, so it is grown one edge at a time and
    only broken bonds through the new edge need checking.
    """
    if broken is None:
        broken = broken_bonds(G, order)
    if any(not b for b in broken):
        return
    masks_through: list[list[int]] = [[] for _ in range(G.m)]
    for b in broken:
        mask = sum(1 << i for i in b)
        for i in b:
            masks_through[i].append(mask)
    emitted = 0

    def grow(mask, start, members):
        nonlocal emitted
        emitted += 1
        if emitted > budget:
            raise BudgetExceededError("broken-bond-free sets", emitted, budget)
        yield EdgeSet(members)
        for e in range(start, G.m):
            new = mask | (1 << e)
            if any(bm & new == bm for bm in masks_through[e]):
                continue
            members.append(e)
            yield from grow(new, e + 1, members)
            members.pop()

    yield from grow(0, 0, [])


def bb_free_fvector(G: SignedGraph, order: Sequence[int] | None = None, budget: int = FACE_BUDGET) -> ComplexFVector:
    """Counts of broken-bond-free edge sets by size, indices 0..beta(G)."""
    bal, _ = balance_profile(G)
    top = G.m - G.n + bal
    a = [0] * (top + 1)
    for F in bb_free_sets(G, order, budget):
        if len(F) > top:
            raise AssertionError(f"broken-bond-free set {sorted(F)} exceeds size {top}")
        a[len(F)] += 1
    return ComplexFVector(tuple(a))


def f0_broken(G: SignedGraph, order: Sequence[int] | None = None, budget: int = FACE_BUDGET) -> IntPolynomial:
    """F_0(G, x) summed over the broken-bond-free edge sets only."""
    coeffs: dict[int, int] = {}
    for F in bb_free_sets(G, order, budget):
        kept = [i for i in range(G.m) if i not in F]
        bal, _ = balance_profile(G, kept)
        b = len(kept) - G.n + bal
        coeffs[b] = coeffs.get(b, 0) + (-1) ** len(F)
    if not coeffs:
        return IntPolynomial()
    out = [0] * (max(coeffs) + 1)
    for b, c in coeffs.items():
        out[b] += c
    return IntPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# sigma and the coefficient statements
# ---------------------------------------------------------------------------


def _component_count(G: SignedGraph, kept) -> int:
    bal, unb = balance_profile(G, kept)
    return bal + unb


def sigma(G: SignedGraph, order: Sequence[int] | None = None) -> int:
    """Edges e having some later e' with one of:

    1. e or e' a cut edge, and G - {e, e'} has a balanced component;
    2. {e, e'} an edge cut, and G - {e, e'} has a balanced component;
    3. e, e' in one component w, and w - {e, e'} balanced.
    """
    order = check_order(G, order)
    rank = {e: i for i, e in enumerate(order)}
    base = _component_count(G, range(G.m))
    bridge = [_component_count(G, [j for j in range(G.m) if j != i]) > base for i in range(G.m)]
    comp_of = {}
    for c in components(G):
        for i in c.edges:
            comp_of[i] = c
    count = 0
    for e in range(G.m):
        for f in range(G.m):
            if rank[f] <= rank[e]:
                continue
            kept = [j for j in range(G.m) if j not in (e, f)]
            bal, unb = balance_profile(G, kept)
            has_balanced = bal > 0
            cond1 = (bridge[e] or bridge[f]) and has_balanced
            cond2 = bal + unb > base and has_balanced
            cond3 = False
            if comp_of[e] is comp_of[f]:
                rest = [j for j in comp_of[e].edges if j not in (e, f)]
                cond3 = is_balanced(G, rest)
            if cond1 or cond2 or cond3:
                count += 1
                break
    return count


def singleton_broken_bonds(G: SignedGraph, order: Sequence[int] | None = None) -> list[int]:
    """Edges e for which {e} is a broken bond (two-edge bonds ending above e)."""
    return sorted(next(iter(b)) for b in broken_bonds(G, order) if len(b) == 1)


def coefficient_report(G: SignedGraph, order: Sequence[int] | None = None, f0: IntPolynomial | None = None) -> Report:
    """The coefficient statements for a connected, unbalanced graph with F_0 not zero.

    ``a0 = 1``, every ``a_i > 0``, signs of F_0 alternating as
    ``(-1)^i a_i x^(m-n-i)``, ``a1 = m - #{e : {e} broken bond}``.  The
    literal ``a1 = m - sigma`` is recorded as a flag, not a failure.
    """
    if not is_connected(G) or is_balanced(G):
        return Report("coefficients", True, {"reason": "needs a connected unbalanced graph"}, skipped=True)
    a = bb_free_fvector(G, order).a
    if f0 is None:
        f0 = f0_broken(G, order)
    if f0.is_zero():
        return Report("coefficients", True, {"reason": "F_0 is identically zero"}, skipped=True)
    top = G.m - G.n
    failures = []
    if a[0] != 1:
        failures.append({"check": "a0", "a0": a[0]})
    for i, ai in enumerate(a):
        if ai <= 0:
            failures.append({"check": "positive", "i": i, "a_i": ai})
    expected = [0] * (top + 1)
    for i, ai in enumerate(a):
        expected[top - i] = (-1) ** i * ai
    if list(f0.coeffs) != expected:
        failures.append({"check": "alternation", "f0": list(f0.coeffs), "expected": expected})
    singles = singleton_broken_bonds(G, order)
    a1 = a[1] if len(a) > 1 else 0
    if top >= 1 and a1 != G.m - len(singles):
        failures.append({"check": "a1_bonds", "a1": a1, "m": G.m, "singletons": singles})
    s = sigma(G, order)
    details = {"a": list(a), "sigma": s, "m": G.m}
    if top >= 1 and a1 != G.m - s:
        details["flag_a1_sigma"] = {"a1": a1, "m_minus_sigma": G.m - s, "singleton_broken_bonds": singles}
    return Report("coefficients", not failures, details, failures)


def _components_after(G: SignedGraph, F) -> list[tuple[int, int, bool]]:
    """``(vertices, edges, unbalanced)`` for each component of G - F."""
    kept = [i for i in range(G.m) if i not in F]
    uf = _ParityForest(G.n)
    for i in kept:
        e = G.edges[i]
        uf.add_edge(e.u, e.v, e.is_negative)
    nv: dict[int, int] = {}
    ne: dict[int, int] = {}
    for v in range(G.n):
        r = uf.find(v)
        nv[r] = nv.get(r, 0) + 1
    for i in kept:
        r = uf.find(G.edges[i].u)
        ne[r] = ne.get(r, 0) + 1
    return [(nv[r], ne.get(r, 0), uf.unbalanced[r]) for r in nv]


def check_homogeneous(G: SignedGraph, order: Sequence[int] | None = None, budget: int = FACE_BUDGET) -> Report:
    """Every maximal broken-bond-free set has the top size beta(G); for an
    unbalanced connected G each component left by a maximal set has exactly
    one circuit, and that circuit is unbalanced."""
    broken = broken_bonds(G, order)
    faces = set(bb_free_sets(G, order, budget, broken))
    bal, _ = balance_profile(G)
    top = G.m - G.n + bal
    if not faces:
        return Report("homogeneous", True, {"reason": "empty complex", "top": top}, skipped=True)
    characterise = is_connected(G) and not is_balanced(G)
    failures = []
    maximal = []
    for F in faces:
        if any(F | {e} in faces for e in range(G.m) if e not in F):
            continue
        maximal.append(F)
        if len(F) != top:
            failures.append({"check": "size", "face": sorted(F), "size": len(F), "top": top})
        if characterise:
            for nv, ne, unb in _components_after(G, F):
                if ne != nv or not unb:
                    failures.append({"check": "one_unbalanced_circuit", "face": sorted(F)})
                    break
    details = {
        "top": top,
        "faces": len(faces),
        "maximal": sorted(sorted(F) for F in maximal),
        "characterised": characterise,
    }
    return Report("homogeneous", not failures, details, failures)


def proposition_check(G: SignedGraph, order: Sequence[int] | None = None, budget: int = FACE_BUDGET) -> Report:
    """Removing a broken-bond-free set leaves only unbalanced components."""
    if is_balanced(G):
        return Report("unbalanced_components", True, {"reason": "graph is balanced"}, skipped=True)
    failures = []
    count = 0
    for F in bb_free_sets(G, order, budget):
        count += 1
        if any(not unb for _, _, unb in _components_after(G, F)):
            failures.append({"face": sorted(F)})
    return Report("unbalanced_components", not failures, {"faces": count}, failures)


# ---------------------------------------------------------------------------
# the family G_T
# ---------------------------------------------------------------------------


def _check_tree(T: SignedGraph) -> None:
    if T.n < 2 or T.m != T.n - 1 or not is_connected(T) or any(e.is_loop for e in T.edges):
        raise InvalidGraphError("expected a tree on at least two vertices")


def build_gt(T: SignedGraph, girth: int = 1) -> tuple[SignedGraph, list[int]]:
    """Replace every leaf of the tree ``T`` by an unbalanced circuit of length ``girth``.

    The leaf itself lies on its circuit, which has ``girth - 1`` positive
    edges and one negative edge (a negative loop for girth 1).  Tree edges
    keep their ids and are all positive.  The returned order puts circuit
    edges first (by leaf, then around the circuit) and tree edges after, a
    deeper edge before a shallower one, measured from the smallest leaf.
    """
    _check_tree(T)
    if girth < 1:
        raise InvalidGraphError("girth must be at least 1")
    deg = [len(T.incident[v]) for v in range(T.n)]
    leaves = [v for v in range(T.n) if deg[v] == 1]
    edges = [(e.u, e.v, 1) for e in T.edges]
    n = T.n
    circuit_ids = []
    for leaf in leaves:
        if girth == 1:
            circuit_ids.append(len(edges))
            edges.append((leaf, leaf, -1))
            continue
        ring = [leaf] + list(range(n, n + girth - 1))
        n += girth - 1
        for j in range(girth):
            circuit_ids.append(len(edges))
            a, b = ring[j], ring[(j + 1) % girth]
            edges.append((a, b, -1 if j == girth - 1 else 1))
    G = SignedGraph.from_edges(n, edges)

    depth = [-1] * T.n
    depth[leaves[0]] = 0
    frontier = [leaves[0]]
    while frontier:
        nxt = []
        for x in frontier:
            for i in T.incident[x]:
                y = T.edges[i].other(x)
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    nxt.append(y)
        frontier = nxt
    tree_ids = sorted(range(T.m), key=lambda i: (-max(depth[T.edges[i].u], depth[T.edges[i].v]), i))
    return G, circuit_ids + tree_ids


def gt_formula(T: SignedGraph) -> IntPolynomial:
    """(x - 1) times, for each vertex of degree d >= 3,
    sum_{j=0}^{d-2} (-1)^j C(d-1, j) x^(d-2-j)."""
    _check_tree(T)
    out = IntPolynomial((-1, 1))
    for v in range(T.n):
        d = len(T.incident[v])
        if d >= 3:
            factor = [0] * (d - 1)
            for j in range(d - 1):
                factor[d - 2 - j] = (-1) ** j * math.comb(d - 1, j)
            out = out * IntPolynomial(tuple(factor))
    return out
