"""The d-type flow polynomial by subset expansion.

    F_d(G, x) = sum over F subset of E of (-1)^|F| 2^(kappa(G-F) d) x^beta(G-F)

Two evaluators compute exactly this sum:

``subset``
    Walks all 2^m subsets and recomputes components and balance for each.
    Simple enough to trust; exponential in m.
``frontier``
    Sweeps the vertices in BFS order and keeps, for every way the processed
    edges can be kept or deleted, only what the rest of the sum needs: which
    active vertices share a component, the relative sign parity inside
    balanced components, and which components are already unbalanced.  A
    component is scored (x for balanced, 2^d for unbalanced) when its last
    active vertex retires.  Cost is governed by the frontier width, not m.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceededError, InvalidGraphError
from .sgraph import SignedGraph, balance_profile

SUBSET_BUDGET = 1 << 22
STATE_BUDGET = 10**6


@dataclass(frozen=True)
class IntPolynomial:
    """Exact integer polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(p + q for p, q in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            parts.append((sign, body + mono))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


def _lift(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial.constant(p)


def evaluate(p: IntPolynomial, x: int) -> int:
    """Horner evaluation in exact integers."""
    acc = 0
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc


def fd_polynomial(G: SignedGraph, d: int, method: str = "frontier", budget: int | None = None) -> IntPolynomial:
    """``F_d(G, x)``; its value at ``k`` counts nowhere-zero flows in any group of
    order ``k`` containing exactly ``d`` independent involutions."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise InvalidGraphError(f"d must be a non-negative integer, got {d!r}")
    if method == "subset":
        return _fd_subsets(G, d, SUBSET_BUDGET if budget is None else budget)
    if method == "frontier":
        return _fd_frontier(G, d, STATE_BUDGET if budget is None else budget)
    raise ValueError(f"unknown method {method!r}")


def subset_terms(G: SignedGraph) -> Iterable[tuple[int, int, int, int]]:
    """``(mask, |F|, kappa(G-F), beta(G-F))`` for every removed set ``F``."""
    m = G.m
    for mask in range(1 << m):
        kept = [i for i in range(m) if not (mask >> i) & 1]
        bal, unb = balance_profile(G, kept)
        yield mask, m - len(kept), unb, len(kept) - G.n + bal


def _fd_subsets(G: SignedGraph, d: int, budget: int) -> IntPolynomial:
    if (1 << G.m) > budget:
        raise BudgetExceededError("edge subsets", 1 << G.m, budget)
    coeffs: dict[int, int] = {}
    for _, size, kap, b in subset_terms(G):
        coeffs[b] = coeffs.get(b, 0) + (-1) ** size * 2 ** (kap * d)
    return _from_dict(coeffs)


def _from_dict(coeffs: dict[int, int]) -> IntPolynomial:
    if not coeffs:
        return IntPolynomial()
    if min(coeffs) < 0:
        raise AssertionError("negative exponent in flow polynomial")
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] += c
    return IntPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# frontier sweep
# ---------------------------------------------------------------------------
#
# A state is (labels, parity, unbalanced): labels[i] is the component label of
# the i-th active vertex, parity[i] its sign parity relative to the first
# active vertex of its component (0 inside unbalanced components), and
# unbalanced[l] the flag of label l.  Labels are numbered by first appearance.
# Each state maps to {exponent: coefficient}; the exponent counts kept edges
# plus finished balanced components, and is shifted by -n at the end.


def _canon(labels, parity, unbalanced):
    relabel = {}
    first_par = {}
    new_labels, new_par = [], []
    for lab, p in zip(labels, parity):
        if lab not in relabel:
            relabel[lab] = len(relabel)
            first_par[lab] = p
        new_labels.append(relabel[lab])
        new_par.append(0 if unbalanced[lab] else p ^ first_par[lab])
    flags = [False] * len(relabel)
    for lab, nl in relabel.items():
        flags[nl] = unbalanced[lab]
    return tuple(new_labels), tuple(new_par), tuple(flags)


def _keep_edge(state, a, b, negative):
    labels, parity, unbalanced = state
    la, lb = labels[a], labels[b]
    odd = parity[a] ^ parity[b] ^ negative
    if la == lb:
        if unbalanced[la] or not odd:
            return state
        flags = list(unbalanced)
        flags[la] = True
        return _canon(labels, parity, flags)
    flags = list(unbalanced)
    merged_unb = unbalanced[la] or unbalanced[lb]
    flags[la] = merged_unb
    flip = odd if not merged_unb else 0
    new_labels = tuple(la if l == lb else l for l in labels)
    new_par = tuple(p ^ flip if l == lb else p for l, p in zip(labels, parity))
    return _canon(new_labels, new_par, flags)


def _accumulate(target, state, poly, sign, shift):
    slot = target.get(state)
    if slot is None:
        slot = target[state] = {}
    for e, c in poly.items():
        e2 = e + shift
        slot[e2] = slot.get(e2, 0) + sign * c


def _bfs_order(G: SignedGraph) -> list[int]:
    seen = [False] * G.n
    order = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            order.append(x)
            for i in G.incident[x]:
                y = G.edges[i].other(x)
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def _fd_frontier(G: SignedGraph, d: int, budget: int) -> IntPolynomial:
    order = _bfs_order(G)
    pos = {v: i for i, v in enumerate(order)}
    edges_at = [[] for _ in range(G.n)]
    last_needed = list(range(G.n))
    for v in range(G.n):
        last_needed[v] = pos[v]
    for i, e in enumerate(G.edges):
        step = max(pos[e.u], pos[e.v])
        edges_at[step].append(i)
        last_needed[e.u] = max(last_needed[e.u], step)
        last_needed[e.v] = max(last_needed[e.v], step)

    weight_unb = 2**d
    frontier: list[int] = []
    states: dict = {((), (), ()): {0: 1}}
    for step, v in enumerate(order):
        frontier.append(v)
        grown = {}
        for (labels, parity, flags), poly in states.items():
            key = (labels + (len(flags),), parity + (0,), flags + (False,))
            grown[key] = poly
        states = grown

        for i in edges_at[step]:
            e = G.edges[i]
            a, b = frontier.index(e.u), frontier.index(e.v)
            neg = 1 if e.is_negative else 0
            nxt: dict = {}
            for st, poly in states.items():
                _accumulate(nxt, st, poly, -1, 0)
                _accumulate(nxt, _keep_edge(st, a, b, neg), poly, 1, 1)
            states = nxt

        for w in [w for w in frontier if last_needed[w] <= step]:
            idx = frontier.index(w)
            nxt = {}
            for (labels, parity, flags), poly in states.items():
                lab = labels[idx]
                rest_labels = labels[:idx] + labels[idx + 1 :]
                rest_par = parity[:idx] + parity[idx + 1 :]
                mult, shift = 1, 0
                if lab not in rest_labels:
                    if flags[lab]:
                        mult = weight_unb
                    else:
                        shift = 1
                st = _canon(rest_labels, rest_par, flags)
                _accumulate(nxt, st, poly, mult, shift)
            states = nxt
            frontier.pop(idx)
        if len(states) > budget:
            raise BudgetExceededError("frontier states", len(states), budget)

    (poly,) = states.values()
    return _from_dict({e - G.n: c for e, c in poly.items() if c})


def is_admissible(G: SignedGraph, d: int, method: str = "frontier") -> bool:
    """Whether F_d(G, x) is not the zero polynomial."""
    return not fd_polynomial(G, d, method).is_zero()
