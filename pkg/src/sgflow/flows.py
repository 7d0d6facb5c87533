"""Group-valued flows: generation from fundamental circuits, classification by
the order-2 elements, decomposition, and an independent brute-force oracle.

Bulk operations work on *flow tables*: integer arrays of shape
``(count, m, r)`` holding the residue of every edge value in each of the ``r``
cyclic factors.  :class:`FlowVector` is the per-flow object view.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .circuits import FundamentalSystem
from .errors import (
    BalancedGraphError,
    BudgetExceededError,
    InconsistencyError,
    InvalidGroupError,
    NotAFlowError,
)
from .group import AbelianGroup, GroupElement, epsilon, involution_set
from .sgraph import (
    Orientation,
    SignedGraph,
    balance_profile,
    default_orientation,
    incidence_matrix,
)

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16


@dataclass(frozen=True)
class FlowVector:
    group: AbelianGroup
    values: tuple[GroupElement, ...]

    def __getitem__(self, e: int) -> GroupElement:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def residues(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.residues for g in self.values)

    def is_nowhere_zero(self) -> bool:
        return not any(g.is_zero() for g in self.values)

    def to_json(self) -> dict[str, object]:
        return {str(e): g.to_json() for e, g in enumerate(self.values)}

    @classmethod
    def from_residues(cls, group: AbelianGroup, rows) -> "FlowVector":
        return cls(group, tuple(GroupElement(group, tuple(int(x) for x in r)) for r in rows))


def _moduli(group: AbelianGroup) -> np.ndarray:
    return np.asarray(group.cyclic_orders, dtype=np.int64)


def _element_table(group: AbelianGroup) -> np.ndarray:
    """Residues of every element, row ``i`` = ``group.from_index(i)``."""
    return np.array([g.residues for g in group.elements()], dtype=np.int64).reshape(group.order, group.rank)


def table_to_flows(group: AbelianGroup, table: np.ndarray) -> list[FlowVector]:
    return [FlowVector.from_residues(group, row) for row in table]


def flows_to_table(flows: Sequence[FlowVector], m: int, rank: int) -> np.ndarray:
    if not flows:
        return np.zeros((0, m, rank), dtype=np.int64)
    return np.array([f.residues for f in flows], dtype=np.int64)


def table_keys(table: np.ndarray) -> set[bytes]:
    """Hashable row identities, for set comparisons between tables."""
    t = np.ascontiguousarray(table, dtype=np.int64)
    return {row.tobytes() for row in t}


# ---------------------------------------------------------------------------
# conservation
# ---------------------------------------------------------------------------


def conservation_residuals(G: SignedGraph, D: Orientation, table: np.ndarray, group: AbelianGroup) -> np.ndarray:
    """Net inflow at every vertex, shape ``(count, n, r)``, reduced mod each factor."""
    M = incidence_matrix(G, D)
    out = np.einsum("vm,kmi->kvi", M, table)
    return out % _moduli(group)


def check_conservation(G: SignedGraph, D: Orientation, f: FlowVector) -> bool:
    """True iff the inflow equals the outflow at every vertex."""
    if len(f) != G.m:
        raise NotAFlowError(f"flow has {len(f)} values for {G.m} edges")
    table = np.array([f.residues], dtype=np.int64).reshape(1, G.m, f.group.rank)
    return not conservation_residuals(G, D, table, f.group).any()


# ---------------------------------------------------------------------------
# generation from the fundamental system
# ---------------------------------------------------------------------------


def _root_choices(fs: FundamentalSystem, group: AbelianGroup) -> list[GroupElement]:
    return [group.zero] if fs.balanced else involution_set(group)


def compose_flow(fs: FundamentalSystem, gamma: GroupElement, coeffs: Mapping[int, GroupElement]) -> FlowVector:
    """``gamma * g + sum_e coeffs[e] * f_e`` with ``gamma`` of order at most 2."""
    group = gamma.group
    if not (gamma + gamma).is_zero():
        raise InvalidGroupError(f"{gamma!r} is not of order 1 or 2")
    if fs.balanced and not gamma.is_zero():
        raise BalancedGraphError("a balanced graph has no root circuit; gamma must be zero")
    if set(coeffs) != set(fs.cotree):
        raise ValueError(f"coefficients must be given exactly on the cotree {list(fs.cotree)}")
    vals = []
    for a in range(fs.graph.m):
        x = fs.root_vector[a] * gamma
        for e in fs.cotree:
            c = fs.circuits[e].vector[a]
            if c:
                x = x + c * coeffs[e]
        vals.append(x)
    return FlowVector(group, tuple(vals))


def flow_table(fs: FundamentalSystem, group: AbelianGroup, gammas=None, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All combinations ``gamma g + sum gamma_e f_e`` as a flow table.

    Rows run over ``gammas`` (default: every order-2 element, or just zero for
    a balanced system) and, within each, over the cotree coefficients in
    mixed-radix order with the last cotree edge varying fastest.
    """
    if gammas is None:
        gammas = _root_choices(fs, group)
    c = len(fs.cotree)
    k = group.order
    count = len(gammas) * k**c
    if count > budget:
        raise BudgetExceededError("flow enumeration", count, budget)
    m, r = fs.graph.m, group.rank
    mod = _moduli(group)
    elems = _element_table(group)
    Fmat = np.array([fs.circuits[e].vector for e in fs.cotree], dtype=np.int64).reshape(c, m)
    g = np.asarray(fs.root_vector, dtype=np.int64)
    idx = np.indices((k,) * c).reshape(c, -1).T if c else np.zeros((1, 0), dtype=np.int64)
    coeff_res = elems[idx]  # (k**c, c, r)
    base = np.einsum("nci,cm->nmi", coeff_res, Fmat)
    blocks = []
    for gamma in gammas:
        gres = np.asarray(gamma.residues, dtype=np.int64)
        blocks.append((base + g[None, :, None] * gres[None, None, :]) % mod)
    return np.concatenate(blocks).reshape(count, m, r)


def enumerate_flows(fs: FundamentalSystem, group: AbelianGroup, budget: int = DEFAULT_BUDGET) -> list[FlowVector]:
    """Every group flow of ``fs.graph`` under ``fs.orientation``.

    There are ``2**epsilon * k**(m - n)`` of them for an unbalanced graph and
    ``k**(m - n + 1)`` for a balanced one.
    """
    return table_to_flows(group, flow_table(fs, group, budget=budget))


def flow_classes(fs: FundamentalSystem, group: AbelianGroup, budget: int = DEFAULT_BUDGET) -> dict[GroupElement, list[FlowVector]]:
    """Partition of all flows by the order-2 element on the root circuit."""
    if fs.balanced:
        raise BalancedGraphError("flow classes are defined for unbalanced graphs only")
    out = {}
    per_class = group.order ** len(fs.cotree)
    if per_class * 2 ** epsilon(group) > budget:
        raise BudgetExceededError("flow enumeration", per_class * 2 ** epsilon(group), budget)
    for gamma in involution_set(group):
        out[gamma] = table_to_flows(group, flow_table(fs, group, [gamma], budget))
    return out


def decompose_flow(fs: FundamentalSystem, f: FlowVector) -> tuple[GroupElement, dict[int, GroupElement]]:
    """Recover ``(gamma, coeffs)`` with ``compose_flow(fs, gamma, coeffs) == f``.

    The coefficient of ``f_e`` is the value of ``f`` on ``e``; ``gamma`` is the
    value on the root edge minus the values on the other negative edges.
    """
    group = f.group
    if not check_conservation(fs.graph, fs.orientation, f):
        raise NotAFlowError("assignment violates conservation")
    coeffs = {e: f[e] for e in fs.cotree}
    if fs.balanced:
        gamma = group.zero
    else:
        gamma = f[fs.root_edge]
        for e in fs.negative_edges:
            if e != fs.root_edge:
                gamma = gamma - f[e]
        if not (gamma + gamma).is_zero():
            raise InconsistencyError(f"root coefficient {gamma!r} is not of order 2")
    if compose_flow(fs, gamma, coeffs) != f:
        raise InconsistencyError("recomposed flow differs from the input")
    return gamma, coeffs


# ---------------------------------------------------------------------------
# moving flows between orientations
# ---------------------------------------------------------------------------


def reorient_table(table: np.ndarray, group: AbelianGroup, D_from: Orientation, D_to: Orientation) -> np.ndarray:
    """Negate the values on edges whose orientation differs between the two."""
    flip = np.array([a != b for a, b in zip(D_from.tau, D_to.tau)], dtype=bool)
    out = table.copy()
    out[:, flip, :] = (-out[:, flip, :]) % _moduli(group)
    return out


def source_orientation(fs: FundamentalSystem) -> Orientation:
    """``fs.orientation`` transported back through the switching to ``fs.source``."""
    return fs.orientation.switched(fs.graph, fs.switched)


def lift_table(fs: FundamentalSystem, table: np.ndarray, group: AbelianGroup, target: Orientation | None = None) -> np.ndarray:
    """Express flows of ``fs.graph`` as flows of ``fs.source`` under ``target``
    (default: :func:`default_orientation` of the source)."""
    if target is None:
        target = default_orientation(fs.source)
    return reorient_table(table, group, source_orientation(fs), target)


def lift_flow(fs: FundamentalSystem, f: FlowVector, target: Orientation | None = None) -> FlowVector:
    table = flows_to_table([f], fs.graph.m, f.group.rank)
    return FlowVector.from_residues(f.group, lift_table(fs, table, f.group, target)[0])


# ---------------------------------------------------------------------------
# brute force and closed form
# ---------------------------------------------------------------------------


def brute_force_table(
    G: SignedGraph,
    group: AbelianGroup,
    nowhere_zero: bool = False,
    orientation: Orientation | None = None,
    budget: int = DEFAULT_BUDGET,
) -> np.ndarray:
    """Test every one of the ``k**m`` assignments against conservation.

    Uses nothing but the incidence coefficients of ``orientation`` (default:
    :func:`default_orientation`).  Rows come out in mixed-radix order of the
    element indices, edge 0 most significant.
    """
    D = default_orientation(G) if orientation is None else orientation
    k, m, r = group.order, G.m, group.rank
    values = k - 1 if nowhere_zero else k
    total = values**m
    if total > budget:
        raise BudgetExceededError("brute-force assignments", total, budget)
    mod = _moduli(group)
    elems = _element_table(group)
    if nowhere_zero:
        elems = elems[1:]  # index 0 is the zero element
    M = incidence_matrix(G, D)
    radix = values ** np.arange(m - 1, -1, -1, dtype=np.int64)
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        digits = (idx[:, None] // radix[None, :]) % values
        res = elems[digits]  # (chunk, m, r)
        sums = np.einsum("vm,kmi->kvi", M, res) % mod
        ok = ~sums.reshape(len(idx), -1).any(axis=1)
        if ok.any():
            found.append(res[ok])
    if not found:
        return np.zeros((0, m, r), dtype=np.int64)
    return np.concatenate(found)


def brute_force_flows(
    G: SignedGraph,
    group: AbelianGroup,
    nowhere_zero: bool = False,
    orientation: Orientation | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[FlowVector]:
    return table_to_flows(group, brute_force_table(G, group, nowhere_zero, orientation, budget))


def brute_force_count(G, group, nowhere_zero=False, orientation=None, budget=DEFAULT_BUDGET) -> int:
    return len(brute_force_table(G, group, nowhere_zero, orientation, budget))


def total_flow_count(G: SignedGraph, group: AbelianGroup) -> int:
    """Number of all (not necessarily nowhere-zero) flows: 2**(kappa*eps) * k**beta."""
    bal, unb = balance_profile(G)
    beta = G.m - G.n + bal
    return 2 ** (unb * epsilon(group)) * group.order**beta


def iter_parameters(fs: FundamentalSystem, group: AbelianGroup):
    """Every ``(gamma, coeffs)`` pair accepted by :func:`compose_flow`."""
    for gamma in _root_choices(fs, group):
        for combo in itertools.product(list(group.elements()), repeat=len(fs.cotree)):
            yield gamma, dict(zip(fs.cotree, combo))


def expected_flow_count(fs: FundamentalSystem, group: AbelianGroup) -> int:
    c = len(fs.cotree)
    return group.order**c * (1 if fs.balanced else 2 ** epsilon(group))


__all__ = [
    "DEFAULT_BUDGET",
    "FlowVector",
    "brute_force_count",
    "brute_force_flows",
    "brute_force_table",
    "check_conservation",
    "compose_flow",
    "conservation_residuals",
    "decompose_flow",
    "enumerate_flows",
    "expected_flow_count",
    "flow_classes",
    "flow_table",
    "iter_parameters",
    "lift_flow",
    "lift_table",
    "reorient_table",
    "source_orientation",
    "table_keys",
    "table_to_flows",
    "total_flow_count",
]
