"""Group flows on signed graphs, the polynomials F_d counting the nowhere-zero
ones, and the broken-bond expansion of F_0."""

from .bonds import (
    Bond,
    ComplexFVector,
    bb_free_fvector,
    bb_free_sets,
    broken_bonds,
    build_gt,
    check_homogeneous,
    coefficient_report,
    enumerate_bonds,
    f0_broken,
    gt_formula,
    minimal_balancing_sets,
    proposition_check,
    sigma,
)
from .circuits import (
    FundamentalCircuit,
    FundamentalSystem,
    build_cycle_system,
    build_fundamental_system,
    root_vector,
    system_for,
    verify_circuit_vectors,
)
from .errors import (
    BalancedGraphError,
    BudgetExceededError,
    DisconnectedGraphError,
    GraphParseError,
    GroupMismatchError,
    InconsistencyError,
    InvalidGraphError,
    InvalidGroupError,
    NotAFlowError,
    SgflowError,
)
from .flowpoly import IntPolynomial, evaluate, fd_polynomial, is_admissible
from .flows import (
    FlowVector,
    brute_force_count,
    brute_force_flows,
    check_conservation,
    compose_flow,
    decompose_flow,
    enumerate_flows,
    flow_classes,
    total_flow_count,
)
from .group import AbelianGroup, GroupElement, epsilon, involution_set, make_group
from .report import Report
from .sgraph import (
    Edge,
    Orientation,
    SignedGraph,
    beta,
    canonical_orientation,
    components,
    default_orientation,
    is_balanced,
    kappa,
    parse_graph,
    read_graph,
    switch_set,
)

__version__ = "0.1.0"
