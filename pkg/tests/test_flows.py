import pytest

from corpus import DUMBBELL, G1, G2, G5, multi_component
from sgflow.circuits import build_fundamental_system, system_for
from sgflow.errors import BalancedGraphError, BudgetExceededError, InvalidGroupError, NotAFlowError
from sgflow.flows import (
    FlowVector,
    brute_force_count,
    brute_force_flows,
    check_conservation,
    compose_flow,
    decompose_flow,
    enumerate_flows,
    flow_classes,
    lift_flow,
    total_flow_count,
)
from sgflow.group import make_group
from sgflow.sgraph import SignedGraph, default_orientation, disjoint_union

Z3 = make_group([3])
Z4 = make_group([4])
V4 = make_group([2, 2])


def _flow(group, *values):
    return FlowVector(group, tuple(group.element(v) if isinstance(v, int) else group.element(*v) for v in values))


def test_compose_g5():
    fs = build_fundamental_system(G5)
    f = compose_flow(fs, Z3.zero, {1: Z3.element(1), 2: Z3.element(1)})
    assert f == _flow(Z3, 2, 1, 1)


def test_compose_g1_root_only():
    fs = build_fundamental_system(G1)
    f = compose_flow(fs, V4.element(1, 1), {})
    assert f[0] == V4.element(1, 1) and f[1] == V4.element(1, 1)


def test_compose_rejects_bad_input():
    fs = build_fundamental_system(G5)
    with pytest.raises(InvalidGroupError):
        compose_flow(fs, Z4.element(1), {1: Z4.zero, 2: Z4.zero})
    with pytest.raises(ValueError):
        compose_flow(fs, Z3.zero, {1: Z3.zero})
    tri = system_for(SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]))
    with pytest.raises(BalancedGraphError):
        compose_flow(tri, Z4.element(2), {2: Z4.zero})


def test_enumeration_counts():
    assert len(enumerate_flows(build_fundamental_system(G5), Z3)) == 9
    assert len(enumerate_flows(build_fundamental_system(G1), V4)) == 4
    assert len(enumerate_flows(build_fundamental_system(DUMBBELL), Z3)) == 3


def test_classes():
    classes = flow_classes(build_fundamental_system(G1), V4)
    assert len(classes) == 4 and all(len(c) == 1 for c in classes.values())
    classes = flow_classes(build_fundamental_system(G2), Z4)
    assert sorted(len(c) for c in classes.values()) == [4, 4]
    classes = flow_classes(build_fundamental_system(G5), Z3)
    assert list(map(len, classes.values())) == [9]


def test_decompose():
    fs = build_fundamental_system(G5)
    gamma, coeffs = decompose_flow(fs, _flow(Z3, 2, 1, 1))
    assert gamma == Z3.zero and coeffs == {1: Z3.element(1), 2: Z3.element(1)}
    fs = build_fundamental_system(G1)
    f = compose_flow(fs, V4.element(1, 1), {})
    assert decompose_flow(fs, f) == (V4.element(1, 1), {})
    with pytest.raises(NotAFlowError):
        decompose_flow(build_fundamental_system(G5), _flow(Z3, 1, 1, 1))


def test_conservation():
    D = default_orientation(G5)
    assert not check_conservation(G5, D, _flow(Z3, 1, 1, 1))
    assert check_conservation(G5, D, _flow(Z3, 2, 1, 1))
    with pytest.raises(NotAFlowError):
        check_conservation(G5, D, _flow(Z3, 1))


def test_nowhere_zero_examples():
    assert brute_force_count(G1, Z3, nowhere_zero=True) == 0
    assert brute_force_count(G1, V4, nowhere_zero=True) == 3
    assert brute_force_count(G2, Z4, nowhere_zero=True) == 5


def test_total_counts():
    assert total_flow_count(G5, Z3) == 9
    assert total_flow_count(disjoint_union(G1, G1), V4) == 16
    for G in multi_component()[:20]:
        assert total_flow_count(G, Z4) == brute_force_count(G, Z4)


def test_lifted_flows_are_flows_of_the_source():
    # a graph that needs switching before its tree is positive
    G = SignedGraph.from_edges(3, [(0, 1, -1), (1, 2, -1), (0, 2, 1), (2, 2, -1)])
    fs = build_fundamental_system(G)
    assert fs.switched
    D = default_orientation(G)
    lifted = {lift_flow(fs, f).residues for f in enumerate_flows(fs, Z4)}
    brute = {f.residues for f in brute_force_flows(G, Z4, orientation=D)}
    assert lifted == brute


def test_budget():
    with pytest.raises(BudgetExceededError):
        brute_force_count(G5, make_group([50]), budget=1000)
