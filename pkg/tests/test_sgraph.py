import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import DUMBBELL, G1, G2, G5
from sgflow.errors import DisconnectedGraphError, GraphParseError, InvalidGraphError
from sgflow.sgraph import (
    SignedGraph,
    beta,
    canonical_orientation,
    components,
    delete_edges,
    disjoint_union,
    incidence_coefficient,
    incidence_matrix,
    is_balanced,
    kappa,
    normalize_positive_tree,
    parse_graph,
    switch_at,
    switch_set,
)

TRIANGLE = SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def test_parse_examples():
    assert parse_graph("n 2\ne 0 1 -\ne 0 1 +\n") == G1
    assert parse_graph("n 1\ne 0 0 -\ne 0 0 -") == G2
    G = parse_graph("n 1")
    assert (G.n, G.m) == (1, 0)


def test_parse_comments_and_blank_lines():
    G = parse_graph("# header\n\nn 2   # two vertices\n e 0 1 + \n")
    assert G.m == 1 and G.edges[0].sign == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("n 2\ne 0 2 +", 2),
        ("n 2\ne 0 1 *", 2),
        ("n 2\ne 0 1", 2),
        ("n x", 1),
        ("n -1", 1),
        ("e 0 0 +", 1),
        ("n 1\nn 1", 2),
        ("n 1\nq", 2),
        ("n 1\ne a 0 +", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_missing_header():
    with pytest.raises(GraphParseError):
        parse_graph("")


def test_round_trip_text():
    assert parse_graph(DUMBBELL.to_text()) == DUMBBELL


def test_components():
    assert len(components(G1)) == 1
    two_loops = SignedGraph.from_edges(2, [(0, 0, -1), (1, 1, -1)])
    assert len(components(two_loops)) == 2
    assert len(components(SignedGraph.from_edges(3, []))) == 3


def test_balance():
    assert is_balanced(TRIANGLE)
    assert not is_balanced(SignedGraph.from_edges(1, [(0, 0, -1)]))
    assert is_balanced(SignedGraph.from_edges(2, [(0, 1, -1), (0, 1, -1)]))
    assert not is_balanced(G1)


def test_beta_kappa():
    assert beta(G5) == 2 and kappa(G5) == 1
    assert beta(TRIANGLE) == 1 and kappa(TRIANGLE) == 0
    assert beta(G1) == 0
    assert kappa(SignedGraph.from_edges(2, [(0, 0, -1), (1, 1, -1)])) == 2


def test_switching():
    H = switch_at(G1, 0)
    assert [e.sign for e in H.edges] == [1, -1]
    loop = SignedGraph.from_edges(1, [(0, 0, -1)])
    assert switch_at(loop, 0) == loop
    assert switch_at(switch_at(DUMBBELL, 1), 1) == DUMBBELL


def test_normalize_positive_tree():
    G = SignedGraph.from_edges(2, [(0, 1, -1), (1, 1, -1)])
    H, T = normalize_positive_tree(G)
    assert T == {0}
    assert H.edges[0].sign == 1 and H.edges[1].sign == -1
    H, T = normalize_positive_tree(TRIANGLE)
    assert H == TRIANGLE
    H, T = normalize_positive_tree(G5)
    assert T == frozenset()
    with pytest.raises(DisconnectedGraphError):
        normalize_positive_tree(SignedGraph.from_edges(2, []))


def test_delete_edges():
    H, keep = delete_edges(G1, [0])
    assert H.m == 1 and is_balanced(H) and keep == (1,)
    assert delete_edges(G1, [])[0] == G1
    H, _ = delete_edges(G5, [0, 1])
    assert beta(H) == 0
    with pytest.raises(InvalidGraphError):
        delete_edges(G1, [5])


def test_canonical_orientation():
    D = canonical_orientation(G1, 0)
    assert D.is_extroverted(0) and D.direction(G1, 1) == (0, 1)
    D = canonical_orientation(G5, 0)
    assert D.is_extroverted(0) and D.is_introverted(1) and D.is_introverted(2)
    D = canonical_orientation(TRIANGLE)
    assert [D.direction(TRIANGLE, i) for i in range(3)] == [(0, 1), (1, 2), (0, 2)]
    with pytest.raises(InvalidGraphError):
        canonical_orientation(G1, 1)


def test_incidence_coefficients():
    loop = SignedGraph.from_edges(1, [(0, 0, -1), (0, 0, 1)])
    D = canonical_orientation(loop, 0)
    assert incidence_coefficient(loop, D, 0, 0) == 2
    assert incidence_coefficient(loop, D, 0, 1) == 0
    D = canonical_orientation(TRIANGLE)
    assert incidence_coefficient(TRIANGLE, D, 1, 0) == 1
    assert incidence_coefficient(TRIANGLE, D, 0, 0) == -1
    assert incidence_coefficient(TRIANGLE, D, 2, 0) == 0
    D = canonical_orientation(G5)
    assert incidence_matrix(G5, D).tolist() == [[-2, -2, -2]]


def test_disjoint_union_counts():
    G = disjoint_union(G1, G1, TRIANGLE)
    assert (G.n, G.m) == (7, 7)
    assert kappa(G) == 2 and beta(G) == 1


@st.composite
def signed_graphs(draw, max_n=5, max_m=7):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    edges = [(draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), draw(st.sampled_from((1, -1)))) for _ in range(m)]
    return SignedGraph.from_edges(n, edges)


def _balanced_by_signature(G):
    if any(e.is_loop and e.is_negative for e in G.edges):
        return False
    for s in itertools.product((1, -1), repeat=G.n):
        if all(e.sign == s[e.u] * s[e.v] for e in G.edges if not e.is_loop):
            return True
    return False


@settings(max_examples=200)
@given(signed_graphs())
def test_balance_matches_signature_search(G):
    assert is_balanced(G) == _balanced_by_signature(G)


@settings(max_examples=100)
@given(signed_graphs(), st.data())
def test_switching_preserves_balance_and_beta(G, data):
    S = data.draw(st.sets(st.integers(0, G.n - 1)))
    H = switch_set(G, S)
    assert is_balanced(H) == is_balanced(G)
    assert beta(H) == beta(G) and kappa(H) == kappa(G)


@settings(max_examples=100)
@given(signed_graphs())
def test_beta_is_nullity_of_incidence_matrix(G):
    # over the rationals the incidence matrix has rank n - (number of balanced components)
    D = canonical_orientation(G, G.negative_edges()[0] if G.negative_edges() else None)
    M = incidence_matrix(G, D)
    rank = np.linalg.matrix_rank(M) if G.m else 0
    assert beta(G) == G.m - rank
