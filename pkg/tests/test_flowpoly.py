import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import DUMBBELL, G1, G2, G3, G4, G5, random_graph
from sgflow.errors import BudgetExceededError, InvalidGraphError
from sgflow.flowpoly import IntPolynomial, evaluate, fd_polynomial, is_admissible
from sgflow.sgraph import SignedGraph

x = IntPolynomial.x()


def test_polynomial_arithmetic():
    p = (x - 1) * (x - 2)
    assert p.coeffs == (2, -3, 1)
    assert str(p) == "x^2 - 3x + 2"
    assert str(-x + 1) == "-x + 1"
    assert str(IntPolynomial()) == "0" and IntPolynomial().degree == -1
    assert (x - x).is_zero()
    assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1
    assert evaluate(x**2 - 3 * x + 2, 3) == 2
    assert IntPolynomial((1, 0, 0)).coeffs == (1,)


@pytest.mark.parametrize("method", ["subset", "frontier"])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_examples(method, d):
    assert fd_polynomial(G1, d, method) == IntPolynomial.constant(2**d - 1)
    assert fd_polynomial(G2, d, method) == 2**d * x - 2 ** (d + 1) + 1
    assert fd_polynomial(G3, d, method) == (2**d - 1) * (x - 1)


def test_more_values():
    assert fd_polynomial(G5, 0) == x**2 - 3 * x + 2
    assert fd_polynomial(DUMBBELL, 0) == x - 1
    triangle = SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    for d in range(3):
        assert fd_polynomial(triangle, d) == x - 1
    assert fd_polynomial(SignedGraph.from_edges(3, []), 2) == IntPolynomial.constant(1)


def test_admissibility():
    assert not is_admissible(G4, 0)
    assert not is_admissible(G1, 0)
    assert is_admissible(G1, 1)
    assert is_admissible(G2, 0)


def test_bad_arguments():
    with pytest.raises(InvalidGraphError):
        fd_polynomial(G1, -1)
    with pytest.raises(ValueError):
        fd_polynomial(G1, 0, "magic")
    with pytest.raises(BudgetExceededError):
        fd_polynomial(SignedGraph.from_edges(1, [(0, 0, -1)] * 12), 0, "subset", budget=100)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_frontier_matches_subset(seed, d):
    G = random_graph(random.Random(seed), n_max=6, m_max=9, connected=False)
    assert fd_polynomial(G, d, "frontier") == fd_polynomial(G, d, "subset")


def test_large_sparse_graph_is_fast():
    # a long cycle of 40 positive edges with a negative loop on every vertex
    n = 40
    edges = [(i, (i + 1) % n, 1) for i in range(n)] + [(i, i, -1) for i in range(n)]
    p = fd_polynomial(SignedGraph.from_edges(n, edges), 0)
    assert p.degree == n and p.coeffs[-1] == 1
