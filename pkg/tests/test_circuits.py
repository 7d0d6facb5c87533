import json

import numpy as np
import pytest

from corpus import DUMBBELL, G1, G5, small_connected
from sgflow.circuits import (
    BARBELL,
    FundamentalCircuit,
    build_cycle_system,
    build_fundamental_system,
    root_vector,
    system_for,
    verify_circuit_vectors,
)
from sgflow.errors import BalancedGraphError, DisconnectedGraphError
from sgflow.sgraph import SignedGraph, incidence_matrix, is_balanced


def test_g5_system():
    fs = build_fundamental_system(G5)
    assert fs.tree == frozenset() and fs.root_edge == 0 and fs.cotree == (1, 2)
    fb = fs.circuits[1]
    assert fb.kind == BARBELL and fb.edges == {0, 1} and fb.barbell_path == ()
    assert fb.vector == (1, 1, 0)
    assert root_vector(fs) == (1, 0, 0)


def test_dumbbell_system():
    fs = build_fundamental_system(DUMBBELL)
    assert fs.tree == {2} and fs.root_edge == 0 and fs.cotree == (1,)
    fb = fs.circuits[1]
    assert fb.edges == {0, 1, 2}
    assert (fb.vector[0], fb.vector[1], abs(fb.vector[2])) == (1, 1, 2)
    assert root_vector(fs) == (1, 0, 0)


def test_g1_system():
    fs = build_fundamental_system(G1)
    assert fs.tree == {1} and fs.root_edge == 0 and fs.cotree == ()
    assert fs.root_circuit == {0, 1}
    g = root_vector(fs)
    assert g[0] == 1 and abs(g[1]) == 1


def test_errors():
    with pytest.raises(BalancedGraphError):
        build_fundamental_system(SignedGraph.from_edges(2, [(0, 1, 1)]))
    with pytest.raises(DisconnectedGraphError):
        build_fundamental_system(SignedGraph.from_edges(2, [(0, 0, -1)]))
    with pytest.raises(ValueError):
        build_cycle_system(G1)


def test_corrupted_vector_is_reported():
    fs = build_fundamental_system(G5)
    assert verify_circuit_vectors(fs)
    bad = dict(fs.circuits)
    c = bad[1]
    bad[1] = FundamentalCircuit(c.edges, (2,) + c.vector[1:], c.kind, c.barbell_path)
    broken = fs.__class__(**{**fs.__dict__, "circuits": bad})
    report = verify_circuit_vectors(broken)
    assert not report
    assert report.failures == [{"vector": "f_1", "vertex": 0, "sum": 2}]


def test_every_corpus_system_is_sound():
    for G in small_connected():
        fs = system_for(G)
        assert verify_circuit_vectors(fs), G
        M = incidence_matrix(fs.graph, fs.orientation)
        assert all(e.sign == 1 for i, e in enumerate(fs.graph.edges) if i in fs.tree)
        assert len(fs.cotree) == G.m - G.n + (1 if is_balanced(G) else 0)
        for e, c in fs.circuits.items():
            assert c.vector[e] == 1
            assert set(np.flatnonzero(c.vector)) <= set(c.edges)
            assert all(abs(x) <= 2 for x in c.vector)
            # cotree edges other than e do not appear, so the vectors are independent
            assert all(c.vector[o] == 0 for o in fs.cotree if o != e)
        if not fs.balanced:
            g = np.asarray(fs.root_vector)
            assert g[fs.root_edge] == 1
            assert not ((M @ g) % 2).any()


def test_system_to_json_is_plain():
    json.dumps(build_fundamental_system(DUMBBELL).to_json())
