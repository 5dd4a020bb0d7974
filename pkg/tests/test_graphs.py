import random

import pytest
from hypothesis import given, settings, strategies as st

from tautring.graphs import (
    DanglingEdgeError, DisconnectedGraphError, DuplicateLabelError, MarkingError,
    NegativeGenusError, StableGraph, UnstableVertexError, automorphism_count,
    canonical_form, contract_edge, contract_edges, enumerate_stable_graphs,
    forget_marking, is_isomorphic, list_strata, moduli_allows, stabilize,
)


def test_printed_form():
    G = StableGraph([1, 1], [[2], [3]], [(2, 3)])
    assert str(G) == "[1, 1] [[2], [3]] [(2, 3)]"
    assert G.g == 2 and G.n == 0 and G.h1 == 0


@pytest.mark.parametrize("args, err", [
    (([-1], [[1, 2, 3]], []), NegativeGenusError),
    (([0], [[1, 1, 2]], []), DuplicateLabelError),
    (([0, 0], [[1, 2, 3], [4, 5, 6]], [(3, 7)]), DanglingEdgeError),
    (([0, 0], [[1, 2, 3], [4, 5, 6]], []), DisconnectedGraphError),
    (([0, 1], [[1, 2], [3]], [(2, 3)]), UnstableVertexError),
    (([1], [[1, 3]], []), MarkingError),
])
def test_validation_errors(args, err):
    with pytest.raises(err):
        StableGraph(*args)


def test_graph_counts():
    # numbers of boundary strata, codimension by codimension
    assert [len(enumerate_stable_graphs(0, 5, e)) for e in range(3)] == [1, 10, 15]
    assert [len(enumerate_stable_graphs(2, 0, e)) for e in range(4)] == [1, 2, 2, 2]
    assert sum(len(enumerate_stable_graphs(3, 0, e)) for e in range(7)) == 42
    assert [len(enumerate_stable_graphs(0, 6, e)) for e in range(4)] == [1, 25, 105, 105]
    for n in range(4, 8):
        assert len(enumerate_stable_graphs(0, n, 1)) == 2 ** (n - 1) - n - 1


def test_list_strata_layout():
    assert [str(G) for G in list_strata(2, 0, 1)] == [
        "[1, 1] [[2], [3]] [(2, 3)]", "[1] [[2, 3]] [(2, 3)]"]


@pytest.mark.parametrize("G, aut", [
    (StableGraph([1], [[1, 2]], [(1, 2)]), 2),
    (StableGraph([0], [[1, 2, 3, 4]], [(1, 2), (3, 4)]), 8),
    (StableGraph([0, 0], [[1, 2, 3], [4, 5, 6]], [(1, 4), (2, 5), (3, 6)]), 12),
    (StableGraph([1, 1], [[1], [2]], [(1, 2)]), 2),
    (StableGraph([1, 1], [[1, 3], [2]], [(3, 2)]), 1),
    (StableGraph([0, 1], [[3, 4, 5], [6]], [(3, 4), (5, 6)]), 2),
])
def test_automorphism_counts(G, aut):
    assert automorphism_count(G) == aut


def _relabel(G: StableGraph, rng):
    n = G.n
    inner = sorted(G.halfedges - set(range(1, n + 1)))
    fresh = rng.sample(range(n + 1, n + 1 + 3 * len(inner) + 5), len(inner))
    lm = dict(zip(inner, fresh))
    lm.update({i: i for i in range(1, n + 1)})
    order = list(range(G.num_verts))
    rng.shuffle(order)
    legs = [[lm[l] for l in rng.sample(G.legs[v], len(G.legs[v]))] for v in order]
    edges = [(lm[b], lm[a]) if rng.random() < .5 else (lm[a], lm[b]) for a, b in G.edges]
    rng.shuffle(edges)
    return StableGraph([G.genera[v] for v in order], legs, edges)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(0, 5), (1, 3), (2, 1), (2, 2), (3, 0)]), st.integers(0, 4),
       st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(gn, e, rng):
    graphs = enumerate_stable_graphs(*gn, e)
    if not graphs:
        return
    G = rng.choice(graphs)
    H = _relabel(G, rng)
    cG, cH = canonical_form(G), canonical_form(H)
    assert cG.key == cH.key and cG.graph == cH.graph
    assert is_isomorphic(G, H)
    assert automorphism_count(G) == automorphism_count(H)


def test_distinct_graphs_not_isomorphic():
    graphs = [G for e in range(4) for G in enumerate_stable_graphs(2, 1, e)]
    keys = {canonical_form(G).key for G in graphs}
    assert len(keys) == len(graphs)


def test_contraction():
    theta = StableGraph([0, 0], [[1, 2, 3], [4, 5, 6]], [(1, 4), (2, 5), (3, 6)])
    H = contract_edge(theta, (1, 4))
    assert is_isomorphic(H, StableGraph([0], [[2, 3, 5, 6]], [(2, 5), (3, 6)]))
    H, vmap = contract_edges(theta, theta.edges)
    assert H.genera == (2,) and H.num_edges == 0
    assert set(vmap) == {0}


def test_contract_all_edges_gives_trivial_graph():
    rng = random.Random(7)
    for e in range(1, 4):
        for G in enumerate_stable_graphs(1, 3, e):
            H, _ = contract_edges(G, rng.sample(G.edges, G.num_edges))
            assert H.num_verts == 1 and H.genera == (1,) and sorted(H.legs[0]) == [1, 2, 3]


def test_stabilize_removes_unstable_vertex():
    # genus 0 vertex with marking 1 and a single edge is contracted away
    G, _ = stabilize([0, 1], [[1, 3], [2, 4]], [(3, 4)])
    assert is_isomorphic(G, StableGraph([1], [[1, 2]], []))


def test_forget_marking():
    G = StableGraph([0, 1], [[1, 2, 3], [4]], [(3, 4)])
    H, _ = forget_marking(G, 2)
    assert is_isomorphic(H, StableGraph([1], [[1]], []))


def test_moduli_types():
    loop = StableGraph([1], [[1, 2]], [(1, 2)])
    tree = StableGraph([1, 1], [[1], [2]], [(1, 2)])
    tail = StableGraph([0, 2], [[1, 2, 3], [4]], [(3, 4)])
    banana = StableGraph([0, 0], [[1, 3, 4], [2, 5, 6]], [(3, 5), (4, 6)])
    assert moduli_allows(loop, "tl") and not moduli_allows(loop, "ct")
    assert moduli_allows(tree, "ct") and not moduli_allows(tree, "rt")
    assert moduli_allows(tail, "rt") and not moduli_allows(tail, "sm")
    assert not moduli_allows(banana, "tl")
    assert all(moduli_allows(G, "st") for G in (loop, tree, tail, banana))
