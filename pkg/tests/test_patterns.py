from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from strategies import graphs
from ptl.graph import Graph, enumerate_graphs
from ptl.patterns import (
    K4,
    K4_THETA5,
    PRESETS,
    THETA4,
    THETA5,
    Occurrence,
    Pattern,
    complete_graph,
    contains_subgraph,
    cycle_graph,
    family,
    is_family_free,
    theta_graph,
    theta_patterns,
)

DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
W4 = Graph.from_edges(5, [(0, i) for i in range(1, 5)] + [(1, 2), (2, 3), (3, 4), (4, 1)])
K5_MINUS_2 = complete_graph(5).without_edge(0, 1).without_edge(2, 3)
BOOK3 = Graph.from_edges(5, [(0, 1)] + [(x, t) for t in (2, 3, 4) for x in (0, 1)])


@pytest.mark.parametrize("k,count", [(4, 1), (5, 1), (6, 2), (7, 2), (8, 3)])
def test_theta_class_counts(k, count):
    assert len(theta_patterns(k)) == count


def test_theta6_count_by_brute_chords():
    # chords of C6 modulo the dihedral group, counted with networkx isomorphism
    reps: list[nx.Graph] = []
    for i in range(6):
        for j in range(i + 2, 6):
            if (i, j) == (0, 5):
                continue
            G = nx.cycle_graph(6)
            G.add_edge(i, j)
            if not any(nx.is_isomorphic(G, R) for R in reps):
                reps.append(G)
    assert len(theta_patterns(6)) == len(reps)


def test_theta4_is_diamond():
    assert THETA4.graph.num_edges == 5 and THETA4.graph.n == 4
    assert contains_subgraph(complete_graph(4), THETA4) is not None


def test_theta5_is_itself():
    assert contains_subgraph(theta_graph(5, 2), THETA5) is not None


def test_book_is_theta5_free():
    assert contains_subgraph(BOOK3, THETA5) is None
    assert not oracles.brute_occurrence(5, BOOK3.edges(), 5, THETA5.graph.edges())


def test_diamond_is_free():
    ok, occ = is_family_free(DIAMOND, K4_THETA5)
    assert ok and occ is None


@pytest.mark.parametrize("g", [W4, K5_MINUS_2], ids=["W4", "K5-2e"])
def test_theta5_witnesses(g):
    ok, occ = is_family_free(g, K4_THETA5)
    assert not ok
    assert occ.pattern.name == "Theta5"
    assert occ.validate(g)
    assert oracles.brute_occurrence(g.n, g.edges(), 5, THETA5.graph.edges())


def test_occurrence_validation_catches_bad_images():
    assert not Occurrence(K4, (0, 1, 2, 2)).validate(complete_graph(4))
    assert not Occurrence(K4, (0, 1, 2, 3)).validate(DIAMOND)
    assert Occurrence(K4, (3, 2, 1, 0)).validate(complete_graph(4))


def test_pattern_constraints():
    with pytest.raises(ValueError):
        Pattern("P2", complete_graph(2))
    with pytest.raises(ValueError):
        Pattern("split", Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        theta_graph(5, 1)
    with pytest.raises(KeyError):
        family("nope")


NAIVE_PATTERNS = [K4, THETA4, THETA5] + [p for name in ("C4", "C5", "C6") for p in PRESETS[name].patterns]


@pytest.mark.parametrize("pattern", NAIVE_PATTERNS, ids=lambda p: p.name)
def test_matcher_agrees_with_injective_maps(pattern):
    for n in range(pattern.graph.n, 7):
        for g in enumerate_graphs(n):
            hit = pattern.find(g)
            ref = oracles.brute_occurrence(g.n, g.edges(), pattern.graph.n, pattern.graph.edges())
            assert (hit is not None) == ref, (pattern.name, g.edges())
            if hit is not None:
                assert Occurrence(pattern, hit).validate(g)


@pytest.mark.parametrize("pattern", NAIVE_PATTERNS, ids=lambda p: p.name)
def test_matcher_agrees_with_graphmatcher_on_7(pattern):
    P = oracles.nx_graph(pattern.graph.n, pattern.graph.edges())
    for G in oracles.atlas_by_order()[7]:
        g = Graph.from_edges(7, G.edges())
        assert (pattern.find(g) is not None) == oracles.contains(G, P)


def test_theta5_specialised_matches_generic():
    generic = Pattern("generic-theta5", theta_graph(5, 2).relabel([1, 0, 2, 3, 4]))
    rng = random.Random(5)
    for _ in range(400):
        n = rng.randint(5, 11)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        a = THETA5.find(g)
        assert (a is None) == (generic.find(g) is None)
        if a is not None:
            assert Occurrence(THETA5, a).validate(g)


def test_anchor_restricts_to_occurrences_through_vertex():
    g = complete_graph(4).disjoint_union(cycle_graph(3))
    assert K4.find(g, anchor=6) is None
    hit = K4.find(g, anchor=2)
    assert hit is not None and 2 in hit


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9))
def test_freeness_is_monotone(g):
    ok, _ = is_family_free(g, K4_THETA5)
    if not ok or not g.num_edges:
        return
    rng = random.Random(g.num_edges)
    h = g
    for _ in range(3):
        if not h.num_edges:
            break
        u, v = rng.choice(h.edges())
        h = h.without_edge(u, v)
        assert is_family_free(h, K4_THETA5)[0]


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_family_agrees_with_graphmatcher(g):
    G = oracles.nx_graph(g.n, g.edges())
    ok, occ = is_family_free(g, K4_THETA5)
    assert ok == oracles.family_free(G)
    if occ is not None:
        assert occ.validate(g)
        assert len(set(occ.edges())) == occ.pattern.graph.num_edges
