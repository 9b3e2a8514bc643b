from __future__ import annotations

import json

import pytest

import oracles
from ptl.graph import Graph, canonical_form
from ptl.patterns import K4_THETA5, family
from ptl.search import (
    BoundExceeded,
    FamilyPruner,
    bound_table,
    floor_bound,
    max_edges,
    table_json,
    table_text,
)

BOOK3 = Graph.from_edges(5, [(0, 1)] + [(x, t) for t in (2, 3, 4) for x in (0, 1)])
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


@pytest.mark.parametrize("n,ex", [(3, 3), (4, 5), (5, 7)])
def test_small_values(n, ex):
    rep = max_edges(n, K4_THETA5)
    assert rep.ex == ex


def test_witnesses_at_4_and_5():
    assert canonical_form(DIAMOND) in {canonical_form(w) for w in max_edges(4, K4_THETA5).witnesses}
    assert canonical_form(BOOK3) in {canonical_form(w) for w in max_edges(5, K4_THETA5).witnesses}


def test_witnesses_are_free_planar_and_extremal():
    for n in range(3, 9):
        rep = max_edges(n, K4_THETA5)
        assert rep.witnesses
        for w in rep.witnesses:
            G = oracles.nx_graph(w.n, w.edges())
            assert w.n == n and w.num_edges == rep.ex
            assert oracles.planar(G) and oracles.family_free(G)
            assert w.is_connected() or rep.disconnected is not None


def test_witness_set_is_complete_at_5():
    # every 7-edge free planar graph on 5 vertices is reported
    ref = {
        canonical_form(Graph.from_edges(5, G.edges()))
        for G in oracles.free_planar(5)
        if G.number_of_edges() == 7
    }
    got = {canonical_form(w) for w in max_edges(5, K4_THETA5).witnesses}
    assert got == ref


@pytest.mark.parametrize("name,n", [("K4", 4), ("Theta4", 4), ("C4", 5), ("Theta5", 6)])
def test_other_families_against_atlas(name, n):
    fam = family(name)
    pats = [oracles.nx_graph(p.graph.n, p.graph.edges()) for p in fam.patterns]
    ref = max(
        G.number_of_edges()
        for G in oracles.atlas_by_order()[n]
        if oracles.planar(G) and not any(oracles.contains(G, P) for P in pats)
    )
    assert max_edges(n, fam).ex == ref


def test_table_rows_and_flags():
    rows = bound_table(range(3, 7), K4_THETA5)
    assert [(r.n, r.ex, r.bound, r.slack, r.flagged) for r in rows] == [
        (3, 3, 2, -1, True),
        (4, 5, 4, -1, True),
        (5, 7, 6, -1, True),
        (6, 9, 9, 0, False),
    ]
    assert "negative slack" in table_text(rows)
    data = json.loads(table_json(rows, "K4+Theta5"))
    assert data["schema_version"] == 1 and len(data["rows"]) == 4


def test_witness_only_row():
    (row,) = bound_table([24], K4_THETA5)
    assert (row.ex, row.bound, row.slack, row.source) == (50, 50, 0, "witness-only lower bound")
    assert "witness-only" in table_text([row])


def test_bound_enforced(monkeypatch):
    with pytest.raises(BoundExceeded):
        max_edges(30, K4_THETA5)
    with pytest.raises(BoundExceeded):
        bound_table([30], K4_THETA5)
    monkeypatch.setenv("PTL_MAX_N", "4")
    with pytest.raises(BoundExceeded):
        max_edges(5, K4_THETA5)


def test_floor_bound():
    assert [floor_bound(n) for n in (3, 5, 24)] == [2, 6, 50]


def test_workers_agree():
    one = max_edges(7, K4_THETA5)
    two = max_edges(7, K4_THETA5, workers=2)
    assert one.ex == two.ex
    assert {canonical_form(w) for w in one.witnesses} == {canonical_form(w) for w in two.witnesses}


def test_pruner_pickles():
    import pickle

    p = pickle.loads(pickle.dumps(FamilyPruner("K4+Theta5")))
    assert p(Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]))
    assert not p(DIAMOND)
