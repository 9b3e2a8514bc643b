from __future__ import annotations

import pytest

from ptl.blocks import decompose
from ptl.construct import (
    ConstructionError,
    WitnessSpec,
    antiprism_skeleton,
    build_witness,
    check_skeleton,
    dump_witness,
    load_golden,
    ring_skeleton,
    verify_witness,
    witness,
)
from ptl.embed import read_embedding, test_planarity


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_spec_counts(k):
    s = WitnessSpec(k)
    assert s.tight()
    assert s.n - s.e + s.faces == 2
    assert 5 * s.diamonds == s.e
    assert s.triangles == 2 * s.diamonds
    # diamond boundary edges border pentagons; each spine sits between two triangles
    assert 5 * s.pentagons == 4 * s.diamonds
    assert 3 * s.triangles == 4 * s.diamonds + 2 * s.diamonds


def test_spec_rejects_negative():
    with pytest.raises(ValueError):
        WitnessSpec(-1)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_build_and_verify(k):
    pg = build_witness(k)
    rep = verify_witness(pg, WitnessSpec(k))
    assert rep.passed, rep.to_text()
    lengths = pg.face_lengths()
    assert lengths.count(5) == WitnessSpec(k).pentagons
    assert lengths.count(3) == WitnessSpec(k).triangles
    assert pg.face_length(pg.outer) == 5


@pytest.mark.parametrize("k", [0, 1, 2])
def test_golden_matches_builder(k):
    assert load_golden(k).graph == build_witness(k).graph
    assert dump_witness(load_golden(k)) == dump_witness(build_witness(k))


def test_witness_prefers_golden():
    assert witness(0).graph == load_golden(0).graph


def test_skeletons_are_sphere_maps():
    deg = check_skeleton(antiprism_skeleton())
    assert sorted(set(deg.values())) == [4]
    for k in (1, 2):
        deg = check_skeleton(ring_skeleton(k))
        assert set(deg.values()) <= {3, 4, 5}


def test_skeleton_rejects_open_map():
    with pytest.raises(ConstructionError):
        check_skeleton([(0, 1, 2)])


def test_verifier_catches_broken_witness():
    pg = build_witness(0)
    rep = verify_witness(pg, WitnessSpec(1))
    assert not rep.passed and not rep.checks["vertex_count"]
    assert verify_witness(read_embedding(dump_witness(pg)), WitnessSpec(0)).passed
    # an extra edge inside a pentagon breaks the count, tightness and the census
    pent = next(i for i, w in enumerate(pg.faces) if len(w) == 5)
    vs = pg.face_vertices(pent)
    g = pg.graph.with_edge(vs[0], vs[2])
    emb = test_planarity(g)
    rep = verify_witness(emb, WitnessSpec(0))
    assert not rep.passed
    assert not rep.checks["edge_count"] and not rep.checks["tightness"]


def test_k_out_of_range():
    with pytest.raises(ValueError):
        build_witness(4)


def test_all_diamonds_in_witness_k1():
    dec = decompose(load_golden(1))
    assert len(dec.blocks) == 50
