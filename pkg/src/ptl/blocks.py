"""Triangular-block decomposition of plane graphs.

Two edges share a block when they are linked by a chain of bounded
triangular faces, consecutive faces sharing an edge. Edges lying in no
bounded triangle form trivial one-edge blocks. The outer face never links
edges, even when it is a triangle.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .embed import PlaneGraph

Edge = tuple[int, int]

B2 = "B2-trivial"
B3 = "B3-triangle"
B4_DIAMOND = "B4-diamond"
B4_K4 = "B4-K4"
B5 = "B5-variant"
B6 = "B>=6-other"
CLASSES = (B2, B3, B4_DIAMOND, B4_K4, B5, B6)

SCHEMA_VERSION = 1


class BlockError(ValueError):
    pass


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TriangularBlock:
    edges: tuple[Edge, ...]
    triangles: tuple[int, ...] = ()  # face indices of the bounded triangles inside
    tag: str = field(default="", compare=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def is_trivial(self) -> bool:
        return not self.triangles

    def signature(self) -> tuple[int, tuple[int, ...]]:
        """Edge count and sorted degree multiset, the 5-vertex subclass key."""
        deg: Counter[int] = Counter()
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return len(self.edges), tuple(sorted(deg.values()))


def tag_for(nv: int, ne: int) -> str:
    if (nv, ne) == (2, 1):
        return B2
    if (nv, ne) == (3, 3):
        return B3
    if (nv, ne) == (4, 5):
        return B4_DIAMOND
    if (nv, ne) == (4, 6):
        return B4_K4
    if nv == 5:
        return B5
    if nv >= 6:
        return B6
    raise BlockError(f"no block has {nv} vertices and {ne} edges")


def bounded_triangles(pg: PlaneGraph) -> list[int]:
    return [i for i, w in enumerate(pg.faces) if len(w) == 3 and i != pg.outer]


@dataclass(frozen=True)
class BlockDecomposition:
    plane: PlaneGraph = field(repr=False)
    blocks: tuple[TriangularBlock, ...]
    index: dict[Edge, int] = field(repr=False, compare=False)

    def block_of(self, e: Edge) -> TriangularBlock:
        try:
            return self.blocks[self.index[_key(*e)]]
        except KeyError:
            raise KeyError(f"edge {e} is not in the graph") from None

    def counts(self) -> dict[str, int]:
        c = Counter(b.tag for b in self.blocks)
        return {t: c.get(t, 0) for t in CLASSES}

    def signature_table(self) -> dict[str, int]:
        """Census of 5-vertex blocks by (edge count, degree multiset)."""
        c: Counter[str] = Counter()
        for b in self.blocks:
            if b.tag == B5:
                e, degs = b.signature()
                c[f"e={e} deg={''.join(map(str, degs))}"] += 1
        return dict(sorted(c.items()))

    def edge_sum_ok(self) -> bool:
        return sum(b.num_edges for b in self.blocks) == self.plane.graph.num_edges

    def report(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.plane.graph.n,
            "e": self.plane.graph.num_edges,
            "outer_face": self.plane.outer,
            "blocks": [
                {"class": b.tag, "vertices": list(b.vertices), "edges": [list(e) for e in b.edges]}
                for b in self.blocks
            ],
            "counts": self.counts(),
            "five_vertex_signatures": self.signature_table(),
        }

    def to_json(self) -> str:
        return json.dumps(self.report(), indent=2)

    def to_text(self) -> str:
        lines = [f"n={self.plane.graph.n} e={self.plane.graph.num_edges} outer={self.plane.outer}"]
        for b in self.blocks:
            es = " ".join(f"{u}-{v}" for u, v in b.edges)
            lines.append(f"{b.tag:12s} {es}")
        lines.append(" ".join(f"{t}:{c}" for t, c in self.counts().items() if c))
        return "\n".join(lines)


def decompose(pg: PlaneGraph) -> BlockDecomposition:
    edges = sorted(pg.graph.edges())
    eid = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tris = bounded_triangles(pg)
    tri_root: list[tuple[int, int]] = []
    for fi in tris:
        ids = [eid[_key(u, v)] for u, v in pg.faces[fi]]
        r = find(ids[0])
        for j in ids[1:]:
            s = find(j)
            if s != r:
                parent[s] = r
        tri_root.append((fi, ids[0]))

    groups: dict[int, list[Edge]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    faces_in: dict[int, list[int]] = {}
    for fi, i in tri_root:
        faces_in.setdefault(find(i), []).append(fi)

    blocks = []
    index: dict[Edge, int] = {}
    for root in sorted(groups, key=lambda r: groups[r][0]):
        es = tuple(groups[root])
        nv = len({v for e in es for v in e})
        b = TriangularBlock(es, tuple(faces_in.get(root, ())), tag_for(nv, len(es)))
        for e in es:
            index[e] = len(blocks)
        blocks.append(b)
    return BlockDecomposition(pg, tuple(blocks), index)


def block_of(pg: PlaneGraph, e: Edge) -> TriangularBlock:
    """The block of ``e`` by direct worklist closure over bounded triangles."""
    e = _key(*e)
    if not pg.graph.has_edge(*e):
        raise KeyError(f"edge {e} is not in the graph")
    tris_at: dict[Edge, list[int]] = {}
    for fi in bounded_triangles(pg):
        for u, v in pg.faces[fi]:
            tris_at.setdefault(_key(u, v), []).append(fi)
    members = {e}
    faces: set[int] = set()
    work = [e]
    while work:
        x = work.pop()
        for fi in tris_at.get(x, ()):
            if fi in faces:
                continue
            faces.add(fi)
            for u, v in pg.faces[fi]:
                k = _key(u, v)
                if k not in members:
                    members.add(k)
                    work.append(k)
    es = tuple(sorted(members))
    nv = len({v for x in es for v in x})
    return TriangularBlock(es, tuple(sorted(faces)), tag_for(nv, len(es)))


def classify(b: TriangularBlock, pg: PlaneGraph | None = None) -> str:
    """Class tag of a block, after re-checking its closure.

    With ``pg`` given, the block must equal the closure of its first edge.
    """
    if not b.edges:
        raise BlockError("empty block")
    if b.is_trivial and b.num_edges != 1:
        raise BlockError("a block without triangles must be a single edge")
    if pg is not None:
        again = block_of(pg, b.edges[0])
        if set(again.edges) != set(b.edges):
            raise BlockError("block is not closed under bounded triangles")
    return tag_for(b.num_vertices, b.num_edges)


def check_no_big_blocks(pg: PlaneGraph) -> tuple[bool, TriangularBlock | None]:
    for b in decompose(pg).blocks:
        if b.num_vertices >= 5 or b.tag == B4_K4:
            return False, b
    return True, None
