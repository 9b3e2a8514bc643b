"""Combinatorial embeddings: rotation systems, face walks, planarity."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import networkx as nx

from .graph import Graph

HalfEdge = tuple[int, int]
Rotation = tuple[tuple[int, ...], ...]

DEFAULT_MAX_EMBED_N = 12


class DisconnectedGraphError(ValueError):
    pass


class EmbeddingError(ValueError):
    pass


def trace_faces(rotation: Sequence[Sequence[int]]) -> list[tuple[HalfEdge, ...]]:
    """Face walks of a rotation system.

    The half-edge after ``u->v`` is ``v->w`` with ``w`` the successor of
    ``u`` in the cyclic order at ``v``. Walks start at the smallest
    unused half-edge, so face indices are deterministic.
    """
    succ: dict[HalfEdge, int] = {}
    for v, rot in enumerate(rotation):
        d = len(rot)
        for i, u in enumerate(rot):
            succ[(v, u)] = rot[(i + 1) % d]
    faces: list[tuple[HalfEdge, ...]] = []
    seen: set[HalfEdge] = set()
    for start in sorted((u, v) for v, rot in enumerate(rotation) for u in rot):
        if start in seen:
            continue
        walk = []
        he = start
        while he not in seen:
            seen.add(he)
            walk.append(he)
            u, v = he
            he = (v, succ[(v, u)])
        faces.append(tuple(walk))
    if not faces:
        faces.append(())
    return faces


@dataclass(frozen=True)
class PlaneGraph:
    """A graph with a rotation system, its face walks, and a chosen outer face."""

    graph: Graph
    rotation: Rotation
    faces: tuple[tuple[HalfEdge, ...], ...] = field(repr=False)
    outer: int = 0

    @classmethod
    def from_rotation(
        cls, graph: Graph, rotation: Sequence[Sequence[int]], outer: int | None = None
    ) -> "PlaneGraph":
        rot = tuple(tuple(r) for r in rotation)
        if len(rot) != graph.n:
            raise EmbeddingError("rotation must list every vertex")
        for v, r in enumerate(rot):
            mask = 0
            for u in r:
                mask |= 1 << u
            if mask != graph.rows[v] or len(r) != graph.degree(v):
                raise EmbeddingError(f"rotation at {v} does not list its incident edges exactly once")
        faces = tuple(trace_faces(rot))
        pg = cls(graph, rot, faces, 0 if outer is None else outer)
        if not 0 <= pg.outer < len(faces):
            raise EmbeddingError(f"outer face index {pg.outer} out of range")
        return pg

    @cached_property
    def face_of(self) -> dict[HalfEdge, int]:
        return {he: i for i, walk in enumerate(self.faces) for he in walk}

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def face_length(self, i: int) -> int:
        return len(self.faces[i])

    def face_lengths(self) -> list[int]:
        return [len(w) for w in self.faces]

    def face_vertices(self, i: int) -> list[int]:
        return [u for u, _ in self.faces[i]]

    def with_outer(self, outer: int) -> "PlaneGraph":
        if not 0 <= outer < len(self.faces):
            raise EmbeddingError(f"outer face index {outer} out of range")
        pg = PlaneGraph(self.graph, self.rotation, self.faces, outer)
        if "face_of" in self.__dict__:
            pg.__dict__["face_of"] = self.__dict__["face_of"]  # same faces, same index
        return pg

    def euler_ok(self) -> bool:
        g = self.graph
        return g.n - g.num_edges + len(self.faces) == 1 + len(g.components())

    def is_planar_embedding(self) -> bool:
        return self.graph.is_connected() and self.euler_ok()

    def reflection_key(self) -> tuple[Rotation, Rotation]:
        return _norm(self.rotation), _norm(tuple(tuple(reversed(r)) for r in self.rotation))


def _norm(rotation: Sequence[Sequence[int]]) -> Rotation:
    out = []
    for r in rotation:
        if r:
            i = r.index(min(r))
            out.append(tuple(r[i:]) + tuple(r[:i]))
        else:
            out.append(())
    return tuple(out)


def default_outer(faces: Sequence[Sequence[HalfEdge]]) -> int:
    """Index of the face containing the lexicographically smallest half-edge."""
    best = None
    for i, walk in enumerate(faces):
        if walk:
            m = min(walk)
            if best is None or m < best[0]:
                best = (m, i)
    return 0 if best is None else best[1]


def faces_of_edge(pg: PlaneGraph, e: tuple[int, int]) -> tuple[int, int]:
    """Lengths of the faces on the two sides of ``e`` (equal for a bridge)."""
    u, v = e
    try:
        f1 = pg.face_of[(u, v)]
        f2 = pg.face_of[(v, u)]
    except KeyError:
        raise KeyError(f"edge {e} is not in the graph") from None
    return len(pg.faces[f1]), len(pg.faces[f2])


# ---------------------------------------------------------------------------
# Kuratowski witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    """A K5 or K3,3 subdivision inside a graph."""

    kind: str  # "K5" or "K33"
    branch: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph) -> bool:
        branch = set(self.branch)
        if self.kind == "K5":
            if len(branch) != 5 or len(self.paths) != 10:
                return False
        elif self.kind == "K33":
            if len(branch) != 6 or len(self.paths) != 9:
                return False
        else:
            return False
        interior: set[int] = set()
        pairs = set()
        for p in self.paths:
            if len(p) < 2 or p[0] not in branch or p[-1] not in branch or p[0] == p[-1]:
                return False
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    return False
            inner = set(p[1:-1])
            if len(inner) != len(p) - 2 or inner & branch or inner & interior:
                return False
            interior |= inner
            pairs.add(frozenset((p[0], p[-1])))
        if len(pairs) != len(self.paths):
            return False
        if self.kind == "K5":
            return True
        # the nine pairs must form a complete bipartite graph K3,3
        b = sorted(branch)
        adj = {v: {w for w in b if frozenset((v, w)) in pairs} for v in b}
        side = {w for w in b if w not in adj[b[0]]}
        other = set(b) - side
        return len(side) == 3 and all(adj[v] == other for v in side) and all(adj[w] == side for w in other)


def _kuratowski_from_subgraph(edges: list[tuple[int, int]]) -> KuratowskiWitness:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    branch = sorted(v for v, nb in adj.items() if len(nb) >= 3)
    bset = set(branch)
    paths = []
    used = set()
    for s in branch:
        for nb in sorted(adj[s]):
            if (s, nb) in used:
                continue
            path = [s, nb]
            prev, cur = s, nb
            while cur not in bset:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
                path.append(cur)
            used.add((path[-1], path[-2]))
            used.add((s, nb))
            paths.append(tuple(path))
    kind = "K5" if len(branch) == 5 else "K33"
    return KuratowskiWitness(kind, tuple(branch), tuple(paths))


def _to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def test_planarity(g: Graph) -> PlaneGraph | KuratowskiWitness:
    """Embed a connected graph, or return a Kuratowski subdivision it contains."""
    if not g.is_connected():
        raise DisconnectedGraphError("planarity test needs a connected graph; split components first")
    ok, cert = nx.check_planarity(_to_nx(g), counterexample=True)
    if not ok:
        return _kuratowski_from_subgraph(list(cert.edges()))
    rotation = [tuple(reversed(list(cert.neighbors_cw_order(v)))) for v in range(g.n)]
    faces = trace_faces(rotation)
    return PlaneGraph.from_rotation(g, rotation, default_outer(faces))


test_planarity.__test__ = False  # not a pytest test


def is_planar(g: Graph) -> bool:
    """Planarity of a possibly disconnected graph."""
    m = g.num_edges
    if m <= 8:
        return True  # K3,3 has 9 edges
    if g.n >= 3 and m > 3 * g.n - 6:
        return False
    return nx.check_planarity(_to_nx(g))[0]


# ---------------------------------------------------------------------------
# all embeddings
# ---------------------------------------------------------------------------


def _insertion_order(g: Graph) -> list[tuple[int, int]]:
    """Edges ordered so every prefix is connected: BFS tree edge, then back edges."""
    order: list[tuple[int, int]] = []
    seen = [False] * g.n
    seen[0] = True
    queue = [0]
    placed: list[int] = [0]
    index = {0: 0}
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in g.neighbors(v):
            if not seen[w]:
                seen[w] = True
                queue.append(w)
                order.append((v, w))
                for x in g.neighbors(w):
                    if x != v and x in index:
                        order.append((x, w))
                index[w] = len(placed)
                placed.append(w)
    return order


def rotation_systems(g: Graph, max_n: int = DEFAULT_MAX_EMBED_N) -> Iterator[Rotation]:
    """Every planar rotation system of a connected graph, one per reflection pair.

    Edges are inserted one at a time into a face containing both endpoints,
    at every admissible pair of corners; each planar rotation system arises
    from exactly one choice sequence.
    """
    if g.n > max_n:
        raise ValueError(f"all_embeddings is limited to n <= {max_n} (got {g.n})")
    if not g.is_connected():
        raise DisconnectedGraphError("embedding enumeration needs a connected graph")
    if g.n == 1:
        yield ((),)
        return
    order = _insertion_order(g)
    rot: list[list[int]] = [[] for _ in range(g.n)]

    def corners(v: int, face_of: dict[HalfEdge, int]) -> list[tuple[int, int]]:
        r = rot[v]
        if not r:
            return [(0, -1)]
        return [(i, face_of[(r[i], v)]) for i in range(len(r))]

    def rec(k: int) -> Iterator[Rotation]:
        if k == len(order):
            key = _norm(rot)
            mirror = _norm([list(reversed(r)) for r in rot])
            if key <= mirror:
                yield tuple(tuple(r) for r in rot)
            return
        u, v = order[k]
        face_of = {he: i for i, w in enumerate(trace_faces(rot)) for he in w} if k else {}
        cu = corners(u, face_of)
        cv = corners(v, face_of)
        for iu, fu in cu:
            for iv, fv in cv:
                if fu != fv and fu != -1 and fv != -1:
                    continue
                pu = iu + 1 if rot[u] else 0
                pv = iv + 1 if rot[v] else 0
                rot[u].insert(pu, v)
                rot[v].insert(pv, u)
                yield from rec(k + 1)
                rot[u].pop(pu)
                rot[v].pop(pv)

    yield from rec(0)


def all_embeddings(g: Graph, max_n: int = DEFAULT_MAX_EMBED_N) -> Iterator[PlaneGraph]:
    """One PlaneGraph per (rotation system up to reflection, outer face)."""
    for rot in rotation_systems(g, max_n):
        base = PlaneGraph(g, rot, tuple(trace_faces(rot)), 0)
        base.face_of  # build the half-edge index once for all outer choices
        for outer in range(base.num_faces):
            yield base.with_outer(outer)


def has_embedding(g: Graph) -> bool:
    """Planarity by exhaustive corner insertion (independent of the LR test)."""
    if not g.is_connected():
        return all(has_embedding(g.induced(c)) for c in g.components())
    for _ in rotation_systems(g, max_n=g.n):
        return True
    return False


# ---------------------------------------------------------------------------
# embedding exchange format
# ---------------------------------------------------------------------------


def write_embedding(pg: PlaneGraph) -> str:
    g = pg.graph
    lines = [f"{g.n} {g.num_edges} {pg.num_faces} {pg.outer}"]
    lines.extend(" ".join(str(u) for u in r) for r in pg.rotation)
    return "\n".join(lines) + "\n"


def read_embedding(text: str) -> PlaneGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EmbeddingError("empty embedding file")
    try:
        n, e, f, outer = (int(x) for x in lines[0].split())
    except ValueError:
        raise EmbeddingError("header must be 'n e f outer'") from None
    body = lines[1:]
    if len(body) != n:
        raise EmbeddingError(f"header says {n} vertices, found {len(body)} rotation lines")
    try:
        rotation = [tuple(int(x) for x in line.split()) for line in body]
    except ValueError:
        raise EmbeddingError("rotation lines must be integers") from None
    edges = set()
    for v, r in enumerate(rotation):
        for u in r:
            if not 0 <= u < n or u == v:
                raise EmbeddingError(f"bad neighbour {u} at vertex {v}")
            edges.add((min(u, v), max(u, v)))
    g = Graph.from_edges(n, edges)
    pg = PlaneGraph.from_rotation(g, rotation, outer)
    if g.num_edges != e:
        raise EmbeddingError(f"header says {e} edges, rotation has {g.num_edges}")
    if pg.num_faces != f:
        raise EmbeddingError(f"header says {f} faces, traversal finds {pg.num_faces}")
    return pg


def looks_like_embedding(text: str) -> bool:
    first = text.lstrip("\n").split("\n", 1)[0].split()
    return len(first) == 4 and all(t.lstrip("-").isdigit() for t in first)
