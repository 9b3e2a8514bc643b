"""Independent reference computations used to freeze expected values.

Nothing here calls into the kernels, the canonical labeller, the
planarity wrapper or the face tracer of ``ptl``; every answer is obtained
by a separate route (networkx atlas, brute force, or GraphMatcher).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

import networkx as nx
from networkx.algorithms import isomorphism


def nx_graph(n: int, edges) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return G


K4_NX = nx.complete_graph(4)
THETA5_NX = nx.Graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])


def contains(G: nx.Graph, P: nx.Graph) -> bool:
    """Non-induced subgraph containment via GraphMatcher monomorphisms."""
    return isomorphism.GraphMatcher(G, P).subgraph_is_monomorphic()


def family_free(G: nx.Graph) -> bool:
    return not contains(G, K4_NX) and not contains(G, THETA5_NX)


def planar(G: nx.Graph) -> bool:
    return nx.check_planarity(G)[0]


@lru_cache(maxsize=None)
def atlas_by_order() -> dict[int, list[nx.Graph]]:
    """All graphs on 0..7 vertices up to isomorphism (the networkx atlas)."""
    out: dict[int, list[nx.Graph]] = {}
    for G in nx.graph_atlas_g():
        out.setdefault(G.number_of_nodes(), []).append(G)
    return out


def connected_counts(max_n: int = 7) -> dict[int, int]:
    atlas = atlas_by_order()
    return {n: sum(1 for G in atlas[n] if nx.is_connected(G)) for n in range(1, max_n + 1)}


@lru_cache(maxsize=None)
def free_planar(n: int) -> tuple[nx.Graph, ...]:
    """All {K4, Theta5}-free planar graphs on n <= 7 vertices (any connectivity)."""
    return tuple(G for G in atlas_by_order()[n] if planar(G) and family_free(G))


def naive_ex(n: int) -> int:
    """Planar Turan number of {K4, Theta5} by filtering every isomorphism class.

    n <= 7 reads the atlas directly. n = 8 uses heredity: deleting any
    vertex of a free planar graph leaves a free planar graph, so every
    8-vertex candidate is a 7-vertex one plus a vertex with some
    neighbourhood.
    """
    if n <= 7:
        return max(G.number_of_edges() for G in free_planar(n))
    if n != 8:
        raise ValueError("the naive oracle stops at n = 8")
    cands = []
    for G in free_planar(7):
        for k in range(8):
            for nb in combinations(range(7), k):
                cands.append((G.number_of_edges() + k, G, nb))
    cands.sort(key=lambda t: -t[0])
    for m, G, nb in cands:
        H = G.copy()
        H.add_edges_from((7, v) for v in nb)
        if planar(H) and family_free(H):
            return m
    raise AssertionError("unreachable")


def labelled_iso_classes(n: int) -> int:
    """Isomorphism classes among all 2^C(n,2) labelled graphs, by brute permutation."""
    pairs = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    seen: set[frozenset] = set()
    classes = 0
    for mask in range(1 << len(pairs)):
        es = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if es in seen:
            continue
        classes += 1
        for pi in perms:
            seen.add(frozenset(tuple(sorted((pi[u], pi[v]))) for u, v in es))
    return classes


def brute_occurrence(host_n: int, host_edges, pat_n: int, pat_edges) -> bool:
    """Subgraph containment by trying every injective vertex map."""
    H = {frozenset(e) for e in host_edges}
    for img in permutations(range(host_n), pat_n):
        if all(frozenset((img[u], img[v])) in H for u, v in pat_edges):
            return True
    return False


# ---------------------------------------------------------------------------
# rotation systems by brute force
# ---------------------------------------------------------------------------


def _cyclic_orders(items: list[int]):
    if len(items) <= 1:
        yield tuple(items)
        return
    first, rest = items[0], items[1:]
    for p in permutations(rest):
        yield (first,) + p


def _faces_pred(rot: dict[int, tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    """Face walks with the mirrored rule: after u->v go to v->pred_v(u)."""
    pred = {}
    for v, r in rot.items():
        for i, u in enumerate(r):
            pred[(v, u)] = r[i - 1]
    darts = [(u, v) for v, r in rot.items() for u in r]
    seen, faces = set(), []
    for d in darts:
        if d in seen:
            continue
        walk, cur = [], d
        while cur not in seen:
            seen.add(cur)
            walk.append(cur)
            u, v = cur
            cur = (v, pred[(v, u)])
        faces.append(walk)
    return faces


def brute_embeddings(n: int, edges) -> tuple[int, int, list[list[int]]]:
    """(rotation systems up to reflection, embeddings with an outer face, face lengths per system).

    Tries every product of cyclic orders and keeps those satisfying Euler.
    """
    nbrs = {v: sorted([b for a, b in edges if a == v] + [a for a, b in edges if b == v]) for v in range(n)}
    e = len(edges)
    classes: set = set()
    lengths: dict = {}
    for choice in product(*(list(_cyclic_orders(nbrs[v])) for v in range(n))):
        rot = dict(enumerate(choice))
        faces = _faces_pred(rot)
        if n - e + len(faces) != 2:
            continue
        mirror = tuple(_canon_cycle(tuple(reversed(r))) for r in choice)
        key = min(tuple(_canon_cycle(r) for r in choice), mirror)
        if key not in classes:
            classes.add(key)
            lengths[key] = sorted(len(f) for f in faces)
    total = sum(len(v) for v in lengths.values())
    return len(classes), total, list(lengths.values())


def _canon_cycle(r: tuple[int, ...]) -> tuple[int, ...]:
    if not r:
        return r
    i = r.index(min(r))
    return r[i:] + r[:i]


# ---------------------------------------------------------------------------
# discharging by hand
# ---------------------------------------------------------------------------


def edge_share(len_a: int, len_b: int) -> Fraction:
    return Fraction(1, len_a) + Fraction(1, len_b)


def certificate(f: Fraction, e: int) -> Fraction:
    return 25 * f - 14 * e
