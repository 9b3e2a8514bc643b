"""Simple graphs on dense labels, graph6 I/O, canonical forms, enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels


class GraphFormatError(ValueError):
    """Malformed graph6 input; ``offset`` is the byte where parsing failed."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Adjacency is stored as one int bitmask per vertex.
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int]) -> None:
        if n < 0 or len(rows) != n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {v} names a vertex outside 0..{n - 1}")
            if r >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in _bits(r):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        self._init(n, tuple(rows))

    def _init(self, n: int, rows: tuple[int, ...]) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, n: int, rows: Sequence[int]) -> "Graph":
        g = object.__new__(cls)
        g._init(n, tuple(rows))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._raw(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._raw(n, [0] * n)

    # -- basic queries -----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        full = (1 << self.n) - 1
        return kernels.reach(self.rows, 0, full) == full

    def components(self) -> list[list[int]]:
        left = (1 << self.n) - 1
        out = []
        while left:
            start = (left & -left).bit_length() - 1
            comp = kernels.reach(self.rows, start, left)
            out.append(list(_bits(comp)))
            left &= ~comp
        return out

    # -- derived graphs ----------------------------------------------------

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("self-loop")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._raw(self.n, rows)

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._raw(self.n, rows)

    def with_vertex(self, nbrs: int) -> "Graph":
        """Append vertex ``n`` adjacent to the bitmask ``nbrs``."""
        n = self.n
        rows = list(self.rows)
        for u in _bits(nbrs):
            rows[u] |= 1 << n
        rows.append(nbrs)
        return Graph._raw(n + 1, rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled densely in the given vertex order."""
        idx = {v: i for i, v in enumerate(vertices)}
        rows = [0] * len(vertices)
        for i, v in enumerate(vertices):
            for u in _bits(self.rows[v]):
                j = idx.get(u)
                if j is not None:
                    rows[i] |= 1 << j
        return Graph._raw(len(vertices), rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in _bits(self.rows[v]):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return Graph._raw(self.n, rows)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        rows = list(self.rows) + [r << shift for r in other.rows]
        return Graph._raw(self.n + other.n, rows)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def __reduce__(self):
        return (Graph._raw, (self.n, self.rows))


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 line (without the trailing newline)."""
    if g.n < 1:
        raise ValueError("graph6 needs at least one vertex")
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_n(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line. A single trailing newline is tolerated."""
    if text.endswith("\n"):
        text = text[:-1]
    if text.startswith(">>graph6<<"):
        text = text[10:]
        base = 10
    else:
        base = 0
    if not text:
        raise GraphFormatError("empty graph6 string", base)
    for i, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside the graph6 range", base + i)

    def vals(start: int, count: int) -> int:
        if len(text) < start + count:
            raise GraphFormatError("truncated length header", base + len(text))
        x = 0
        for ch in text[start:start + count]:
            x = (x << 6) | (ord(ch) - 63)
        return x

    if text[0] != "~":
        n, pos = ord(text[0]) - 63, 1
    elif len(text) > 1 and text[1] == "~":
        n, pos = vals(2, 6), 8
        if n <= 258047:
            raise GraphFormatError("8-byte length header used for a small n", base)
    else:
        n, pos = vals(1, 3), 4
        if n <= 62:
            raise GraphFormatError("4-byte length header used for n <= 62", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(text) - pos
    if have < need:
        raise GraphFormatError(f"expected {need} adjacency bytes, found {have}", base + len(text))
    if have > need:
        raise GraphFormatError("trailing bytes after adjacency data", base + pos + need)

    rows = [0] * n
    k = 0
    i, j = 0, 1
    for off in range(need):
        val = ord(text[pos + off]) - 63
        for shift in range(5, -1, -1):
            bit = val >> shift & 1
            if k < nbits:
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise GraphFormatError("non-zero padding bits", base + pos + off)
            k += 1
    return Graph._raw(n, rows)


def read_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class key: the adjacency rows of the canonical relabelling."""

    n: int
    rows: tuple[int, ...]

    def graph(self) -> Graph:
        return Graph._raw(self.n, self.rows)

    def graph6(self) -> str:
        return write_graph6(self.graph())


def canonical_labelling(g: Graph) -> tuple[list[int], list[list[int]]]:
    """``(lab, generators)``: ``lab[i]`` is the vertex given canonical label ``i``."""
    return kernels.canonical_labelling(g.n, g.rows)


def canonical_form(g: Graph) -> CanonicalCode:
    lab, _ = kernels.canonical_labelling(g.n, g.rows)
    return CanonicalCode(g.n, kernels.relabel_code(g.rows, lab))


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph()


def automorphism_orbits(g: Graph) -> list[int]:
    """Smallest member of each vertex's orbit under Aut(g)."""
    _, gens = kernels.canonical_labelling(g.n, g.rows)
    return kernels.orbits(g.n, gens)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# enumeration (canonical augmentation by vertices)
# ---------------------------------------------------------------------------

Pruner = Callable[[Graph], bool]


def _children(g: Graph, pruner: Pruner | None) -> Iterator[Graph]:
    """Accepted one-vertex extensions of a connected graph ``g``.

    A child is kept iff the new vertex lies in the automorphism orbit of the
    child's canonical deletion vertex: the minimum-degree non-cut vertex
    that comes last in canonical order. Children of one parent are then
    deduplicated by canonical code.
    """
    n = g.n
    m = n + 1
    base = list(g.rows)
    seen: set[tuple[int, ...]] = set()
    for s, nc in kernels.augment_candidates(n, base):
        rows = base[:]
        for u in _bits(s):
            rows[u] |= 1 << n
        rows.append(s)
        mindeg = min(rows[v].bit_count() for v in _bits(nc))
        child = Graph._raw(m, rows)
        if pruner is not None and pruner(child):
            continue
        lab, gens = kernels.canonical_labelling(m, rows)
        pos = [0] * m
        for i, v in enumerate(lab):
            pos[v] = i
        mdel = max((v for v in _bits(nc) if rows[v].bit_count() == mindeg), key=pos.__getitem__)
        if mdel != n:
            orb = kernels.orbits(m, gens)
            if orb[mdel] != orb[n]:
                continue
        code = kernels.relabel_code(rows, lab)
        if code in seen:
            continue
        seen.add(code)
        yield child


def walk_graphs(
    n: int,
    pruner: Pruner | None = None,
    *,
    partition: tuple[int, int] = (0, 1),
    split_level: int | None = None,
) -> Iterator[Graph]:
    """Depth-first walk of the generation tree, yielding every level up to ``n``.

    ``partition=(i, k)`` keeps only the subtrees rooted at level
    ``split_level`` whose DFS index is ``i`` mod ``k``; shallower nodes are
    reported by part 0 only. The union over all parts equals the full walk.
    """
    index, count = partition
    if not 0 <= index < count:
        raise ValueError("partition index out of range")
    if split_level is None:
        split_level = min(n, 5)
    root = Graph._raw(1, [0])
    if pruner is not None and pruner(root):
        return
    counter = [0]

    def rec(g: Graph) -> Iterator[Graph]:
        if g.n == split_level:
            mine = counter[0] % count == index
            counter[0] += 1
            if not mine:
                return
        if g.n >= split_level or index == 0:
            yield g
        if g.n < n:
            for child in _children(g, pruner):
                yield from rec(child)

    yield from rec(root)


def enumerate_graphs(
    n: int,
    pruner: Pruner | None = None,
    *,
    partition: tuple[int, int] = (0, 1),
) -> Iterator[Graph]:
    """One representative per isomorphism class of connected ``n``-vertex graphs.

    ``pruner(g)`` returning True discards ``g`` and everything grown from it;
    it must only reject graphs all of whose supergraphs are also rejectable.
    The vertex just added is always ``g.n - 1`` and its parent already passed.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    for g in walk_graphs(n, pruner, partition=partition):
        if g.n == n:
            yield g


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph._raw(n, rows)
