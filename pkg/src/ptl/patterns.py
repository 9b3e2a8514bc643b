"""Forbidden subgraph patterns and family-freeness tests."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable

from . import kernels
from .graph import Graph, canonical_form


@dataclass(frozen=True)
class Pattern:
    """A small connected graph matched as a (not necessarily induced) subgraph."""

    name: str
    graph: Graph

    def __post_init__(self) -> None:
        g = self.graph
        if g.n < 3 or g.n > 8:
            raise ValueError("patterns have between 3 and 8 vertices")
        if not g.is_connected():
            raise ValueError("patterns must be connected")

    @cached_property
    def orders(self) -> tuple[tuple[int, ...], ...]:
        """For each root, a BFS order so every later vertex has an earlier neighbour."""
        g = self.graph
        out = []
        for r in range(g.n):
            order = [r]
            seen = 1 << r
            i = 0
            while i < len(order):
                # prefer high-degree vertices: they constrain the search most
                for w in sorted(g.neighbors(order[i]), key=lambda x: -g.degree(x)):
                    if not seen >> w & 1:
                        seen |= 1 << w
                        order.append(w)
                i += 1
            out.append(tuple(order))
        return tuple(out)

    @cached_property
    def kind(self) -> str:
        g = self.graph
        if g.n == 4 and g.num_edges == 6:
            return "K4"
        if g.n == 5 and g.num_edges == 6 and canonical_form(g) == canonical_form(theta_graph(5, 2)):
            return "Theta5"
        return "generic"

    def find(self, g: Graph, anchor: int = -1) -> tuple[int, ...] | None:
        """Image of each pattern vertex, or None. ``anchor`` restricts to occurrences using it."""
        if g.n < self.graph.n:
            return None
        if self.kind == "K4":
            return kernels.find_k4(g.n, g.rows, anchor)
        if self.kind == "Theta5":
            hit = kernels.find_theta5(g.n, g.rows, anchor)
            if hit is None:
                return None
            return _theta5_image(self.graph, hit)
        return kernels.find_pattern(self.graph.rows, self.orders, g.n, g.rows, anchor)


def _theta5_image(p: Graph, hit: tuple[int, ...]) -> tuple[int, ...]:
    """Compose the kernel's hit (on the reference cycle with chord 0-2) with an iso onto ``p``."""
    ref = theta_graph(5, 2)
    if p == ref:
        return hit
    iso = _iso(p, ref)
    return tuple(hit[iso[i]] for i in range(5))


def _iso(p: Graph, q: Graph) -> list[int]:
    pe = set(p.edges())
    for perm in permutations(range(p.n)):
        if all(q.has_edge(perm[u], perm[v]) for u, v in pe):
            return list(perm)
    raise ValueError("graphs are not isomorphic")


@dataclass(frozen=True)
class Occurrence:
    """An injective vertex map from a pattern into a host graph."""

    pattern: Pattern
    image: tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        img = self.image
        if len(img) != self.pattern.graph.n or len(set(img)) != len(img):
            return False
        if any(not 0 <= v < g.n for v in img):
            return False
        return all(g.has_edge(img[u], img[v]) for u, v in self.pattern.graph.edges())

    def edges(self) -> list[tuple[int, int]]:
        img = self.image
        return [tuple(sorted((img[u], img[v]))) for u, v in self.pattern.graph.edges()]  # type: ignore[misc]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    patterns: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        if not self.patterns:
            raise ValueError("a family needs at least one pattern")

    def first_occurrence(self, g: Graph, anchor: int = -1) -> Occurrence | None:
        for p in self.patterns:
            hit = p.find(g, anchor)
            if hit is not None:
                return Occurrence(p, hit)
        return None

    @property
    def min_order(self) -> int:
        return min(p.graph.n for p in self.patterns)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def theta_graph(k: int, j: int) -> Graph:
    """``C_k`` on ``0..k-1`` plus the chord ``0-j``."""
    if not 2 <= j <= k - 2:
        raise ValueError("chord must join non-consecutive cycle vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)] + [(0, j)])


def theta_patterns(k: int) -> list[Pattern]:
    """One pattern per isomorphism class of a k-cycle plus one chord."""
    if k < 4:
        raise ValueError("theta graphs need k >= 4")
    seen = set()
    out = []
    for j in range(2, k - 1):
        g = theta_graph(k, j)
        code = canonical_form(g)
        if code not in seen:
            seen.add(code)
            out.append(Pattern(f"Theta{k}" if k < 6 else f"Theta{k}[0-{j}]", g))
    return out


K4 = Pattern("K4", complete_graph(4))
THETA4 = theta_patterns(4)[0]
THETA5 = theta_patterns(5)[0]


def _family(name: str, patterns: Iterable[Pattern]) -> FamilySpec:
    return FamilySpec(name, tuple(patterns))


PRESETS: dict[str, FamilySpec] = {
    "K4": _family("K4", [K4]),
    "Theta4": _family("Theta4", [THETA4]),
    "Theta5": _family("Theta5", [THETA5]),
    "Theta6": _family("Theta6", theta_patterns(6)),
    "C4": _family("C4", [Pattern("C4", cycle_graph(4))]),
    "C5": _family("C5", [Pattern("C5", cycle_graph(5))]),
    "C6": _family("C6", [Pattern("C6", cycle_graph(6))]),
    "K4+Theta5": _family("K4+Theta5", [K4, THETA5]),
}

K4_THETA5 = PRESETS["K4+Theta5"]


def family(name: str) -> FamilySpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(PRESETS)}") from None


def contains_subgraph(g: Graph, p: Pattern) -> Occurrence | None:
    hit = p.find(g)
    return None if hit is None else Occurrence(p, hit)


def is_family_free(g: Graph, fam: FamilySpec) -> tuple[bool, Occurrence | None]:
    occ = fam.first_occurrence(g)
    return occ is None, occ
