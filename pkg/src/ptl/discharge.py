"""Face contributions, block certificates, and the degree-reduction bound chain.

Every quantity here is an exact ``Fraction``; nothing is ever rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Callable, Sequence

import networkx as nx

from .blocks import BlockDecomposition, TriangularBlock, decompose
from .embed import PlaneGraph, faces_of_edge
from .graph import Graph
from .patterns import K4_THETA5, FamilySpec, Occurrence

Edge = tuple[int, int]

SCHEMA_VERSION = 1
FACE_WEIGHT = 25
EDGE_WEIGHT = 14


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def edge_contribution(pg: PlaneGraph, e: Edge) -> Fraction:
    l1, l2 = faces_of_edge(pg, e)
    return Fraction(1, l1) + Fraction(1, l2)


def block_contribution(pg: PlaneGraph, b: TriangularBlock) -> Fraction:
    return sum((edge_contribution(pg, e) for e in b.edges), Fraction(0))


def certificate(f: Fraction, e: int) -> Fraction:
    return FACE_WEIGHT * f - EDGE_WEIGHT * e


def block_certificate(pg: PlaneGraph, b: TriangularBlock) -> Fraction:
    return certificate(block_contribution(pg, b), b.num_edges)


@dataclass(frozen=True)
class BlockRow:
    block: TriangularBlock
    f: Fraction
    c: Fraction


@dataclass(frozen=True)
class DischargeLedger:
    plane: PlaneGraph = field(repr=False)
    edge_f: dict[Edge, Fraction] = field(repr=False)
    rows: tuple[BlockRow, ...]
    f_total: Fraction
    e_total: int
    c_total: Fraction

    @property
    def num_faces(self) -> int:
        return self.plane.num_faces

    def face_shares(self) -> list[Fraction]:
        """Sum, for each face, of the edge shares that face hands out (each should be 1)."""
        hits = [0] * self.plane.num_faces
        for fi in self.plane.face_of.values():
            hits[fi] += 1
        return [Fraction(h, len(w)) if w else Fraction(1) for h, w in zip(hits, self.plane.faces)]

    def identities(self) -> dict[str, bool]:
        pg = self.plane
        g = pg.graph
        return {
            "edge_sum": sum(r.block.num_edges for r in self.rows) == self.e_total == g.num_edges,
            "face_sum": sum((r.f for r in self.rows), Fraction(0)) == self.f_total == pg.num_faces,
            "certificate_sum": sum((r.c for r in self.rows), Fraction(0)) == self.c_total,
            "face_normalization": all(s == 1 for s in self.face_shares()),
            "euler": g.n - g.num_edges + pg.num_faces == 1 + len(g.components()),
        }

    def report(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.plane.graph.n,
            "e": self.e_total,
            "faces": self.num_faces,
            "outer_face": self.plane.outer,
            "blocks": [
                {
                    "class": r.block.tag,
                    "vertices": list(r.block.vertices),
                    "e": r.block.num_edges,
                    "f": frac_str(r.f),
                    "c": frac_str(r.c),
                }
                for r in self.rows
            ],
            "f_total": frac_str(self.f_total),
            "c_total": frac_str(self.c_total),
            "identities": self.identities(),
        }


def ledger(pg: PlaneGraph, dec: BlockDecomposition | None = None) -> DischargeLedger:
    if dec is None:
        dec = decompose(pg)
    lengths = [len(w) for w in pg.faces]
    # integer numerators over a common denominator keep the sums exact and cheap
    den = lcm(*lengths) if lengths else 1
    unit = [den // L if L else 0 for L in lengths]
    face_of = pg.face_of
    num: dict[Edge, int] = {}
    for u, v in pg.graph.edges():
        num[(u, v)] = unit[face_of[(u, v)]] + unit[face_of[(v, u)]]
    edge_f = {e: Fraction(x, den) for e, x in num.items()}
    rows = []
    for b in dec.blocks:
        f = Fraction(sum(num[e] for e in b.edges), den)
        rows.append(BlockRow(b, f, certificate(f, b.num_edges)))
    f_total = Fraction(sum(num.values()), den)
    e_total = pg.graph.num_edges
    return DischargeLedger(pg, edge_f, tuple(rows), f_total, e_total, certificate(f_total, e_total))


PASS = "PASS"
FAIL = "FAIL"
PRECONDITION = "PRECONDITION"


@dataclass(frozen=True)
class CertificateResult:
    verdict: str
    ledger: DischargeLedger
    violations: tuple[str, ...] = ()
    witness: Occurrence | None = None
    low_degree_vertex: int | None = None
    positive_blocks: tuple[BlockRow, ...] = ()

    def report(self) -> dict[str, Any]:
        out = self.ledger.report()
        out["verdict"] = self.verdict
        out["violations"] = list(self.violations)
        if self.witness is not None:
            out["witness"] = {"pattern": self.witness.pattern.name, "image": list(self.witness.image)}
        if self.low_degree_vertex is not None:
            out["low_degree_vertex"] = self.low_degree_vertex
        return out

    def to_json(self) -> str:
        return json.dumps(self.report(), indent=2)


def lemma32_check(pg: PlaneGraph, fam: FamilySpec = K4_THETA5) -> CertificateResult:
    """Certificate check under minimum degree three.

    Preconditions (connected, family-free, minimum degree at least 3) are
    checked and reported; the ledger is computed regardless.
    """
    g = pg.graph
    led = ledger(pg)
    violations = []
    occ = fam.first_occurrence(g)
    if not g.is_connected():
        violations.append("graph is disconnected")
    if occ is not None:
        violations.append(f"contains {occ.pattern.name} on vertices {list(occ.image)}")
    low = None
    for v in range(g.n):
        if g.degree(v) < 3:
            low = v
            violations.append(f"vertex {v} has degree {g.degree(v)} < 3")
            break
    positive = tuple(r for r in led.rows if r.c > 0)
    if violations:
        verdict = PRECONDITION
    elif positive or led.c_total > 0 or not all(led.identities().values()):
        verdict = FAIL
    else:
        verdict = PASS
    return CertificateResult(verdict, led, tuple(violations), occ, low, positive)


# ---------------------------------------------------------------------------
# degree reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    original: Graph = field(repr=False)
    steps: tuple[tuple[int, int], ...]  # (vertex, degree at deletion)
    kept: tuple[int, ...]  # original labels of the survivors, ascending
    core: Graph  # survivors relabelled 0..n'-1 in the order of ``kept``

    @property
    def n_prime(self) -> int:
        return self.core.n

    @property
    def e_prime(self) -> int:
        return self.core.num_edges

    @property
    def removed_edges(self) -> list[int]:
        return [d for _, d in self.steps]


def reduce_min_degree(g: Graph, pick: Callable[[Sequence[int]], int] | None = None) -> ReductionTrace:
    """Delete vertices of degree at most 2 until none is left.

    ``pick`` chooses among the current candidates (sorted ascending); the
    default takes the smallest label.
    """
    rows = list(g.rows)
    alive = (1 << g.n) - 1
    steps = []
    while True:
        cands = [v for v in range(g.n) if alive >> v & 1 and (rows[v] & alive).bit_count() <= 2]
        if not cands:
            break
        v = cands[0] if pick is None else pick(cands)
        if v not in cands:
            raise ValueError(f"picked vertex {v} is not deletable")
        steps.append((v, (rows[v] & alive).bit_count()))
        alive &= ~(1 << v)
    kept = tuple(v for v in range(g.n) if alive >> v & 1)
    return ReductionTrace(g, tuple(steps), kept, g.induced(kept))


# ---------------------------------------------------------------------------
# block counting chain
# ---------------------------------------------------------------------------

SIZE_CONSTANTS = {2: 14, 3: 17, 4: 20, 5: 25}


def size_class(nv: int) -> int:
    return min(nv, 5)


def biconnected_blocks(g: Graph) -> list[tuple[tuple[int, ...], tuple[Edge, ...]]]:
    """2-connected blocks (bridges included) as (vertices, edges), sorted."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    out = []
    for comp in nx.biconnected_component_edges(G):
        es = tuple(sorted((min(u, v), max(u, v)) for u, v in comp))
        vs = tuple(sorted({x for e in es for x in e}))
        out.append((vs, es))
    out.sort()
    return out


@dataclass(frozen=True)
class BlockTerm:
    vertices: tuple[int, ...]
    n: int
    e: int
    term: int  # 25 n_i - 11 e_i - 25
    constant: int  # claimed lower bound for this size class

    @property
    def size(self) -> int:
        return size_class(self.n)

    @property
    def meets_constant(self) -> bool:
        return self.term >= self.constant


@dataclass(frozen=True)
class BlockCountBound:
    n: int
    e: int
    trace: ReductionTrace = field(repr=False)
    terms: tuple[BlockTerm, ...]
    components: int
    exact: int  # 25 n - 11 e
    verdict: str | None  # None below n = 25
    violations: tuple[str, ...] = ()

    @property
    def b(self) -> dict[int, int]:
        out = {2: 0, 3: 0, 4: 0, 5: 0}
        for t in self.terms:
            out[t.size] += 1
        return out

    @property
    def empty_core(self) -> bool:
        return self.trace.n_prime == 0

    @property
    def lower_bound(self) -> int:
        """25 b5 + 20 b4 + 17 b3 + 14 b2 + 25 per core component (n + 37 for an empty core)."""
        if self.empty_core:
            return self.n + 37
        b = self.b
        return sum(SIZE_CONSTANTS[s] * b[s] for s in b) + 25 * self.components

    @property
    def core_value(self) -> int:
        c = self.trace.core
        return 25 * c.n - 11 * c.num_edges

    @property
    def deleted_value(self) -> int:
        return sum(25 - 11 * d for d in self.trace.removed_edges)

    def chain(self) -> dict[str, bool]:
        """Each inequality of the chain, evaluated on this instance."""
        n_removed = len(self.trace.steps)
        if self.empty_core:
            return {
                "exact_split": self.exact == self.deleted_value,
                "each_deletion_at_most_2": all(d <= 2 for d in self.trace.removed_edges),
                "empty_core_bound": self.exact >= self.n + 37,
            }
        return {
            "exact_split": self.exact == self.core_value + self.deleted_value,
            "core_identity": self.core_value
            == sum(t.term for t in self.terms) + 25 * self.components,
            "per_block_constants": all(t.meets_constant for t in self.terms),
            "core_bound": self.core_value >= self.lower_bound,
            "deletions_add_at_least_one": self.deleted_value >= n_removed,
            "total_bound": self.exact >= self.lower_bound + n_removed,
        }

    def report(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "e": self.e,
            "exact_25n_minus_11e": self.exact,
            "n_prime": self.trace.n_prime,
            "e_prime": self.trace.e_prime,
            "deletions": [list(s) for s in self.trace.steps],
            "b": {f"b{k}": v for k, v in self.b.items()},
            "components": self.components,
            "blocks": [
                {"vertices": list(t.vertices), "n": t.n, "e": t.e, "term": t.term, "constant": t.constant}
                for t in self.terms
            ],
            "lower_bound": self.lower_bound,
            "chain": self.chain(),
            "verdict": self.verdict,
            "violations": list(self.violations),
        }


def bound_chain(g: Graph, fam: FamilySpec = K4_THETA5, planar: bool | None = None) -> BlockCountBound:
    from .embed import is_planar

    violations = []
    occ = fam.first_occurrence(g)
    if occ is not None:
        violations.append(f"contains {occ.pattern.name} on vertices {list(occ.image)}")
    if planar is None:
        planar = is_planar(g)
    if not planar:
        violations.append("graph is not planar")
    trace = reduce_min_degree(g)
    terms = []
    for vs, es in biconnected_blocks(trace.core):
        nv, ne = len(vs), len(es)
        terms.append(BlockTerm(tuple(trace.kept[v] for v in vs), nv, ne, 25 * nv - 11 * ne - 25, SIZE_CONSTANTS[size_class(nv)]))
    comps = len(trace.core.components()) if trace.core.n else 0
    exact = 25 * g.n - 11 * g.num_edges
    verdict = None
    if g.n >= 25:
        verdict = PRECONDITION if violations else (PASS if exact >= 50 else FAIL)
    return BlockCountBound(g.n, g.num_edges, trace, tuple(terms), comps, exact, verdict, tuple(violations))
