"""Exhaustive planar Turán numbers for small n."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from .embed import is_planar
from .graph import CanonicalCode, Graph, canonical_form, walk_graphs, write_graph6
from .patterns import FamilySpec, family

SCHEMA_VERSION = 1
DEFAULT_MAX_N = 10
LONG_RUN_MAX_N = 11


class BoundExceeded(ValueError):
    pass


def max_n_bound(long_run: bool = False) -> int:
    env = os.environ.get("PTL_MAX_N")
    if env:
        return int(env)
    return LONG_RUN_MAX_N if long_run else DEFAULT_MAX_N


class FamilyPruner:
    """Rejects a graph as soon as the newest vertex completes a pattern or breaks planarity.

    Both conditions are inherited by supergraphs, so rejection is safe.
    Instances pickle by family name, which keeps them usable in worker pools.
    """

    def __init__(self, fam: FamilySpec | str):
        self.fam = family(fam) if isinstance(fam, str) else fam

    def __reduce__(self):
        return (FamilyPruner, (self.fam.name,))

    def __call__(self, g: Graph) -> bool:
        if self.fam.first_occurrence(g, anchor=g.n - 1) is not None:
            return True
        m = g.num_edges
        if m <= 8:
            return False
        if m > 3 * g.n - 6:
            return True
        return not is_planar(g)


@dataclass
class LevelStats:
    best: int = -1
    witnesses: set[CanonicalCode] = field(default_factory=set)
    examined: int = 0

    def offer(self, g: Graph) -> None:
        self.examined += 1
        m = g.num_edges
        if m > self.best:
            self.best = m
            self.witnesses = {canonical_form(g)}
        elif m == self.best:
            self.witnesses.add(canonical_form(g))

    def merge(self, other: "LevelStats") -> None:
        self.examined += other.examined
        if other.best > self.best:
            self.best = other.best
            self.witnesses = set(other.witnesses)
        elif other.best == self.best:
            self.witnesses |= other.witnesses


def _walk_part(args: tuple[int, str, int, int]) -> dict[int, LevelStats]:
    n, fam_name, index, count = args
    stats: dict[int, LevelStats] = {}
    for g in walk_graphs(n, FamilyPruner(fam_name), partition=(index, count)):
        stats.setdefault(g.n, LevelStats()).offer(g)
    return stats


def connected_maxima(n: int, fam: FamilySpec, workers: int = 1) -> dict[int, LevelStats]:
    """Best connected edge counts for every order 1..n, from one generation walk."""
    parts = max(1, workers)
    jobs = [(n, fam.name, i, parts) for i in range(parts)]
    if parts == 1:
        results = [_walk_part(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_walk_part, jobs))
    merged: dict[int, LevelStats] = {}
    for res in results:
        for level, st in res.items():
            merged.setdefault(level, LevelStats()).merge(st)
    return merged


def _partitions(n: int, largest: int | None = None) -> Iterable[list[int]]:
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield [first] + rest


@dataclass(frozen=True)
class SearchReport:
    n: int
    family: str
    ex: int
    witnesses: tuple[Graph, ...]
    examined: int
    elapsed: float
    connected_ex: int
    disconnected: tuple[int, ...] | None = None  # component orders when a split graph is strictly better

    def report(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "family": self.family,
            "ex": self.ex,
            "connected_ex": self.connected_ex,
            "disconnected_components": list(self.disconnected) if self.disconnected else None,
            "witnesses": [write_graph6(w) for w in self.witnesses],
            "examined": self.examined,
        }


def _combine(n: int, best: dict[int, int]) -> tuple[int, tuple[int, ...] | None]:
    top = best.get(n, -1)
    split: tuple[int, ...] | None = None
    for parts in _partitions(n):
        if len(parts) < 2:
            continue
        total = sum(best[p] for p in parts)
        if total > top:
            top, split = total, tuple(parts)
    return top, split


def max_edges(
    n: int,
    fam: FamilySpec | str,
    *,
    workers: int = 1,
    long_run: bool = False,
    _levels: dict[int, LevelStats] | None = None,
) -> SearchReport:
    fam = family(fam) if isinstance(fam, str) else fam
    bound = max_n_bound(long_run)
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the exhaustive bound {bound} (set PTL_MAX_N to override)")
    t0 = time.perf_counter()
    levels = _levels if _levels is not None else connected_maxima(n, fam, workers)
    best = {k: levels[k].best if k in levels else -1 for k in range(1, n + 1)}
    ex, split = _combine(n, best)
    if split is None:
        codes = sorted(levels[n].witnesses) if n in levels else []
        witnesses = tuple(c.graph() for c in codes)
    else:
        g = Graph.empty(0)
        for p in split:
            g = g.disjoint_union(min(levels[p].witnesses).graph())
        witnesses = (g,)
    examined = levels[n].examined if n in levels else 0
    return SearchReport(n, fam.name, ex, witnesses, examined, time.perf_counter() - t0, best[n], split)


@dataclass(frozen=True)
class BoundRow:
    n: int
    ex: int
    bound: int
    slack: int
    flagged: bool
    source: str  # "exhaustive" or "witness-only lower bound"
    witnesses: tuple[Graph, ...] = ()


def floor_bound(n: int) -> int:
    return 25 * (n - 2) // 11


def bound_table(
    n_values: Iterable[int],
    fam: FamilySpec | str,
    *,
    workers: int = 1,
    long_run: bool = False,
) -> list[BoundRow]:
    """Rows (n, ex, floor(25(n-2)/11), slack); negative slack is flagged below n = 25.

    Orders beyond the exhaustive bound are accepted only where a tight
    witness exists (n = 88k + 24 for K4+Theta5); those rows carry the
    witness edge count as a lower bound.
    """
    fam = family(fam) if isinstance(fam, str) else fam
    ns = sorted(set(n_values))
    cap = max_n_bound(long_run)
    exhaustive = [n for n in ns if n <= cap]
    beyond = [n for n in ns if n > cap]
    for n in beyond:
        if fam.name != "K4+Theta5" or (n - 24) % 88:
            raise BoundExceeded(f"n={n} exceeds the exhaustive bound {cap} and has no committed witness")
    rows = []
    if exhaustive:
        levels = connected_maxima(max(exhaustive), fam, workers)
        for n in exhaustive:
            rep = max_edges(n, fam, long_run=long_run, _levels=levels)
            b = floor_bound(n)
            rows.append(BoundRow(n, rep.ex, b, b - rep.ex, b - rep.ex < 0 and n < 25, "exhaustive", rep.witnesses))
    for n in beyond:
        from .construct import WitnessSpec

        e = WitnessSpec((n - 24) // 88).e
        b = floor_bound(n)
        rows.append(BoundRow(n, e, b, b - e, b - e < 0 and n < 25, "witness-only lower bound"))
    return rows


def table_text(rows: list[BoundRow]) -> str:
    lines = [f"{'n':>4} {'ex':>5} {'bound':>6} {'slack':>6}  note"]
    for r in rows:
        note = []
        if r.flagged:
            note.append("negative slack (n < 25)")
        if r.source != "exhaustive":
            note.append(r.source)
        lines.append(f"{r.n:>4} {r.ex:>5} {r.bound:>6} {r.slack:>6}  {'; '.join(note)}".rstrip())
    return "\n".join(lines)


def table_json(rows: list[BoundRow], fam_name: str) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "family": fam_name,
            "rows": [
                {
                    "n": r.n,
                    "ex": r.ex,
                    "bound": r.bound,
                    "slack": r.slack,
                    "flagged": r.flagged,
                    "source": r.source,
                    "witnesses": [write_graph6(w) for w in r.witnesses],
                }
                for r in rows
            ],
        },
        indent=2,
    )
