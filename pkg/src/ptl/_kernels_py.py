"""Pure-Python bitset kernels.

Every function here has a twin in ``_kernels.pyx`` with identical results.
Graphs are passed as ``n`` plus a sequence of adjacency rows, row ``v``
being an int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.
"""

from __future__ import annotations

from typing import Sequence

IMPL = "python"


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------


def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts until the ordered partition is equitable."""
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    changed = True
                    for key in sorted(groups):
                        out.append(groups[key])
            if changed:
                cells = out
                break
    return cells


def _code(rows: Sequence[int], lab: Sequence[int]) -> tuple[int, ...]:
    n = len(lab)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    code = []
    for v in lab:
        r = 0
        x = rows[v]
        while x:
            low = x & -x
            r |= 1 << pos[low.bit_length() - 1]
            x ^= low
        code.append(r)
    return tuple(code)


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


def canonical_labelling(n: int, rows: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Return ``(lab, gens)``.

    ``lab[i]`` is the vertex placed at canonical position ``i``; ``gens``
    generates the automorphism group (each a list mapping ``v -> g[v]``).
    """
    if n == 0:
        return [], []
    gens: list[list[int]] = []
    # twins are swapped by a transposition fixing everything else
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                g = list(range(n))
                g[u], g[v] = v, u
                gens.append(g)

    init: dict[int, list[int]] = {}
    for v in range(n):
        init.setdefault(rows[v].bit_count(), []).append(v)
    cells = [init[d] for d in sorted(init)]

    state: dict = {"first": None, "first_code": None, "best": None, "best_code": None}

    def leaf(lab: list[int]) -> None:
        code = _code(rows, lab)
        if state["first"] is None:
            state["first"] = state["best"] = lab
            state["first_code"] = state["best_code"] = code
            return
        for ref, ref_code in ((state["first"], state["first_code"]), (state["best"], state["best_code"])):
            if code == ref_code:
                g = [0] * n
                for i in range(n):
                    g[ref[i]] = lab[i]
                gens.append(g)
                return
        if code > state["best_code"]:
            state["best"] = lab
            state["best_code"] = code

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(rows, cells)
        t = -1
        for i, c in enumerate(cells):
            if len(c) > 1:
                t = i
                break
        if t < 0:
            leaf([c[0] for c in cells])
            return
        target = cells[t]
        done: list[int] = []
        for v in target:
            if done:
                stab = [g for g in gens if all(g[p] == p for p in prefix)]
                if stab:
                    roots = _orbit_roots(n, stab)
                    if any(roots[v] == roots[w] for w in done):
                        continue
            done.append(v)
            rest = [w for w in target if w != v]
            search(cells[:t] + [[v], rest] + cells[t + 1:], prefix + [v])

    search(cells, [])
    return list(state["best"]), gens


def orbits(n: int, gens: list[list[int]]) -> list[int]:
    """Orbit representative (smallest member) of each vertex."""
    return _orbit_roots(n, gens)


def relabel_code(rows: Sequence[int], lab: Sequence[int]) -> tuple[int, ...]:
    return _code(rows, lab)


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def reach(rows: Sequence[int], start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def noncut_mask(n: int, rows: Sequence[int]) -> int:
    """Vertices whose removal leaves the rest connected (graph assumed connected)."""
    full = (1 << n) - 1
    if n <= 2:
        return full
    out = 0
    for v in range(n):
        allowed = full & ~(1 << v)
        start = (allowed & -allowed).bit_length() - 1
        if reach(rows, start, allowed) == allowed:
            out |= 1 << v
    return out


def augment_candidates(n: int, rows: Sequence[int]) -> list[tuple[int, int]]:
    """Neighbour sets ``s`` for a new vertex ``n`` that pass the degree pre-filter.

    Returns ``(s, noncut)`` pairs where ``noncut`` is the non-cut mask of the
    extended graph and the new vertex's degree is at most the minimum degree
    among non-cut vertices.
    """
    m = n + 1
    out = []
    base = list(rows)
    for s in range(1, 1 << n):
        ext = base[:]
        for u in _bits(s):
            ext[u] |= 1 << n
        ext.append(s)
        nc = noncut_mask(m, ext)
        dnew = s.bit_count()
        ok = True
        for v in _bits(nc):
            if ext[v].bit_count() < dnew:
                ok = False
                break
        if ok:
            out.append((s, nc))
    return out


# ---------------------------------------------------------------------------
# forbidden subgraphs
# ---------------------------------------------------------------------------


def _ball2(rows: Sequence[int], v: int) -> int:
    ball = rows[v] | (1 << v)
    for u in _bits(rows[v]):
        ball |= rows[u]
    return ball


def find_k4(n: int, rows: Sequence[int], anchor: int = -1) -> tuple[int, ...] | None:
    """Return four pairwise adjacent vertices (containing ``anchor`` if given)."""
    verts = range(n) if anchor < 0 else (anchor,)
    for a in verts:
        for b in _bits(rows[a]):
            common = rows[a] & rows[b]
            for c in _bits(common):
                d = rows[c] & common
                if d:
                    return (a, b, c, (d & -d).bit_length() - 1)
    return None


def find_theta5(n: int, rows: Sequence[int], anchor: int = -1) -> tuple[int, ...] | None:
    """Return ``(a, c, b, y, x)`` spelling a 5-cycle whose chord is ``ab``.

    A theta graph on five vertices is a triangle ``abc`` and a 4-cycle
    ``a x y b`` sharing the edge ``ab``; the result maps the pattern
    cycle ``0-1-2-3-4`` with chord ``0-2`` onto the graph.
    """
    if anchor < 0:
        allowed = (1 << n) - 1
    else:
        allowed = _ball2(rows, anchor)
    for a in _bits(allowed):
        ra = rows[a] & allowed
        for b in _bits(ra):
            if b <= a:
                continue
            rb = rows[b] & allowed
            common = ra & rb
            if not common:
                continue
            for x in _bits(ra & ~(1 << b)):
                ys = rows[x] & rb & ~((1 << a) | (1 << x))
                for y in _bits(ys):
                    cs = common & ~((1 << x) | (1 << y))
                    for c in _bits(cs):
                        if anchor < 0 or anchor in (a, b, c, x, y):
                            return (a, c, b, y, x)
    return None


def find_pattern(
    prows: Sequence[int],
    orders: Sequence[Sequence[int]],
    n: int,
    rows: Sequence[int],
    anchor: int = -1,
) -> tuple[int, ...] | None:
    """Generic subgraph (not induced) matcher.

    ``orders[r]`` is a connected visiting order of the pattern starting at
    pattern vertex ``r``. Without an anchor only ``orders[0]`` is used; with
    one, each pattern vertex in turn is pinned onto ``anchor``.
    """
    k = len(prows)
    pdeg = [x.bit_count() for x in prows]
    gdeg = [x.bit_count() for x in rows]
    full = (1 << n) - 1

    def run(order: Sequence[int], first_cands: int) -> tuple[int, ...] | None:
        img = [-1] * k
        back = []
        for i, pv in enumerate(order):
            back.append([pu for pu in order[:i] if prows[pv] >> pu & 1])

        def rec(i: int, used: int) -> bool:
            if i == k:
                return True
            pv = order[i]
            cand = first_cands if i == 0 else full
            for pu in back[i]:
                cand &= rows[img[pu]]
            cand &= ~used
            need = pdeg[pv]
            for v in _bits(cand):
                if gdeg[v] < need:
                    continue
                img[pv] = v
                if rec(i + 1, used | (1 << v)):
                    return True
            img[pv] = -1
            return False

        if rec(0, 0):
            return tuple(img)
        return None

    if anchor < 0:
        return run(orders[0], full)
    for r in range(k):
        hit = run(orders[r], 1 << anchor)
        if hit is not None:
            return hit
    return None
