# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels; results match ``_kernels_py`` exactly.

Rows are packed into ``uint64_t`` words, so the fast paths cover graphs
with at most 64 vertices (63 for ``augment_candidates``, which adds one).
Larger inputs are delegated to the pure-Python twin.
"""

from libc.stdint cimport uint64_t

from . import _kernels_py as _py

IMPL = "cython"

cdef enum:
    MAXN = 64


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline bint _load(rows, int n, uint64_t* out):
    cdef int i
    if n > MAXN:
        return False
    for i in range(n):
        out[i] = <uint64_t>rows[i]
    return True


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


cdef uint64_t _reach(const uint64_t* rows, int start, uint64_t allowed) nogil:
    cdef uint64_t seen = (<uint64_t>1) << start
    cdef uint64_t frontier = seen
    cdef uint64_t nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= rows[lowbit(f)]
            f &= f - 1
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


cdef uint64_t _full(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef uint64_t _noncut(int n, const uint64_t* rows) nogil:
    cdef uint64_t full = _full(n)
    cdef uint64_t out = 0, allowed
    cdef int v
    if n <= 2:
        return full
    for v in range(n):
        allowed = full & ~((<uint64_t>1) << v)
        if _reach(rows, lowbit(allowed), allowed) == allowed:
            out |= (<uint64_t>1) << v
    return out


def reach(rows, int start, allowed):
    cdef uint64_t buf[MAXN]
    cdef int n = len(rows)
    if not _load(rows, n, buf) or allowed >> 64:
        return _py.reach(rows, start, allowed)
    return int(_reach(buf, start, <uint64_t>allowed))


def noncut_mask(int n, rows):
    cdef uint64_t buf[MAXN]
    if not _load(rows, n, buf):
        return _py.noncut_mask(n, rows)
    return int(_noncut(n, buf))


def augment_candidates(int n, rows):
    cdef uint64_t buf[MAXN]
    cdef uint64_t s, nc, f, top
    cdef int m = n + 1, dnew, u
    cdef bint ok
    if m > MAXN:
        return _py.augment_candidates(n, rows)
    for u in range(n):
        buf[u] = <uint64_t>rows[u]
    out = []
    top = (<uint64_t>1) << n
    s = 1
    while s < top:
        f = s
        while f:
            u = lowbit(f)
            buf[u] |= top
            f &= f - 1
        buf[n] = s
        nc = _noncut(m, buf)
        dnew = popc(s)
        ok = True
        f = nc
        while f:
            if popc(buf[lowbit(f)]) < dnew:
                ok = False
                break
            f &= f - 1
        if ok:
            out.append((s, nc))
        f = s
        while f:
            buf[lowbit(f)] &= ~top
            f &= f - 1
        s += 1
    return out


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------


cdef list _refine(const uint64_t* rows, list cells):
    cdef bint changed = True
    cdef uint64_t smask
    cdef int s, v, key
    cdef list out, cell
    cdef dict groups
    while changed:
        changed = False
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= (<uint64_t>1) << v
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups = {}
                for v in cell:
                    key = popc(rows[v] & smask)
                    if key in groups:
                        (<list>groups[key]).append(v)
                    else:
                        groups[key] = [v]
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


cdef tuple _code(const uint64_t* rows, list lab):
    cdef int n = len(lab)
    cdef int pos[MAXN]
    cdef int i, v
    cdef uint64_t x, r
    for i in range(n):
        pos[<int>lab[i]] = i
    code = []
    for i in range(n):
        v = lab[i]
        x = rows[v]
        r = 0
        while x:
            r |= (<uint64_t>1) << pos[lowbit(x)]
            x &= x - 1
        code.append(int(r))
    return tuple(code)


cdef class _Search:
    cdef uint64_t rows[MAXN]
    cdef int n
    cdef public list gens
    cdef object first, first_code, best, best_code

    def __cinit__(self):
        self.first = None
        self.best = None

    cdef void leaf(self, list lab):
        cdef int i
        code = _code(self.rows, lab)
        if self.first is None:
            self.first = self.best = lab
            self.first_code = self.best_code = code
            return
        for ref, ref_code in ((self.first, self.first_code), (self.best, self.best_code)):
            if code == ref_code:
                g = [0] * self.n
                for i in range(self.n):
                    g[ref[i]] = lab[i]
                self.gens.append(g)
                return
        if code > self.best_code:
            self.best = lab
            self.best_code = code

    cdef void search(self, list cells, list prefix):
        cdef int t = -1, i, v
        cdef list target, done, rest, stab, roots
        cells = _refine(self.rows, cells)
        for i in range(len(cells)):
            if len(<list>cells[i]) > 1:
                t = i
                break
        if t < 0:
            self.leaf([c[0] for c in cells])
            return
        target = cells[t]
        done = []
        for v in target:
            if done:
                stab = [g for g in self.gens if all(g[p] == p for p in prefix)]
                if stab:
                    roots = _py._orbit_roots(self.n, stab)
                    if any(roots[v] == roots[w] for w in done):
                        continue
            done.append(v)
            rest = [w for w in target if w != v]
            self.search(cells[:t] + [[v], rest] + cells[t + 1:], prefix + [v])


def canonical_labelling(int n, rows):
    cdef _Search st
    cdef int u, v, d
    cdef uint64_t mu, mv
    if n > MAXN:
        return _py.canonical_labelling(n, rows)
    if n == 0:
        return [], []
    st = _Search()
    st.n = n
    st.gens = []
    for u in range(n):
        st.rows[u] = <uint64_t>rows[u]
    for u in range(n):
        for v in range(u + 1, n):
            mu = st.rows[u] & ~((<uint64_t>1) << v)
            mv = st.rows[v] & ~((<uint64_t>1) << u)
            if mu == mv:
                g = list(range(n))
                g[u], g[v] = v, u
                st.gens.append(g)
    init = {}
    for v in range(n):
        d = popc(st.rows[v])
        init.setdefault(d, []).append(v)
    cells = [init[d] for d in sorted(init)]
    st.search(cells, [])
    return list(st.best), st.gens


def orbits(int n, gens):
    return _py._orbit_roots(n, gens)


def relabel_code(rows, lab):
    cdef uint64_t buf[MAXN]
    cdef int n = len(rows)
    if not _load(rows, n, buf):
        return _py.relabel_code(rows, lab)
    return _code(buf, list(lab))


# ---------------------------------------------------------------------------
# forbidden subgraphs
# ---------------------------------------------------------------------------


cdef uint64_t _ball2(const uint64_t* rows, int v) nogil:
    cdef uint64_t ball = rows[v] | ((<uint64_t>1) << v)
    cdef uint64_t f = rows[v]
    while f:
        ball |= rows[lowbit(f)]
        f &= f - 1
    return ball


def find_k4(int n, rows, int anchor=-1):
    cdef uint64_t buf[MAXN]
    cdef uint64_t fb, fc, common, d
    cdef int a, b, c, lo, hi
    if not _load(rows, n, buf):
        return _py.find_k4(n, rows, anchor)
    if anchor < 0:
        lo, hi = 0, n
    else:
        lo, hi = anchor, anchor + 1
    for a in range(lo, hi):
        fb = buf[a]
        while fb:
            b = lowbit(fb)
            fb &= fb - 1
            common = buf[a] & buf[b]
            fc = common
            while fc:
                c = lowbit(fc)
                fc &= fc - 1
                d = buf[c] & common
                if d:
                    return (a, b, c, lowbit(d))
    return None


def find_theta5(int n, rows, int anchor=-1):
    cdef uint64_t buf[MAXN]
    cdef uint64_t allowed, ra, rb, common, fa, fb, fx, fy, fc
    cdef int a, b, x, y, c
    if not _load(rows, n, buf):
        return _py.find_theta5(n, rows, anchor)
    if anchor < 0:
        allowed = _full(n)
    else:
        allowed = _ball2(buf, anchor)
    fa = allowed
    while fa:
        a = lowbit(fa)
        fa &= fa - 1
        ra = buf[a] & allowed
        fb = ra
        while fb:
            b = lowbit(fb)
            fb &= fb - 1
            if b <= a:
                continue
            rb = buf[b] & allowed
            common = ra & rb
            if not common:
                continue
            fx = ra & ~((<uint64_t>1) << b)
            while fx:
                x = lowbit(fx)
                fx &= fx - 1
                fy = buf[x] & rb & ~(((<uint64_t>1) << a) | ((<uint64_t>1) << x))
                while fy:
                    y = lowbit(fy)
                    fy &= fy - 1
                    fc = common & ~(((<uint64_t>1) << x) | ((<uint64_t>1) << y))
                    while fc:
                        c = lowbit(fc)
                        fc &= fc - 1
                        if anchor < 0 or anchor == a or anchor == b or anchor == c or anchor == x or anchor == y:
                            return (a, c, b, y, x)
    return None


cdef class _Matcher:
    cdef uint64_t rows[MAXN]
    cdef uint64_t prows[16]
    cdef int pdeg[16]
    cdef int gdeg[MAXN]
    cdef int order[16]
    cdef int back[16][16]
    cdef int nback[16]
    cdef int img[16]
    cdef int k, n
    cdef uint64_t first, full

    cdef void prepare(self, order):
        cdef int i, j, pv, pu
        for i in range(self.k):
            self.order[i] = order[i]
        for i in range(self.k):
            pv = self.order[i]
            self.nback[i] = 0
            for j in range(i):
                pu = self.order[j]
                if (self.prows[pv] >> pu) & 1:
                    self.back[i][self.nback[i]] = pu
                    self.nback[i] += 1

    cdef bint rec(self, int i, uint64_t used):
        cdef int pv, j, v
        cdef uint64_t cand
        if i == self.k:
            return True
        pv = self.order[i]
        cand = self.first if i == 0 else self.full
        for j in range(self.nback[i]):
            cand &= self.rows[self.img[self.back[i][j]]]
        cand &= ~used
        while cand:
            v = lowbit(cand)
            cand &= cand - 1
            if self.gdeg[v] < self.pdeg[pv]:
                continue
            self.img[pv] = v
            if self.rec(i + 1, used | ((<uint64_t>1) << v)):
                return True
        self.img[pv] = -1
        return False


def find_pattern(prows, orders, int n, rows, int anchor=-1):
    cdef _Matcher mt
    cdef int k = len(prows), i, r
    if n > MAXN or k > 16:
        return _py.find_pattern(prows, orders, n, rows, anchor)
    mt = _Matcher()
    mt.k = k
    mt.n = n
    mt.full = _full(n)
    for i in range(n):
        mt.rows[i] = <uint64_t>rows[i]
        mt.gdeg[i] = popc(mt.rows[i])
    for i in range(k):
        mt.prows[i] = <uint64_t>prows[i]
        mt.pdeg[i] = popc(mt.prows[i])
        mt.img[i] = -1
    if anchor < 0:
        mt.prepare(orders[0])
        mt.first = mt.full
        if mt.rec(0, 0):
            return tuple(mt.img[i] for i in range(k))
        return None
    for r in range(k):
        mt.prepare(orders[r])
        mt.first = (<uint64_t>1) << anchor
        for i in range(k):
            mt.img[i] = -1
        if mt.rec(0, 0):
            return tuple(mt.img[i] for i in range(k))
    return None
