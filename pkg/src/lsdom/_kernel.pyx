# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled multicover search kernel.

Same algorithm and node order as ``_pykernel``; see that module for the
description. Runs without the GIL once the input arrays are copied.
"""

from libc.stdlib cimport calloc, free, malloc

FOUND = 1
EXHAUSTED = 0
LIMIT = -1

NAME = "cython"


cdef struct State:
    int nv
    int *cover_ptr
    int *cover_idx
    int *hits_ptr
    int *hits_idx
    int *demand
    int *cnt
    char *avail
    int *availcnt
    int *chosen
    int nchosen
    int *isdef
    int *buckets
    int maxgain
    int *excl_pool
    long long nodes
    long long node_limit
    int aborted


cdef inline void take_out(State *st, int c) noexcept nogil:
    cdef int j
    st.avail[c] = 0
    for j in range(st.hits_ptr[c], st.hits_ptr[c + 1]):
        st.availcnt[st.hits_idx[j]] -= 1


cdef inline void put_back(State *st, int c) noexcept nogil:
    cdef int j
    st.avail[c] = 1
    for j in range(st.hits_ptr[c], st.hits_ptr[c + 1]):
        st.availcnt[st.hits_idx[j]] += 1


cdef inline void hit(State *st, int c, int delta) noexcept nogil:
    cdef int j
    for j in range(st.hits_ptr[c], st.hits_ptr[c + 1]):
        st.cnt[st.hits_idx[j]] += delta


cdef int rec(State *st, int r, int depth) noexcept nogil:
    cdef int nv = st.nv
    cdef int u, c, j, d, slack, g, need, nexcl, i
    cdef long long total = 0, acc
    cdef int best_u = -1
    cdef int best_slack = nv + 1
    cdef int *excl
    cdef int *isdef = st.isdef
    cdef int found = 0

    st.nodes += 1
    if st.node_limit >= 0 and st.nodes > st.node_limit:
        st.aborted = 1
        return 0

    for u in range(nv):
        d = st.demand[u] - st.cnt[u]
        if d > 0:
            if d > r:
                return 0
            slack = st.availcnt[u] - d
            if slack < 0:
                return 0
            if slack < best_slack:
                best_slack = slack
                best_u = u
            total += d
            isdef[u] = 1
        else:
            isdef[u] = 0
    if total == 0:
        return 1

    # the r best remaining picks must be able to absorb the total deficit
    for g in range(st.maxgain + 1):
        st.buckets[g] = 0
    for c in range(nv):
        if st.avail[c]:
            g = 0
            for j in range(st.hits_ptr[c], st.hits_ptr[c + 1]):
                g += isdef[st.hits_idx[j]]
            st.buckets[g] += 1
    acc = 0
    i = r
    g = st.maxgain
    while g > 0 and i > 0:
        if st.buckets[g] >= i:
            acc += <long long>g * i
            i = 0
        else:
            acc += <long long>g * st.buckets[g]
            i -= st.buckets[g]
        g -= 1
    if acc < total:
        return 0

    need = st.demand[best_u] - st.cnt[best_u]
    excl = st.excl_pool + depth * nv
    nexcl = 0
    for j in range(st.cover_ptr[best_u], st.cover_ptr[best_u + 1]):
        c = st.cover_idx[j]
        if not st.avail[c]:
            continue
        if st.availcnt[best_u] < need:
            break
        take_out(st, c)
        st.chosen[st.nchosen] = c
        st.nchosen += 1
        hit(st, c, 1)
        if rec(st, r - 1, depth + 1):
            found = 1
            break
        if st.aborted:
            return 0
        hit(st, c, -1)
        st.nchosen -= 1
        excl[nexcl] = c
        nexcl += 1
    if found:
        return 1
    for i in range(nexcl):
        put_back(st, excl[i])
    return 0


def _csr(lists):
    ptr = [0]
    idx = []
    for row in lists:
        idx.extend(row)
        ptr.append(len(idx))
    return ptr, idx


cdef int *_int_array(values) except NULL:
    cdef int n = len(values)
    cdef int *out = <int *>malloc((n if n > 0 else 1) * sizeof(int))
    cdef int i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = values[i]
    return out


def search(cover, hits, demand, int budget, forced_in=(), forced_out=(), long long node_limit=-1):
    """Decide whether ``budget`` more picks can meet every demand.

    Returns ``(status, picks, nodes)`` exactly like ``_pykernel.search``.
    """
    cdef State st
    cdef int nv = len(demand)
    cdef int c, u, j, ok, maxgain
    cp, ci = _csr(cover)
    hp, hi = _csr(hits)
    maxgain = 0
    for c in range(nv):
        if hp[c + 1] - hp[c] > maxgain:
            maxgain = hp[c + 1] - hp[c]

    st.nv = nv
    st.cover_ptr = st.cover_idx = st.hits_ptr = st.hits_idx = st.demand = NULL
    st.cnt = st.availcnt = st.chosen = st.isdef = st.buckets = st.excl_pool = NULL
    st.avail = NULL
    try:
        st.cover_ptr = _int_array(cp)
        st.cover_idx = _int_array(ci)
        st.hits_ptr = _int_array(hp)
        st.hits_idx = _int_array(hi)
        st.demand = _int_array(demand)
        st.cnt = <int *>calloc(nv + 1, sizeof(int))
        st.availcnt = <int *>calloc(nv + 1, sizeof(int))
        st.chosen = <int *>calloc(nv + 1, sizeof(int))
        st.isdef = <int *>calloc(nv + 1, sizeof(int))
        st.buckets = <int *>calloc(maxgain + 2, sizeof(int))
        st.excl_pool = <int *>calloc(<size_t>(nv + 2) * (nv + 1), sizeof(int))
        st.avail = <char *>malloc(nv + 1)
        if (st.cnt == NULL or st.availcnt == NULL or st.chosen == NULL or st.isdef == NULL
                or st.buckets == NULL or st.excl_pool == NULL or st.avail == NULL):
            raise MemoryError()
        st.maxgain = maxgain
        st.nchosen = 0
        st.nodes = 0
        st.node_limit = node_limit
        st.aborted = 0
        for c in range(nv):
            st.avail[c] = 1
        for u in range(nv):
            st.availcnt[u] = cp[u + 1] - cp[u]
        for c in forced_out:
            if st.avail[c]:
                take_out(&st, c)
        for c in forced_in:
            if st.avail[c]:
                take_out(&st, c)
            st.chosen[st.nchosen] = c
            st.nchosen += 1
            hit(&st, c, 1)
        with nogil:
            ok = rec(&st, budget, 0)
        if st.aborted:
            return LIMIT, [], st.nodes
        if ok:
            return FOUND, sorted(st.chosen[j] for j in range(st.nchosen)), st.nodes
        return EXHAUSTED, [], st.nodes
    finally:
        free(st.cover_ptr)
        free(st.cover_idx)
        free(st.hits_ptr)
        free(st.hits_idx)
        free(st.demand)
        free(st.cnt)
        free(st.availcnt)
        free(st.chosen)
        free(st.isdef)
        free(st.buckets)
        free(st.excl_pool)
        free(st.avail)
