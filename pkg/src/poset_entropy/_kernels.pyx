# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Semantics must match ``_kernels_py`` exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, calloc, free, realloc, qsort

DEF MAXN = 24


cdef struct Entry:
    uint64_t mask
    uint64_t count


cdef int _cmp_entry(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<Entry *> a).mask
    cdef uint64_t y = (<Entry *> b).mask
    return (x > y) - (x < y)


def downset_count(list pred, int n):
    """Number of linear extensions by DP over reachable down-sets, one layer
    (down-set size) at a time.

    Counts fit in 64 bits for n <= 20 since e(P) <= n!.
    """
    cdef uint64_t pm[MAXN]
    cdef uint64_t m, bit, c
    cdef Entry *cur = NULL
    cdef Entry *nxt = NULL
    cdef Entry *tmp
    cdef size_t ncur = 1, nnxt, cap_cur = 64, cap_nxt = 0, k, w
    cdef int i, layer
    if n == 0:
        return 1
    if n > 20:
        raise ValueError("downset_count kernel supports n <= 20")
    for i in range(n):
        pm[i] = pred[i]
    try:
        cur = <Entry *> malloc(cap_cur * sizeof(Entry))
        if cur == NULL:
            raise MemoryError()
        cur[0].mask = 0
        cur[0].count = 1
        for layer in range(n):
            if ncur * n > cap_nxt:
                cap_nxt = ncur * n
                tmp = <Entry *> realloc(nxt, cap_nxt * sizeof(Entry))
                if tmp == NULL:
                    raise MemoryError()
                nxt = tmp
            nnxt = 0
            for k in range(ncur):
                m = cur[k].mask
                c = cur[k].count
                for i in range(n):
                    bit = (<uint64_t>1) << i
                    if not (m & bit) and (pm[i] & m) == pm[i]:
                        nxt[nnxt].mask = m | bit
                        nxt[nnxt].count = c
                        nnxt += 1
            qsort(nxt, nnxt, sizeof(Entry), _cmp_entry)
            w = 0
            for k in range(nnxt):
                if w and nxt[w - 1].mask == nxt[k].mask:
                    nxt[w - 1].count += nxt[k].count
                else:
                    nxt[w] = nxt[k]
                    w += 1
            if w > cap_cur:
                cap_cur = w
                tmp = <Entry *> realloc(cur, cap_cur * sizeof(Entry))
                if tmp == NULL:
                    raise MemoryError()
                cur = tmp
            for k in range(w):
                cur[k] = nxt[k]
            ncur = w
        return int(cur[0].count) if ncur else 0
    finally:
        free(cur)
        free(nxt)


def bruteforce_count(list pred, int n):
    """Enumerate all n! permutations and count the order-preserving ones."""
    cdef int perm[MAXN]
    cdef uint64_t pm[MAXN]
    cdef uint64_t seen
    cdef long long total = 0
    cdef int i, j, k, tmp, ok
    if n == 0:
        return 1
    if n > 12:
        raise ValueError("bruteforce_count kernel supports n <= 12")
    for i in range(n):
        perm[i] = i
        pm[i] = pred[i]
    while True:
        seen = 0
        ok = 1
        for i in range(n):
            if (pm[perm[i]] & seen) != pm[perm[i]]:
                ok = 0
                break
            seen |= (<uint64_t>1) << perm[i]
        total += ok
        # next permutation in lexicographic order
        i = n - 2
        while i >= 0 and perm[i] > perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] < perm[i]:
            j -= 1
        tmp = perm[i]; perm[i] = perm[j]; perm[j] = tmp
        j = i + 1
        k = n - 1
        while j < k:
            tmp = perm[j]; perm[j] = perm[k]; perm[k] = tmp
            j += 1
            k -= 1
    return total


cdef struct CanonState:
    int n
    uint64_t pm[MAXN]
    int order[MAXN]
    uint64_t best
    int have_best


cdef void _canon_dfs(CanonState *st, int depth, uint64_t placed, uint64_t code, int bitpos):
    cdef int x, i, nb
    cdef uint64_t c, shift
    if depth == st.n:
        if not st.have_best or code < st.best:
            st.best = code
            st.have_best = 1
        return
    for x in range(st.n):
        if (placed >> x) & 1:
            continue
        if (st.pm[x] & placed) != st.pm[x]:
            continue
        # append one bit per earlier position: is order[i] < x ?
        c = code
        for i in range(depth):
            c = (c << 1) | ((st.pm[x] >> st.order[i]) & 1)
        nb = bitpos - depth
        if st.have_best:
            # compare with the same-length prefix of the best code
            if (st.best >> nb) < c:
                continue
        st.order[depth] = x
        _canon_dfs(st, depth + 1, placed | ((<uint64_t>1) << x), c, nb)


def canonical_code(list pred, int n):
    """Minimum comparability code over all linear extensions (isomorphism invariant)."""
    cdef CanonState st
    cdef int i
    if n > 11:
        raise ValueError("canonical_code kernel supports n <= 11")
    st.n = n
    st.have_best = 0
    st.best = 0
    for i in range(n):
        st.pm[i] = pred[i]
    _canon_dfs(&st, 0, 0, 0, n * (n - 1) // 2)
    return int(st.best)
