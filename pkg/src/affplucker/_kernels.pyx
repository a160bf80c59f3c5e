# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for colour refinement and pairwise map checks."""

import array

from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memset

cdef int *_KEYS
cdef int _WIDTH


cdef int _cmp_rows(const void *a, const void *b) noexcept nogil:
    cdef int u = (<int *>a)[0]
    cdef int v = (<int *>b)[0]
    cdef int *ku = _KEYS + u * _WIDTH
    cdef int *kv = _KEYS + v * _WIDTH
    cdef int i
    for i in range(_WIDTH):
        if ku[i] != kv[i]:
            return -1 if ku[i] < kv[i] else 1
    return 0


cdef bint _rows_equal(int *keys, int width, int u, int v) noexcept nogil:
    cdef int i
    for i in range(width):
        if keys[u * width + i] != keys[v * width + i]:
            return False
    return True


def refine(indptr, indices, colors):
    """Refine a vertex colouring to the coarsest equitable colouring below it."""
    global _KEYS, _WIDTH
    cdef int n = len(colors)
    if n == 0:
        return []
    cdef int[:] ip = _as_int(indptr)
    cdef int[:] ix = _as_int(indices)
    cdef int *col = <int *>malloc(n * sizeof(int))
    cdef int *order = <int *>malloc(n * sizeof(int))
    cdef int *keys = NULL
    cdef int v, t, k = 0, new_k, w, r
    for v in range(n):
        col[v] = colors[v]
        if col[v] + 1 > k:
            k = col[v] + 1
    try:
        while True:
            w = k + 1
            keys = <int *>malloc(n * w * sizeof(int))
            memset(keys, 0, n * w * sizeof(int))
            for v in range(n):
                keys[v * w] = col[v]
                for t in range(ip[v], ip[v + 1]):
                    keys[v * w + 1 + col[ix[t]]] += 1
                order[v] = v
            _KEYS = keys
            _WIDTH = w
            qsort(order, n, sizeof(int), _cmp_rows)
            r = 0
            col[order[0]] = 0
            for v in range(1, n):
                if not _rows_equal(keys, w, order[v], order[v - 1]):
                    r += 1
                col[order[v]] = r
            free(keys)
            keys = NULL
            new_k = r + 1
            if new_k == k:
                return [col[v] for v in range(n)]
            k = new_k
    finally:
        if keys != NULL:
            free(keys)
        free(col)
        free(order)


cdef int[:] _as_int(seq):
    if isinstance(seq, array.array) and seq.typecode == "i":
        return seq
    return array.array("i", seq)


def is_automorphism(perm, indptr, indices, adj):
    """True iff ``perm`` maps every edge onto an edge (adj is an n*n 0/1 row-major buffer)."""
    cdef int n = len(perm)
    cdef int[:] pm = _as_int(perm)
    cdef int[:] ip = _as_int(indptr)
    cdef int[:] ix = _as_int(indices)
    cdef const unsigned char[:] A = adj
    cdef int u, t, pu
    cdef bint ok = True
    with nogil:
        for u in range(n):
            pu = pm[u] * n
            for t in range(ip[u], ip[u + 1]):
                if not A[pu + pm[ix[t]]]:
                    ok = False
                    break
            if not ok:
                break
    return ok


def count_preserved_pairs(table, adj_src, adj_dst, int n):
    """Count ordered pairs (a, b), a != b, with adj_src[a,b] == adj_dst[table[a], table[b]].

    Returns (agree, forward_violations, backward_violations).
    """
    cdef int[:] tb = _as_int(table)
    cdef const unsigned char[:] S = adj_src
    cdef const unsigned char[:] D = adj_dst
    cdef long agree = 0, fwd = 0, bwd = 0
    cdef int a, b, ra, ta
    cdef unsigned char s, d
    with nogil:
        for a in range(n):
            ra = a * n
            ta = tb[a] * n
            for b in range(n):
                if a == b:
                    continue
                s = S[ra + b]
                d = D[ta + tb[b]]
                if s == d:
                    agree += 1
                elif s:
                    fwd += 1
                else:
                    bwd += 1
    return agree, fwd, bwd
