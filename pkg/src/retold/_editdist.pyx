# cython: boundscheck=False, wraparound=False
"""Compiled token edit distance over integer id sequences (two-row DP)."""

from libc.stdlib cimport free, malloc


def levenshtein_ids(int[::1] a, int[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    if n == 0:
        return m
    if m == 0:
        return n
    cdef int *prev = <int *> malloc((m + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int cost, best
    cdef int *tmp
    try:
        for j in range(m + 1):
            prev[j] = <int> j
        for i in range(1, n + 1):
            cur[0] = <int> i
            for j in range(1, m + 1):
                cost = 0 if a[i - 1] == b[j - 1] else 1
                best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                if prev[j - 1] + cost < best:
                    best = prev[j - 1] + cost
                cur[j] = best
            tmp = prev
            prev = cur
            cur = tmp
        best = prev[m]
    finally:
        free(prev)
        free(cur)
    return best
