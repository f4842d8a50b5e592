# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the O(n^2) repetition scan and the restricted-growth DFS.

Signatures match ``_pure.py`` exactly.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t
from libc.stdlib cimport malloc, free

from episturmian._pure import BudgetExceeded


def max_repetition(letters):
    """(length, period, start) of a factor with maximal length/period.

    Ties go to the smallest start, then the smallest period.
    """
    cdef const int32_t[::1] a = np.ascontiguousarray(letters, dtype=np.int32)
    cdef Py_ssize_t n = a.shape[0]
    if n == 0:
        raise ValueError("empty word")
    cdef Py_ssize_t best_len = 1, best_p = 1, best_occ = 0
    cdef Py_ssize_t p, i, run, top_len, top_occ, length
    cdef long long lhs, rhs
    for p in range(1, n):
        if <long long>n * best_p < <long long>best_len * p:
            break
        run = 0
        top_len = 0
        top_occ = 0
        for i in range(n - p):
            if a[i] == a[i + p]:
                run += 1
            else:
                if run > top_len:
                    top_len = run
                    top_occ = i - run
                run = 0
        if run > top_len:
            top_len = run
            top_occ = n - p - run
        if top_len <= 0:
            continue
        length = top_len + p
        lhs = <long long>length * best_p
        rhs = <long long>best_len * p
        if lhs > rhs or (lhs == rhs and (top_occ < best_occ or (top_occ == best_occ and p < best_p))):
            best_len = length
            best_p = p
            best_occ = top_occ
    return int(best_len), int(best_p), int(best_occ)


def dfs_max(int d, int n, long long budget):
    """Maximum of 1^T M_{h1} ... M_{hN} 1 over restricted-growth words h.

    Entries are int64; the caller keeps d * 2^n below 2^62.
    Returns (max value, argmax words in lexicographic order, row updates done).
    """
    if n == 0:
        return d, [()], 0
    cdef int64_t *rows = <int64_t *> malloc((n + 1) * d * sizeof(int64_t))
    cdef int *choice = <int *> malloc(n * sizeof(int))
    cdef int *tops = <int *> malloc((n + 1) * sizeof(int))
    if rows == NULL or choice == NULL or tops == NULL:
        free(rows); free(choice); free(tops)
        raise MemoryError()
    cdef int depth, i, j, limit
    cdef int64_t xi, s, best = -1
    cdef long long explored = 0
    cdef int64_t *x
    cdef int64_t *y
    argmax = []
    try:
        for j in range(d):
            rows[j] = 1
        tops[0] = -1
        depth = 0
        choice[0] = -1
        while depth >= 0:
            choice[depth] += 1
            limit = tops[depth] + 1
            if limit > d - 1:
                limit = d - 1
            if choice[depth] > limit:
                depth -= 1
                continue
            i = choice[depth]
            explored += 1
            if explored > budget:
                raise BudgetExceeded(f"search exceeded the budget of {budget} row updates")
            x = rows + depth * d
            y = rows + (depth + 1) * d
            xi = x[i]
            for j in range(d):
                y[j] = x[j] + xi
            y[i] = xi
            if depth + 1 == n:
                s = 0
                for j in range(d):
                    s += y[j]
                if s > best:
                    best = s
                    argmax = [tuple([choice[j] for j in range(n)])]
                elif s == best:
                    argmax.append(tuple([choice[j] for j in range(n)]))
            else:
                tops[depth + 1] = tops[depth] if tops[depth] > i else i
                depth += 1
                choice[depth] = -1
    finally:
        free(rows)
        free(choice)
        free(tops)
    return int(best), argmax, int(explored)
