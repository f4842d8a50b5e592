"""Fallback kernels used when the compiled extension is not available.

Signatures match ``_kernels.pyx`` exactly.
"""

from __future__ import annotations

import numpy as np


class BudgetExceeded(RuntimeError):
    pass


def max_repetition(letters) -> tuple[int, int, int]:
    """(length, period, start) of a factor with maximal length/period.

    Ties go to the smallest start, then the smallest period.
    """
    a = np.asarray(letters, dtype=np.int32)
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty word")
    best_len, best_p, best_occ = 1, 1, 0
    for p in range(1, n):
        # a period-p factor is at most n long: skip p that cannot reach the best ratio
        if n * best_p < best_len * p:
            break
        eq = np.empty(n - p + 2, dtype=np.int8)
        eq[0] = 0
        eq[-1] = 0
        np.equal(a[p:], a[:-p], out=eq[1:-1].view(bool))
        edges = np.flatnonzero(np.diff(eq))
        if edges.size == 0:
            continue
        starts = edges[0::2]
        lengths = edges[1::2] - starts
        j = int(np.argmax(lengths))
        length = int(lengths[j]) + p
        occ = int(starts[j])
        lhs, rhs = length * best_p, best_len * p
        if lhs > rhs or (lhs == rhs and (occ, p) < (best_occ, best_p)):
            best_len, best_p, best_occ = length, p, occ
    return best_len, best_p, best_occ


def dfs_max(d: int, n: int, budget: int) -> tuple[int, list[tuple[int, ...]], int]:
    """Maximum of 1^T M_{h1} ... M_{hN} 1 over restricted-growth words h.

    Restricted growth (h_1 = 0, each new letter one above the largest so far)
    picks one word from every class under letter permutations.
    Returns (max value, argmax words in lexicographic order, row updates done).
    """
    if n == 0:
        return d, [()], 0
    best = -1
    argmax: list[tuple[int, ...]] = []
    explored = 0
    word = [0] * n

    def visit(depth: int, x: list[int], top: int) -> None:
        nonlocal best, argmax, explored
        for i in range(min(top + 1, d - 1) + 1):
            explored += 1
            if explored > budget:
                raise BudgetExceeded(f"search exceeded the budget of {budget} row updates")
            xi = x[i]
            y = [v + xi for v in x]
            y[i] = xi
            word[depth] = i
            if depth + 1 == n:
                s = sum(y)
                if s > best:
                    best = s
                    argmax = [tuple(word)]
                elif s == best:
                    argmax.append(tuple(word))
            else:
                visit(depth + 1, y, max(top, i))

    visit(0, [1] * d, -1)
    return best, argmax, explored
