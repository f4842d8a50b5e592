"""Exhaustive search for max S(d, N), S(d, N) = {1^T M_{h1} ... M_{hN} 1}.

Conjugating by a permutation matrix relabels letters (P^T M_k P = M_{pi(k)})
and 1^T P^T = 1^T, so the value of a word is invariant under letter
permutations. The search therefore only visits restricted-growth words, one
per permutation class.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import _backend
from .core import BigMatrix, mat_mul, mat_vec, vec_mat
from .morphisms import Permutation, elementary_matrix, row_update

DEFAULT_BUDGET = 10**8

BudgetExceeded = _backend.BudgetExceeded


@dataclass(frozen=True)
class SearchResult:
    d: int
    n: int
    max_value: int
    argmax: tuple[tuple[int, ...], ...]
    explored: int

    def expanded_argmax(self) -> list[tuple[int, ...]]:
        """Every maximizer, not just one per permutation class."""
        out = set()
        for w in self.argmax:
            for perm in itertools.permutations(range(self.d)):
                out.add(tuple(perm[a] for a in w))
        return sorted(out)


def s_value(word: Sequence[int], d: int) -> int:
    """1^T M_{h1} ... M_{hN} 1 by O(d) row updates."""
    x = (1,) * d
    for i in word:
        x = row_update(x, i)
    return sum(x)


def window_distinct(word: Sequence[int], d: int) -> bool:
    """Every window of min(d, |word|) consecutive letters has distinct letters."""
    k = min(d, len(word))
    return all(len(set(word[j : j + k])) == k for j in range(len(word) - k + 1))


def canonicalize(word: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least relabelling: letters renamed in order of first appearance."""
    names: dict[int, int] = {}
    return tuple(names.setdefault(a, len(names)) for a in word)


def _search_subtree(args: tuple[int, int, tuple[int, ...], int]) -> tuple[int, list, int]:
    d, n, prefix, budget = args
    # prefix is a restricted-growth word; finish it with the same DFS by brute force
    # over its completions. Completions of a canonical prefix are searched in-process.
    x = (1,) * d
    for i in prefix:
        x = row_update(x, i)
    top = max(prefix, default=-1)
    best, argmax, explored = -1, [], 0
    rest = n - len(prefix)
    if rest == 0:
        return sum(x), [tuple(prefix)], 0
    stack = [(x, top, ())]
    while stack:
        y, t, tail = stack.pop()
        for i in range(min(t + 1, d - 1), -1, -1):
            explored += 1
            if explored > budget:
                raise BudgetExceeded(f"search exceeded the budget of {budget} row updates")
            z = row_update(y, i)
            nt = tail + (i,)
            if len(nt) == rest:
                s = sum(z)
                if s > best:
                    best, argmax = s, [prefix + nt]
                elif s == best:
                    argmax.append(prefix + nt)
            else:
                stack.append((z, max(t, i), nt))
    return best, sorted(argmax), explored


def enumerate_max(
    d: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SearchResult:
    """Exact max S(d, N) with one maximizer per letter-permutation class.

    With ``workers > 1`` the forest below each two-letter prefix is searched
    in a separate process; the merged result does not depend on the worker count.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if n < 0:
        raise ValueError("N must be non-negative")
    if workers <= 1 or n < 3:
        best, argmax, explored = _backend.dfs_max(d, n, budget)
        return SearchResult(d, n, best, tuple(argmax), explored)
    prefixes = [(0, 0), (0, 1)]
    jobs = [(d, n, p, budget) for p in prefixes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_search_subtree, jobs))
    explored = 2 + sum(p[2] for p in parts) + 1  # root updates for "0", "00", "01"
    best = max(p[0] for p in parts)
    if explored > budget:
        raise BudgetExceeded(f"search exceeded the budget of {budget} row updates")
    argmax = sorted(w for p in parts if p[0] == best for w in p[1])
    return SearchResult(d, n, best, tuple(argmax), explored)


def column_dominance(d: int, k: int) -> bool:
    """For A = M_0 ... M_{k-1}: A e_0 <= A e_j componentwise, strictly somewhere, for all j >= k."""
    if not 1 <= k < d:
        raise ValueError("need 1 <= k < d")
    a: BigMatrix = elementary_matrix(0, d)
    for i in range(1, k):
        a = mat_mul(a, elementary_matrix(i, d))
    col0 = [a[r][0] for r in range(d)]
    for j in range(k, d):
        colj = [a[r][j] for r in range(d)]
        if not all(x <= y for x, y in zip(col0, colj)) or col0 == colj:
            return False
    return True


def swap_gap(d: int, k: int, x: Sequence[int], z: Sequence[int]) -> int:
    """x^T M_0 ... M_{k-1} M_k z - x^T M_0 ... M_{k-1} M_0 R z, R swapping 0 and k."""
    if not 1 <= k < d:
        raise ValueError("need 1 <= k < d")
    r = Permutation.transposition(d, 0, k).matrix()
    a: BigMatrix = elementary_matrix(0, d)
    for i in range(1, k):
        a = mat_mul(a, elementary_matrix(i, d))
    left = vec_mat(x, a)
    improved = sum(p * q for p, q in zip(left, mat_vec(elementary_matrix(k, d), z)))
    swapped = sum(p * q for p, q in zip(left, mat_vec(mat_mul(elementary_matrix(0, d), r), z)))
    return improved - swapped


def random_positive_vector(d: int, rng: random.Random, high: int = 50) -> tuple[int, ...]:
    return tuple(rng.randint(1, high) for _ in range(d))
