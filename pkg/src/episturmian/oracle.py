"""Brute-force ground truth on finite prefixes.

Nothing here touches matrices or morphisms: repetitions, special factors
and return words are read off the letters directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from . import _backend
from .core import FiniteWord

log = logging.getLogger(__name__)


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class RepetitionRecord:
    period: int
    length: int
    occurrence: int
    root: FiniteWord

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


@dataclass(frozen=True)
class ExtensionProfile:
    factor: FiniteWord
    left: frozenset[int]
    right: frozenset[int]

    @property
    def is_bispecial(self) -> bool:
        return len(self.left) >= 2 and len(self.right) >= 2


def max_exponent(w: FiniteWord) -> RepetitionRecord:
    """Factor of w with the largest exponent length/period.

    Ties are broken by the smallest occurrence, then the smallest period.
    """
    if len(w) == 0:
        raise OracleError("max_exponent needs a non-empty word")
    length, period, occ = _backend.max_repetition(w.letters)
    return RepetitionRecord(period, length, occ, w[occ : occ + period])


def _keyed(w: FiniteWord):
    # bytes slices hash fast; fall back to tuples for huge alphabets
    return bytes(w.letters) if w.d <= 256 else w.letters


def _profiles(w: FiniteWord, max_len: int) -> dict[tuple, ExtensionProfile]:
    seq = _keyed(w)
    n = len(seq)
    found: dict[tuple, ExtensionProfile] = {}
    for ell in range(max_len + 1):
        ext: dict = {}
        # occurrences with a letter on both sides
        for j in range(1, n - ell):
            key = seq[j : j + ell]
            pair = ext.get(key)
            if pair is None:
                pair = ext[key] = (set(), set())
            pair[0].add(seq[j - 1])
            pair[1].add(seq[j + ell])
        for key, (left, right) in ext.items():
            if len(left) >= 2 and len(right) >= 2:
                f = FiniteWord(tuple(key), w.d)
                found[f.letters] = ExtensionProfile(f, frozenset(left), frozenset(right))
    return found


def bispecials_in_prefix(prefix: FiniteWord, max_len: int) -> list[ExtensionProfile]:
    """Bispecial factors of length <= max_len seen in the prefix, shortest first.

    A factor is kept only if it is already bispecial in the first half of the
    prefix; extensions are reported from the whole prefix.
    """
    n = len(prefix)
    if max_len < 0:
        raise OracleError("max_len must be non-negative")
    if 4 * max_len >= n:
        raise OracleError(f"max_len={max_len} needs a prefix longer than {4 * max_len}, got {n}")
    full = _profiles(prefix, max_len)
    half = _profiles(prefix[: n // 2], max_len)
    if full.keys() != half.keys():
        log.warning(
            "bispecial set changed between prefix lengths %d and %d; keeping the stable part",
            n // 2, n,
        )
    stable = [full[k] for k in full if k in half]
    return sorted(stable, key=lambda p: (len(p.factor), p.factor.letters))


def occurrences(prefix: FiniteWord, f: FiniteWord) -> list[int]:
    seq, pat = _keyed(prefix), _keyed(f)
    if len(pat) == 0:
        return list(range(len(seq) + 1))
    out = []
    if isinstance(seq, bytes):
        j = seq.find(pat)
        while j != -1:
            out.append(j)
            j = seq.find(pat, j + 1)
    else:
        m = len(pat)
        out = [j for j in range(len(seq) - m + 1) if seq[j : j + m] == pat]
    return out


def extension_profile(prefix: FiniteWord, f: FiniteWord) -> ExtensionProfile:
    """Left and right extensions of one factor, from occurrences away from the boundary."""
    n, m = len(prefix), len(f)
    left, right = set(), set()
    for j in occurrences(prefix, f):
        if 0 < j and j + m < n:
            left.add(prefix.letters[j - 1])
            right.add(prefix.letters[j + m])
    return ExtensionProfile(f, frozenset(left), frozenset(right))


def return_words(prefix: FiniteWord, f: FiniteWord) -> frozenset[FiniteWord]:
    """Words between consecutive occurrences of f in the prefix."""
    occ = occurrences(prefix, f)
    if len(occ) < 3:
        raise OracleError(f"factor occurs {len(occ)} times; need at least 3")
    return frozenset(prefix[a:b] for a, b in zip(occ, occ[1:]))


def shortest_return_word(prefix: FiniteWord, f: FiniteWord) -> FiniteWord:
    return min(return_words(prefix, f), key=lambda r: (len(r), r.letters))
