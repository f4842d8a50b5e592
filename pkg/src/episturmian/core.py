"""Finite words over {0, ..., d-1}, Parikh vectors and exact integer matrices.

Matrices are tuples of row tuples holding Python ints, so products never
overflow. Vectors (Parikh vectors, row vectors) are plain tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ParikhVector = tuple[int, ...]
BigMatrix = tuple[tuple[int, ...], ...]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteWord:
    letters: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"alphabet size must be positive, got {self.d}")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if not 0 <= a < self.d:
                raise ValueError(f"letter {a} outside alphabet of size {self.d}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, d: int) -> "FiniteWord":
        """Read the comma-separated format; the empty string is the empty word."""
        text = text.strip()
        if not text:
            return cls((), d)
        try:
            letters = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed word {text!r}") from exc
        return cls(letters, d)

    @classmethod
    def empty(cls, d: int) -> "FiniteWord":
        return cls((), d)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return FiniteWord(self.letters[item], self.d)
        return self.letters[item]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        if not isinstance(other, FiniteWord):
            return NotImplemented
        if other.d != self.d:
            raise DimensionError("cannot concatenate words over different alphabets")
        return FiniteWord(self.letters + other.letters, self.d)

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))

    def is_prefix_of(self, other: "FiniteWord") -> bool:
        return other.letters[: len(self.letters)] == self.letters

    def is_palindrome(self) -> bool:
        return self.letters == self.letters[::-1]


def word(letters: Iterable[int] | str, d: int) -> FiniteWord:
    """Convenience constructor; a str is read digit by digit (d <= 10 only)."""
    if isinstance(letters, str):
        if "," in letters:
            return FiniteWord.parse(letters, d)
        return FiniteWord(tuple(int(ch) for ch in letters), d)
    return FiniteWord(tuple(letters), d)


def parikh(w: FiniteWord) -> ParikhVector:
    counts = [0] * w.d
    for a in w.letters:
        counts[a] += 1
    return tuple(counts)


def reverse(w: FiniteWord) -> FiniteWord:
    return FiniteWord(w.letters[::-1], w.d)


def identity(d: int) -> BigMatrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def ones(d: int) -> ParikhVector:
    return (1,) * d


def _check_square(m: BigMatrix) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("matrix is not square")
    return n


def mat_vec(m: BigMatrix, v: Sequence[int]) -> ParikhVector:
    n = _check_square(m)
    if len(v) != n:
        raise DimensionError(f"matrix of size {n} times vector of length {len(v)}")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def vec_mat(x: Sequence[int], m: BigMatrix) -> ParikhVector:
    """Row vector times matrix."""
    n = _check_square(m)
    if len(x) != n:
        raise DimensionError(f"vector of length {len(x)} times matrix of size {n}")
    return tuple(sum(x[k] * m[k][j] for k in range(n)) for j in range(n))


def mat_mul(a: BigMatrix, b: BigMatrix) -> BigMatrix:
    n = _check_square(a)
    if _check_square(b) != n:
        raise DimensionError("matrix sizes differ")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_pow(m: BigMatrix, e: int) -> BigMatrix:
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(_check_square(m))
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def transpose(m: BigMatrix) -> BigMatrix:
    _check_square(m)
    return tuple(zip(*m))


def vec_add(u: Sequence[int], v: Sequence[int]) -> ParikhVector:
    if len(u) != len(v):
        raise DimensionError("vector lengths differ")
    return tuple(a + b for a, b in zip(u, v))


def total(v: Sequence[int]) -> int:
    """1^T v."""
    return sum(v)
