"""Elementary episturmian morphisms, their products and incidence matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import BigMatrix, DimensionError, FiniteWord, identity as identity_matrix, mat_mul

# Products longer than this are kept symbolic (letters + incidence only).
EXPAND_LIMIT = 30


@dataclass(frozen=True)
class Morphism:
    d: int
    images: tuple[FiniteWord, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.d:
            raise ValueError(f"need {self.d} images, got {len(self.images)}")
        for j, img in enumerate(self.images):
            if img.d != self.d:
                raise DimensionError(f"image of {j} is over an alphabet of size {img.d}")
            if len(img) == 0:
                raise ValueError(f"image of {j} is empty; morphisms must be non-erasing")

    def __call__(self, w: FiniteWord) -> FiniteWord:
        return apply(self, w)

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "images": [str(img) for img in self.images]})

    @classmethod
    def from_json(cls, text: str) -> "Morphism":
        data = json.loads(text)
        d = int(data["d"])
        return cls(d, tuple(FiniteWord.parse(s, d) for s in data["images"]))


def identity(d: int) -> Morphism:
    return Morphism(d, tuple(FiniteWord((j,), d) for j in range(d)))


def elementary(i: int, d: int) -> Morphism:
    """phi_i: i -> i and j -> ij for j != i."""
    if d < 2:
        raise ValueError("alphabet size must be at least 2")
    if not 0 <= i < d:
        raise ValueError(f"letter {i} outside alphabet of size {d}")
    return Morphism(d, tuple(FiniteWord((i,) if j == i else (i, j), d) for j in range(d)))


def apply(m: Morphism, w: FiniteWord) -> FiniteWord:
    if w.d != m.d:
        raise DimensionError(f"morphism over {m.d} letters applied to word over {w.d}")
    out: list[int] = []
    for a in w.letters:
        out.extend(m.images[a].letters)
    return FiniteWord(tuple(out), m.d)


def incidence(m: Morphism) -> BigMatrix:
    """[M]_{kj} = number of k's in the image of j."""
    cols = []
    for img in m.images:
        col = [0] * m.d
        for a in img.letters:
            col[a] += 1
        cols.append(col)
    return tuple(tuple(cols[j][k] for j in range(m.d)) for k in range(m.d))


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer o inner."""
    if outer.d != inner.d:
        raise DimensionError("cannot compose morphisms over different alphabets")
    return Morphism(outer.d, tuple(apply(outer, img) for img in inner.images))


def elementary_matrix(i: int, d: int) -> BigMatrix:
    return tuple(tuple(int(k == i or k == j) for j in range(d)) for k in range(d))


def row_update(x: Sequence[int], i: int) -> tuple[int, ...]:
    """x^T M_i in O(d): every entry except x_i gains x_i."""
    xi = x[i]
    return tuple(v if j == i else v + xi for j, v in enumerate(x))


def apply_elementary(i: int, letters: Sequence[int], limit: int | None = None) -> list[int]:
    """phi_i on a raw letter list, optionally keeping only the first `limit` letters."""
    out: list[int] = []
    append = out.append
    for a in letters:
        append(i)
        if a != i:
            append(a)
        if limit is not None and len(out) >= limit:
            del out[limit:]
            break
    return out


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"{self.mapping} is not a permutation")

    @property
    def d(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def matrix(self) -> BigMatrix:
        """P with e_i^T P = e_{pi(i)}^T."""
        return tuple(tuple(int(self.mapping[i] == j) for j in range(self.d)) for i in range(self.d))

    @classmethod
    def transposition(cls, d: int, a: int, b: int) -> "Permutation":
        m = list(range(d))
        m[a], m[b] = b, a
        return cls(tuple(m))


def conjugate(p: Permutation, i: int) -> int:
    """Index k with P^T M_i P = M_k; that index is pi(i)."""
    if not 0 <= i < p.d:
        raise ValueError(f"letter {i} outside alphabet of size {p.d}")
    return p.mapping[i]


def conjugated_matrix(p: Permutation, m: BigMatrix) -> BigMatrix:
    pm = p.matrix()
    pt = tuple(zip(*pm))
    return mat_mul(mat_mul(pt, m), pm)


class ElementaryProduct:
    """psi_1 o psi_2 o ... o psi_N for elementary psi_k, kept symbolic.

    The incidence matrix is always available; images are expanded on demand
    and may be truncated, since their lengths grow exponentially in N.
    """

    def __init__(self, d: int, letters: Sequence[int]):
        for a in letters:
            if not 0 <= a < d:
                raise ValueError(f"letter {a} outside alphabet of size {d}")
        self.d = d
        self.letters = tuple(letters)
        self._incidence: BigMatrix | None = None

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"ElementaryProduct(d={self.d}, letters={self.letters!r})"

    def then(self, other: "ElementaryProduct") -> "ElementaryProduct":
        """self o other."""
        if other.d != self.d:
            raise DimensionError("alphabet sizes differ")
        return ElementaryProduct(self.d, self.letters + other.letters)

    def incidence(self) -> BigMatrix:
        if self._incidence is None:
            # A M_i: column j gains column i for every j != i
            cols = [[int(k == j) for k in range(self.d)] for j in range(self.d)]
            for i in self.letters:
                ci = cols[i]
                for j in range(self.d):
                    if j != i:
                        cols[j] = [a + b for a, b in zip(cols[j], ci)]
            self._incidence = tuple(tuple(cols[j][k] for j in range(self.d)) for k in range(self.d))
        return self._incidence

    def image_lengths(self) -> tuple[int, ...]:
        """|psi(j)| for every letter j, i.e. 1^T times the incidence matrix."""
        x = (1,) * self.d
        for i in self.letters:
            x = row_update(x, i)
        return x

    def image(self, j: int, limit: int | None = None) -> FiniteWord:
        return self.apply_letters([j], limit)

    def apply_letters(self, letters: Sequence[int], limit: int | None = None) -> FiniteWord:
        w = list(letters)
        if limit is not None:
            w = w[:limit]
        for i in reversed(self.letters):
            w = apply_elementary(i, w, limit)
        return FiniteWord(tuple(w), self.d)

    def to_morphism(self, force: bool = False) -> Morphism:
        if len(self.letters) > EXPAND_LIMIT and not force:
            raise ValueError(
                f"product of {len(self.letters)} morphisms exceeds the expansion limit "
                f"{EXPAND_LIMIT}; pass force=True to expand anyway"
            )
        return Morphism(self.d, tuple(self.image(j) for j in range(self.d)))


def product_matrix(letters: Sequence[int], d: int) -> BigMatrix:
    """M_{h1} M_{h2} ... M_{hN} by full matrix multiplication (reference path)."""
    m = identity_matrix(d)
    for i in letters:
        m = mat_mul(m, elementary_matrix(i, d))
    return m
