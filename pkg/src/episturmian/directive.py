"""Eventually periodic directive sequences and standard episturmian prefixes.

A directive sequence psi_1 psi_2 ... with psi_n = phi_{h_n} is stored as the
letter stream h_1 h_2 ... = preperiod . period^omega. Internally the stream is
indexed from 0, so ``letter(0)`` is the index of psi_1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import FiniteWord
from .morphisms import apply_elementary, row_update


class DirectiveError(ValueError):
    pass


class SequenceTag(enum.Enum):
    PERIODIC = "PeriodicEpisturmian"
    ARNOUX_RAUZY = "ArnouxRauzy"
    APERIODIC_NON_AR = "AperiodicNonAR"


@dataclass(frozen=True)
class SequenceClass:
    tag: SequenceTag
    effective_d: int | None = None

    def __str__(self) -> str:
        if self.tag is SequenceTag.APERIODIC_NON_AR:
            return f"{self.tag.value}(d'={self.effective_d})"
        return self.tag.value


@dataclass(frozen=True)
class DirectiveSequence:
    d: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise DirectiveError(f"alphabet size must be at least 2, got {self.d}")
        if not self.period:
            raise DirectiveError("period must be non-empty")
        object.__setattr__(self, "preperiod", tuple(int(a) for a in self.preperiod))
        object.__setattr__(self, "period", tuple(int(a) for a in self.period))
        for a in self.preperiod + self.period:
            if not 0 <= a < self.d:
                raise DirectiveError(f"letter {a} outside alphabet of size {self.d}")

    def __str__(self) -> str:
        return ",".join(map(str, self.preperiod)) + ":" + ",".join(map(str, self.period))

    def letter(self, n: int) -> int:
        """Index of psi_{n+1}."""
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]

    def letters(self, count: int) -> list[int]:
        return [self.letter(n) for n in range(count)]

    def __iter__(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    def tail_alphabet(self) -> frozenset[int]:
        """Letters occurring infinitely often."""
        return frozenset(self.period)

    def alphabet_from(self, n: int) -> frozenset[int]:
        """Letters occurring in the stream from index n on."""
        rest = self.preperiod[n:] if n < len(self.preperiod) else ()
        return frozenset(rest) | self.tail_alphabet()

    def shifted(self, n: int) -> "DirectiveSequence":
        """Directive of the n-th derived sequence u^(n)."""
        if n <= len(self.preperiod):
            return DirectiveSequence(self.d, self.preperiod[n:], self.period)
        k = (n - len(self.preperiod)) % len(self.period)
        return DirectiveSequence(self.d, (), self.period[k:] + self.period[:k])

    def prepend(self, *letters: int) -> "DirectiveSequence":
        return DirectiveSequence(self.d, tuple(letters) + self.preperiod, self.period)

    def embed(self, d: int) -> "DirectiveSequence":
        """The same stream viewed over a larger alphabet."""
        if d < self.d:
            raise DirectiveError("can only embed into a larger alphabet")
        return DirectiveSequence(d, self.preperiod, self.period)

    def is_dbonacci_type(self) -> bool:
        """True when the stream is (pi(0) pi(1) ... pi(d-1))^omega for a permutation pi."""
        d = self.d
        head = self.letters(d)
        if len(set(head)) != d:
            return False
        horizon = len(self.preperiod) + len(self.period) * d + d
        return all(self.letter(n) == head[n % d] for n in range(horizon))


def dbonacci_directive(d: int) -> DirectiveSequence:
    return DirectiveSequence(d, (), tuple(range(d)))


def _parse_letters(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise DirectiveError(f"malformed letter list {text!r}") from exc


def parse_directive(text: str, d: int) -> DirectiveSequence:
    """Read ``"pre:per"`` (or ``":per"``), each part comma-separated letter indices."""
    if text.count(":") != 1:
        raise DirectiveError(f"directive {text!r} must contain exactly one ':'")
    pre, per = text.split(":")
    period = _parse_letters(per)
    if not period:
        raise DirectiveError(f"directive {text!r} has an empty period")
    return DirectiveSequence(d, _parse_letters(pre), period)


def classify(delta: DirectiveSequence) -> SequenceClass:
    tail = delta.tail_alphabet()
    if len(tail) == 1:
        return SequenceClass(SequenceTag.PERIODIC)
    if len(tail) == delta.d:
        return SequenceClass(SequenceTag.ARNOUX_RAUZY)
    return SequenceClass(SequenceTag.APERIODIC_NON_AR, len(tail))


def _expand(prefix_letters: Sequence[int], start: Sequence[int], limit: int) -> list[int]:
    """psi_1 ... psi_n applied to `start`, truncated to `limit` letters."""
    w = list(start[:limit])
    for i in reversed(prefix_letters):
        w = apply_elementary(i, w, limit)
    return w


def standard_prefix(delta: DirectiveSequence, length: int) -> FiniteWord:
    """Length-`length` prefix of the standard episturmian sequence directed by delta."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if length == 0:
        return FiniteWord.empty(delta.d)
    if classify(delta).tag is SequenceTag.PERIODIC:
        # u = psi_1 ... psi_m (i^omega) = (psi_1 ... psi_m (i))^omega
        block = _expand(delta.preperiod, [delta.period[0]], length)
        reps = -(-length // len(block))
        return FiniteWord(tuple((block * reps)[:length]), delta.d)
    # psi_1 ... psi_n (h_{n+1}) is a prefix of u; pick n so that it is long enough
    x = (1,) * delta.d
    n = 0
    while x[delta.letter(n)] < length:
        x = row_update(x, delta.letter(n))
        n += 1
    w = _expand(delta.letters(n), [delta.letter(n)], length)
    return FiniteWord(tuple(w), delta.d)


def prefix_chain(delta: DirectiveSequence, steps: int) -> list[FiniteWord]:
    """The words psi_1 ... psi_n (h_{n+1}) for n = 0, ..., steps - 1, untruncated."""
    return [
        FiniteWord(tuple(_expand(delta.letters(n), [delta.letter(n)], 1 << 62)), delta.d)
        for n in range(steps)
    ]
