"""The N-th bispecial factor b_N of an Arnoux-Rauzy sequence and its shortest return word r_N."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import FiniteWord
from .directive import DirectiveError, DirectiveSequence, SequenceTag, classify
from .morphisms import apply_elementary, row_update

DEFAULT_CUTOFF = 10**6


@dataclass(frozen=True)
class BispecialRecord:
    n: int
    len_b: int
    len_r: int
    b: FiniteWord | None = None
    r: FiniteWord | None = None

    def to_dict(self) -> dict:
        out = {"N": self.n, "lenB": str(self.len_b), "lenR": str(self.len_r)}
        if self.b is not None:
            out["b"] = str(self.b)
        if self.r is not None:
            out["r"] = str(self.r)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _require_ar(delta: DirectiveSequence) -> None:
    cls = classify(delta)
    if cls.tag is not SequenceTag.ARNOUX_RAUZY:
        raise DirectiveError(f"bispecial formulas need an Arnoux-Rauzy directive, got {cls}")


def _expand(letters, start: int) -> list[int]:
    w = [start]
    for i in reversed(letters):
        w = apply_elementary(i, w)
    return w


def bispecial_lengths(delta: DirectiveSequence, n: int) -> tuple[int, int]:
    """(|b_N|, |r_N|) from s_N and s_{N-1}; r_0 is a single letter."""
    _require_ar(delta)
    if n < 0:
        raise ValueError("index must be non-negative")
    d = delta.d
    x = (1,) * d
    s_prev = s = d
    for k in range(n):
        x = row_update(x, delta.letter(k))
        s_prev, s = s, sum(x)
    len_b, rem_b = divmod(s - d, d - 1)
    if rem_b:
        raise ArithmeticError(f"1^T(M - I)1 = {s - d} is not divisible by {d - 1}")
    if n == 0:
        return 0, 1
    len_r, rem_r = divmod(s - s_prev, d - 1)
    if rem_r:
        raise ArithmeticError(f"s_N - s_(N-1) = {s - s_prev} is not divisible by {d - 1}")
    return len_b, len_r


def bispecial_record(
    delta: DirectiveSequence,
    n: int,
    materialize: bool = True,
    cutoff: int = DEFAULT_CUTOFF,
) -> BispecialRecord:
    """Lengths of b_N and r_N, and the words themselves when |b_N| <= cutoff.

    r_k = psi_1 ... psi_k (h_k) = psi_1 ... psi_{k-1} (h_k), and
    b_N = r_N r_{N-1} ... r_1.
    """
    len_b, len_r = bispecial_lengths(delta, n)
    if not materialize or len_b > cutoff:
        return BispecialRecord(n, len_b, len_r)
    d = delta.d
    if n == 0:
        return BispecialRecord(0, 0, 1, FiniteWord.empty(d), FiniteWord((delta.letter(0),), d))
    letters = delta.letters(n)
    b: list[int] = []
    r: list[int] = []
    for k in range(1, n + 1):
        r = _expand(letters[: k - 1], letters[k - 1])
        b = r + b
    rec = BispecialRecord(n, len_b, len_r, FiniteWord(tuple(b), d), FiniteWord(tuple(r), d))
    if len(b) != len_b or len(r) != len_r:
        raise ArithmeticError(f"materialized lengths {len(b)}, {len(r)} disagree with {len_b}, {len_r}")
    return rec
