"""Critical and asymptotic critical exponents from the s_N stream.

For an Arnoux-Rauzy directive psi_1 psi_2 ... the scalars
s_N = 1^T M_{psi_1} ... M_{psi_N} 1 give

    E  = 1 + sup_N (s_N - d) / (s_N - s_{N-1})
    E* = 1 + limsup_N s_N / (s_N - s_{N-1}).

Aperiodic directives that are not Arnoux-Rauzy go through the bispecial
lengths directly: |b_N| accumulates |psi_1...psi_{N-1}(h_N)| and the shortest
return word is the shortest psi_1...psi_N(j) over letters j still occurring
in the tail of the directive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import dbonacci
from .core import FiniteWord, parikh
from .directive import DirectiveSequence, SequenceTag, classify, standard_prefix
from .morphisms import row_update

DEFAULT_NMAX = 5000
DEFAULT_TOL = Fraction(1, 10**9)
DEFAULT_STEP_BUDGET = 200_000


class ConvergenceError(ArithmeticError):
    def __init__(self, message: str, last: "ExponentEstimate | None" = None):
        super().__init__(message)
        self.last = last


class EstimateKind(enum.Enum):
    EXACT = "Exact"
    SUP_CANDIDATE = "SupCandidate"
    LIMIT_ESTIMATE = "LimitEstimate"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class ExponentEstimate:
    kind: EstimateKind
    lo: Fraction | None = None
    hi: Fraction | None = None
    witness_n: int | None = None
    # 1 + max over 1 <= N <= nmax of the bispecial ratio; set by critical_exponent
    sup: Fraction | None = None
    limit: "ExponentEstimate | None" = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind is EstimateKind.INFINITE:
            if self.lo is not None or self.hi is not None:
                raise ValueError("an infinite estimate carries no enclosure")
        elif self.lo is None or self.hi is None or self.lo > self.hi:
            raise ValueError("enclosure must satisfy lo <= hi")

    @property
    def is_infinite(self) -> bool:
        return self.kind is EstimateKind.INFINITE

    def contains(self, x) -> bool:
        return not self.is_infinite and self.lo <= x <= self.hi


INFINITE = ExponentEstimate(EstimateKind.INFINITE)


class SStream:
    """Cursor over s_N; holds the row vector x^T = 1^T M_{psi_1} ... M_{psi_N}."""

    def __init__(self, delta: DirectiveSequence):
        self.delta = delta
        self.n = 0
        self.state: tuple[int, ...] = (1,) * delta.d

    @property
    def s(self) -> int:
        return sum(self.state)

    def advance(self) -> int:
        self.state = row_update(self.state, self.delta.letter(self.n))
        self.n += 1
        return self.s

    def __iter__(self) -> Iterator[int]:
        yield self.s
        while True:
            yield self.advance()


def s_values(delta: DirectiveSequence, nmax: int) -> list[int]:
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    stream = SStream(delta)
    out = [stream.s]
    for _ in range(nmax):
        out.append(stream.advance())
    return out


def bispecial_lengths(delta: DirectiveSequence) -> Iterator[tuple[int, int, int]]:
    """Yield (N, |b_N|, |r_N|) for N = 1, 2, ... on any aperiodic directive."""
    x = (1,) * delta.d
    len_b = 0
    n = 0
    while True:
        i = delta.letter(n)
        len_b += x[i]
        x = row_update(x, i)
        n += 1
        len_r = min(x[j] for j in delta.alphabet_from(n))
        yield n, len_b, len_r


def _ratio_stream(delta: DirectiveSequence, asymptotic: bool) -> Iterator[tuple[int, int, int]]:
    """Yield (N, numerator, denominator) of the ratio whose sup/limsup gives E - 1 or E* - 1."""
    d = delta.d
    if classify(delta).tag is SequenceTag.ARNOUX_RAUZY:
        stream = SStream(delta)
        prev = stream.s
        while True:
            s = stream.advance()
            yield stream.n, (s if asymptotic else s - d), s - prev
            prev = s
    else:
        yield from bispecial_lengths(delta)


def _exact_dbonacci(delta: DirectiveSequence, bits: int) -> tuple[Fraction, Fraction]:
    k = dbonacci.constants(delta.d, bits)
    return k.E_lo, k.E_hi


def asymptotic_exponent(
    delta: DirectiveSequence,
    tol: Fraction | float | str = DEFAULT_TOL,
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> ExponentEstimate:
    """Enclosure of E* from per-residue-class convergence of the ratio stream.

    The ratio is tracked separately for each residue of N modulo the period
    length; iteration stops once every class varies by less than ``tol`` over
    its last two period sweeps.
    """
    tol = Fraction(str(tol)) if isinstance(tol, float) else Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if classify(delta).tag is SequenceTag.PERIODIC:
        return INFINITE
    period = len(delta.period)
    start = len(delta.preperiod)
    history: dict[int, list[tuple[Fraction, int]]] = {}
    best: tuple[Fraction, int] | None = None
    for n, num, den in _ratio_stream(delta, asymptotic=True):
        if n > max_steps:
            last = None
            if best is not None:
                last = ExponentEstimate(
                    EstimateKind.LIMIT_ESTIMATE, 1 + best[0] - tol, 1 + best[0] + tol, best[1]
                )
            raise ConvergenceError(f"no convergence to {float(tol):.3g} within {max_steps} steps", last)
        if n <= start:
            continue
        hist = history.setdefault((n - start) % period, [])
        hist.append((Fraction(num, den), n))
        del hist[:-3]
        if (n - start) % period or len(hist) < 3 or len(history) < period:
            continue
        # end of a sweep: check every class
        if all(max(v for v, _ in h) - min(v for v, _ in h) < tol for h in history.values()):
            best = max((h[-1] for h in history.values()), key=lambda vn: (vn[0], -vn[1]))
            return ExponentEstimate(
                EstimateKind.LIMIT_ESTIMATE, 1 + best[0] - tol, 1 + best[0] + tol, best[1]
            )
        best = max((h[-1] for h in history.values()), key=lambda vn: (vn[0], -vn[1]))
    raise AssertionError("unreachable")


def critical_exponent(
    delta: DirectiveSequence,
    nmax: int = DEFAULT_NMAX,
    tol: Fraction | float | str = DEFAULT_TOL,
    bits: int = 128,
) -> ExponentEstimate:
    """E from the exact sup over 1 <= N <= nmax, with the limit estimate attached.

    The result is ``Exact`` only on the d-bonacci class (the stream is
    (pi(0) ... pi(d-1))^omega for some letter permutation pi), where the value
    2 + 1/(t - 1) is known; otherwise it is a ``SupCandidate``.
    """
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    if classify(delta).tag is SequenceTag.PERIODIC:
        return INFINITE
    best_num, best_den, witness = 0, 1, 0
    for n, num, den in _ratio_stream(delta, asymptotic=False):
        if num * best_den > best_num * den:
            best_num, best_den, witness = num, den, n
        if n >= nmax:
            break
    sup = 1 + Fraction(best_num, best_den)
    limit = asymptotic_exponent(delta, tol)
    if delta.is_dbonacci_type():
        lo, hi = _exact_dbonacci(delta, bits)
        return ExponentEstimate(EstimateKind.EXACT, lo, hi, witness, sup, limit)
    lo = max(sup, limit.lo)
    hi = max(sup, limit.hi)
    return ExponentEstimate(EstimateKind.SUP_CANDIDATE, lo, hi, witness, sup, limit)


@dataclass(frozen=True)
class FrequencyVector:
    counts: tuple[int, ...]
    length: int

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.length) for c in self.counts)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(c / self.length for c in self.counts)


def letter_frequencies(delta: DirectiveSequence, length: int) -> FrequencyVector:
    """Empirical letter frequencies on the standard prefix of the given length."""
    if length < 1:
        raise ValueError("length must be at least 1")
    w: FiniteWord = standard_prefix(delta, length)
    return FrequencyVector(parikh(w), length)
