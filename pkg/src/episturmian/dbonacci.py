"""Constants attached to the d-bonacci sequence.

The dominant root t of x^d - x^{d-1} - ... - x - 1 is isolated with exact
dyadic arithmetic, so every enclosure [t_lo, t_hi] is certified by the signs
of p at its endpoints. The remaining roots come from a simultaneous
(Durand-Kerner) iteration in mpmath and carry a posteriori inclusion radii.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .core import BigMatrix, FiniteWord
from .morphisms import Morphism

MAX_BITS = 1 << 18


class PrecisionError(ArithmeticError):
    pass


class IndeterminateError(ArithmeticError):
    pass


def dbonacci_matrix(d: int) -> BigMatrix:
    """Incidence matrix of 0 -> 01, 1 -> 02, ..., d-2 -> 0(d-1), d-1 -> 0."""
    return tuple(tuple(int(k == 0 or k == j + 1) for j in range(d)) for k in range(d))


def dbonacci_morphism(d: int) -> Morphism:
    images = [FiniteWord((0, j + 1), d) for j in range(d - 1)] + [FiniteWord((0,), d)]
    return Morphism(d, tuple(images))


def s_recurrence(d: int, n: int) -> int:
    return s_recurrence_values(d, n)[-1]


def s_recurrence_values(d: int, n: int) -> list[int]:
    """s_0, ..., s_n from the initial values (d-1) 2^N + 1 and the d-term recurrence."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if n < 0:
        raise ValueError("index must be non-negative")
    out = [(d - 1) * (1 << k) + 1 for k in range(min(n + 1, d))]
    window = deque(out, maxlen=d)
    acc = sum(window)
    for _ in range(d, n + 1):
        nxt = acc
        acc += nxt - window[0]
        window.append(nxt)
        out.append(nxt)
    return out


def _homogeneous_p(d: int, num: int, scale: int) -> int:
    """2^{scale d} p(num / 2^scale), exactly."""
    acc = 1
    for m in range(1, d + 1):
        acc = acc * num - (1 << (scale * m))
    return acc


def _bisect(d: int, bits: int) -> tuple[int, int]:
    # Bracket (2 - 2^{1-d}, 2 - 2^{-d}) at scale d: consecutive integers.
    scale = d
    lo = (1 << (d + 1)) - 2
    if not (_homogeneous_p(d, lo, scale) < 0 < _homogeneous_p(d, lo + 1, scale)):
        raise PrecisionError(f"root bracket check failed for d={d}")
    while scale < bits:
        scale += 1
        lo <<= 1
        if _homogeneous_p(d, lo + 1, scale) < 0:
            lo += 1
    return lo, scale


def _homogeneous_dp(d: int, num: int, scale: int) -> int:
    """2^{scale (d-1)} p'(num / 2^scale), exactly."""
    acc = d
    for m in range(1, d):
        acc = acc * num - (d - m) * (1 << (scale * m))
    return acc


def _newton_refine(d: int, lo: int, scale: int, bits: int) -> tuple[int, int]:
    # fixed point: x = X / 2^work; the Newton step in units of 2^-work is P / P'
    work = scale + 1
    x = 2 * lo + 1
    while True:
        new_work = min(2 * work, bits + 32)
        x <<= new_work - work
        work = new_work
        step = _homogeneous_p(d, x, work) // _homogeneous_dp(d, x, work)
        x -= step
        if work == bits + 32 and abs(step) < (1 << 16):
            break
    m = x >> 32
    scale = bits
    # certify: find c with a sign change on [m - c, m + c]
    c = 1
    while True:
        a, b = m - c, m + c
        if _homogeneous_p(d, a, scale) < 0 < _homogeneous_p(d, b, scale):
            break
        c *= 2
        if c > (1 << 32):
            raise PrecisionError("Newton refinement lost the root")
    # bisect the bracket [a, b] down to a unit interval at this scale
    while b - a > 1:
        mid = (a + b) // 2
        if _homogeneous_p(d, mid, scale) < 0:
            a = mid
        else:
            b = mid
    return a, scale


@lru_cache(maxsize=None)
def isolate_t(d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure [lo, hi] of t with hi - lo = 2^-bits and p(lo) < 0 < p(hi)."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if bits > MAX_BITS:
        raise PrecisionError(f"{bits} bits exceeds the cap of {MAX_BITS}")
    seed_bits = min(bits, 64)
    lo, scale = _bisect(d, seed_bits)
    if bits > seed_bits:
        lo, scale = _newton_refine(d, lo, scale, bits)
    return Fraction(lo, 1 << scale), Fraction(lo + 1, 1 << scale)


def _poly(d: int, z):
    acc = mpmath.mpf(1)
    for _ in range(d):
        acc = acc * z - 1
    return acc


def _all_roots(d: int, prec: int) -> list:
    """Every root of x^d - x^(d-1) - ... - 1, by mpmath's simultaneous iteration."""
    with mpmath.workprec(prec):
        try:
            zs = mpmath.polyroots([1] + [-1] * d, maxsteps=200 + 20 * d, extraprec=prec)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError(f"root iteration did not converge for d={d} at {prec} bits") from exc
        return [mpmath.mpc(z) for z in zs]


@dataclass(frozen=True)
class DBonacciConstants:
    d: int
    bits: int
    t_lo: Fraction
    t_hi: Fraction
    roots: tuple  # mpc, roots[0] is t
    radii: tuple  # mpf inclusion radius per root
    c: tuple  # mpc
    c_radii: tuple
    E_lo: Fraction
    E_hi: Fraction

    @property
    def t(self):
        return self.roots[0].real

    @property
    def E(self):
        with mpmath.workprec(self.bits + 32):
            return 2 + 1 / (self.t - 1)

    def property2_residuals(self) -> list:
        with mpmath.workprec(self.bits + 32):
            return [abs(z**self.d * (2 - z) - 1) for z in self.roots]


def _to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _c_coeff(d: int, z):
    return (d - 1) * z / ((d + 1) * z - 2 * d)


@lru_cache(maxsize=None)
def constants(d: int, bits: int = 128) -> DBonacciConstants:
    if d < 2:
        raise ValueError("d must be at least 2")
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    t_lo, t_hi = isolate_t(d, bits)
    prec = bits + 32
    zs = _all_roots(d, prec)
    with mpmath.workprec(prec):
        k1 = min(range(d), key=lambda k: abs(zs[k] - 2))
        t_mid = _to_mpf((t_lo + t_hi) / 2)
        others = [zs[k] for k in range(d) if k != k1]
        roots = [mpmath.mpc(t_mid, 0)] + others
        # Inclusion disks |z - z_k| <= d |p(z_k)| / |prod_{j != k} (z_k - z_j)| plus rounding slack
        slack = mpmath.mpf(2) ** (-prec + 16)
        radii = []
        for k, z in enumerate(roots):
            if k == 0:
                radii.append(_to_mpf(t_hi - t_lo))
                continue
            denom = mpmath.mpf(1)
            for j, w in enumerate(roots):
                if j != k:
                    denom *= z - w
            radii.append(d * abs(_poly(d, z)) / abs(denom) + slack)
        for k in range(1, d):
            if abs(roots[k]) + radii[k] >= 1:
                raise PrecisionError(f"conjugate root {k} not certified inside the unit disk")
        for k in range(d):
            for j in range(k + 1, d):
                if abs(roots[k] - roots[j]) <= radii[k] + radii[j]:
                    raise PrecisionError("root inclusion disks overlap")
        cs = [_c_coeff(d, z) for z in roots]
        c_radii = []
        for z, r in zip(roots, radii):
            gap = abs((d + 1) * z - 2 * d) - (d + 1) * r
            c_radii.append(2 * d * (d - 1) * r / (gap * gap) * 2)
    E_lo = 2 + 1 / (t_hi - 1)
    E_hi = 2 + 1 / (t_lo - 1)
    return DBonacciConstants(
        d=d, bits=bits, t_lo=t_lo, t_hi=t_hi,
        roots=tuple(roots), radii=tuple(radii),
        c=tuple(cs), c_radii=tuple(c_radii), E_lo=E_lo, E_hi=E_hi,
    )


def explicit_eval(d: int, n: int, bits: int = 128):
    """sum_k c_k t_k^n, with a bound on its distance to the exact value.

    Returns ``(value, bound)`` as mpf numbers. Raises ``PrecisionError``
    when the bound reaches 1/2, i.e. when the value no longer pins down
    the integer s_n.
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    k = constants(d, bits)
    with mpmath.workprec(bits + 32):
        total = mpmath.mpc(0)
        bound = mpmath.mpf(0)
        magnitude = mpmath.mpf(0)
        for z, r, c, rc in zip(k.roots, k.radii, k.c, k.c_radii):
            term = c * z**n
            total += term
            a = abs(z)
            magnitude += abs(term)
            bound += abs(c) * ((a + r) ** n - a**n) + rc * (a + r) ** n
        bound += magnitude * (n + d + 4) * mpmath.mpf(2) ** (-bits - 24)
        if bound >= mpmath.mpf(1) / 2:
            raise PrecisionError(f"{bits} bits leave an error bound of {mpmath.nstr(bound, 5)}")
        return total.real, bound


@dataclass(frozen=True)
class InequalityCertificate:
    d: int
    nmax: int
    passed: bool
    first_violation: int | None
    bits_used: int


def _compare_scaled(ln: int, hn: int, scale: int, a: int, b: int) -> int:
    """Sign of t a - b for t in [ln, hn] / 2^scale: -1 certainly <=, 1 certainly >, 0 unknown."""
    if hn * a <= b << scale:
        return -1
    if ln * a > b << scale:
        return 1
    return 0


def _compare(lo: Fraction, hi: Fraction, a: int, b: int) -> int:
    q = max(lo.denominator, hi.denominator)
    if q & (q - 1) == 0 and q % min(lo.denominator, hi.denominator) == 0:
        scale = q.bit_length() - 1
        ln = lo.numerator * (q // lo.denominator)
        hn = hi.numerator * (q // hi.denominator)
        # try with t rounded outward to the bits this comparison needs
        k = min(scale, a.bit_length() + 64)
        shift = scale - k
        verdict = _compare_scaled(ln >> shift, -((-hn) >> shift), k, a, b)
        if verdict or k == scale:
            return verdict
        return _compare_scaled(ln, hn, scale, a, b)
    if hi * a <= b:
        return -1
    if lo * a > b:
        return 1
    return 0


def verify_inequality(
    d: int,
    nmax: int,
    bits: int = 128,
    max_bits: int = MAX_BITS,
    t_enclosure: tuple[Fraction, Fraction] | None = None,
) -> InequalityCertificate:
    """Check t s_{N-1} - s_N <= (t - 1) d for 1 <= N <= nmax.

    The comparison is done as t (s_{N-1} - d) <= s_N - d with the exact
    rational enclosure of t; a straddling enclosure doubles the precision.
    ``t_enclosure`` replaces the computed enclosure (used to test the checker).
    """
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    lo, hi = t_enclosure if t_enclosure is not None else isolate_t(d, bits)
    s = s_recurrence_values(d, nmax)
    n = 1
    while n <= nmax:
        verdict = _compare(lo, hi, s[n - 1] - d, s[n] - d)
        if verdict < 0:
            n += 1
        elif verdict > 0:
            return InequalityCertificate(d, nmax, False, n, bits)
        elif t_enclosure is not None or bits >= max_bits:
            raise IndeterminateError(f"enclosure of t straddles the threshold at N={n}")
        else:
            bits = min(max(2 * bits, s[nmax].bit_length() + 64), max_bits)
            lo, hi = isolate_t(d, bits)
    return InequalityCertificate(d, nmax, True, None, bits)


@dataclass(frozen=True)
class ThresholdRow:
    d: int
    t_lo: Fraction
    t_hi: Fraction
    E_lo: Fraction
    E_hi: Fraction


def threshold_table(d_max: int, bits: int = 128) -> list[ThresholdRow]:
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    rows = []
    for d in range(2, d_max + 1):
        k = constants(d, bits)
        lower = 3 + Fraction(1, 2**d - 1)
        upper = 3 + Fraction(1, 2 ** (d - 1) - 1)
        if not lower < k.E_lo <= k.E_hi < upper:
            raise ArithmeticError(f"E(u_{d}) escapes ({lower}, {upper})")
        if rows and not k.E_hi < rows[-1].E_lo:
            raise ArithmeticError(f"E(u_{d}) is not below E(u_{d - 1})")
        rows.append(ThresholdRow(d, k.t_lo, k.t_hi, k.E_lo, k.E_hi))
    return rows


def residual_diagnostic(d: int, n: int, value: int, bits: int = 128):
    """|value - c_1 t^n|, the o_N term when value = max S(d, N)."""
    k = constants(d, bits)
    with mpmath.workprec(bits + 32):
        return abs(value - k.c[0].real * k.t**n)
