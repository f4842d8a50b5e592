"""Property suite behind ``episturmian verify``.

Every check is a function ``(rng, small) -> str`` that raises
``CheckFailure`` on a violated property and otherwise returns a short
summary. ``small`` selects the desk-scale parameters.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import bispecial, dbonacci, exponent, maximality, oracle
from .core import FiniteWord, mat_mul, mat_vec, parikh, reverse, vec_add, vec_mat
from .directive import (
    DirectiveSequence,
    SequenceTag,
    classify,
    dbonacci_directive,
    parse_directive,
    prefix_chain,
    standard_prefix,
)
from .morphisms import (
    Permutation,
    apply,
    compose,
    conjugate,
    conjugated_matrix,
    elementary,
    elementary_matrix,
    incidence,
    product_matrix,
    row_update,
)


class CheckFailure(AssertionError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailure(msg)


def random_word(rng: random.Random, d: int, n: int) -> FiniteWord:
    return FiniteWord(tuple(rng.randrange(d) for _ in range(n)), d)


def random_morphism(rng: random.Random, d: int, max_len: int = 4):
    from .morphisms import Morphism

    return Morphism(d, tuple(random_word(rng, d, rng.randint(1, max_len)) for _ in range(d)))


def random_ar_directive(rng: random.Random, d: int, max_pre: int = 3, max_per: int = 5) -> DirectiveSequence:
    """Eventually periodic directive whose period uses every letter."""
    pre = tuple(rng.randrange(d) for _ in range(rng.randint(0, max_pre)))
    per = list(range(d)) + [rng.randrange(d) for _ in range(rng.randint(0, max_per - d))]
    rng.shuffle(per)
    return DirectiveSequence(d, pre, tuple(per))


def naive_max_exponent(letters) -> tuple[Fraction, int, int]:
    """(exponent, occurrence, period) by trying every start and period."""
    n = len(letters)
    best = (Fraction(1), 0, 1)
    for i in range(n):
        for p in range(1, n - i + 1):
            length = p
            while i + length < n and letters[i + length] == letters[i + length - p]:
                length += 1
            e = Fraction(length, p)
            if e > best[0]:
                best = (e, i, p)
    return best


# ---- core -------------------------------------------------------------------


def check_core_parikh(rng: random.Random, small: bool) -> str:
    trials = 200 if small else 2000
    for _ in range(trials):
        d = rng.randint(2, 6)
        w = random_word(rng, d, rng.randint(0, 40))
        v = parikh(w)
        _require(sum(v) == len(w), f"parikh sum of {w} is {sum(v)}")
        _require(parikh(reverse(w)) == v, f"parikh not reversal invariant on {w}")
        _require(reverse(reverse(w)) == w, f"double reversal changed {w}")
    return f"{trials} random words"


def check_core_linear(rng: random.Random, small: bool) -> str:
    trials = 100 if small else 1000
    for _ in range(trials):
        d = rng.randint(2, 6)
        m = tuple(tuple(rng.randint(0, 10**12) for _ in range(d)) for _ in range(d))
        u = tuple(rng.randint(0, 10**15) for _ in range(d))
        v = tuple(rng.randint(0, 10**15) for _ in range(d))
        _require(
            mat_vec(m, vec_add(u, v)) == vec_add(mat_vec(m, u), mat_vec(m, v)),
            "mat_vec is not additive",
        )
    return f"{trials} random matrices"


# ---- morphisms ----------------------------------------------------------------


def check_morphism_parikh(rng: random.Random, small: bool) -> str:
    trials = 200 if small else 2000
    for _ in range(trials):
        d = rng.randint(2, 5)
        m = random_morphism(rng, d)
        w = random_word(rng, d, rng.randint(0, 20))
        _require(parikh(apply(m, w)) == mat_vec(incidence(m), parikh(w)), "Parikh law fails")
        m2 = random_morphism(rng, d)
        _require(
            incidence(compose(m, m2)) == mat_mul(incidence(m), incidence(m2)),
            "incidence is not multiplicative",
        )
    return f"{trials} random morphisms"


def check_conjugation(rng: random.Random, small: bool) -> str:
    count = 0
    for d in range(2, 7):
        for perm in itertools.permutations(range(d)):
            p = Permutation(perm)
            for k in range(d):
                _require(
                    conjugated_matrix(p, elementary_matrix(k, d)) == elementary_matrix(conjugate(p, k), d),
                    f"P^T M_{k} P != M_pi({k}) for pi={perm}",
                )
                count += 1
    return f"{count} (permutation, letter) pairs"


def check_row_update(rng: random.Random, small: bool) -> str:
    trials = 300 if small else 3000
    for _ in range(trials):
        d = rng.randint(2, 6)
        x = tuple(rng.randint(0, 10**20) for _ in range(d))
        i = rng.randrange(d)
        _require(row_update(x, i) == vec_mat(x, elementary_matrix(i, d)), "row update disagrees")
    return f"{trials} random row vectors"


# ---- directive ----------------------------------------------------------------


def check_prefix_consistency(rng: random.Random, small: bool) -> str:
    trials = 30 if small else 200
    for _ in range(trials):
        d = rng.randint(2, 4)
        pre = ",".join(str(rng.randrange(d)) for _ in range(rng.randint(0, 3)))
        per = ",".join(str(rng.randrange(d)) for _ in range(rng.randint(1, 4)))
        delta = parse_directive(f"{pre}:{per}", d)
        _require(parse_directive(str(delta), d) == delta, f"{delta} does not round-trip")
        l1, l2 = sorted(rng.sample(range(0, 400), 2))
        _require(
            standard_prefix(delta, l1).is_prefix_of(standard_prefix(delta, l2)),
            f"prefixes of {delta} are not nested",
        )
        if classify(delta).tag is SequenceTag.PERIODIC:
            # psi_1 ... psi_m (i^omega) with i the tail letter
            m = len(delta.preperiod)
            i = delta.period[0]
            tail = FiniteWord((i,) * l2, d)
            for j in reversed(delta.preperiod[:m]):
                tail = apply(elementary(j, d), tail)[:l2]
            _require(standard_prefix(delta, l2) == tail, f"periodic formula fails for {delta}")
        else:
            chain = prefix_chain(delta, 12)
            for a, b in zip(chain, chain[1:]):
                _require(a.is_prefix_of(b), f"prefix chain of {delta} is not nested")
            top = chain[-1][:l2]
            _require(top == standard_prefix(delta, len(top)), f"prefix chain of {delta} disagrees")
    return f"{trials} random directives"


# ---- bispecial ------------------------------------------------------------------


def _prefix_for(delta: DirectiveSequence, len_b: int) -> FiniteWord:
    return standard_prefix(delta, max(5000, 40 * len_b))


def check_bispecial_oracle(rng: random.Random, small: bool) -> str:
    trials = 8 if small else 40
    nmax = 8
    for t in range(trials):
        d = 2 + t % 2
        delta = random_ar_directive(rng, d)
        recs = [bispecial.bispecial_record(delta, n) for n in range(nmax + 1)]
        s = exponent.s_values(delta, nmax)
        prefix = _prefix_for(delta, recs[-1].len_b)
        half = prefix[: len(prefix) // 2]
        for n, rec in enumerate(recs):
            _require(rec.len_b * (d - 1) == s[n] - d, f"lenB({n}) formula fails for {delta}")
            if n:
                _require(rec.len_r * (d - 1) == s[n] - s[n - 1], f"lenR({n}) formula fails")
                _require(rec.b == rec.r + recs[n - 1].b, f"b_N != r_N b_(N-1) at N={n} for {delta}")
            _require(oracle.extension_profile(half, rec.b).is_bispecial, f"b_{n} of {delta} not bispecial")
            _require(
                len(oracle.shortest_return_word(prefix, rec.b)) == rec.len_r,
                f"shortest return word to b_{n} of {delta} has the wrong length",
            )
            _require(rec.r in oracle.return_words(prefix, rec.b), f"r_{n} of {delta} is not a return word")
    return f"{trials} random AR directives, N <= {nmax}"


def check_bispecial_image(rng: random.Random, small: bool) -> str:
    trials = 6 if small else 30
    for t in range(trials):
        d = 2 + t % 2
        delta = random_ar_directive(rng, d)
        i = rng.randrange(d)
        image = delta.prepend(i)
        phi = elementary(i, d)
        prefix = standard_prefix(image, 6000)
        for n in range(6):
            b = bispecial.bispecial_record(delta, n).b
            f = apply(phi, b) + FiniteWord((i,), d)
            _require(oracle.extension_profile(prefix, f).is_bispecial, f"phi_{i}(b_{n}){i} not bispecial")
    return f"{trials} random images"


# ---- exponent -------------------------------------------------------------------


def check_s_values(rng: random.Random, small: bool) -> str:
    trials = 20 if small else 100
    for _ in range(trials):
        d = rng.randint(2, 5)
        delta = DirectiveSequence(
            d,
            tuple(rng.randrange(d) for _ in range(rng.randint(0, 3))),
            tuple(rng.randrange(d) for _ in range(rng.randint(1, 4))),
        )
        s = exponent.s_values(delta, 25)
        for n in range(26):
            m = product_matrix(delta.letters(n), d)
            _require(sum(map(sum, m)) == s[n], f"s_{n} of {delta} disagrees with the matrix product")
        if classify(delta).tag is SequenceTag.ARNOUX_RAUZY:
            _require(all(a < b for a, b in zip(s, s[1:])), f"s_N of {delta} not increasing")
    return f"{trials} random directives, N <= 25"


def check_lemma2(rng: random.Random, small: bool) -> str:
    trials = 8 if small else 20
    tol = Fraction(1, 10**6)
    for _ in range(trials):
        delta = random_ar_directive(rng, 2)
        orig = exponent.asymptotic_exponent(delta, tol)
        image = exponent.asymptotic_exponent(delta.embed(3).prepend(rng.randrange(3)), tol)
        _require(image.lo >= orig.lo - 2 * tol, f"E* drops under a morphic image of {delta}")
    return f"{trials} random binary AR directives"


def check_frequencies(rng: random.Random, small: bool) -> str:
    length = 10**4 if small else 10**5
    f = exponent.letter_frequencies(parse_directive(":0,1", 2), length)
    _require(sum(f.values) == 1, "frequencies do not sum to 1")
    golden = (mpmath.sqrt(5) - 1) / 2
    _require(abs(f.as_floats()[0] - golden) < (1e-3 if small else 1e-4), "Fibonacci f_0 is off")
    return f"f_0 = {f.as_floats()[0]:.6f}"


# ---- dbonacci -------------------------------------------------------------------


def check_dbonacci_roots(rng: random.Random, small: bool) -> str:
    for d in range(2, 8):
        k = dbonacci.constants(d, 128)
        _require(2 - Fraction(2, 2**d) < k.t_lo and k.t_hi < 2 - Fraction(1, 2**d), f"t({d}) outside bracket")
        p = lambda x: x**d - sum(x**j for j in range(d))
        _require(p(k.t_lo) < 0 < p(k.t_hi), f"p does not change sign across t({d})")
        for z, res in zip(k.roots, k.property2_residuals()):
            _require(res < mpmath.mpf(10) ** -20, f"root residual {res} for d={d}")
        for z in k.roots[1:]:
            _require(abs(z) < 1, f"conjugate root outside the unit disk for d={d}")
    return "d = 2..7"


def check_explicit_formula(rng: random.Random, small: bool) -> str:
    for d in range(2, 7):
        s = dbonacci.s_recurrence_values(d, 50)
        for n in range(51):
            value, bound = dbonacci.explicit_eval(d, n, 128)
            err = abs(value - s[n])
            _require(err <= bound and err < 1e-6, f"explicit formula off by {err} at d={d}, N={n}")
    return "d <= 6, N <= 50"


def check_matrix_power(rng: random.Random, small: bool) -> str:
    for d in range(2, 7):
        delta = dbonacci_directive(d)
        m = dbonacci.dbonacci_matrix(d)
        p = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        s = exponent.s_values(delta, 60)
        rec = dbonacci.s_recurrence_values(d, 60)
        for n in range(61):
            _require(sum(map(sum, p)) == s[n] == rec[n], f"s_{n} identities fail for d={d}")
            p = mat_mul(p, m)
    return "d <= 6, N <= 60"


def check_inequality(rng: random.Random, small: bool) -> str:
    nmax = 1000 if small else 10**4
    for d in range(2, 8):
        cert = dbonacci.verify_inequality(d, nmax)
        _require(cert.passed, f"inequality fails at N={cert.first_violation} for d={d}")
    k = dbonacci.constants(2, 128)
    bad = dbonacci.verify_inequality(2, 50, t_enclosure=(k.t_lo + Fraction(1, 10), k.t_hi + Fraction(1, 10)))
    _require(not bad.passed, "perturbed t was not rejected")
    return f"d = 2..7, N <= {nmax}; perturbed t fails at N={bad.first_violation}"


def check_threshold_table(rng: random.Random, small: bool) -> str:
    rows = dbonacci.threshold_table(7)
    return ", ".join(f"{float(r.E_lo):.3f}" for r in rows)


# ---- maximality -----------------------------------------------------------------


def check_maximality(rng: random.Random, small: bool) -> str:
    nmax = 8 if small else 10
    for d in (2, 3, 4):
        s = dbonacci.s_recurrence_values(d, nmax)
        for n in range(nmax + 1):
            res = maximality.enumerate_max(d, n)
            _require(res.max_value == s[n], f"max S({d},{n}) = {res.max_value} != {s[n]}")
            for w in res.argmax:
                _require(maximality.window_distinct(w, d), f"maximizer {w} has a repeated window")
                _require(maximality.s_value(w, d) == s[n], f"maximizer {w} has the wrong value")
    return f"d in (2, 3, 4), N <= {nmax}"


def check_permutation_invariance(rng: random.Random, small: bool) -> str:
    trials = 100 if small else 1000
    for _ in range(trials):
        d = rng.randint(2, 6)
        w = tuple(rng.randrange(d) for _ in range(rng.randint(0, 30)))
        perm = list(range(d))
        rng.shuffle(perm)
        v = maximality.s_value(w, d)
        _require(maximality.s_value(tuple(perm[a] for a in w), d) == v, f"value of {w} not invariant")
        _require(maximality.s_value(maximality.canonicalize(w), d) == v, "canonical form changes value")
    return f"{trials} random words"


def check_lemmas_14_15(rng: random.Random, small: bool) -> str:
    trials = 100
    for d in range(2, 7):
        for k in range(1, d):
            _require(maximality.column_dominance(d, k), f"column dominance fails for d={d}, k={k}")
            for _ in range(trials):
                x = maximality.random_positive_vector(d, rng)
                z = maximality.random_positive_vector(d, rng)
                _require(maximality.swap_gap(d, k, x, z) > 0, f"swap does not improve for d={d}, k={k}")
    return f"d <= 6, {trials} trials per (d, k)"


def check_residual(rng: random.Random, small: bool) -> str:
    # reported, not asserted
    parts = []
    for d in (2, 3, 4):
        s = dbonacci.s_recurrence_values(d, 10)
        r = [dbonacci.residual_diagnostic(d, n, s[n]) for n in range(d, 11)]
        trend = "decreasing" if all(a > b for a, b in zip(r, r[1:])) else "not monotone"
        parts.append(f"d={d}: {mpmath.nstr(r[-1], 3)} ({trend})")
    return "; ".join(parts)


# ---- oracle ---------------------------------------------------------------------


def check_oracle_naive(rng: random.Random, small: bool) -> str:
    trials = 40 if small else 200
    for _ in range(trials):
        n = rng.randint(1, 80 if small else 300)
        # one-letter words exercise the long-run path
        w = random_word(rng, rng.choice((2, 3)), n) if rng.random() < 0.9 else FiniteWord((0,) * n, 2)
        rec = oracle.max_exponent(w)
        e, occ, p = naive_max_exponent(w.letters)
        _require((rec.exponent, rec.occurrence, rec.period) == (e, occ, p), f"max_exponent disagrees on {w}")
    return f"{trials} random words"


def check_oracle_formulas(rng: random.Random, small: bool) -> str:
    out = []
    for d in (2, 3):
        delta = dbonacci_directive(d)
        prefix = standard_prefix(delta, 5000 if small else 20000)
        best = Fraction(0)
        prev = Fraction(0)
        for cut in (500, 1000, len(prefix)):
            e = oracle.max_exponent(prefix[:cut]).exponent
            _require(e >= prev, "max_exponent not monotone over prefixes")
            prev = e
        for n in range(1, 41):
            lb, lr = bispecial.bispecial_lengths(delta, n)
            ratio = 1 + Fraction(lb, lr)
            best = max(best, ratio)
            if n <= 8:
                _require(ratio <= prev, f"1 + lenB/lenR exceeds the observed exponent at N={n}")
        k = dbonacci.constants(d)
        _require(abs(best - (k.E_lo + k.E_hi) / 2) < Fraction(1, 10**6), f"sup ratio off for d={d}")
        out.append(f"d={d}: {float(best):.6f}")
    return ", ".join(out)


CHECKS: dict[str, Callable[[random.Random, bool], str]] = {
    "core.parikh": check_core_parikh,
    "core.linear": check_core_linear,
    "morphisms.parikh": check_morphism_parikh,
    "morphisms.conjugation": check_conjugation,
    "morphisms.row_update": check_row_update,
    "directive.prefixes": check_prefix_consistency,
    "bispecial.oracle": check_bispecial_oracle,
    "bispecial.image": check_bispecial_image,
    "exponent.s_values": check_s_values,
    "exponent.morphic_image": check_lemma2,
    "exponent.frequencies": check_frequencies,
    "dbonacci.roots": check_dbonacci_roots,
    "dbonacci.explicit": check_explicit_formula,
    "dbonacci.matrix_power": check_matrix_power,
    "dbonacci.inequality": check_inequality,
    "dbonacci.table": check_threshold_table,
    "maximality.search": check_maximality,
    "maximality.permutation": check_permutation_invariance,
    "maximality.column_swap": check_lemmas_14_15,
    "maximality.residual": check_residual,
    "oracle.naive": check_oracle_naive,
    "oracle.formulas": check_oracle_formulas,
}


def run_checks(names: list[str] | None = None, seed: int = 0, small: bool = True) -> list[CheckResult]:
    """Run the named checks (all by default) in registry order."""
    selected = list(CHECKS) if not names else names
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in CHECKS:
        if name not in selected:
            continue
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        try:
            detail, ok = CHECKS[name](rng, small), True
        except CheckFailure as exc:
            detail, ok = str(exc), False
        results.append(CheckResult(name, ok, detail, time.perf_counter() - start))
    return results
