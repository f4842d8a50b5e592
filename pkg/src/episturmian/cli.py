"""Command-line interface.

Every command prints one envelope ``{command, params, result, versions}``.
Rationals and big integers are written as decimal strings; enclosures are
rounded outward so the printed interval still contains the true value.
``--format text`` prints the same strings as aligned text.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from . import __version__, _backend, bispecial, checks, dbonacci, exponent, maximality, oracle
from .core import FiniteWord
from .directive import DirectiveError, DirectiveSequence, classify, parse_directive, standard_prefix

DOMAIN_ERRORS = (
    ValueError,
    ArithmeticError,
    KeyError,
    maximality.BudgetExceeded,
    OSError,
)


class UsageError(Exception):
    pass


# ---- number formatting -------------------------------------------------------


def decimal_str(x: Fraction | int, digits: int, up: bool = False) -> str:
    """``x`` with ``digits`` places after the point, rounded down (or up) exactly."""
    if isinstance(x, int):
        return str(x)
    q = -((-x.numerator * 10**digits) // x.denominator) if up else (x.numerator * 10**digits) // x.denominator
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def interval(lo: Fraction, hi: Fraction, digits: int) -> dict[str, str]:
    return {"lo": decimal_str(lo, digits), "hi": decimal_str(hi, digits, up=True)}


def mp_str(x, digits: int) -> str:
    return mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def estimate_json(e: exponent.ExponentEstimate, digits: int) -> dict[str, Any]:
    if e.is_infinite:
        return {"kind": e.kind.value, "lo": "inf", "hi": "inf", "witnessN": None}
    out: dict[str, Any] = {"kind": e.kind.value, **interval(e.lo, e.hi, digits), "witnessN": e.witness_n}
    if e.sup is not None:
        out["sup"] = decimal_str(e.sup, digits)
    return out


# ---- text rendering ------------------------------------------------------------


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render(value: Any, indent: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        width = max((len(k) for k in value), default=0)
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_render(v, indent + "  "))
            else:
                lines.append(f"{indent}{k.ljust(width)}  {_scalar(v if v != [] else '')}")
        return lines
    if isinstance(value, list):
        if value and all(isinstance(r, dict) and not any(isinstance(x, (dict, list)) for x in r.values())
                         for r in value):
            keys = list(value[0])
            rows = [keys] + [[_scalar(r.get(k)) for k in keys] for r in value]
            widths = [max(len(row[j]) for row in rows) for j in range(len(keys))]
            return [indent + "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_render(item, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar(item)}")
        return lines
    return [indent + _scalar(value)]


def emit(envelope: dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(envelope, indent=2) + "\n")
    else:
        out.write("\n".join(_render({"command": envelope["command"], **envelope["result"]})) + "\n")


# ---- commands ------------------------------------------------------------------


def _directive(args) -> DirectiveSequence:
    return parse_directive(args.directive, args.d)


def cmd_gen(args) -> dict[str, Any]:
    delta = _directive(args)
    w = standard_prefix(delta, args.n)
    return {"d": delta.d, "directive": str(delta), "class": str(classify(delta)), "length": len(w), "word": str(w)}


def cmd_exponent(args) -> dict[str, Any]:
    delta = _directive(args)
    tol = Fraction(args.tol)
    e = exponent.critical_exponent(delta, args.nmax, tol, args.precision)
    limit = e.limit if e.limit is not None else exponent.asymptotic_exponent(delta, tol)
    return {
        "directive": str(delta),
        "class": str(classify(delta)),
        "E": estimate_json(e, args.digits),
        "Estar": estimate_json(limit, args.digits),
    }


def cmd_bispecial(args) -> dict[str, Any]:
    delta = _directive(args)
    indices = range(args.n + 1) if args.all else [args.n]
    records = [bispecial.bispecial_record(delta, n, cutoff=args.cutoff).to_dict() for n in indices]
    return {"directive": str(delta), "records": records}


def cmd_dbonacci(args) -> dict[str, Any]:
    d, digits = args.d, args.digits
    k = dbonacci.constants(d, args.precision)
    roots = [
        {"re": mp_str(z.real, digits), "im": mp_str(z.imag, digits), "radius": mpmath.nstr(r, 3)}
        for z, r in zip(k.roots, k.radii)
    ]
    cs = [
        {"re": mp_str(z.real, digits), "im": mp_str(z.imag, digits), "radius": mpmath.nstr(r, 3)}
        for z, r in zip(k.c, k.c_radii)
    ]
    table = [
        {"d": row.d, **{f"t{s}": v for s, v in zip(("Lo", "Hi"), interval(row.t_lo, row.t_hi, digits).values())},
         **{f"E{s}": v for s, v in zip(("Lo", "Hi"), interval(row.E_lo, row.E_hi, digits).values())}}
        for row in dbonacci.threshold_table(max(d, 2), args.precision)
    ]
    return {
        "d": d,
        "precisionBits": args.precision,
        "t": interval(k.t_lo, k.t_hi, digits),
        "E": interval(k.E_lo, k.E_hi, digits),
        "roots": roots,
        "c": cs,
        "table": table,
    }


def cmd_maxsearch(args) -> dict[str, Any]:
    res = maximality.enumerate_max(args.d, args.n, args.budget, workers=args.workers)
    words = res.expanded_argmax() if args.all_argmax else list(res.argmax)
    return {
        "d": res.d,
        "N": res.n,
        "maxValue": str(res.max_value),
        "argmax": [",".join(map(str, w)) for w in words],
        "canonical": not args.all_argmax,
        "exploredCount": str(res.explored),
    }


def cmd_verify(args) -> dict[str, Any]:
    if not args.all and not args.check:
        raise UsageError("verify needs --all or at least one --check NAME")
    results = checks.run_checks(None if args.all else args.check, seed=args.seed, small=args.small)
    rows = [
        {"check": r.name, "passed": r.passed, "seconds": f"{r.seconds:.2f}", "detail": r.detail} for r in results
    ]
    return {"seed": args.seed, "small": args.small, "passed": all(r.passed for r in results), "checks": rows}


def _read_word(args) -> FiniteWord:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    text = text.strip()
    d = args.d
    if text.startswith("{"):
        payload = json.loads(text)
        result = payload.get("result", payload)
        text = result["word"]
        d = d or result.get("d")
    letters = tuple(int(x) for x in text.replace("\n", "").split(",") if x.strip()) if text else ()
    d = d or max(2, max(letters, default=0) + 1)
    return FiniteWord(letters, d)


def cmd_oracle(args) -> dict[str, Any]:
    w = _read_word(args)
    base = {"d": w.d, "length": len(w)}
    if args.task == "exponent":
        rec = oracle.max_exponent(w)
        e = rec.exponent
        return {
            **base,
            "exponent": f"{e.numerator}/{e.denominator}",
            "exponentDecimal": decimal_str(e, args.digits),
            "period": rec.period,
            "repetitionLength": rec.length,
            "occurrence": rec.occurrence,
            "root": str(rec.root),
        }
    if args.task == "bispecials":
        max_len = args.max_len if args.max_len is not None else max(0, min(30, (len(w) - 1) // 4))
        found = oracle.bispecials_in_prefix(w, max_len)
        return {
            **base,
            "maxLen": max_len,
            "bispecials": [
                {
                    "length": len(p.factor),
                    "factor": str(p.factor),
                    "left": ",".join(map(str, sorted(p.left))),
                    "right": ",".join(map(str, sorted(p.right))),
                }
                for p in found
            ],
        }
    if args.factor is None:
        raise UsageError("oracle returns needs --factor")
    f = FiniteWord.parse(args.factor, w.d)
    rws = sorted(oracle.return_words(w, f), key=lambda r: (len(r), r.letters))
    return {
        **base,
        "factor": str(f),
        "occurrences": len(oracle.occurrences(w, f)),
        "returnWords": [str(r) for r in rws],
        "shortest": str(rws[0]),
    }


COMMANDS = {
    "gen": cmd_gen,
    "exponent": cmd_exponent,
    "bispecial": cmd_bispecial,
    "dbonacci": cmd_dbonacci,
    "maxsearch": cmd_maxsearch,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="output format (default: json)")
    common.add_argument("--digits", type=int, default=20, help="decimal places in printed numbers (default: 20)")

    def directive_flags(p, default_d: int | None = 2):
        p.add_argument("--d", type=int, default=default_d, help="alphabet size (default: 2)")
        p.add_argument("--directive", default=":0,1", help='directive "pre:per", letters comma-separated (default: ":0,1")')

    parser = argparse.ArgumentParser(
        prog="episturmian",
        description="Bispecial factors, critical exponents and d-bonacci constants of episturmian sequences.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("gen", parents=[common], help="standard prefix of the sequence")
    directive_flags(p)
    p.add_argument("--n", type=int, default=100, help="prefix length (default: 100)")

    p = sub.add_parser("exponent", parents=[common], help="critical and asymptotic critical exponent")
    directive_flags(p)
    p.add_argument("--nmax", "--n", dest="nmax", type=int, default=exponent.DEFAULT_NMAX,
                   help=f"largest index in the sup (default: {exponent.DEFAULT_NMAX})")
    p.add_argument("--tol", default="1e-9", help="limit tolerance (default: 1e-9)")
    p.add_argument("--precision", type=int, default=128, help="bits for the d-bonacci root (default: 128)")

    p = sub.add_parser("bispecial", parents=[common], help="N-th bispecial factor and its shortest return word")
    directive_flags(p)
    p.add_argument("--n", type=int, default=4, help="index N (default: 4)")
    p.add_argument("--all", action="store_true", help="print records 0..N")
    p.add_argument("--cutoff", type=int, default=bispecial.DEFAULT_CUTOFF,
                   help=f"omit words longer than this (default: {bispecial.DEFAULT_CUTOFF})")

    p = sub.add_parser("dbonacci", parents=[common], help="d-bonacci constants and threshold table")
    p.add_argument("--d", type=int, default=2, help="alphabet size (default: 2)")
    p.add_argument("--precision", type=int, default=128, help="working precision in bits (default: 128)")

    p = sub.add_parser("maxsearch", parents=[common], help="exhaustive max of 1^T M_h1 ... M_hN 1")
    p.add_argument("--d", type=int, default=2, help="alphabet size (default: 2)")
    p.add_argument("--n", type=int, default=8, help="word length N (default: 8)")
    p.add_argument("--budget", type=int, default=maximality.DEFAULT_BUDGET,
                   help=f"row-update budget (default: {maximality.DEFAULT_BUDGET})")
    p.add_argument("--all-argmax", action="store_true", help="list every maximizer, not one per relabelling class")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--all", action="store_true", help="run every check")
    p.add_argument("--check", action="append", choices=sorted(checks.CHECKS), help="run one check (repeatable)")
    p.add_argument("--small", action="store_true", help="desk-scale parameters")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default: 0)")

    p = sub.add_parser("oracle", parents=[common], help="brute-force scans of a finite word")
    p.add_argument("task", choices=("exponent", "bispecials", "returns"))
    p.add_argument("--input", help="file with comma-separated letters or gen JSON (default: stdin)")
    p.add_argument("--d", type=int, default=None, help="alphabet size (default: inferred)")
    p.add_argument("--max-len", type=int, default=None, help="longest bispecial to report")
    p.add_argument("--factor", help="factor for 'returns', comma-separated")
    return parser


def _params(args) -> dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("command", "format")}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"episturmian: error: {exc}\n")
        return 2
    except (DirectiveError, exponent.ConvergenceError, oracle.OracleError, *DOMAIN_ERRORS) as exc:
        err.write(f"episturmian {args.command}: {exc}\n")
        return 1
    envelope = {
        "command": args.command,
        "params": _params(args),
        "result": result,
        "versions": {"episturmian": __version__, "backend": _backend.BACKEND},
    }
    emit(envelope, args.format, out)
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
