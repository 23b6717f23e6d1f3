"""Command-line front end: approximation, sequence dumps, and the verifier.

Output formats are table (human), csv, and json; csv and json schemas are
stable and documented in the README.  Decimal endpoint rendering is always
outward: lower endpoints round down, upper endpoints round up, with the
minimal digit count that separates the two plus two guard digits.

Exit codes: 0 success (for verify: all checks passed), 1 verification
failure or undecided result, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import enclosure as en
from . import sequences as sq
from . import stirling as st
from . import verifier as vf
from . import wallis as wa
from .enclosure import Dyadic, Interval, Precision
from .errors import DomainError, UndecidedError
from .exactcore import factorial, to_decimal

DEFAULT_PREC_BITS = 53
PREC_ENV_VAR = "STIRLING_PREC"
EXACT_CAP_DEFAULT = 10 ** 6

#: above this n the exact factorial is built directly in base-10 arithmetic,
#: avoiding the interpreter's quadratic binary-to-decimal conversion
_DECIMAL_TREE_MIN = 40_000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# decimal rendering with directed rounding
# ---------------------------------------------------------------------------


def _floor_log10(d: Dyadic) -> int:
    """Exact floor(log10(|d|)) for d != 0."""
    mag = d.m.bit_length() + d.e - 1  # |d| in [2^mag, 2^(mag+1))
    t = (mag * 30103) // 100000
    while _abs_cmp_pow10(d, t) < 0:
        t -= 1
    while _abs_cmp_pow10(d, t + 1) >= 0:
        t += 1
    return t


def _abs_cmp_pow10(d: Dyadic, t: int) -> int:
    a = Dyadic(abs(d.m), d.e) if d.m < 0 else d
    if t >= 0:
        return en._cmp_dy_frac(a, 10 ** t, 1)
    return en._cmp_dy_frac(a, 1, 10 ** -t)


def _scaled_floor(d: Dyadic, k: int) -> int:
    """floor(d * 10^k), exactly."""
    num, den = d.as_integer_ratio()
    if k >= 0:
        return num * 10 ** k // den
    return num // (den * 10 ** -k)


def _render_endpoint(d: Dyadic, sig: int, up: bool) -> str:
    """Decimal string with `sig` significant digits, rounded outward."""
    if d.m == 0:
        return "0"
    mag = _floor_log10(d)
    k = sig - 1 - mag
    n = -_scaled_floor(Dyadic(-d.m, d.e), k) if up else _scaled_floor(d, k)
    neg = n < 0
    digits = str(-n if neg else n)
    # a ceiling step may carry into one extra digit (e.g. 999.96 -> 1000)
    point = mag + 1 + (len(digits) - sig)
    if -4 < point <= 21:
        if point <= 0:
            body = "0." + "0" * -point + digits
        elif point >= len(digits):
            body = digits + "0" * (point - len(digits))
        else:
            body = digits[:point] + "." + digits[point:]
    else:
        exp10 = point - 1
        body = digits[0] + "." + digits[1:] + f"e{'+' if exp10 >= 0 else '-'}{abs(exp10)}"
        if len(digits) == 1:
            body = digits[0] + f"e{'+' if exp10 >= 0 else '-'}{abs(exp10)}"
    return "-" + body if neg else body


def _exact_decimal(d: Dyadic) -> Optional[str]:
    """Exact (finite) decimal expansion, or None when it would be unwieldy."""
    if d.m == 0:
        return "0"
    if d.e >= 0:
        if d.m.bit_length() + d.e > 130:
            return None
        return str(d.m << d.e)
    frac_digits = -d.e
    if d.m.bit_length() > 130 or frac_digits > 40:
        return None
    scaled = abs(d.m) * 5 ** frac_digits
    s = str(scaled).rjust(frac_digits + 1, "0")
    body = (s[:-frac_digits] + "." + s[-frac_digits:]).rstrip("0").rstrip(".")
    return "-" + body if d.m < 0 else body


def format_endpoints(iv: Interval, guard: int = 2, max_sig: int = 40) -> "tuple[str, str]":
    """Directed decimal strings for both endpoints.

    Point intervals render exactly when short; otherwise the significant
    digit count is the minimal count separating lo from hi plus `guard`.
    """
    if iv.is_point():
        s = _exact_decimal(iv.lo)
        if s is not None:
            return s, s
        sig = 24
    else:
        # magnitude reference: the endpoint farther from zero
        if iv.hi.m == 0 or (
            iv.lo.m != 0
            and en._cmp_raw(abs(iv.lo.m), iv.lo.e, abs(iv.hi.m), iv.hi.e) > 0
        ):
            ref = iv.lo
        else:
            ref = iv.hi
        mag = _floor_log10(ref)
        width = Dyadic(*en._canon(*en._add_raw(iv.hi.m, iv.hi.e, -iv.lo.m, iv.lo.e)))
        sep = _floor_log10(width)
        sig = max(1, mag - sep + 1) + guard
        sig = min(sig, max_sig)
    return _render_endpoint(iv.lo, sig, up=False), _render_endpoint(iv.hi, sig, up=True)


def _endpoint_json(d: Dyadic, up: bool, sig: int = 24) -> dict:
    return {
        "decimal": _render_endpoint(d, sig, up) if d.m else "0",
        "mantissa": d.m,
        "exponent": d.e,
    }


def _interval_json(iv: Interval) -> dict:
    lo_s, hi_s = format_endpoints(iv)
    return {
        "lo": {"decimal": lo_s, "mantissa": iv.lo.m, "exponent": iv.lo.e},
        "hi": {"decimal": hi_s, "mantissa": iv.hi.m, "exponent": iv.hi.e},
    }


# ---------------------------------------------------------------------------
# precision / validation plumbing
# ---------------------------------------------------------------------------


def _resolve_prec(flag_value: Optional[int]) -> Precision:
    bits = flag_value
    if bits is None:
        raw = os.environ.get(PREC_ENV_VAR)
        if raw is not None:
            try:
                bits = int(raw)
            except ValueError:
                raise UsageError(f"{PREC_ENV_VAR} must be an integer, got {raw!r}")
        else:
            bits = DEFAULT_PREC_BITS
    try:
        return Precision(bits)
    except ValueError as exc:
        raise UsageError(str(exc))


def _require_positive(n: int, what: str = "n") -> int:
    if n < 1:
        raise UsageError(f"{what} must be >= 1, got {n}")
    return n


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_approx(args) -> int:
    n = _require_positive(args.n)
    p = _resolve_prec(args.prec)
    fb = st.factorial_bounds(n, p)
    rel = en.sub(fb.correction, en.from_int(1), p)
    approx_lo, approx_hi = format_endpoints(fb.approx)
    lower = _render_endpoint(fb.lower, 24, up=False)
    upper = _render_endpoint(fb.upper, 24, up=True)
    rel_hi = _render_endpoint(rel.hi, 17, up=True)
    if args.format == "json":
        payload = {
            "n": n,
            "prec": p.bits,
            "approx": _interval_json(fb.approx),
            "lower": _endpoint_json(fb.lower, up=False),
            "upper": _endpoint_json(fb.upper, up=True),
            "rel_error_bound": rel_hi,
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "approx_lo", "approx_hi", "lower", "upper", "rel_error_bound"])
        w.writerow([n, approx_lo, approx_hi, lower, upper, rel_hi])
    else:
        print(f"n                : {n}")
        print(f"precision bits   : {p.bits}")
        print(f"approx enclosure : [{approx_lo}, {approx_hi}]")
        print(f"certified lower  : {lower}")
        print(f"certified upper  : {upper}")
        print(f"rel error bound  : {rel_hi}  (e^(1/(4n)) - 1)")
    return 0


def _factorial_decimal(n: int) -> str:
    """Exact decimal of n!; large n build the product in base-10 arithmetic."""
    if n < _DECIMAL_TREE_MIN:
        return to_decimal(factorial(n))
    digits = int(math.lgamma(n + 1) / math.log(10)) + 16
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.Emax = decimal.MAX_EMAX
        ctx.traps[decimal.Inexact] = True  # certifies the product stayed exact
        def prod(lo: int, hi: int) -> decimal.Decimal:
            if hi - lo < 8:
                r = decimal.Decimal(lo)
                for i in range(lo + 1, hi + 1):
                    r *= i
                return r
            mid = (lo + hi) // 2
            return prod(lo, mid) * prod(mid + 1, hi)
        value = prod(1, n)
        sign, mantissa, exp10 = value.as_tuple()
        return "".join(map(str, mantissa)) + "0" * exp10


def _cmd_exact(args) -> int:
    n = args.n
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    if n > args.cap:
        raise UsageError(f"n = {n} exceeds the safety cap {args.cap}")
    print(_factorial_decimal(n) if n > 1 else "1")
    return 0


def _cmd_digits(args) -> int:
    n = _require_positive(args.n)
    try:
        print(st.digit_count(n))
    except UndecidedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


_SEQ_HELP = "a | b | ratio | bdiff | W | L"


def _sequence_rows(seq: str, n0: int, n1: int, p: Precision):
    """Yield (n, payload) rows; payload is Interval or (Interval, Fraction)."""
    fact = factorial(n0)
    for n in range(n0, n1 + 1):
        if seq == "a":
            yield n, sq.a_of(n, p, factorial_value=fact)
        elif seq == "b":
            yield n, sq.b_of(n, p, factorial_value=fact)
        elif seq == "ratio":
            yield n, sq.ratio_of(n, p)
        elif seq == "bdiff":
            yield n, sq.b_diff_series(n, p)
        elif seq == "W":
            w = wa.wallis_partial(n)
            yield n, (en.from_rational(w, p), w)
        else:  # L
            yield n, wa.lemma_L(n, p)
        fact *= n + 1


def _cmd_sequence(args) -> int:
    if args.seq not in ("a", "b", "ratio", "bdiff", "W", "L"):
        raise UsageError(f"--seq must be one of {_SEQ_HELP}")
    n0, n1 = args.start, args.end
    if n0 < 1 or n1 < n0:
        raise UsageError(f"need 1 <= from <= to, got from={n0} to={n1}")
    p = _resolve_prec(args.prec)
    is_w = args.seq == "W"
    header = ["n", "lo", "hi"] + (["num", "den"] if is_w else [])
    rows = []
    for n, payload in _sequence_rows(args.seq, n0, n1, p):
        if is_w:
            iv, w = payload
            lo_s, hi_s = format_endpoints(iv)
            rows.append((n, iv, lo_s, hi_s, w))
        else:
            lo_s, hi_s = format_endpoints(payload)
            rows.append((n, payload, lo_s, hi_s, None))
    if args.format == "json":
        out = []
        for n, iv, lo_s, hi_s, w in rows:
            rec = {"n": n, **_interval_json(iv)}
            if w is not None:
                rec["num"] = w.numerator
                rec["den"] = w.denominator
            out.append(rec)
        print(json.dumps({"seq": args.seq, "prec": p.bits, "rows": out}, indent=2))
    elif args.format == "csv":
        w_ = csv.writer(sys.stdout)
        w_.writerow(header)
        for n, _, lo_s, hi_s, w in rows:
            w_.writerow([n, lo_s, hi_s] + ([w.numerator, w.denominator] if w else []))
    else:
        print("  ".join(header))
        for n, _, lo_s, hi_s, w in rows:
            extra = f"  {w.numerator}/{w.denominator}" if w else ""
            print(f"{n}  {lo_s}  {hi_s}{extra}")
    return 0


def _cmd_verify(args) -> int:
    checks = vf.CANONICAL_CHECKS
    if args.checks:
        requested = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in requested if c not in vf.CANONICAL_CHECKS]
        if unknown:
            raise UsageError(
                f"unknown checks {unknown}; known: {', '.join(vf.CANONICAL_CHECKS)}"
            )
        checks = requested
    try:
        cfg = vf.CheckConfig(
            n_min=args.min_n,
            n_max=args.max_n,
            p_start=Precision(args.prec_start),
            p_max=Precision(args.prec_max),
            checks=checks,
            workers=args.workers,
        )
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc))
    report = vf.run_all(cfg)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        for r in report.results:
            print(f"{r.name}: {r.status} (max {r.max_bits} bits, {r.ms:.0f} ms)")
    else:
        print(text)
    return 0 if report.all_passed() else 1


def _cmd_constants(args) -> int:
    p = _resolve_prec(args.prec)
    hi = Precision(p.bits + en.GUARD_BITS)
    pi_iv = en.constant_pi(hi)
    items = [
        ("e", en.constant_e(p)),
        ("sqrt_pi", en.sqrt(pi_iv, p)),
        ("sqrt_2pi", en.sqrt(en.mul(pi_iv, en.from_int(2), hi), p)),
        ("pi_over_2", en._idouble(en._iround(pi_iv, en._mant(p)), -1)),
        ("exp_3_4", sq.lower_bound_const(p)),
    ]
    if args.format == "json":
        payload = {name: _interval_json(iv) for name, iv in items}
        payload["prec"] = p.bits
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["name", "lo", "hi"])
        for name, iv in items:
            lo_s, hi_s = format_endpoints(iv)
            w.writerow([name, lo_s, hi_s])
    else:
        for name, iv in items:
            lo_s, hi_s = format_endpoints(iv)
            print(f"{name:9s} [{lo_s}, {hi_s}]")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stirlingcert",
        description="Certified factorial approximation, sequence enclosures, "
        "and a machine-checked inequality suite.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def add_prec(sp):
        sp.add_argument(
            "--prec",
            type=int,
            default=None,
            help=f"precision in bits (default {DEFAULT_PREC_BITS}; env {PREC_ENV_VAR})",
        )

    def add_format(sp):
        sp.add_argument(
            "--format", choices=("table", "csv", "json"), default="table",
            help="output format (default table)",
        )

    sp = subs.add_parser("approx", help="certified bounds for n!")
    sp.add_argument("n", type=int)
    add_prec(sp)
    add_format(sp)
    sp.set_defaults(func=_cmd_approx)

    sp = subs.add_parser("exact", help="exact decimal expansion of n!")
    sp.add_argument("n", type=int)
    sp.add_argument("--cap", type=int, default=EXACT_CAP_DEFAULT,
                    help=f"safety cap on n (default {EXACT_CAP_DEFAULT})")
    sp.set_defaults(func=_cmd_exact)

    sp = subs.add_parser("digits", help="exact decimal digit count of n!")
    sp.add_argument("n", type=int)
    sp.set_defaults(func=_cmd_digits)

    sp = subs.add_parser("sequence", help="per-n certified sequence values")
    sp.add_argument("--seq", required=True, help=_SEQ_HELP)
    sp.add_argument("--from", dest="start", type=int, required=True)
    sp.add_argument("--to", dest="end", type=int, required=True)
    add_prec(sp)
    add_format(sp)
    sp.set_defaults(func=_cmd_sequence)

    sp = subs.add_parser("verify", help="run the certified check suite")
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--max-n", type=int, default=10_000)
    sp.add_argument("--prec-start", type=int, default=DEFAULT_PREC_BITS)
    sp.add_argument("--prec-max", type=int, default=256)
    sp.add_argument("--checks", default=None,
                    help=f"comma list from: {', '.join(vf.CANONICAL_CHECKS)}")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--report", default=None, help="write the JSON report to this file")
    sp.set_defaults(func=_cmd_verify)

    sp = subs.add_parser("constants", help="enclosures of the reference constants")
    add_prec(sp)
    add_format(sp)
    sp.set_defaults(func=_cmd_constants)

    return parser


def main(argv: "Optional[Sequence[str]]" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
