"""Machine-checks the certified inequality and identity suite over n ranges.

Every check walks its range with exact incremental state (running factorial
and double-factorial products), decides each comparison from interval
endpoints only, and escalates precision by doubling whenever an interval
pair overlaps.  ``undecided`` is a first-class outcome distinct from
``fail``: the checked inequalities are true for every n >= 1, so a fail
witnesses an implementation bug while undecided only witnesses insufficient
precision.

Reports are deterministic for a fixed config (byte-identical apart from the
wall-time fields) regardless of worker count: ranges are cut into fixed-size
chunks, each chunk recomputes its exact state from scratch, and results are
merged in range order.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import enclosure as en
from . import sequences as sq
from . import wallis as wa
from .enclosure import Interval, Precision, TriState
from .errors import DomainError
from .exactcore import double_fact_even, double_fact_odd, factorial

CANONICAL_CHECKS = (
    "a_decreasing",
    "bdiff_window",
    "shifted_increasing",
    "floor",
    "floor_derived",
    "exact",
    "limits",
)

#: contiguous n-range handled per worker task; chunk boundaries recompute
#: their exact running products from scratch
CHUNK_SIZE = 1000

#: failures recorded per check before the rest are suppressed (keeps reports
#: bounded when a tiny precision ceiling floods a sweep with undecideds)
FAILURE_LIMIT = 1000

# Convergence bands for the limit check, frozen from a 128-bit sweep over
# n in {1, 10, 100, 1000, 10000}: residual*n approaches pi/8 ~ 0.3927 from
# below for the partial product and stays under 0.2276 for the sqrt(pi)
# sequence, so these thresholds keep >= 1.5x margin at every n.
WALLIS_BAND = Fraction(3, 5)  # pi/2 - W_n < (3/5)/n
LEMMA_BAND = Fraction(69, 200)  # L_n - sqrt(pi) < (69/200)/n
A_BAND_SCALE = Fraction(11, 10)  # a_n - sqrt(2 pi) < (e^(1/4n)-1) sqrt(2 pi) * 1.1


@dataclass(frozen=True)
class CheckConfig:
    """Range, precision ladder, check selection, and parallelism."""

    n_min: int = 1
    n_max: int = 10_000
    p_start: Precision = Precision(53)
    p_max: Precision = Precision(256)
    checks: "tuple[str, ...]" = CANONICAL_CHECKS
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_min < 1:
            raise DomainError(f"n_min must be >= 1, got {self.n_min}")
        if self.n_max < self.n_min:
            raise DomainError(f"n_max must be >= n_min, got {self.n_max}")
        if self.p_start.bits > self.p_max.bits:
            raise DomainError("p_start must not exceed p_max")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        unknown = [c for c in self.checks if c not in CANONICAL_CHECKS]
        if unknown:
            raise DomainError(f"unknown checks: {unknown}; known: {list(CANONICAL_CHECKS)}")


@dataclass
class CheckResult:
    """Outcome of one check over one range."""

    name: str
    n_min: int
    n_max: int
    status: str  # "pass" | "fail" | "undecided"
    max_bits: int
    failures: "list[dict]"  # {"n": int, "detail": str}
    ms: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "status": self.status,
            "max_bits": self.max_bits,
            "failures": self.failures,
            "ms": self.ms,
        }


@dataclass
class Report:
    """All check results for one configuration."""

    version: str
    config: CheckConfig
    results: "list[CheckResult]" = field(default_factory=list)
    total_ms: float = 0.0

    def all_passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": {
                "n_min": self.config.n_min,
                "n_max": self.config.n_max,
                "p_start": self.config.p_start.bits,
                "p_max": self.config.p_max.bits,
                "checks": list(self.config.checks),
                "workers": self.config.workers,
            },
            "results": [r.to_dict() for r in self.results],
            "total_ms": self.total_ms,
        }

    def to_json(self, indent: "int | None" = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _ladder(p_start: int, p_max: int) -> "list[int]":
    """Doubling precision schedule from p_start capped at p_max."""
    out = [p_start]
    b = p_start
    while b < p_max:
        b = min(2 * b, p_max)
        out.append(b)
    return out


_SQRT2PI_CACHE: "dict[int, Interval]" = {}


def _sqrt_2pi(bits: int) -> Interval:
    iv = _SQRT2PI_CACHE.get(bits)
    if iv is None:
        hi = Precision(bits + en.GUARD_BITS)
        iv = en.sqrt(en.mul(en.constant_pi(hi), en.from_int(2), hi), bits)
        _SQRT2PI_CACHE[bits] = iv
    return iv


_SQRTPI_CACHE: "dict[int, Interval]" = {}


def _sqrt_pi(bits: int) -> Interval:
    iv = _SQRTPI_CACHE.get(bits)
    if iv is None:
        iv = en.sqrt(en.constant_pi(Precision(bits + en.GUARD_BITS)), bits)
        _SQRTPI_CACHE[bits] = iv
    return iv


# ---------------------------------------------------------------------------
# chunk evaluators (module-level so worker processes can receive them)
# ---------------------------------------------------------------------------


def _chunk_a_decreasing(lo: int, hi: int, p_start: int, p_max: int):
    """Certify a_{n+1} < a_n for each pair index n in [lo, hi]."""
    failures: "list[dict]" = []
    max_bits = p_start
    ladder = _ladder(p_start, p_max)
    fact = factorial(lo)
    next_cache: "dict[int, Interval]" = {}
    for n in range(lo, hi + 1):
        fact_next = fact * (n + 1)
        cur_cache = next_cache
        next_cache = {}
        decided = False
        for bits in ladder:
            a_n = cur_cache.get(bits)
            if a_n is None:
                a_n = sq.a_of(n, bits, factorial_value=fact)
            a_n1 = sq.a_of(n + 1, bits, factorial_value=fact_next)
            next_cache[bits] = a_n1
            if bits > max_bits:
                max_bits = bits
            state = en.certainly_lt(a_n1, a_n)
            if state is TriState.CERTAINLY_TRUE:
                decided = True
                break
            if state is TriState.CERTAINLY_FALSE:
                failures.append({"n": n, "detail": f"a({n + 1}) >= a({n}) certified at {bits} bits"})
                decided = True
                break
        if not decided:
            failures.append({"n": n, "detail": f"a({n + 1}) < a({n}) undecided at {p_max} bits"})
        fact = fact_next
    return failures, max_bits


def _chunk_bdiff_window(lo: int, hi: int, p_start: int, p_max: int):
    """Certify 0 < b_n - b_{n+1} < 1/(4n(n+1)) and series/subtraction overlap."""
    failures: "list[dict]" = []
    max_bits = p_start
    ladder = _ladder(p_start, p_max)
    fact = factorial(lo)
    next_b: "dict[int, Interval]" = {}
    for n in range(lo, hi + 1):
        fact_next = fact * (n + 1)
        cur_b = next_b
        next_b = {}
        tail = sq.tail_of(n)
        decided = False
        for bits in ladder:
            if bits > max_bits:
                max_bits = bits
            bd = sq.b_diff_series(n, bits)
            if bd.hi.m <= 0:
                failures.append({"n": n, "detail": f"series difference not positive at {bits} bits"})
                decided = True
                break
            upper = en.certainly_lt(bd, en.from_rational(tail, bits))
            if upper is TriState.CERTAINLY_FALSE:
                failures.append({"n": n, "detail": f"series difference >= telescoping tail at {bits} bits"})
                decided = True
                break
            if bd.lo.m > 0 and upper is TriState.CERTAINLY_TRUE:
                b_n = cur_b.get(bits)
                if b_n is None:
                    b_n = sq.b_of(n, bits, factorial_value=fact)
                b_n1 = sq.b_of(n + 1, bits, factorial_value=fact_next)
                next_b[bits] = b_n1
                bsub = en.sub(b_n, b_n1, bits)
                if not bsub.intersects(bd):
                    failures.append(
                        {"n": n, "detail": "series and subtraction enclosures are disjoint"}
                    )
                decided = True
                break
        if not decided:
            failures.append({"n": n, "detail": f"difference window undecided at {p_max} bits"})
        fact = fact_next
    return failures, max_bits


def _chunk_shifted_increasing(lo: int, hi: int, p_start: int, p_max: int):
    """Certify b_n - 1/(4n) < b_{n+1} - 1/(4(n+1)) for pair indices in [lo, hi]."""
    failures: "list[dict]" = []
    max_bits = p_start
    ladder = _ladder(p_start, p_max)
    fact = factorial(lo)
    next_cache: "dict[int, Interval]" = {}
    for n in range(lo, hi + 1):
        fact_next = fact * (n + 1)
        cur_cache = next_cache
        next_cache = {}
        decided = False
        for bits in ladder:
            if bits > max_bits:
                max_bits = bits
            x_n = cur_cache.get(bits)
            if x_n is None:
                b_n = sq.b_of(n, bits, factorial_value=fact)
                x_n = en.sub(b_n, en.from_rational(Fraction(1, 4 * n), bits), bits)
            b_n1 = sq.b_of(n + 1, bits, factorial_value=fact_next)
            x_n1 = en.sub(b_n1, en.from_rational(Fraction(1, 4 * (n + 1)), bits), bits)
            next_cache[bits] = x_n1
            state = en.certainly_lt(x_n, x_n1)
            if state is TriState.CERTAINLY_TRUE:
                decided = True
                break
            if state is TriState.CERTAINLY_FALSE:
                failures.append(
                    {"n": n, "detail": f"shifted sequence not increasing at {bits} bits"}
                )
                decided = True
                break
        if not decided:
            failures.append({"n": n, "detail": f"shifted increase undecided at {p_max} bits"})
        fact = fact_next
    return failures, max_bits


def _chunk_floor(lo: int, hi: int, p_start: int, p_max: int, derived: bool = False):
    """Certify floor < a_n; floor is e^(3/4), or sqrt(2 pi) for the derived form."""
    failures: "list[dict]" = []
    max_bits = p_start
    ladder = _ladder(p_start, p_max)
    fact = factorial(lo)
    floors: "dict[int, Interval]" = {}
    label = "sqrt(2 pi)" if derived else "e^(3/4)"
    for n in range(lo, hi + 1):
        decided = False
        for bits in ladder:
            if bits > max_bits:
                max_bits = bits
            floor_iv = floors.get(bits)
            if floor_iv is None:
                floor_iv = _sqrt_2pi(bits) if derived else sq.lower_bound_const(bits)
                floors[bits] = floor_iv
            a_n = sq.a_of(n, bits, factorial_value=fact)
            state = en.certainly_lt(floor_iv, a_n)
            if state is TriState.CERTAINLY_TRUE:
                decided = True
                break
            if state is TriState.CERTAINLY_FALSE:
                failures.append({"n": n, "detail": f"a({n}) <= {label} certified at {bits} bits"})
                decided = True
                break
        if not decided:
            failures.append({"n": n, "detail": f"{label} < a({n}) undecided at {p_max} bits"})
        fact *= n + 1
    return failures, max_bits


def _chunk_floor_derived(lo: int, hi: int, p_start: int, p_max: int):
    return _chunk_floor(lo, hi, p_start, p_max, derived=True)


def _chunk_exact(lo: int, hi: int, p_start: int, p_max: int):
    """Bit-exact identity sweep; no intervals and no tolerance anywhere."""
    failures: "list[dict]" = []
    fn = factorial(lo)
    f2n = factorial(2 * lo)
    dfe = double_fact_even(lo)
    dfo = double_fact_odd(lo)
    for n in range(lo, hi + 1):
        if n > lo:
            fn *= n
            dfe *= 2 * n
            dfo *= 2 * n - 1
            f2n *= (2 * n - 1) * (2 * n)
        if dfe * dfo != f2n:
            failures.append({"n": n, "detail": "(2n)!!(2n-1)!! != (2n)!"})
        if dfe != fn << n:
            failures.append({"n": n, "detail": "(2n)!! != 2^n n!"})
        if n >= 1:
            m = 2 * n + 1
            fn2 = fn * fn
            fn4 = fn2 * fn2
            dfe2 = dfe * dfe
            dfo2 = dfo * dfo
            f2n2 = f2n * f2n
            # ratio-squared form vs partial product, cross-multiplied
            if (fn4 << (4 * n)) * (dfo2 * m) != dfe2 * (f2n2 * m):
                failures.append({"n": n, "detail": "expanded ratio != partial product"})
            # W_n (2n+1) = (4^n n!^2 / (2n)!)^2
            if dfe2 * f2n2 != (fn4 << (4 * n)) * dfo2:
                failures.append({"n": n, "detail": "W (2n+1) != (4^n n!^2/(2n)!)^2"})
    return failures, p_start


_CHUNK_EVALS: "dict[str, Callable]" = {
    "a_decreasing": _chunk_a_decreasing,
    "bdiff_window": _chunk_bdiff_window,
    "shifted_increasing": _chunk_shifted_increasing,
    "floor": _chunk_floor,
    "floor_derived": _chunk_floor_derived,
    "exact": _chunk_exact,
}


def _eval_chunk(args):
    name, lo, hi, p_start, p_max = args
    return _CHUNK_EVALS[name](lo, hi, p_start, p_max)


def _limits_eval(n: int, p_start: int, p_max: int):
    """Convergence bands at a single n, all against the arctan pi reference.

    The finite-n residuals are compared to derived rate bands (the source
    results are pure limit statements with no rates); the partial-product
    residual additionally gets an exact-rational comparison so the only
    interval input is the pi enclosure itself.
    """
    failures: "list[dict]" = []
    max_bits = p_start
    w = wa.wallis_partial(n)
    w_band = WALLIS_BAND / n
    l_band = LEMMA_BAND / n
    undecided: "list[str]" = []
    for bits in _ladder(p_start, p_max):
        if bits > max_bits:
            max_bits = bits
        undecided = []
        pi_iv = en.constant_pi(bits)
        pi_lo = pi_iv.lo.as_fraction() / 2
        pi_hi = pi_iv.hi.as_fraction() / 2
        # (i) W_n < pi/2 and pi/2 - W_n inside the band
        if w < pi_lo:
            pass
        elif w >= pi_hi:
            failures.append({"n": n, "detail": "partial product reached pi/2"})
        else:
            undecided.append("partial product vs pi/2")
        if pi_hi - w < w_band:
            pass
        elif pi_lo - w >= w_band:
            failures.append({"n": n, "detail": f"pi/2 - W >= {w_band}"})
        else:
            undecided.append("partial product band")
        # (ii) 0 < L_n - sqrt(pi) < band
        diff_l = en.sub(wa.lemma_L(n, bits), _sqrt_pi(bits), bits)
        if diff_l.hi.m <= 0:
            failures.append({"n": n, "detail": "L did not stay above sqrt(pi)"})
        elif diff_l.lo.m <= 0:
            undecided.append("L - sqrt(pi) positivity")
        upper_l = en.certainly_lt(diff_l, en.from_rational(l_band, bits))
        if upper_l is TriState.CERTAINLY_FALSE:
            failures.append({"n": n, "detail": f"L - sqrt(pi) >= {l_band}"})
        elif upper_l is not TriState.CERTAINLY_TRUE:
            undecided.append("L - sqrt(pi) band")
        # (iii) 0 < a_n - sqrt(2 pi) < (e^(1/(4n)) - 1) sqrt(2 pi) * 1.1
        hi_p = Precision(bits + en.GUARD_BITS)
        s2p = _sqrt_2pi(bits)
        diff_a = en.sub(sq.a_of(n, bits), s2p, bits)
        corr = en.exp(en.from_rational(Fraction(1, 4 * n), hi_p), hi_p)
        band_a = en.mul(
            en.mul(en.sub(corr, en.from_int(1), hi_p), s2p, hi_p),
            en.from_rational(A_BAND_SCALE, hi_p),
            bits,
        )
        if diff_a.hi.m <= 0:
            failures.append({"n": n, "detail": "a did not stay above sqrt(2 pi)"})
        elif diff_a.lo.m <= 0:
            undecided.append("a - sqrt(2 pi) positivity")
        upper_a = en.certainly_lt(diff_a, band_a)
        if upper_a is TriState.CERTAINLY_FALSE:
            failures.append({"n": n, "detail": "a - sqrt(2 pi) outside its band"})
        elif upper_a is not TriState.CERTAINLY_TRUE:
            undecided.append("a - sqrt(2 pi) band")
        if failures or not undecided:
            break
    for item in undecided:
        failures.append({"n": n, "detail": f"{item} undecided at {max_bits} bits"})
    return failures, max_bits


# ---------------------------------------------------------------------------
# check drivers
# ---------------------------------------------------------------------------


def _chunks(lo: int, hi: int) -> "list[tuple[int, int]]":
    out = []
    start = lo
    while start <= hi:
        end = min(start + CHUNK_SIZE - 1, hi)
        out.append((start, end))
        start = end + 1
    return out


def _finish(name, n_lo, n_hi, failures, max_bits, t0) -> CheckResult:
    suppressed = len(failures) - FAILURE_LIMIT
    if suppressed > 0:
        failures = failures[:FAILURE_LIMIT]
        failures.append({"n": -1, "detail": f"{suppressed} further failures suppressed"})
    if not failures:
        status = "pass"
    elif all("undecided" in f["detail"] for f in failures if f["n"] != -1):
        status = "undecided"
    else:
        status = "fail"
    return CheckResult(
        name=name,
        n_min=n_lo,
        n_max=n_hi,
        status=status,
        max_bits=max_bits,
        failures=failures,
        ms=(time.perf_counter() - t0) * 1000.0,
    )


def _run_sweep(name: str, cfg: CheckConfig, pool: "Optional[ProcessPoolExecutor]") -> CheckResult:
    t0 = time.perf_counter()
    if name == "exact":
        # identity domain starts at 0 whatever the sequence range says
        n_lo, n_hi = 0, cfg.n_max
    elif name in ("a_decreasing", "shifted_increasing"):
        # pairwise checks compare n against n+1; a degenerate range
        # n_min == n_max therefore runs zero comparisons
        n_lo, n_hi = cfg.n_min, cfg.n_max - 1
    else:
        n_lo, n_hi = cfg.n_min, cfg.n_max
    if n_hi < n_lo:
        return _finish(name, cfg.n_min, cfg.n_max, [], cfg.p_start.bits, t0)
    tasks = [(name, lo, hi, cfg.p_start.bits, cfg.p_max.bits) for lo, hi in _chunks(n_lo, n_hi)]
    if pool is not None and len(tasks) > 1:
        outcomes = list(pool.map(_eval_chunk, tasks))
    else:
        outcomes = [_eval_chunk(t) for t in tasks]
    failures: "list[dict]" = []
    max_bits = cfg.p_start.bits
    for fl, mb in outcomes:
        failures.extend(fl)
        max_bits = max(max_bits, mb)
    return _finish(name, n_lo, n_hi, failures, max_bits, t0)


def _run_limits(cfg: CheckConfig) -> CheckResult:
    t0 = time.perf_counter()
    failures, max_bits = _limits_eval(cfg.n_max, cfg.p_start.bits, cfg.p_max.bits)
    return _finish("limits", cfg.n_max, cfg.n_max, failures, max_bits, t0)


def run_check(name: str, cfg: CheckConfig, pool: "Optional[ProcessPoolExecutor]" = None) -> CheckResult:
    """Run a single named check under the given configuration."""
    if name not in CANONICAL_CHECKS:
        raise DomainError(f"unknown check {name!r}")
    if name == "limits":
        return _run_limits(cfg)
    return _run_sweep(name, cfg, pool)


def run_all(cfg: CheckConfig) -> Report:
    """Run the configured checks in canonical order and assemble the report."""
    from . import __version__

    t0 = time.perf_counter()
    selected = [c for c in CANONICAL_CHECKS if c in cfg.checks]
    report = Report(version=__version__, config=cfg)
    pool = None
    try:
        if cfg.workers > 1:
            pool = ProcessPoolExecutor(max_workers=cfg.workers)
        for name in selected:
            report.results.append(run_check(name, cfg, pool))
    finally:
        if pool is not None:
            pool.shutdown()
    report.total_ms = (time.perf_counter() - t0) * 1000.0
    return report
