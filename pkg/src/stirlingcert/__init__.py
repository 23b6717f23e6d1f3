"""stirlingcert: certified factorial asymptotics.

A rigorous-numerics library built on dyadic interval arithmetic: exact
factorial and double-factorial identities, certified enclosures of the
normalized sequences a_n = n!/(sqrt(n) n^n e^-n) and b_n = ln(a_n), exact
Wallis partial products, two-sided bounds on n! with the e^(1/(4n))
correction, and a verifier that machine-checks the whole inequality chain
over configurable ranges.
"""

__version__ = "0.1.0"

from .enclosure import (
    Dyadic,
    Interval,
    Precision,
    TriState,
    add,
    atanh_halflog,
    certainly_lt,
    constant_e,
    constant_pi,
    div,
    exp,
    from_int,
    from_rational,
    ln,
    mul,
    pow_rational,
    sqrt,
    sub,
)
from .errors import DomainError, UndecidedError
from .exactcore import (
    decimal_length,
    double_fact_even,
    double_fact_odd,
    factorial,
    rational_sub,
    to_decimal,
)
from .sequences import (
    LogFactorialSum,
    StirlingRow,
    a_of,
    b_diff_series,
    b_of,
    k_of,
    lower_bound_const,
    ratio_of,
    row_of,
    tail_of,
)
from .stirling import (
    FactorialBounds,
    digit_count,
    factorial_bounds,
    relative_error,
    stirling_approx,
)
from .verifier import CheckConfig, CheckResult, Report, run_all, run_check
from .wallis import (
    WallisRow,
    lemma_L,
    lemma_ratio_squared,
    lemma_rescaled,
    wallis_partial,
    wallis_row,
)

__all__ = [
    "__version__",
    "Dyadic",
    "Interval",
    "Precision",
    "TriState",
    "DomainError",
    "UndecidedError",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "ln",
    "exp",
    "pow_rational",
    "atanh_halflog",
    "constant_e",
    "constant_pi",
    "certainly_lt",
    "from_int",
    "from_rational",
    "factorial",
    "double_fact_even",
    "double_fact_odd",
    "rational_sub",
    "decimal_length",
    "to_decimal",
    "StirlingRow",
    "LogFactorialSum",
    "k_of",
    "tail_of",
    "b_of",
    "a_of",
    "ratio_of",
    "b_diff_series",
    "lower_bound_const",
    "row_of",
    "WallisRow",
    "wallis_partial",
    "lemma_ratio_squared",
    "lemma_L",
    "lemma_rescaled",
    "wallis_row",
    "FactorialBounds",
    "stirling_approx",
    "factorial_bounds",
    "digit_count",
    "relative_error",
    "CheckConfig",
    "CheckResult",
    "Report",
    "run_all",
    "run_check",
]
