"""Finitely weighted Kleene algebra with tests."""

from ._core import (
    Expr,
    ParseError,
    Semiring,
    SemiringRequirementError,
    WkatError,
    builtins,
    cayley_check,
    cli,
    equiv,
    eval,
    hat_summands,
    interp,
    is_copi,
    normalize,
    parse,
    parse_semiring,
    run_program,
    scalar_star,
    selftest,
    semiring,
    ski_rental,
    verify_copi,
)

__all__ = [
    "Expr",
    "ParseError",
    "Semiring",
    "SemiringRequirementError",
    "WkatError",
    "builtins",
    "cayley_check",
    "cli",
    "equiv",
    "eval",
    "hat_summands",
    "interp",
    "is_copi",
    "normalize",
    "parse",
    "parse_semiring",
    "run_program",
    "scalar_star",
    "selftest",
    "semiring",
    "ski_rental",
    "verify_copi",
]
