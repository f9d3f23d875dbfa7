"""Variable-exponent fractional integrals and Abel-type solvers."""

from ._fracvx import (
    ComposeReport,
    DomainError,
    ExperimentCheck,
    FitResult,
    FracvxError,
    GradedMesh,
    IllPosedError,
    InvalidParam,
    NotSmooth,
    ParseError,
    QuadratureError,
    RangeViolation,
    ScalarFunc,
    SolutionGrid,
    VariableExponent,
    compose_residual,
    default_grading,
    eval_forward,
    extrapolate_to_zero,
    fit_singularity_exponent,
    graded_mesh,
    make_exponent,
    parse,
    solve_abel,
    solve_fde,
    verify_composition,
    verify_initial_value,
    verify_singularity,
)

__all__ = [
    "ComposeReport",
    "DomainError",
    "ExperimentCheck",
    "FitResult",
    "FracvxError",
    "GradedMesh",
    "IllPosedError",
    "InvalidParam",
    "NotSmooth",
    "ParseError",
    "QuadratureError",
    "RangeViolation",
    "ScalarFunc",
    "SolutionGrid",
    "VariableExponent",
    "compose_residual",
    "default_grading",
    "eval_forward",
    "extrapolate_to_zero",
    "fit_singularity_exponent",
    "graded_mesh",
    "make_exponent",
    "parse",
    "solve_abel",
    "solve_fde",
    "verify_composition",
    "verify_initial_value",
    "verify_singularity",
]
