"""Conduction through two equal imperfectly bonded disks.

Thin re-export of the compiled core: conformal frame construction, the
tridiagonal coefficient solve, complex-potential field evaluation, a-priori
bound checks, and the verification suite.
"""

from ._core import (
    BoundCheck,
    BoundSet,
    ComplexPotential,
    ConditioningError,
    ConformalFrame,
    DiskPair,
    FieldSample,
    FluxResult,
    HMode,
    Region,
    RobinResult,
    SpectralSolution,
    TruncationCapError,
    VerificationReport,
    check_difference_bounds,
    check_envelopes,
    check_sandwich,
    choose_truncation,
    classify,
    compute_bounds,
    conjugate_potential,
    decay_check,
    dense_oracle,
    derive_frame,
    eval_delta,
    eval_grad,
    eval_u,
    fixed_point_residual,
    flux_integral,
    gradient_sup_bound,
    hc_boundary_residual,
    make_potential,
    moebius,
    moebius_inv,
    perfect_bonding_coefficients,
    robin_residual,
    solve_coefficients,
    sup_grad,
    verify_solution,
)

__all__ = [
    "BoundCheck",
    "BoundSet",
    "ComplexPotential",
    "ConditioningError",
    "ConformalFrame",
    "DiskPair",
    "FieldSample",
    "FluxResult",
    "HMode",
    "Region",
    "RobinResult",
    "SpectralSolution",
    "TruncationCapError",
    "VerificationReport",
    "check_difference_bounds",
    "check_envelopes",
    "check_sandwich",
    "choose_truncation",
    "classify",
    "compute_bounds",
    "conjugate_potential",
    "decay_check",
    "dense_oracle",
    "derive_frame",
    "eval_delta",
    "eval_grad",
    "eval_u",
    "fixed_point_residual",
    "flux_integral",
    "gradient_sup_bound",
    "hc_boundary_residual",
    "make_potential",
    "moebius",
    "moebius_inv",
    "perfect_bonding_coefficients",
    "robin_residual",
    "solve_coefficients",
    "sup_grad",
    "verify_solution",
]
