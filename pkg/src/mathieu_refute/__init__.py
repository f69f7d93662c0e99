"""Numerical toolkit for alternating Mathieu-type series inequalities."""
from .asymptotics import (
    evaluate_expansion,
    expansion_term,
    gamma_fn,
    leading_coeff_odd_beta,
    s_constant,
    s_ratio,
    s_ratio_margin,
)
from .errors import (
    ConvergenceError,
    DegreeCapError,
    NumericalError,
    ParameterError,
    PrecisionFloorError,
    UnsupportedCaseError,
)
from .kernels import (
    KernelSpec,
    compare_integral_inequality,
    find_sign_changes,
    integral_exp,
    integral_fermi,
    kernel_for_case,
)
from .polynomials import bernoulli_number, bernoulli_poly, euler_at_zero, euler_poly, zeta_even
from .refutation import RefutationParams, check_point, scaled_limit_diagnostic, scan
from .series import (
    AsymptoticParams,
    Case,
    InequalityParams,
    closed_form_case_b0a2m1,
    generalized_series,
    lhs_series,
    rhs_bound,
)

__all__ = [
    "AsymptoticParams",
    "bernoulli_number",
    "bernoulli_poly",
    "Case",
    "check_point",
    "closed_form_case_b0a2m1",
    "compare_integral_inequality",
    "ConvergenceError",
    "DegreeCapError",
    "euler_at_zero",
    "euler_poly",
    "evaluate_expansion",
    "expansion_term",
    "find_sign_changes",
    "gamma_fn",
    "generalized_series",
    "InequalityParams",
    "integral_exp",
    "integral_fermi",
    "kernel_for_case",
    "KernelSpec",
    "leading_coeff_odd_beta",
    "lhs_series",
    "NumericalError",
    "ParameterError",
    "PrecisionFloorError",
    "RefutationParams",
    "rhs_bound",
    "s_constant",
    "s_ratio",
    "s_ratio_margin",
    "scaled_limit_diagnostic",
    "scan",
    "UnsupportedCaseError",
    "zeta_even",
]

__version__ = "0.1.0"
