"""Large-t expansion of the shifted alternating series and the s_n constants.

    S(t) ~ sum_k (-1)^(k(alpha+1)+gamma) / t^(alpha(k+mu+1))
                 * Gamma(mu+k+1) E_{k alpha+gamma}(-u) / (Gamma(mu+1) Gamma(k+1))

The expansion is asymptotic, not convergent; callers pick the truncation N.
"""
from __future__ import annotations

import math

import mpmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .polynomials import DEGREE_CAP, _check_index, bernoulli_number, euler_poly
from .series import AsymptoticParams

__all__ = [
    "ExpansionTerm",
    "SnConstant",
    "gamma_fn",
    "expansion_term",
    "evaluate_expansion",
    "leading_coeff",
    "leading_coeff_odd_beta",
    "leading_coeff_odd_beta_exact",
    "s_constant",
    "s_ratio",
    "s_ratio_margin",
]

GAMMA_MAX = 170.0


@dataclass(frozen=True)
class ExpansionTerm:
    index: int
    coefficient: float
    exponent: float
    exact: Fraction | None = None


@dataclass(frozen=True)
class SnConstant:
    n: int
    value: float


def gamma_fn(x: float) -> float:
    """Gamma(x) for 0 < x <= 170 (thin range-checked wrapper over math.gamma)."""
    if not 0 < x <= GAMMA_MAX:
        raise ParameterError(f"gamma_fn defined for 0 < x <= {GAMMA_MAX:g}, got {x}")
    return math.gamma(x)


def _gamma_ratio(mu: float, k: int):
    """Gamma(mu+k+1) / (Gamma(mu+1) Gamma(k+1)); exact binomial for integer mu."""
    if float(mu).is_integer() and mu >= 0:
        return Fraction(math.comb(int(mu) + k, k))
    # product form avoids overflow of the individual Gamma values
    ratio = 1.0
    for j in range(1, k + 1):
        ratio *= (mu + j) / j
    return ratio


def expansion_term(k: int, params: AsymptoticParams) -> ExpansionTerm:
    if k < 0:
        raise ParameterError("k must be non-negative")
    n = k * params.alpha + params.gamma
    _check_index(n, DEGREE_CAP - 1)
    sign = -1 if (k * (params.alpha + 1) + params.gamma) % 2 else 1
    poly = euler_poly(n)
    u = params.u
    u_exact = Fraction(u).limit_denominator(10**12)
    if float(u_exact) == u:
        e_val = poly(-u_exact)
    else:
        e_val = poly(-u)
    ratio = _gamma_ratio(params.mu_thm, k)
    exponent = params.alpha * (k + params.mu_thm + 1)
    if isinstance(ratio, Fraction) and isinstance(e_val, Fraction):
        exact = sign * ratio * e_val
        return ExpansionTerm(k, float(exact), exponent, exact)
    return ExpansionTerm(k, sign * float(ratio) * float(e_val), exponent)


def evaluate_expansion(params: AsymptoticParams, t: float, n_terms: int) -> float:
    """Partial sum of the expansion, k = 0..n_terms."""
    if not t > 0:
        raise ParameterError("t must be positive")
    if n_terms < 0:
        raise ParameterError("N must be non-negative")
    total = 0.0
    for k in range(n_terms + 1):
        term = expansion_term(k, params)
        total += term.coefficient * t ** (-term.exponent)
    return total


def leading_coeff(gamma: int) -> Fraction:
    """Limit of lhs * r^(2 mu) for integer beta = gamma, namely (-1)^gamma E_gamma(0)."""
    poly = euler_poly(gamma)
    return (-1) ** gamma * poly.coeffs[0]


def leading_coeff_odd_beta_exact(p: int) -> Fraction:
    """(2^{2p} - 1) B_{2p} / p, the leading coefficient for beta = 2p - 1."""
    if p < 1:
        raise ParameterError("p must be a positive integer")
    return (2 ** (2 * p) - 1) * bernoulli_number(2 * p) / p


def leading_coeff_odd_beta(p: int) -> float:
    return float(leading_coeff_odd_beta_exact(p))


def s_constant(n: int) -> SnConstant:
    """s_n = 4 (2^n - 1) / (n 2^n) * n! / pi^n."""
    if not 1 <= n <= 170:
        raise ParameterError(f"s_constant defined for 1 <= n <= 170, got {n}")
    prefactor = 4.0 * (1.0 - 2.0**-n) / n
    if n <= 20:
        return SnConstant(n, prefactor * math.factorial(n) / math.pi**n)
    # log-space factorial; in doubles n log(pi) alone costs ~n ulps, which
    # would hide the ratio bound s_{n+1}/s_n > n/pi for n in the 40s
    with mpmath.workdps(30):
        log_value = mpmath.log(4 * (1 - mpmath.mpf(2) ** -n) / n) + mpmath.loggamma(n + 1) - n * mpmath.log(mpmath.pi)
        return SnConstant(n, float(mpmath.exp(log_value)))


def s_ratio(n: int) -> float:
    """s_{n+1}/s_n = (2 + 1/(2^n - 1)) n / (2 pi)."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    return (2.0 + 1.0 / (2.0**n - 1.0)) * n / (2.0 * math.pi)


def s_ratio_margin(n: int) -> float:
    """s_ratio(n) - n/pi = n / (2 pi (2^n - 1)), without the cancellation.

    For n above ~52 the margin is below double resolution of s_ratio itself,
    so a float comparison of s_ratio(n) with n/pi can no longer see it.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    return n / (2.0 * math.pi * (2.0**n - 1.0))
