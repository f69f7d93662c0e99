"""Alternating Mathieu-type series.

Two families are evaluated here::

    lhs(r)  = sum_{k>=1} 2 (-1)^(k-1) k^beta / (k^alpha + r^2)^mu
    S(t)    = sum_{k>=1} 2 (-1)^(k-1) (k+u)^gamma / ((k+u)^alpha + t^alpha)^(mu_thm+1)

Both share one engine.  The terms first grow and then decay, and near the
peak the cancellation is severe (at r = 50, beta = 9, mu = 6 the sum is
~1e-20 while the peak term is ~1e-6).  The engine therefore

* sums terms in consecutive signed pairs with compensated accumulation,
* picks the working precision from the rounding floor
  ``peak_term * eps * terms_used`` (numpy doubles when that suffices,
  mpmath otherwise) and refuses tolerances below the floor at the
  precision cap,
* replaces the decaying tail by Boole's summation formula
  ``sum_{j>=0} (-1)^j f(x0+j) ~ 1/2 sum_n E_n(0) f^(n)(x0)/n!``
  with the standard remainder bound, instead of summing millions of terms.

The t <-> r change of variables is t^alpha = r^2, mu_thm = mu - 1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional

import mpmath
import numpy as np

from .errors import ConvergenceError, ParameterError, PrecisionFloorError
from .polynomials import bernoulli_number, euler_at_zero

__all__ = [
    "Case",
    "Method",
    "InequalityParams",
    "AsymptoticParams",
    "SeriesValue",
    "lhs_series",
    "rhs_bound",
    "generalized_series",
    "closed_form_case_b0a2m1",
    "monotone_start",
    "rounding_floor",
    "partial_sums",
    "t_from_r",
    "r_from_t",
]

DOUBLE_BITS = 53
MAX_BITS = 256
MAX_TERMS_DOUBLE = 4_000_000
MAX_TERMS_EXTENDED = 200_000
_GUARD_BITS = 16
_BOOLE_MAX_ORDER = 40
# sup_{[0,1]} |E_n(x)| <= (pi^2/8) * 4 n! / pi^(n+1)
_EULER_SUP = math.pi**2 / 2


class Case(enum.Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    CUSTOM = 0


class Method(enum.Enum):
    DIRECT = "direct"
    PAIRED = "paired"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class InequalityParams:
    """(alpha, beta, mu) of the series inequality, optionally tagged with a case."""

    alpha: float
    beta: float
    mu: float
    case_tag: Case = Case.CUSTOM

    def __post_init__(self):
        a, b, m = self.alpha, self.beta, self.mu
        if not (a > 0 and m > 0 and b >= 0):
            raise ParameterError(f"need alpha > 0, mu > 0, beta >= 0; got {a}, {m}, {b}")
        tag = self.case_tag
        ok = {
            Case.CASE1: (b, a, m) == (1, 2, 2),
            Case.CASE2: b == 0 and a == 2 and m > 0.5,
            Case.CASE3: b == 1 and a == 2 and m > 1,
            Case.CASE4: b > 0 and float(a).is_integer() and m * a - b > 1,
            Case.CASE5: b > 0 and m * a - b > 1,
            Case.CUSTOM: True,
        }[tag]
        if not ok:
            raise ParameterError(f"(beta={b}, alpha={a}, mu={m}) violates the conditions of {tag.name}")

    @classmethod
    def for_case(cls, case, mu: float = 2.0, alpha: float = 2.0, beta: float = 1.0):
        """Build the parameters of cases 1-3 (alpha = 2; beta fixed by the case)."""
        case = Case(case)
        if case is Case.CASE1:
            return cls(2.0, 1.0, 2.0, case)
        if case is Case.CASE2:
            return cls(2.0, 0.0, mu, case)
        if case is Case.CASE3:
            return cls(2.0, 1.0, mu, case)
        return cls(alpha, beta, mu, case)

    @property
    def convergence_margin(self) -> float:
        return self.mu * self.alpha - self.beta


@dataclass(frozen=True)
class AsymptoticParams:
    gamma: int
    alpha: int
    mu_thm: float
    u: float = 0.0

    def __post_init__(self):
        if int(self.gamma) != self.gamma or self.gamma < 0:
            raise ParameterError(f"gamma must be a non-negative integer, got {self.gamma}")
        if int(self.alpha) != self.alpha or self.alpha < 1:
            raise ParameterError(f"alpha must be a positive integer, got {self.alpha}")
        object.__setattr__(self, "gamma", int(self.gamma))
        object.__setattr__(self, "alpha", int(self.alpha))
        if not self.mu_thm > -1:
            raise ParameterError(f"mu_thm must exceed -1, got {self.mu_thm}")
        if not self.u > -1:
            raise ParameterError(f"u must exceed -1 so that every base k+u is positive, got {self.u}")
        if not self.alpha * (self.mu_thm + 1) - self.gamma > 0:
            raise ParameterError("theorem hypothesis alpha*(mu_thm+1) - gamma > 0 violated")

    @classmethod
    def from_inequality(cls, params: InequalityParams) -> "AsymptoticParams":
        """gamma = beta, mu_thm = mu - 1, u = 0 (requires integer beta and alpha)."""
        if not (float(params.beta).is_integer() and float(params.alpha).is_integer()):
            raise ParameterError("the asymptotic theorem needs integer beta and alpha")
        return cls(int(params.beta), int(params.alpha), params.mu - 1.0, 0.0)


@dataclass(frozen=True)
class SeriesValue:
    value: float
    error_bound: float
    terms_used: int
    method: Method
    precision_bits: int = DOUBLE_BITS


def t_from_r(r: float, alpha: float) -> float:
    return r ** (2.0 / alpha)


def r_from_t(t: float, alpha: float) -> float:
    return t ** (alpha / 2.0)


def rhs_bound(mu: float, r: float) -> float:
    """2 / (1 + r^2)^mu."""
    if not (mu > 0 and r >= 0):
        raise ParameterError("rhs_bound needs mu > 0 and r >= 0")
    return 2.0 / (1.0 + r * r) ** mu


# --------------------------------------------------------------------------
# engine


@dataclass(frozen=True)
class _Terms:
    """Unsigned terms a_k = 2 (k+u)^p / ((k+u)^alpha + c)^q, k >= 1."""

    p: float
    alpha: float
    q: float
    u: float
    c: float

    def peak_base(self) -> float:
        """Base b* where the continuous envelope peaks (0 if it decreases throughout)."""
        if self.p <= 0:
            return 0.0
        return (self.p * self.c / (self.q * self.alpha - self.p)) ** (1.0 / self.alpha)

    def monotone_start(self) -> int:
        return max(1, math.ceil(self.peak_base() - self.u))

    def value(self, b: float) -> float:
        return math.exp(math.log(2.0) + self.p * math.log(b) - self.q * math.log(b**self.alpha + self.c))

    def peak(self) -> float:
        return self.value(max(self.peak_base(), 1.0 + self.u))

    def scale(self) -> float:
        return max(self.peak_base(), self.c ** (1.0 / self.alpha), 1.0)

    def body_length(self) -> int:
        return math.ceil(2.0 * self.scale()) + 32

    def floats(self, k: np.ndarray) -> np.ndarray:
        b = k + self.u
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            a = 2.0 * b**self.p * (b**self.alpha + self.c) ** (-self.q)
        if not np.all(np.isfinite(a)):
            a = np.exp(np.log(2.0) + self.p * np.log(b) - self.q * np.log(b**self.alpha + self.c))
        return a

    def mp_term(self, k: int, u, c):
        b = k + u
        return 2 * b**self.p / (b**self.alpha + c) ** self.q

    def taylor(self, x0, order: int, u, c) -> list:
        """Taylor coefficients f^(n)(x0)/n!, n <= order, in the current mpmath precision."""
        b0 = x0 + u
        base = _pow_series([b0, mpmath.mpf(1)], self.p, order)
        inner = _pow_series([b0, mpmath.mpf(1)], self.alpha, order)
        inner[0] += c
        outer = _pow_series(inner, -self.q, order)
        return [2 * sum(base[j] * outer[n - j] for j in range(n + 1)) for n in range(order + 1)]


def _pow_series(a: list, e, order: int) -> list:
    """Coefficients of (sum a_j h^j)^e up to h^order (a_0 > 0)."""
    a = list(a) + [mpmath.mpf(0)] * (order + 1 - len(a))
    g = [a[0] ** e]
    for k in range(1, order + 1):
        s = sum(((e + 1) * j - k) * a[j] * g[k - j] for j in range(1, k + 1))
        g.append(s / (k * a[0]))
    return g


def _boole_tail(terms: _Terms, first_index: int, u, c):
    """sum_{j>=0} (-1)^j a_{first_index+j} and its remainder bound."""
    coeffs = terms.taylor(mpmath.mpf(first_index), _BOOLE_MAX_ORDER, u, c)
    best_value, best_bound = None, None
    acc = mpmath.mpf(0)
    for m in range(2, _BOOLE_MAX_ORDER + 1, 2):
        # include E_n(0) terms for n <= m-1 (E_n(0) = 0 for even n >= 2)
        for n in (m - 2, m - 1):
            e = euler_at_zero(n)
            if e:
                acc += mpmath.mpf(e.numerator) / e.denominator * coeffs[n] / 2
        bound = _EULER_SUP / mpmath.pi**m * mpmath.factorial(m - 1) * abs(coeffs[m - 1])
        if best_bound is None or bound < best_bound:
            best_value, best_bound = acc, bound
    return best_value, best_bound


def _needed_bits(peak: float, n_terms: int, tol: float) -> int:
    # peak * 2^(1-bits) * n <= tol/2
    return math.ceil(math.log2(4.0 * peak * n_terms / tol)) + _GUARD_BITS


def _floor(peak: float, n_terms: int, bits: int) -> float:
    return peak * n_terms * 2.0 ** (1 - bits)


def _choose_bits(terms: _Terms, n_terms: int, tol: float, precision: Optional[int], max_bits: int) -> int:
    peak = terms.peak()
    if precision is not None:
        if _floor(peak, n_terms, precision) > tol / 2:
            raise PrecisionFloorError(
                f"tolerance {tol:.3g} below the rounding floor at {precision} bits",
                achievable=2 * _floor(peak, n_terms, precision),
            )
        return precision
    if _floor(peak, n_terms, DOUBLE_BITS) <= tol / 2:
        return DOUBLE_BITS
    bits = max(_needed_bits(peak, n_terms, tol), DOUBLE_BITS + _GUARD_BITS)
    if bits > max_bits:
        raise PrecisionFloorError(
            f"tolerance {tol:.3g} below the rounding floor at the {max_bits}-bit cap",
            achievable=2 * _floor(peak, n_terms, max_bits),
        )
    return bits


def _paired_sum(terms: _Terms, n_terms: int, bits: int):
    """sum_{k=1}^{n} (-1)^(k-1) a_k grouped as (a_1 - a_2) + (a_3 - a_4) + ..."""
    if bits == DOUBLE_BITS:
        a = terms.floats(np.arange(1, n_terms + 1, dtype=float))
        if n_terms % 2:
            a = np.append(a, 0.0)
        return math.fsum(a[0::2] - a[1::2])
    u, c = mpmath.mpf(terms.u), mpmath.mpf(terms.c)
    pairs = []
    for k in range(1, n_terms + 1, 2):
        hi = terms.mp_term(k, u, c)
        lo = terms.mp_term(k + 1, u, c) if k + 1 <= n_terms else 0
        pairs.append(hi - lo)
    return mpmath.fsum(pairs)


def _evaluate(terms: _Terms, tol: float, precision: Optional[int], method: Method,
              max_bits: int = MAX_BITS) -> SeriesValue:
    if not tol > 0:
        raise ParameterError("tol must be positive")
    n_terms = max(terms.body_length(), terms.monotone_start() + 2)
    budget = MAX_TERMS_DOUBLE
    while True:
        bits = _choose_bits(terms, n_terms, tol, precision, max_bits)
        budget = MAX_TERMS_DOUBLE if bits == DOUBLE_BITS else MAX_TERMS_EXTENDED
        if n_terms > budget:
            raise ConvergenceError(f"series needs {n_terms} terms, budget is {budget}")
        with mpmath.workprec(max(bits, 64) + _GUARD_BITS):
            u, c = mpmath.mpf(terms.u), mpmath.mpf(terms.c)
            if method is Method.DIRECT:
                tail, tail_bound = mpmath.mpf(0), terms.mp_term(n_terms + 1, u, c)
            else:
                tail, tail_bound = _boole_tail(terms, n_terms + 1, u, c)
                tail = tail if n_terms % 2 == 0 else -tail
            if tail_bound <= tol / 2:
                body = _paired_sum(terms, n_terms, bits)
                total = mpmath.mpf(body) + tail
                value = float(total)
                bound = float(tail_bound) + _floor(terms.peak(), n_terms, bits)
                bound += abs(value) * 2.0**-DOUBLE_BITS
                return SeriesValue(value, bound, n_terms, method, bits)
        n_terms *= 2
        if n_terms > budget:
            raise ConvergenceError(
                f"tail bound above tol/2 within the {budget}-term budget",
            )


def _inequality_terms(params: InequalityParams, r: float) -> _Terms:
    if not r > 0:
        raise ParameterError(f"r must be positive, got {r}")
    if params.case_tag not in (Case.CASE1, Case.CASE2, Case.CASE3) and not params.convergence_margin > 1:
        raise ParameterError(
            f"mu*alpha - beta = {params.convergence_margin:g} <= 1: series outside the convergent parameter range"
        )
    return _Terms(float(params.beta), float(params.alpha), float(params.mu), 0.0, float(r) ** 2)


def _asymptotic_terms(params: AsymptoticParams, t: float) -> _Terms:
    if not t > 0:
        raise ParameterError(f"t must be positive, got {t}")
    return _Terms(float(params.gamma), float(params.alpha), params.mu_thm + 1.0, float(params.u),
                  float(t) ** params.alpha)


def _method(method) -> Method:
    method = Method(method)
    if method is Method.CLOSED_FORM:
        raise ParameterError("closed form is only available through closed_form_case_b0a2m1")
    return method


def lhs_series(params: InequalityParams, r: float, tol: float = 1e-10, *,
               precision: Optional[int] = None, method="paired") -> SeriesValue:
    """Evaluate sum_{k>=1} 2(-1)^(k-1) k^beta / (k^alpha + r^2)^mu.

    ``tol`` is absolute.  ``precision`` fixes the working precision in bits
    (53 = doubles); by default the cheapest precision whose rounding floor
    lies below ``tol/2`` is used.  Raises :class:`PrecisionFloorError` when
    even the cap cannot reach ``tol``.
    """
    return _evaluate(_inequality_terms(params, r), tol, precision, _method(method))


def generalized_series(params: AsymptoticParams, t: float, tol: float = 1e-10, *,
                       precision: Optional[int] = None, method="paired") -> SeriesValue:
    """Evaluate sum_{k>=1} 2(-1)^(k-1)(k+u)^gamma / ((k+u)^alpha + t^alpha)^(mu_thm+1)."""
    return _evaluate(_asymptotic_terms(params, t), tol, precision, _method(method))


def monotone_start(params, r: float) -> int:
    """First index k0 from which the unsigned terms strictly decrease.

    ``params`` may be :class:`InequalityParams` (with ``r``) or
    :class:`AsymptoticParams` (with ``r`` read as ``t``).
    """
    if isinstance(params, AsymptoticParams):
        return _asymptotic_terms(params, r).monotone_start()
    return _inequality_terms(params, r).monotone_start()


def rounding_floor(params, r: float, precision: int = DOUBLE_BITS) -> float:
    """Rounding floor peak_term * eps * terms_used of the default body length."""
    terms = _asymptotic_terms(params, r) if isinstance(params, AsymptoticParams) else _inequality_terms(params, r)
    n = max(terms.body_length(), terms.monotone_start() + 2)
    return 2 * _floor(terms.peak(), n, precision)


def partial_sums(params, r: float, n_max: int, dps: int = 50) -> List[mpmath.mpf]:
    """Partial sums S_1..S_n_max at ``dps`` decimal digits (plain sequential order)."""
    terms = _asymptotic_terms(params, r) if isinstance(params, AsymptoticParams) else _inequality_terms(params, r)
    out = []
    with mpmath.workdps(dps):
        u, c = mpmath.mpf(terms.u), mpmath.mpf(terms.c)
        s = mpmath.mpf(0)
        for k in range(1, n_max + 1):
            a = terms.mp_term(k, u, c)
            s = s + a if k % 2 else s - a
            out.append(s)
    return out


# --------------------------------------------------------------------------
# closed form oracle


def _one_minus_x_over_sinh_over_x2(x: float) -> float:
    # (1 - x/sinh x) / x^2, without the cancellation at small x
    total, n = 0.0, 1
    while True:
        b = bernoulli_number(2 * n)
        term = -float((2 - 2 ** (2 * n)) * b / math.factorial(2 * n)) * x ** (2 * n - 2)
        total += term
        n += 1
        if abs(term) < 1e-18 * abs(total) or n > 31:
            return total


def closed_form_case_b0a2m1(r: float, return_flag: bool = False):
    """Exact value 1/r^2 - pi/(r sinh(pi r)) of sum 2(-1)^(k-1)/(k^2 + r^2).

    For pi*r > 700 the sinh term is dropped; with ``return_flag=True`` the
    result is ``(value, dropped)``.
    """
    if not r > 0:
        raise ParameterError(f"r must be positive, got {r}")
    x = math.pi * r
    dropped = x > 700
    if dropped:
        value = 1.0 / (r * r)
    elif r < 0.5:
        value = math.pi**2 * _one_minus_x_over_sinh_over_x2(x)
    else:
        value = 1.0 / (r * r) - math.pi / (r * math.sinh(x))
    return (value, dropped) if return_flag else value
