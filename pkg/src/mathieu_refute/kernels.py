"""Kernels of cases 1-3 and the two integrals of the kernel inequality.

Both integrals have the form

    I_w(r) = int_0^inf x^(s-1) w(x) K(r x^(alpha/2)) dx,   s = mu*alpha - beta,

with w(x) = 1/(e^x + 1) (Fermi weight) or w(x) = e^-x.  The kernels are
sin(u)/u and j_lambda(u) = J_lambda(u)/u^lambda.  The positive constants
multiplying j_lambda in cases 2 and 3 are never assumed; consistency checks
against the series are ratio statements.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from typing import Callable, List

import mpmath
import numpy as np

from .errors import ConvergenceError, ParameterError, UnsupportedCaseError
from .series import Case, InequalityParams

__all__ = [
    "KernelKind",
    "KernelSpec",
    "QuadratureResult",
    "MarginResult",
    "sinc",
    "bessel_j",
    "bessel_j_series",
    "bessel_j_asymptotic",
    "normalized_bessel",
    "kernel_for_case",
    "kernel_value",
    "kernel_sup",
    "find_sign_changes",
    "integral_fermi",
    "integral_exp",
    "compare_integral_inequality",
]

LAMBDA_MAX = 50.0
_EPS = np.finfo(float).eps


class KernelKind(enum.Enum):
    SINC = "sinc"
    NORMALIZED_BESSEL = "normalized_bessel"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    lam: float = 0.0

    def __post_init__(self):
        if self.kind is KernelKind.NORMALIZED_BESSEL and not -0.5 <= self.lam <= LAMBDA_MAX:
            raise ParameterError(f"normalized Bessel kernel needs -1/2 <= lambda <= {LAMBDA_MAX:g}")

    @classmethod
    def sinc(cls) -> "KernelSpec":
        return cls(KernelKind.SINC)

    @classmethod
    def bessel(cls, lam: float) -> "KernelSpec":
        return cls(KernelKind.NORMALIZED_BESSEL, float(lam))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    panels: int
    truncation_point: float


@dataclass(frozen=True)
class MarginResult:
    margin: float
    error_bound: float
    fermi: QuadratureResult
    exp: QuadratureResult


# --------------------------------------------------------------------------
# special functions


def sinc(u):
    """sin(u)/u with sinc(0) = 1; works on scalars and arrays."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-4
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0 - u * u / 6.0 + u**4 / 120.0, np.sin(u) / np.where(small, 1.0, u))
    return float(out) if out.ndim == 0 else out


def _check_bessel_args(lam: float, u: float) -> None:
    if not -0.5 <= lam <= LAMBDA_MAX:
        raise ParameterError(f"Bessel order must lie in [-1/2, {LAMBDA_MAX:g}], got {lam}")
    if not u >= 0:
        raise ParameterError(f"Bessel argument must be non-negative, got {u}")


def _switchover(lam: float) -> float:
    # the Hankel expansion is only accurate once u dominates lam^2
    return max(12.0, 2.0 * lam, 0.5 * lam * lam)


def _normalized_series(lam: float, u: float, atol: float) -> float:
    """sum_m (-1)^m (u/2)^(2m) / (2^lam m! Gamma(lam+m+1)) = J_lam(u)/u^lam, to absolute ``atol``."""
    q = -(u * u) / 4.0
    term = 1.0 / (2.0**lam * math.gamma(lam + 1.0))
    head = abs(term)
    terms = [term]
    biggest = head
    m = 0
    while True:
        m += 1
        term *= q / (m * (lam + m))
        terms.append(term)
        biggest = max(biggest, abs(term))
        if abs(term) < 1e-18 * min(head, atol) and m * (lam + m) > -q:
            break
    if 64 * _EPS * biggest <= atol:
        return math.fsum(terms)
    # cancellation too strong for doubles: redo with enough extra digits
    with mpmath.workdps(int(math.log10(biggest / atol)) + 20):
        # the denominators must be formed in mpf too: their rounding is amplified
        # by the same cancellation factor
        lam_mp = mpmath.mpf(lam)
        q = -mpmath.mpf(u) ** 2 / 4
        t = 1 / (mpmath.mpf(2) ** lam_mp * mpmath.gamma(lam_mp + 1))
        acc = t
        for k in range(1, m + 1):
            t *= q / (k * (lam_mp + k))
            acc += t
        return float(acc)


def bessel_j_series(lam: float, u: float) -> float:
    """Ascending series for J_lam(u)."""
    _check_bessel_args(lam, u)
    if u == 0:
        return 1.0 if lam == 0 else (0.0 if lam > 0 else math.inf)
    return u**lam * _normalized_series(lam, u, 1e-15 / max(u, 1.0) ** lam)


def bessel_j_asymptotic(lam: float, u: float) -> float:
    """Hankel large-argument expansion sqrt(2/(pi u)) (P cos chi - Q sin chi)."""
    _check_bessel_args(lam, u)
    if u <= 0:
        raise ParameterError("asymptotic expansion needs u > 0")
    mu4 = 4.0 * lam * lam
    p_sum, q_sum = 0.0, 0.0
    a = 1.0  # a_k(lam) / u^k
    prev = math.inf
    k = 0
    while True:
        if k % 2 == 0:
            p_sum += (-1) ** (k // 2) * a
        else:
            q_sum += (-1) ** (k // 2) * a
        k += 1
        a *= (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * u)
        size = abs(a)
        if size == 0.0 or size < 1e-17 * abs(p_sum):
            break
        if size > prev and k > 4:
            break
        prev = size
    chi = u - (lam / 2.0 + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * u)) * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


def bessel_j(lam: float, u: float) -> float:
    """J_lam(u) for -1/2 <= lam <= 50, u >= 0."""
    _check_bessel_args(lam, u)
    if u <= _switchover(lam):
        return bessel_j_series(lam, u)
    return bessel_j_asymptotic(lam, u)


def normalized_bessel(lam: float, u: float) -> float:
    """j_lam(u) = J_lam(u)/u^lam with the u -> 0 limit 1/(2^lam Gamma(lam+1))."""
    _check_bessel_args(lam, u)
    if u <= _switchover(lam):
        head = 1.0 / (2.0**lam * math.gamma(lam + 1.0))
        return _normalized_series(lam, u, 1e-15 * min(head, 1.0 / max(u, 1.0) ** lam))
    return bessel_j_asymptotic(lam, u) / u**lam


# --------------------------------------------------------------------------
# kernels


def kernel_for_case(case, mu: float) -> KernelSpec:
    """Case1 -> sinc, Case2 -> j_(mu-1/2), Case3 -> j_(mu-3/2); constants c1, c2 omitted."""
    case = Case(case)
    if case is Case.CASE1:
        return KernelSpec.sinc()
    if case is Case.CASE2:
        if not mu > 0.5:
            raise ParameterError("case 2 needs mu > 1/2")
        return KernelSpec.bessel(mu - 0.5)
    if case is Case.CASE3:
        if not mu > 1:
            raise ParameterError("case 3 needs mu > 1")
        return KernelSpec.bessel(mu - 1.5)
    raise UnsupportedCaseError(f"kernel unspecified for {case.name}")


def kernel_value(kernel: KernelSpec, u):
    """Evaluate K(u) for scalar or array u >= 0."""
    if kernel.kind is KernelKind.SINC:
        return sinc(u)
    arr = np.asarray(u, dtype=float)
    out = np.array([normalized_bessel(kernel.lam, float(v)) for v in arr.ravel()]).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def kernel_sup(kernel: KernelSpec) -> float:
    # |J_nu(u)| <= (u/2)^nu / Gamma(nu+1) for nu >= -1/2
    if kernel.kind is KernelKind.SINC:
        return 1.0
    return 1.0 / (2.0**kernel.lam * math.gamma(kernel.lam + 1.0))


def _bisect(func: Callable[[float], float], lo: float, hi: float, f_lo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_sign_changes(kernel: KernelSpec, u_max: float, grid_step: float = 0.05,
                      xtol: float = 1e-10) -> List[float]:
    """Ascending points in (0, u_max] where K changes sign, refined by bisection."""
    if not 0 < grid_step <= 0.1:
        raise ParameterError("grid_step must lie in (0, 0.1] to resolve the oscillation")
    if not u_max > 0:
        raise ParameterError("u_max must be positive")
    n = int(math.ceil(u_max / grid_step))
    grid = np.linspace(0.0, n * grid_step, n + 1)
    grid = grid[grid <= u_max + 1e-12]
    vals = np.asarray(kernel_value(kernel, grid))
    roots = []
    func = lambda x: float(kernel_value(kernel, x))  # noqa: E731
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            if i > 0 and vals[i - 1] * b < 0:
                roots.append(float(grid[i]))
            continue
        if a * b < 0:
            roots.append(_bisect(func, float(grid[i]), float(grid[i + 1]), float(a), xtol))
    return roots


# --------------------------------------------------------------------------
# quadrature

# Gauss-Kronrod 7/15 (QUADPACK qk15); Gauss nodes are the odd-indexed Kronrod nodes
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

MAX_PANELS = 50_000


def gk15(func: Callable[[np.ndarray], np.ndarray], a: float, b: float):
    """Kronrod estimate, |Kronrod - Gauss| and the integral of |f| on [a, b]."""
    half = 0.5 * (b - a)
    fx = func(0.5 * (a + b) + half * _NODES)
    kron = half * float(np.dot(_KWEIGHTS, fx))
    gauss = half * float(np.dot(_GWEIGHTS, fx))
    absval = abs(half) * float(np.dot(_KWEIGHTS, np.abs(fx)))
    return kron, abs(kron - gauss), absval


def _adaptive(func, breakpoints: List[float], tol: float) -> tuple:
    heap = []
    results = {}
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        val, err, absval = gk15(func, a, b)
        results[(a, b)] = (val, err, absval)
        heapq.heappush(heap, (-err, a, b))
    total_err = math.fsum(r[1] for r in results.values())
    while total_err > tol:
        if len(results) >= MAX_PANELS:
            best = math.fsum(results[k][0] for k in sorted(results))
            raise ConvergenceError(f"quadrature did not reach {tol:.3g} within {MAX_PANELS} panels",
                                   best_estimate=best)
        _, a, b = heapq.heappop(heap)
        del results[(a, b)]
        mid = 0.5 * (a + b)
        for lo, hi in ((a, mid), (mid, b)):
            val, err, absval = gk15(func, lo, hi)
            results[(lo, hi)] = (val, err, absval)
            heapq.heappush(heap, (-err, lo, hi))
        total_err = math.fsum(r[1] for r in results.values())
    keys = sorted(results)
    value = math.fsum(results[k][0] for k in keys)
    rounding = 50 * _EPS * math.fsum(results[k][2] for k in keys)
    return value, total_err + rounding, len(keys)


def _truncation_point(s: float, sup_k: float, tol: float) -> float:
    """Smallest X >= max(2(s-1), 1) (unit steps) with X^(s-1) e^-X sup|K| <= tol/10."""
    x = max(2.0 * (s - 1.0), 1.0)
    while (s - 1.0) * math.log(x) - x + math.log(sup_k) > math.log(tol / 10.0):
        x += 1.0
    return x


def _kernel_breaks(kernel: KernelSpec, u_max: float) -> List[float]:
    if kernel.kind is KernelKind.SINC:
        return [k * math.pi for k in range(1, int(u_max / math.pi) + 1)]
    limit = min(u_max, 400.0)
    roots = find_sign_changes(kernel, limit, 0.1, xtol=1e-6)
    last = roots[-1] if roots else 0.0
    # beyond the scanned range, zeros are spaced by ~pi
    while last + math.pi < u_max:
        last += math.pi
        if last > limit:
            roots.append(last)
    return roots


def _integral(weight: str, s: float, alpha: float, kernel: KernelSpec, r: float,
              tol: float) -> QuadratureResult:
    if not s >= 1:
        raise ParameterError(f"s = mu*alpha - beta must be >= 1 (endpoint singularity unsupported), got {s}")
    if not (alpha > 0 and r > 0 and tol > 0):
        raise ParameterError("alpha, r and tol must be positive")
    sup_k = kernel_sup(kernel)
    x_max = _truncation_point(s, sup_k, tol)
    tail = 2.0 * x_max ** (s - 1.0) * math.exp(-x_max) * sup_k
    u_max = r * x_max ** (alpha / 2.0)
    breaks = [0.0] + [(u / r) ** (2.0 / alpha) for u in _kernel_breaks(kernel, u_max)] + [x_max]
    breaks = sorted(set(b for b in breaks if b <= x_max))
    half = alpha / 2.0

    def integrand(x):
        if weight == "fermi":
            e = np.exp(-x)
            w = e / (1.0 + e)
        else:
            w = np.exp(-x)
        return x ** (s - 1.0) * w * np.asarray(kernel_value(kernel, r * x**half))

    value, err, panels = _adaptive(integrand, breaks, 0.8 * tol)
    return QuadratureResult(value, err + tail, panels, x_max)


def integral_fermi(s: float, alpha: float, kernel: KernelSpec, r: float, tol: float = 1e-10) -> QuadratureResult:
    """int_0^inf x^(s-1)/(e^x+1) K(r x^(alpha/2)) dx."""
    return _integral("fermi", s, alpha, kernel, r, tol)


def integral_exp(s: float, alpha: float, kernel: KernelSpec, r: float, tol: float = 1e-10) -> QuadratureResult:
    """int_0^inf x^(s-1) e^-x K(r x^(alpha/2)) dx."""
    return _integral("exp", s, alpha, kernel, r, tol)


def compare_integral_inequality(params: InequalityParams, r: float, tol: float = 1e-10) -> MarginResult:
    """integral_exp - integral_fermi for case 1-3 parameters, with combined error bound."""
    if params.case_tag not in (Case.CASE1, Case.CASE2, Case.CASE3):
        if params.case_tag in (Case.CASE4, Case.CASE5):
            raise UnsupportedCaseError(f"kernel unspecified for {params.case_tag.name}")
        raise ParameterError("compare_integral_inequality needs a Case1-Case3 tag")
    kernel = kernel_for_case(params.case_tag, params.mu)
    s = params.mu * params.alpha - params.beta
    fermi = integral_fermi(s, params.alpha, kernel, r, tol)
    exp = integral_exp(s, params.alpha, kernel, r, tol)
    return MarginResult(exp.value - fermi.value, exp.abs_error_estimate + fermi.abs_error_estimate, fermi, exp)
