"""Finite verification that the series inequality fails for beta = 4m+5 at large r.

For beta = 2p - 1 the left side behaves like (2^{2p}-1) B_{2p} / p * r^{-2mu}
while the right side behaves like 2 r^{-2mu}; for odd p >= 5 the coefficient
exceeds 2.  ``scan`` evaluates both sides on a geometric grid and only reports
a violation where the margin exceeds the certified error bound.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from .asymptotics import leading_coeff
from .errors import NumericalError, ParameterError, PrecisionFloorError
from .series import InequalityParams, lhs_series, rhs_bound

__all__ = [
    "RefutationParams",
    "Status",
    "Verdict",
    "ReportRow",
    "RefutationReport",
    "DiagnosticRow",
    "limit_coefficient",
    "predicts_violation",
    "check_point",
    "scan",
    "scaled_limit_diagnostic",
]

DEFAULT_RTOL = 1e-3


@dataclass(frozen=True)
class RefutationParams:
    """The family beta = 4m + 5 (p = 2m + 3 odd) with integer alpha."""

    m: int
    alpha: int = 2
    mu: float = 6.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"m must be a positive integer, got {self.m}")
        if int(self.alpha) != self.alpha or self.alpha < 1:
            raise ParameterError(f"alpha must be a positive integer, got {self.alpha}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "alpha", int(self.alpha))
        if not self.alpha * self.mu - self.beta > 1:
            raise ParameterError(
                f"alpha*mu - beta = {self.alpha * self.mu - self.beta:g} must exceed 1"
            )

    @property
    def beta(self) -> int:
        return 4 * self.m + 5

    @property
    def p(self) -> int:
        return 2 * self.m + 3

    def inequality(self) -> InequalityParams:
        return InequalityParams(float(self.alpha), float(self.beta), float(self.mu))


AnyParams = Union[RefutationParams, InequalityParams]


def _as_inequality(params: AnyParams) -> InequalityParams:
    if isinstance(params, RefutationParams):
        return params.inequality()
    return params


def _describe(params: AnyParams) -> dict:
    ineq = _as_inequality(params)
    out = {"alpha": ineq.alpha, "beta": ineq.beta, "mu": ineq.mu}
    if isinstance(params, RefutationParams):
        out["m"] = params.m
    return out


class Status(enum.Enum):
    VIOLATION = "violation"
    HOLDS = "holds"
    INCONCLUSIVE = "inconclusive"


class Verdict(enum.Enum):
    VIOLATION_FOUND = "ViolationFound"
    NO_VIOLATION_IN_RANGE = "NoViolationInRange"


@dataclass(frozen=True)
class ReportRow:
    r: float
    lhs: float
    rhs: float
    margin: float
    scaled_lhs: float
    error_bound: float
    status: Status

    def as_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        return d


@dataclass
class RefutationReport:
    params: AnyParams
    rows: List[ReportRow]
    limit_coeff: Optional[float]
    threshold_r: Optional[float]
    verdict: Verdict
    tol: float = DEFAULT_RTOL
    r_range: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "params": _describe(self.params),
            "tol": self.tol,
            "r_min": self.r_range[0] if self.r_range else None,
            "r_max": self.r_range[1] if self.r_range else None,
            "points": len(self.rows),
            "rows": [row.as_dict() for row in self.rows],
            "limit_coeff": self.limit_coeff,
            "threshold_r": self.threshold_r,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class DiagnosticRow:
    r: float
    scaled_lhs: float
    relative_gap: float
    status: Status


def limit_coefficient(params: AnyParams) -> Optional[float]:
    """lim lhs * r^(2 mu) for integer beta and alpha; None when the theorem does not apply."""
    ineq = _as_inequality(params)
    if not (float(ineq.beta).is_integer() and float(ineq.alpha).is_integer()):
        return None
    return float(leading_coeff(int(ineq.beta)))


def predicts_violation(params: AnyParams) -> bool:
    """Large-r violation is predicted iff the limit coefficient exceeds rhs * r^(2 mu) -> 2."""
    coeff = limit_coefficient(params)
    return coeff is not None and coeff > 2.0


def check_point(params: AnyParams, r: float, tol: float = DEFAULT_RTOL) -> ReportRow:
    """Evaluate one grid point.

    ``tol`` is relative to the right side: the series is evaluated to an
    absolute tolerance of ``tol * rhs``.  The sign of the margin is certified
    only where ``|margin|`` exceeds the series error bound.
    """
    ineq = _as_inequality(params)
    if not r > 0:
        raise ParameterError("r must be positive")
    rhs = rhs_bound(ineq.mu, r)
    try:
        val = lhs_series(ineq, r, tol * rhs)
    except NumericalError:
        nan = float("nan")
        return ReportRow(r, nan, rhs, nan, nan, math.inf, Status.INCONCLUSIVE)
    margin = rhs - val.value
    if margin < -val.error_bound:
        status = Status.VIOLATION
    elif margin > val.error_bound:
        status = Status.HOLDS
    else:
        status = Status.INCONCLUSIVE
    return ReportRow(r, val.value, rhs, margin, val.value * r ** (2 * ineq.mu), val.error_bound, status)


def _threshold(rows: Sequence[ReportRow]) -> Optional[float]:
    threshold = None
    for row in reversed(rows):
        if row.status is not Status.VIOLATION:
            break
        threshold = row.r
    return threshold


def scan(params: AnyParams, r_min: float = 5.0, r_max: float = 50.0, points: int = 16,
         tol: float = DEFAULT_RTOL) -> RefutationReport:
    """Check the inequality on a geometric grid of ``points`` radii in [r_min, r_max]."""
    if not 0 < r_min < r_max:
        raise ParameterError("need 0 < r_min < r_max")
    if points < 2:
        raise ParameterError("points must be >= 2")
    grid = np.geomspace(r_min, r_max, points)
    rows = [check_point(params, float(r), tol) for r in grid]
    if all(row.status is Status.INCONCLUSIVE for row in rows):
        raise PrecisionFloorError("every grid point is below the precision floor", achievable=math.inf)
    threshold = _threshold(rows)
    verdict = Verdict.VIOLATION_FOUND if threshold is not None else Verdict.NO_VIOLATION_IN_RANGE
    return RefutationReport(params, rows, limit_coefficient(params), threshold, verdict, tol, (r_min, r_max))


def scaled_limit_diagnostic(params: AnyParams, r_list: Sequence[float],
                            tol: float = DEFAULT_RTOL) -> List[DiagnosticRow]:
    """Scaled left side against its limit; the gap should shrink roughly like r^-2."""
    coeff = limit_coefficient(params)
    if coeff is None or coeff == 0:
        raise ParameterError("no non-zero limit coefficient for these parameters")
    out = []
    for r in r_list:
        row = check_point(params, float(r), tol)
        if math.isnan(row.lhs):
            out.append(DiagnosticRow(float(r), math.nan, math.nan, Status.INCONCLUSIVE))
            continue
        gap = abs(row.scaled_lhs - coeff) / abs(coeff)
        out.append(DiagnosticRow(float(r), row.scaled_lhs, gap, row.status))
    return out
