"""Exact Bernoulli and Euler numbers and polynomials.

Everything here is computed with :class:`fractions.Fraction`; conversion to
floating point only happens when a polynomial is evaluated at a float.
Convention: B_1 = -1/2, i.e. B_n = B_n(0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

import mpmath

from .errors import DegreeCapError, ParameterError

__all__ = [
    "DEGREE_CAP",
    "PolynomialCoeffs",
    "bernoulli_number",
    "bernoulli_poly",
    "euler_poly",
    "euler_at_zero",
    "zeta_even",
]

DEGREE_CAP = 64


def _check_index(n: int, cap: int) -> None:
    if n < 0:
        raise ParameterError(f"index must be non-negative, got {n}")
    if n > cap:
        raise DegreeCapError(f"degree cap exceeded: {n} > {cap}")


@dataclass(frozen=True)
class PolynomialCoeffs:
    """Coefficient list, ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ParameterError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = float(x)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def rescaled(self, factor) -> "PolynomialCoeffs":
        """Coefficients of p(factor * x)."""
        factor = Fraction(factor)
        return PolynomialCoeffs(tuple(c * factor**i for i, c in enumerate(self.coeffs)))

    def __sub__(self, other: "PolynomialCoeffs") -> "PolynomialCoeffs":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolynomialCoeffs(_trim([x - y for x, y in zip(a, b)]))

    def __mul__(self, scalar) -> "PolynomialCoeffs":
        scalar = Fraction(scalar)
        return PolynomialCoeffs(_trim([c * scalar for c in self.coeffs]))

    __rmul__ = __mul__

    def as_strings(self) -> list:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def _trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> Tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(math.comb(m + 1, j) * table[j] for j in range(m))
        table.append(-s / (m + 1))
    return tuple(table)


def bernoulli_number(n: int, cap: int = DEGREE_CAP) -> Fraction:
    """Return B_n exactly (B_1 = -1/2)."""
    _check_index(n, cap)
    return _bernoulli_table(n)[n]


def bernoulli_poly(n: int, cap: int = DEGREE_CAP) -> PolynomialCoeffs:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k)."""
    _check_index(n, cap)
    b = _bernoulli_table(n)
    return PolynomialCoeffs(tuple(math.comb(n, i) * b[n - i] for i in range(n + 1)))


def euler_poly(n: int, cap: int = DEGREE_CAP) -> PolynomialCoeffs:
    """E_n(x) from E_n(x) = 2/(n+1) * (B_{n+1}(x) - 2^{n+1} B_{n+1}(x/2))."""
    _check_index(n, cap - 1)
    bp = bernoulli_poly(n + 1, cap)
    diff = bp - bp.rescaled(Fraction(1, 2)) * 2 ** (n + 1)
    return diff * Fraction(2, n + 1)


def euler_at_zero(n: int, cap: int = DEGREE_CAP) -> Fraction:
    """E_n(0) = 2 (1 - 2^{n+1}) B_{n+1} / (n+1)."""
    _check_index(n, cap - 1)
    return 2 * (1 - 2 ** (n + 1)) * bernoulli_number(n + 1, cap) / (n + 1)


def zeta_even(p: int) -> float:
    """zeta(2p) from |B_2p| = 2 (2p)! zeta(2p) / (2 pi)^{2p}."""
    if not 1 <= p <= 32:
        raise ParameterError(f"zeta_even supports 1 <= p <= 32, got {p}")
    scale = abs(bernoulli_number(2 * p)) * 2 ** (2 * p - 1) / math.factorial(2 * p)
    # the double product pi**(2p) drifts by ~2p ulps; round once instead
    with mpmath.workdps(40):
        return float(mpmath.mpf(scale.numerator) / scale.denominator * mpmath.pi ** (2 * p))
