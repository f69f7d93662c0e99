"""Independent oracles shared by the test modules.

None of these go through the package's own summation or polynomial code.
"""
import math
from fractions import Fraction

import mpmath
import pytest


def akiyama_tanigawa(n):
    """B_0..B_n by the Akiyama-Tanigawa transform (B_1 = +1/2), sign-fixed to B_1 = -1/2."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return out


def nsum_lhs(beta, alpha, mu, r, dps=60):
    """sum 2(-1)^(k-1) k^beta/(k^alpha + r^2)^mu via mpmath's extrapolating nsum."""
    with mpmath.workdps(dps):
        r = mpmath.mpf(r)
        f = lambda k: 2 * (-1) ** (int(k) - 1) * k**beta / (k**alpha + r * r) ** mu  # noqa: E731
        return mpmath.nsum(f, [1, mpmath.inf])


def nsum_generalized(gamma, alpha, mu_thm, u, t, dps=60):
    with mpmath.workdps(dps):
        t, u = mpmath.mpf(t), mpmath.mpf(u)
        f = lambda k: 2 * (-1) ** (int(k) - 1) * (k + u) ** gamma / ((k + u) ** alpha + t**alpha) ** (mu_thm + 1)  # noqa: E731
        return mpmath.nsum(f, [1, mpmath.inf])


def tan_x_equals_x_root():
    """First positive root of tan x = x by plain bisection on (pi, 3pi/2)."""
    lo, hi = math.pi + 0.1, 1.5 * math.pi - 1e-3
    f = lambda x: math.tan(x) - x  # noqa: E731
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return lo


@pytest.fixture(scope="session")
def bernoulli_oracle():
    return akiyama_tanigawa(40)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
