"""Floating-point Marchenko-Pastur oracle for the free Poisson law.

Entirely independent of the exact non-crossing combinatorics: moments come
from adaptive quadrature of the closed-form density (plus the atom at zero
when the rate is below one), giving an analytic cross-check.  The density is
trusted only as far as this cross-check: the acceptance suite compares every
quadrature moment against the combinatorial moment formula.

Quadrature runs in mpmath working precision: high-order moments reach ~1e10,
where an absolute tolerance of 1e-6 sits below one float64 ulp, so double
precision alone could not honour the contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .algnum import AlgebraicReal
from .errors import CapExceeded

__all__ = [
    "FreePoissonParams",
    "QuadratureError",
    "mp_moment",
    "mp_moment_mpf",
    "mp_moment_with_error",
    "atom_mass",
    "to_mpf",
]

MOMENT_CAP = 12


class QuadratureError(Exception):
    """Adaptive quadrature failed to reach the requested tolerance."""


def to_mpf(x) -> mpmath.mpf:
    """Evaluate an exact or numeric value at the current working precision."""
    if isinstance(x, AlgebraicReal):
        total = mp.mpf(0)
        for d, c in x.terms.items():
            if d < 0:
                raise ValueError(f"{x} is not real")
            total += mp.mpf(c.numerator) / c.denominator * mp.sqrt(d)
        return total
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@dataclass(frozen=True)
class FreePoissonParams:
    """Rate and jump size of a free Poisson law.  Parameters may be exact
    (Fraction, AlgebraicReal) or floats; moments integrate the law of the
    parameters as given."""

    rate: object
    jump: object

    def __post_init__(self):
        if float(self.rate) <= 0 or float(self.jump) <= 0:
            raise ValueError("rate and jump must be positive")

    @property
    def atom_mass(self) -> float:
        return max(0.0, 1.0 - float(self.rate))

    @property
    def support(self) -> tuple[float, float]:
        s = math.sqrt(float(self.rate))
        return float(self.jump) * (1 - s) ** 2, float(self.jump) * (1 + s) ** 2

    def density(self, x: float) -> float:
        a, b = self.support
        if x <= a or x >= b or x <= 0:
            return 0.0
        return math.sqrt((x - a) * (b - x)) / (2 * math.pi * float(self.jump) * x)


def atom_mass(params: FreePoissonParams) -> float:
    return params.atom_mass


def _moment_integral(params: FreePoissonParams, k: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Continuous-part integral of x^k after substituting
    x = center + radius*sin(theta), which absorbs the square-root edges."""
    lam = to_mpf(params.rate)
    alpha = to_mpf(params.jump)
    s = mp.sqrt(lam)
    a, b = alpha * (1 - s) ** 2, alpha * (1 + s) ** 2
    center, radius = (a + b) / 2, (b - a) / 2
    scale = radius * radius / (2 * mp.pi * alpha)
    touches_zero = a == 0

    def integrand(theta):
        if k == 0 and touches_zero:
            # cos^2/x collapses exactly: x = radius*(1+sin), center = radius
            return scale * (1 - mp.sin(theta)) / radius
        x = center + radius * mp.sin(theta)
        cos2 = mp.cos(theta) ** 2
        if k == 0:
            return scale * cos2 / x
        return scale * x ** (k - 1) * cos2

    return mp.quad(integrand, [-mp.pi / 2, mp.pi / 2], error=True)


def _converged_moment(
    params: FreePoissonParams, k: int, tol: float
) -> tuple[mpmath.mpf, mpmath.mpf]:
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k > MOMENT_CAP:
        raise CapExceeded(f"moment order {k} exceeds cap {MOMENT_CAP}")
    last_err = None
    for dps in (30, 50, 80):
        with mp.workdps(dps):
            value, err = _moment_integral(params, k)
            if err <= tol:
                if k == 0:
                    rate = to_mpf(params.rate)
                    if rate < 1:
                        value += 1 - rate
                return value, err
            last_err = err
    raise QuadratureError(f"estimated error {last_err} exceeds tolerance {tol}")


def mp_moment_mpf(params: FreePoissonParams, k: int, tol: float = 1e-9) -> mpmath.mpf:
    """k-th moment as a high-precision value (for comparisons whose target
    tolerance sits below one float64 ulp of the moment)."""
    return _converged_moment(params, k, tol)[0]


def mp_moment_with_error(
    params: FreePoissonParams, k: int, tol: float = 1e-9
) -> tuple[float, float]:
    """k-th moment as a float with the quadrature error estimate."""
    value, err = _converged_moment(params, k, tol)
    return float(value), float(err)


def mp_moment(params: FreePoissonParams, k: int, tol: float = 1e-9) -> float:
    return mp_moment_with_error(params, k, tol)[0]
