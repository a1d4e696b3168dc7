"""
Complex special functions and geometric constants.

Gamma values are formed from scipy's complex log-gamma so ratios of large
arguments do not overflow before the final exp.
"""

import cmath
import math
from dataclasses import dataclass
from numbers import Number

from scipy import special

from mathtools.errors import DomainError


_POLE_TOLERANCE = 1e-14


@dataclass(frozen=True)
class DimensionConstants:
    """Geometric constants of R^n."""
    n: int
    sphere_area: float
    ball_volume: float


def _check_pole(z: complex):
    if z.imag == 0.0 and z.real <= 0.0:
        nearest = round(z.real)
        if abs(z.real - nearest) <= _POLE_TOLERANCE * max(1.0, abs(nearest)):
            raise DomainError(f"Gamma has a pole at z={int(nearest)}")


def log_gamma_complex(z: Number) -> complex:
    """
    Principal branch of log Gamma(z).

    Ratios of Gamma values are formed by adding and subtracting these
    logarithms.
    """
    z = complex(z)
    _check_pole(z)
    value = complex(special.loggamma(z))
    if not cmath.isfinite(value):
        raise DomainError(f"log Gamma is not finite at z={z}")
    return value


def gamma_complex(z: Number) -> complex:
    """
    Gamma(z) for complex z.

    Raises:
        DomainError: if z is a non-positive integer
    """
    return cmath.exp(log_gamma_complex(z))


def beta_complex(a: Number, b: Number) -> complex:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), for Re a > 0 and Re b > 0."""
    a, b = complex(a), complex(b)
    if a.real <= 0 or b.real <= 0:
        raise DomainError(f"beta_complex requires Re a > 0 and Re b > 0, got a={a}, b={b}")
    return cmath.exp(log_gamma_complex(a) + log_gamma_complex(b) - log_gamma_complex(a + b))


def _check_dimension(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {n!r}")
    return n


def sphere_area(n: int) -> float:
    """omega_{n-1}, the surface area of the unit sphere in R^n."""
    n = _check_dimension(n)
    return 2.0 * math.pi ** (n / 2.0) / gamma_complex(n / 2.0).real


def ball_volume(n: int) -> float:
    """Lebesgue measure of the unit ball in R^n."""
    return sphere_area(n) / _check_dimension(n)


def dimension_constants(n: int) -> DimensionConstants:
    area = sphere_area(n)
    return DimensionConstants(n=n, sphere_area=area, ball_volume=area / n)


def poisson_constant(n: int) -> float:
    """Normalizing constant of the Euclidean Poisson kernel on R^n."""
    n = _check_dimension(n)
    return gamma_complex((n + 1) / 2.0).real / math.pi ** ((n + 1) / 2.0)
