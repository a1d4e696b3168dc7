"""
Fourier analysis on the multiplicative group (0, infinity).

Two transforms with opposite sign conventions live here:

    mult_transform(g, y) = int_0^inf g(s) s^{-iy} ds/s
    radial_mellin(k, y)  = int_{R^n} k(x) |x|^{iy} dx

`radial_to_mult` converts between them for the two g-mappings of a kernel;
the conversion is never applied implicitly.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from mathtools.errors import DomainError, UnknownIdError
from mathtools.kernels import RadialKernel
from mathtools.quadrature import (
    DEFAULT_SETTINGS,
    HalfLineProfile,
    QuadratureSettings,
    integrate_line,
    oscillation_width,
    radial_integral,
)
from mathtools.specfun import beta_complex, log_gamma_complex, poisson_constant, gamma_complex, sphere_area


logger = logging.getLogger("mathtools.mellin")

ZERO_THRESHOLD = 1e-6
REFINE_XATOL = 1e-8

G_VARIANTS = ("mean_ratio", "spherical")


@dataclass(frozen=True)
class MellinZero:
    y: float
    modulus: float
    bracket: Tuple[float, float]


@dataclass
class MellinSpectrum:
    y_grid: np.ndarray
    values: np.ndarray
    min_modulus: float
    zeros: List[MellinZero] = field(default_factory=list)
    kernel: str = ""

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.values)

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel,
            "points": int(self.y_grid.size),
            "y_range": [float(self.y_grid[0]), float(self.y_grid[-1])],
            "min_modulus": self.min_modulus,
            "zeros": [
                {"y": z.y, "modulus": z.modulus, "bracket": list(z.bracket)}
                for z in self.zeros
            ],
        }


# Closed-form registry

def _gaussian_closed(params, n, y):
    s = complex(n, y)
    log_value = (
        -0.5 * n * math.log(4.0 * math.pi)
        + (s - 1.0) * math.log(2.0)
        + log_gamma_complex(s / 2.0)
    )
    return sphere_area(n) * cmath.exp(log_value)


def _ball_closed(params, n, y):
    return sphere_area(n) / complex(n, y)


def _power_closed(params, n, y):
    (alpha,) = params
    alpha = complex(alpha)
    s = complex(n, y)
    if alpha.real <= n / 2.0:
        raise DomainError(f"(1+r^2)^(-alpha) is integrable on R^{n} only for Re alpha > {n / 2}, got {alpha}")
    log_value = log_gamma_complex(s / 2.0) + log_gamma_complex(alpha - s / 2.0) - log_gamma_complex(alpha)
    return 0.5 * sphere_area(n) * cmath.exp(log_value)


def _g_closed(params, n, y):
    alpha, beta = params
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"G closed form needs alpha > 0 and beta > 0, got {alpha}, {beta}")
    s = complex(n, y)
    log_value = log_gamma_complex(s / beta) - (s / beta) * math.log(alpha)
    return sphere_area(n) * cmath.exp(log_value) / beta


def _counterexample_closed(params, n, y):
    sinc = 1.0 if y == 0 else math.sin(y) / y
    return beta_complex(complex(n, y), complex(n, -y)) * sinc / beta_complex(n, n).real


def _hyperbolic_psi_closed(params, n, y):
    hyperbolic_n, lam = params
    if n != hyperbolic_n - 1:
        raise DomainError(f"psi^lambda of H^{hyperbolic_n} lives on R^{hyperbolic_n - 1}, not R^{n}")
    lam = complex(lam)
    if lam.imag <= 0:
        raise DomainError(f"psi^lambda needs Im lambda > 0, got {lam}")
    alpha = (n / 2.0) - 1j * lam
    return _power_closed((alpha,), n, y) / _power_closed((alpha,), n, 0.0)


CLOSED_FORMS: Dict[str, Callable] = {
    "gaussian": _gaussian_closed,
    "ball": _ball_closed,
    "power": _power_closed,
    "G": _g_closed,
    "counterexample": _counterexample_closed,
    "hyperbolic_psi": _hyperbolic_psi_closed,
}


def closed_form_mellin(id: str, params: Tuple, n: int, y: float) -> complex:
    """
    Analytic value of int phi(x)|x|^{iy} dx for a registered base profile
    (unit scale, unit weight).
    """
    try:
        evaluator = CLOSED_FORMS[id]
    except KeyError:
        raise UnknownIdError(f"no closed-form Mellin transform registered for '{id}'") from None
    return complex(evaluator(tuple(params), n, float(y)))


def kernel_closed_form_mellin(k: RadialKernel, y: float) -> complex:
    """Closed form for a kernel, including its dilation and weight."""
    ref = k.mellin_closed_form
    if ref is None:
        raise UnknownIdError(f"kernel {k.name} has no closed-form Mellin transform")
    dilation = cmath.exp(1j * y * math.log(k.scale))
    return k.weight * ref.factor * dilation * closed_form_mellin(ref.id, ref.params, k.dim, y)


def quoted_poisson_mellin(n: int, s: float) -> complex:
    """
    The power-kernel integral with the Poisson constant c_n in front, as it
    is sometimes quoted. It disagrees with the Beta-integral value (at n=1,
    s=0 it gives 1/2 where the integral is pi); kept for reporting only.
    """
    z = complex(n, s)
    value = cmath.exp(log_gamma_complex(z / 2.0) + log_gamma_complex(complex(1.0, -s) / 2.0))
    return poisson_constant(n) * value / (2.0 * gamma_complex((n + 1) / 2.0))


# Transforms

def mult_transform(
    g: HalfLineProfile,
    y: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """g_hat(y) = int_0^inf g(s) s^{-iy} ds/s, computed over u = log s."""
    def integrand(u):
        return g.evaluator(np.exp(u)) * np.exp(-1j * y * u)

    result = integrate_line(
        integrand,
        center=math.log(g.center),
        breaks=g.log_breaks,
        max_width=oscillation_width(y),
        settings=settings,
        label=f"transform of {g.name}",
    )
    return result.value


def radial_mellin(
    k: RadialKernel,
    y: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """int_{R^n} k(x) |x|^{iy} dx = omega_{n-1} int_0^inf k(r) r^{n-1+iy} dr."""
    result = radial_integral(
        k.profile,
        k.dim,
        y,
        area=sphere_area(k.dim),
        center=k.log_center,
        breaks=k.radial_breaks,
        settings=settings,
        label=f"radial Mellin of {k.name} at y={y:g}",
    )
    return result.value


def radial_to_mult(value: complex, n: int, variant: str) -> complex:
    """
    Convert a radial Mellin value of phi into the transform of its g-mapping.

    variant "mean_ratio": g(s) = n m(B(0,1)) s^{-n} phi(1/s), g_hat = value.
    variant "spherical":  g(s) = s^{-n} phi(1/s), g_hat = value / omega_{n-1}.
    """
    if variant == "mean_ratio":
        return value
    if variant == "spherical":
        return value / sphere_area(n)
    raise UnknownIdError(f"unknown g-mapping variant '{variant}', expected one of {G_VARIANTS}")


def tauberian_check(
    k: RadialKernel,
    y_min: float,
    y_max: float,
    points: int,
    threshold: float = ZERO_THRESHOLD,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    xatol: float = REFINE_XATOL,
) -> MellinSpectrum:
    """
    Sample the radial Mellin transform on [y_min, y_max] and locate zeros.

    Every local minimum of the sampled modulus is refined with a bounded
    scalar minimization; minima whose refined modulus falls below
    `threshold` are reported as zeros.
    """
    if points < 3:
        raise DomainError(f"tauberian_check needs at least 3 points, got {points}")
    if not y_min < y_max:
        raise DomainError(f"empty frequency window [{y_min}, {y_max}]")

    grid = np.linspace(y_min, y_max, points)
    values = np.array([radial_mellin(k, float(y), settings) for y in grid])
    modulus = np.abs(values)

    def objective(y):
        return abs(radial_mellin(k, float(y), settings))

    zeros: List[MellinZero] = []
    for i in range(points):
        left = modulus[i - 1] if i > 0 else np.inf
        right = modulus[i + 1] if i < points - 1 else np.inf
        if not (modulus[i] <= left and modulus[i] <= right):
            continue
        lo, hi = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, points - 1)])
        refined = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                  options={"xatol": xatol})
        y_star, m_star = float(refined.x), float(refined.fun)
        if modulus[i] < m_star:
            y_star, m_star = float(grid[i]), float(modulus[i])
        logger.debug(f"{k.name}: local minimum |M|={m_star:.3g} at y={y_star:.9f}")
        if m_star < threshold:
            zeros.append(MellinZero(y=y_star, modulus=m_star, bracket=(lo, hi)))

    min_modulus = float(modulus.min())
    logger.info(f"Tauberian check for {k.name} on [{y_min:g}, {y_max:g}]: "
                f"min |M| = {min_modulus:.3g}, {len(zeros)} zero(s)")
    return MellinSpectrum(y_grid=grid, values=values, min_modulus=min_modulus, zeros=zeros, kernel=k.name)
