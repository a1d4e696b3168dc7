"""
Convolution on the multiplicative group ((0, infinity), ds/s).

    (f * g)(t) = int_0^inf f(s) g(t/s) ds/s

Used to move between the kernel side v(t) = mu * phi_t(0) and the measure
side M(r) through the H kernel, and to transfer limits between two kernels
through spherical averages.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from mathtools.errors import DomainError, UnknownIdError, UnsupportedError
from mathtools.kernels import RadialKernel
from mathtools.measures import (
    LimitTrace,
    RadialFunction,
    RadialMeasure,
    convolve_at_center,
    convolve_function_at_center,
    make_trace,
    mean_ratio,
)
from mathtools.quadrature import (
    DEFAULT_SETTINGS,
    HalfLineProfile,
    QuadratureSettings,
    integrate,
    integrate_line,
)
from mathtools.specfun import ball_volume, sphere_area


logger = logging.getLogger("mathtools.multconv")

SANDWICH_SLACK = 1e-9

# outer integrals whose integrand is itself a quadrature
NESTED_SETTINGS = QuadratureSettings(epsrel=1e-10, tail_tolerance=1e-11)


def mult_convolve(
    f: HalfLineProfile,
    g: HalfLineProfile,
    t: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """(f * g)(t) over u = log s."""
    if not t > 0:
        raise DomainError(f"convolution point must be positive, got t={t}")

    def integrand(u):
        s = np.exp(u)
        return np.asarray(f.evaluator(s)) * np.asarray(g.evaluator(t / s))

    breaks = list(f.log_breaks) + [math.log(t) - b for b in g.log_breaks]
    result = integrate_line(
        integrand,
        center=math.log(f.center),
        breaks=breaks,
        settings=settings,
        label=f"{f.name} * {g.name} at {t:g}",
    )
    value = result.value
    return value if (f.complex_valued or g.complex_valued) else value.real


def H_kernel(n: int) -> HalfLineProfile:
    """H(t) = n t^{-n} on [1, infinity), 0 on (0, 1); unit integral against dt/t."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")

    def evaluator(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(s >= 1.0, n * s ** (-float(n)), 0.0)

    return HalfLineProfile(evaluator=evaluator, name=f"H:{n}", breaks=(1.0,), center=1.0)


def g_of_kernel(k: RadialKernel, variant: str) -> HalfLineProfile:
    """
    The profile on (0, infinity) attached to a radial kernel:

        mean_ratio: g(s) = n m(B(0,1)) s^{-n} phi(1/s), int g ds/s = mass of phi
        spherical:  g(s) = s^{-n} phi(1/s),            int g ds/s = mass / omega_{n-1}
    """
    n = k.dim
    if variant == "mean_ratio":
        factor = n * ball_volume(n)
    elif variant == "spherical":
        factor = 1.0
    else:
        raise UnknownIdError(f"unknown g-mapping variant '{variant}'")

    def evaluator(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            value = factor * s ** (-float(n)) * np.asarray(k.profile(1.0 / s))
        return np.where(np.isfinite(value), value, 0.0)

    return HalfLineProfile(
        evaluator=evaluator,
        name=f"g[{variant}]({k.name})",
        breaks=tuple(1.0 / b for b in k.radial_breaks if b > 0),
        center=1.0 / k.scale,
        complex_valued=k.complex_valued,
    )


def v_profile(mu: RadialMeasure, k: RadialKernel, settings: QuadratureSettings = DEFAULT_SETTINGS) -> HalfLineProfile:
    """t -> mu * phi_t(0) as a profile on (0, infinity)."""
    scalar = np.vectorize(lambda t: float(np.real(convolve_at_center(mu, k, float(t), settings))), otypes=[float])
    return HalfLineProfile(evaluator=scalar, name=f"v({mu.name},{k.name})", center=1.0)


def m_profile(mu: RadialMeasure, settings: QuadratureSettings = DEFAULT_SETTINGS) -> HalfLineProfile:
    """r -> M(r) as a profile on (0, infinity)."""
    scalar = np.vectorize(lambda r: mean_ratio(mu, float(r), settings), otypes=[float])
    breaks = [float(d) for d in mu.atom_distances() if d > 0]
    if mu.support_radius is not None:
        breaks.append(mu.support_radius)
    return HalfLineProfile(evaluator=scalar, name=f"M({mu.name})", breaks=tuple(sorted(set(breaks))), center=1.0)


@dataclass(frozen=True)
class IdentityReport:
    r_grid: np.ndarray
    kernel_side: np.ndarray
    measure_side: np.ndarray
    max_residual: float

    def to_dict(self) -> dict:
        return {
            "points": int(self.r_grid.size),
            "max_residual": self.max_residual,
            "r_range": [float(self.r_grid[0]), float(self.r_grid[-1])],
        }


def check_H_identity(
    mu: RadialMeasure,
    k: RadialKernel,
    r_grid: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> IdentityReport:
    """
    Compare (H * v)(r) with (M * g)(r) on a grid, each side by its own
    quadrature; v(t) = mu * phi_t(0) and g is the mean_ratio mapping of phi.
    """
    if mu.dim != k.dim:
        raise DomainError(f"measure lives on R^{mu.dim} but kernel on R^{k.dim}")
    H = H_kernel(k.dim)
    v = v_profile(mu, k, settings)
    M = m_profile(mu, settings)
    g = g_of_kernel(k, "mean_ratio")
    r_grid = np.asarray(r_grid, dtype=float)

    kernel_side = np.array([mult_convolve(H, v, float(r), NESTED_SETTINGS) for r in r_grid])
    measure_side = np.array([mult_convolve(g, M, float(r), NESTED_SETTINGS) for r in r_grid])
    residual = float(np.max(np.abs(kernel_side - measure_side)))
    logger.info(f"H identity for ({mu.name}, {k.name}): max residual {residual:.3g} on {r_grid.size} points")
    return IdentityReport(r_grid=r_grid, kernel_side=kernel_side, measure_side=measure_side, max_residual=residual)


def log_bump(a: float, b: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> HalfLineProfile:
    """Positive cos^2 bump supported in [a, b] in log coordinates, unit integral against ds/s."""
    if not 0 < a < b:
        raise DomainError(f"bump support must satisfy 0 < a < b, got [{a}, {b}]")
    lo, hi = math.log(a), math.log(b)
    middle, width = 0.5 * (lo + hi), hi - lo

    def shape(u):
        inside = np.abs(u - middle) < 0.5 * width
        return np.where(inside, np.cos(math.pi * (u - middle) / width) ** 2, 0.0)

    mass = integrate(shape, lo, hi, settings=settings).value.real

    def evaluator(s):
        with np.errstate(divide="ignore"):
            return shape(np.log(np.asarray(s, dtype=float))) / mass

    return HalfLineProfile(evaluator=evaluator, name=f"bump[{a:g},{b:g}]", breaks=(a, b), center=math.sqrt(a * b))


@dataclass(frozen=True)
class SandwichReport:
    gamma: float
    lower_margin: float
    upper_margin: float
    holds: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _bump_average(M: HalfLineProfile, bump: HalfLineProfile, r: float, settings: QuadratureSettings) -> float:
    """(M * f)(r) = int f(t) M(r/t) dt/t over the support of f."""
    lo, hi = (math.log(b) for b in bump.breaks)

    def integrand(u):
        t = np.exp(u)
        return bump.evaluator(t) * M.evaluator(r / t)

    breaks = [math.log(r) - math.log(b) for b in M.breaks]
    return integrate(integrand, lo, hi, breaks=breaks, settings=settings).value.real


def sandwich_bounds(
    mu: RadialMeasure,
    gamma: float,
    r_grid: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> SandwichReport:
    """
    gamma^{-n} (M * f1)(r) <= M(r) <= gamma^n (M * f2)(r) with f1, f2 unit
    bumps supported in [1, gamma] and [1/gamma, 1].
    """
    if not gamma > 1:
        raise DomainError(f"gamma must exceed 1, got {gamma}")
    n = mu.dim
    M = m_profile(mu, settings)
    f1, f2 = log_bump(1.0, gamma, settings), log_bump(1.0 / gamma, 1.0, settings)
    lower_margin, upper_margin = math.inf, math.inf
    for r in np.asarray(r_grid, dtype=float):
        m_r = mean_ratio(mu, float(r), settings)
        slack = SANDWICH_SLACK * (1.0 + abs(m_r))
        lower_margin = min(lower_margin, m_r - gamma ** (-n) * _bump_average(M, f1, float(r), NESTED_SETTINGS) + slack)
        upper_margin = min(upper_margin, gamma ** n * _bump_average(M, f2, float(r), NESTED_SETTINGS) - m_r + slack)
    return SandwichReport(gamma=gamma, lower_margin=lower_margin, upper_margin=upper_margin,
                          holds=lower_margin >= 0 and upper_margin >= 0)


def monotone_sandwich_violation(
    mu: RadialMeasure,
    gamma: float,
    r_grid: Sequence[float],
    samples: int = 9,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """
    Largest violation of M(r/t) <= t^n M(r) for t in [1, gamma] and
    M(r/t) >= t^n M(r) for t in [1/gamma, 1]; zero when both hold.
    """
    n = mu.dim
    worst = 0.0
    for r in np.asarray(r_grid, dtype=float):
        m_r = mean_ratio(mu, float(r), settings)
        for t in np.linspace(1.0, gamma, samples):
            worst = max(worst, mean_ratio(mu, float(r / t), settings) - t ** n * m_r)
        for t in np.linspace(1.0 / gamma, 1.0, samples):
            worst = max(worst, t ** n * m_r - mean_ratio(mu, float(r / t), settings))
    return worst


def spherical_average(
    f: RadialFunction,
    x0: Sequence[float],
    r: float,
    n: int,
    center: Optional[Sequence[float]] = None,
) -> complex:
    """
    f_0(r) = int_{S^{n-1}} f(x0 - r w) d sigma(w) for f radial about x0.
    """
    center = tuple(center) if center is not None else (0.0,) * n
    if len(tuple(x0)) != n or tuple(float(x) for x in x0) != tuple(float(c) for c in center):
        raise UnsupportedError("spherical averages are supported only about the center of a radial function")
    return sphere_area(n) * f(r)


def spherical_profile(f: RadialFunction, n: int) -> HalfLineProfile:
    return HalfLineProfile(
        evaluator=lambda s: sphere_area(n) * f.evaluate(s),
        name=f"{f.name}_0",
        breaks=tuple(f.breaks),
        complex_valued=f.complex_valued,
    )


def convolution_via_halfline(
    f: RadialFunction,
    k: RadialKernel,
    t: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """f * phi_t(0) computed as (f_0 * g_phi)(t) on the multiplicative group."""
    f0 = spherical_profile(f, k.dim)
    g = g_of_kernel(k, "spherical")
    return mult_convolve(f0, g, t, settings)


def halfline_identity_residual(
    f: RadialFunction,
    k: RadialKernel,
    t_grid: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """max |f * phi_t(0) - (f_0 * g_phi)(t)| over the grid."""
    worst = 0.0
    for t in np.asarray(t_grid, dtype=float):
        direct = convolve_function_at_center(f, k, float(t), settings)
        via = convolution_via_halfline(f, k, float(t), settings)
        worst = max(worst, abs(direct - via))
    return worst


def limit_under_convolution(
    f: HalfLineProfile,
    k: HalfLineProfile,
    t_grid: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    **classifier_options,
) -> LimitTrace:
    """Trace of (f * k)(t) along a grid; a bounded k with a limit at 0 passes it on."""
    t_grid = np.asarray(t_grid, dtype=float)
    values = np.array([mult_convolve(f, k, float(t), settings) for t in t_grid])
    return make_trace(f"{f.name} * {k.name}", t_grid, values, **classifier_options)
