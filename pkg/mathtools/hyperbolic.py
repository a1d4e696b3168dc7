"""
Real hyperbolic space H^n in the upper half-space model.

Points are (x, y) with x in R^{n-1} and y > 0. Eigenfunctions of the
Laplace-Beltrami operator

    Delta = y^2 (Delta_x + d^2/dy^2) - (n-2) y d/dy

are built from boundary data on R^{n-1} through generalized Poisson kernels.
The slice psi^lambda(x) = P_lambda(x, 1) is an ordinary RadialKernel on
R^{n-1}, so every boundary computation runs through the Euclidean modules
with n replaced by n - 1.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from mathtools.errors import DomainError, UnsupportedError
from mathtools.kernels import ClosedFormRef, RadialKernel
from mathtools.measures import (
    RadialFunction,
    RadialMeasure,
    convolve_at_center,
    convolve_at_point,
    convolve_function_at_center,
)
from mathtools.quadrature import DEFAULT_SETTINGS, QuadratureSettings, radial_integral
from mathtools.specfun import log_gamma_complex, sphere_area


logger = logging.getLogger("mathtools.hyperbolic")

D_LAMBDA_METHODS = ("numeric", "closed_form", "c_function")

Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class HyperbolicContext:
    n: int
    rho: float
    boundary_dim: int
    cn: float

    @staticmethod
    @lru_cache(maxsize=None)
    def create(n: int) -> "HyperbolicContext":
        """Context for H^n with the Poisson normalizer computed by quadrature."""
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise DomainError(f"hyperbolic dimension must be an integer >= 2, got {n!r}")
        d = n - 1
        mass = radial_integral(
            lambda r: np.exp(-(n - 1) * np.log1p(r * r)),
            d,
            area=sphere_area(d),
            label=f"Poisson kernel mass on H^{n}",
        ).value.real
        cn = 1.0 / mass
        logger.debug(f"H^{n}: rho={d / 2}, cn={cn:.15g}")
        return HyperbolicContext(n=n, rho=d / 2.0, boundary_dim=d, cn=cn)


Datum = Union[RadialMeasure, RadialFunction]


@dataclass(frozen=True)
class HyperbolicEigenSpec:
    context: HyperbolicContext
    lam: complex
    C: float = 0.0
    boundary_datum: Optional[Datum] = None

    def __post_init__(self):
        lam = complex(self.lam)
        object.__setattr__(self, "lam", lam)
        if lam.imag <= 0:
            raise DomainError(f"spectral parameter needs Im lambda > 0, got {lam}")
        if self.C < 0:
            raise DomainError(f"coefficient C must be nonnegative, got {self.C}")
        if isinstance(self.boundary_datum, RadialMeasure):
            if lam.real != 0:
                raise DomainError("a measure datum needs lambda = i beta with beta > 0")
            if self.boundary_datum.dim != self.context.boundary_dim:
                raise DomainError(
                    f"boundary datum lives on R^{self.boundary_datum.dim}, expected R^{self.context.boundary_dim}"
                )

    @property
    def eigenvalue(self) -> complex:
        return -(self.lam ** 2 + self.context.rho ** 2)

    @property
    def beta(self) -> float:
        return self.lam.imag


def _radius(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return np.abs(x)
    return np.linalg.norm(x, axis=-1)


def _check_height(y):
    if np.any(np.asarray(y) <= 0):
        raise DomainError("points of H^n need y > 0")


def poisson_kernel(ctx: HyperbolicContext, x, y) -> np.ndarray:
    """cn y^{n-1} / (y^2 + |x|^2)^{n-1}."""
    _check_height(y)
    r = _radius(x)
    y = np.asarray(y, dtype=float)
    return ctx.cn * np.exp((ctx.n - 1) * (np.log(y) - np.log(y * y + r * r)))


def gen_poisson(ctx: HyperbolicContext, lam: complex, x, y) -> np.ndarray:
    """[y^{n-1} / (y^2 + |x|^2)^{n-1}]^{1/2 - i lambda/(n-1)}, principal branch."""
    _check_height(y)
    r = _radius(x)
    y = np.asarray(y, dtype=float)
    exponent = 0.5 - 1j * complex(lam) / (ctx.n - 1)
    log_base = (ctx.n - 1) * (np.log(y) - np.log(y * y + r * r))
    return np.exp(exponent * log_base)


def c_function(ctx: HyperbolicContext, lam: complex) -> complex:
    """2^{n-1-2i lambda} Gamma(2i lambda) Gamma(n/2) / (Gamma((n-1)/2) Gamma(1/2 + i lambda)), Im lambda < 0."""
    lam = complex(lam)
    if lam.imag >= 0:
        raise DomainError(f"the c-function is evaluated for Im lambda < 0, got {lam}")
    n = ctx.n
    log_value = (
        (n - 1 - 2j * lam) * math.log(2.0)
        + log_gamma_complex(2j * lam)
        + log_gamma_complex(n / 2.0)
        - log_gamma_complex((n - 1) / 2.0)
        - log_gamma_complex(0.5 + 1j * lam)
    )
    return cmath.exp(log_value)


def c_function_report(ctx: HyperbolicContext) -> dict:
    """c(-i rho) next to the value 1 it is often asserted to take."""
    value = c_function(ctx, -1j * ctx.rho)
    return {
        "n": ctx.n,
        "c_at_minus_i_rho": {"re": value.real, "im": value.imag},
        "asserted": 1.0,
        "ratio_to_asserted": abs(value),
    }


def _psi_alpha(ctx: HyperbolicContext, lam: complex) -> complex:
    return ctx.rho - 1j * complex(lam)


def _psi_base(alpha: complex, real: bool) -> Callable[[np.ndarray], np.ndarray]:
    if real:
        a = alpha.real
        return lambda r: np.exp(-a * np.log1p(r * r))
    return lambda r: np.exp(-alpha * np.log1p(r * r))


def slice_integral(ctx: HyperbolicContext, lam: complex, settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """int_{R^{n-1}} P_lambda(x, 1) dx by quadrature."""
    alpha = _psi_alpha(ctx, lam)
    d = ctx.boundary_dim
    return radial_integral(
        _psi_base(alpha, real=False),
        d,
        area=sphere_area(d),
        settings=settings,
        label=f"slice of P_lambda, lambda={lam}",
    ).value


def slice_integral_closed_form(ctx: HyperbolicContext, lam: complex) -> complex:
    """(omega_{n-2}/2) Gamma(rho) Gamma(-i lambda) / Gamma(rho - i lambda)."""
    lam = complex(lam)
    d = ctx.boundary_dim
    log_value = log_gamma_complex(ctx.rho) + log_gamma_complex(-1j * lam) - log_gamma_complex(ctx.rho - 1j * lam)
    return 0.5 * sphere_area(d) * cmath.exp(log_value)


def d_lambda(
    ctx: HyperbolicContext,
    lam: complex,
    method: str = "numeric",
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """Normalizer making psi^lambda a unit-mass kernel."""
    lam = complex(lam)
    if lam.imag <= 0:
        raise DomainError(f"d_lambda needs Im lambda > 0, got {lam}")
    if method == "numeric":
        return 1.0 / slice_integral(ctx, lam, settings)
    if method == "closed_form":
        return 1.0 / slice_integral_closed_form(ctx, lam)
    if method == "c_function":
        return ctx.cn / c_function(ctx, -lam)
    raise DomainError(f"unknown d_lambda method '{method}', expected one of {D_LAMBDA_METHODS}")


def d_lambda_report(ctx: HyperbolicContext, lam: complex, settings: QuadratureSettings = DEFAULT_SETTINGS) -> dict:
    values = {method: d_lambda(ctx, lam, method, settings) for method in D_LAMBDA_METHODS}
    numeric = values["numeric"]
    return {
        "n": ctx.n,
        "lambda": {"re": complex(lam).real, "im": complex(lam).imag},
        "values": {m: {"re": v.real, "im": v.imag} for m, v in values.items()},
        "closed_form_deviation": abs(values["closed_form"] - numeric),
        "c_function_deviation": abs(values["c_function"] - numeric),
    }


def psi_lambda(
    ctx: HyperbolicContext,
    lam: complex,
    method: str = "numeric",
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> RadialKernel:
    """psi^lambda(x) = P_lambda(x, 1) = d_lambda (1 + |x|^2)^{-(rho - i lambda)} on R^{n-1}."""
    lam = complex(lam)
    normalizer = d_lambda(ctx, lam, method, settings)
    alpha = _psi_alpha(ctx, lam)
    real = lam.real == 0
    weight = normalizer.real if real else normalizer
    return RadialKernel(
        dim=ctx.boundary_dim,
        base=_psi_base(alpha, real),
        log_base=(lambda r, a=alpha.real: -a * np.log1p(r * r)) if real else None,
        name=f"hyperbolic:psi:{ctx.n}:{_format_lambda(lam)}",
        weight=weight,
        mellin_closed_form=ClosedFormRef("power", (alpha.real if real else alpha,)),
        monotone_decreasing=real,
        strictly_positive=real,
        complex_valued=not real,
    )


def _format_lambda(lam: complex) -> str:
    if lam.real == 0:
        return f"{lam.imag:g}i"
    return f"{lam.real:g}{lam.imag:+g}i"


def parse_lambda(text: str) -> complex:
    """'1i', '0.5+1i', 'i' -> complex."""
    cleaned = text.strip().replace(" ", "")
    if cleaned in ("i", "+i"):
        return 1j
    return complex(cleaned.replace("i", "j"))


# Poisson transforms

def poisson_transform(
    spec: HyperbolicEigenSpec,
    x0: Sequence[float],
    y: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    kernel: Optional[RadialKernel] = None,
) -> complex:
    """
    u(x0, y) = C y^{rho - i lambda} + y^{rho + i lambda} (datum * (psi^lambda)_y)(x0).
    """
    if not y > 0:
        raise DomainError(f"height must be positive, got y={y}")
    ctx = spec.context
    psi = kernel if kernel is not None else psi_lambda(ctx, spec.lam, settings=settings)
    datum = spec.boundary_datum
    x0 = tuple(float(x) for x in x0)
    if datum is None:
        convolution = 0.0
    elif isinstance(datum, RadialMeasure):
        convolution = convolve_at_point(datum, psi, y, x0, settings)
    else:
        if any(x0) and not datum.translation_invariant:
            raise UnsupportedError("bounded boundary functions are evaluated at their center only")
        convolution = convolve_function_at_center(datum, psi, y, settings)
    lam, rho = spec.lam, ctx.rho
    return spec.C * y ** (rho - 1j * lam) + y ** (rho + 1j * lam) * convolution


def normalized_transform(
    spec: HyperbolicEigenSpec,
    x0: Sequence[float],
    y: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    kernel: Optional[RadialKernel] = None,
) -> complex:
    """y^{-(rho + i lambda)} u(x0, y); for lambda = i beta this is y^{beta - rho} u."""
    value = poisson_transform(spec, x0, y, settings, kernel)
    return value * y ** (-(spec.context.rho + 1j * spec.lam))


# Fields and the eigen-equation residual

def generalized_poisson_field(ctx: HyperbolicContext, lam: complex) -> Tuple[Field, complex]:
    return (lambda x, y: gen_poisson(ctx, lam, x, y)), -(complex(lam) ** 2 + ctx.rho ** 2)


def power_field(ctx: HyperbolicContext, s: complex) -> Tuple[Field, complex]:
    """y^s, an exact eigenfunction with eigenvalue s (s - 2 rho)."""
    s = complex(s)
    return (lambda x, y: np.asarray(y, dtype=float) ** s + 0.0 * _radius(x)), s * (s - 2.0 * ctx.rho)


def poisson_field(ctx: HyperbolicContext) -> Tuple[Field, complex]:
    return (lambda x, y: poisson_kernel(ctx, x, y)), 0.0


def atomic_transform_field(spec: HyperbolicEigenSpec, settings: QuadratureSettings = DEFAULT_SETTINGS) -> Tuple[Field, complex]:
    """u = C y^{rho - i lambda} + sum_j m_j d_lambda P_lambda(x - a_j, y) for an atom-only datum."""
    datum = spec.boundary_datum
    if not isinstance(datum, RadialMeasure) or datum.density is not None:
        raise UnsupportedError("atomic_transform_field needs an atom-only boundary measure")
    ctx, lam = spec.context, spec.lam
    normalizer = d_lambda(ctx, lam, settings=settings)
    locations = [np.asarray(a.location, dtype=float) for a in datum.atoms]
    masses = [a.mass for a in datum.atoms]

    def field(x, y):
        x = np.asarray(x, dtype=float)
        value = spec.C * np.asarray(y, dtype=float) ** (ctx.rho - 1j * lam)
        for location, mass in zip(locations, masses):
            value = value + mass * normalizer * gen_poisson(ctx, lam, x - location, y)
        return value

    return field, spec.eigenvalue


def laplace_beltrami_fd(ctx: HyperbolicContext, field: Field, x: Sequence[float], y: float, h: float) -> Tuple[complex, complex]:
    """Second-order central-difference Delta u at (x, y); returns (Delta u, u)."""
    x = np.asarray(x, dtype=float)
    d = ctx.boundary_dim
    if x.shape != (d,):
        raise DomainError(f"x must be a point of R^{d}, got shape {x.shape}")
    if not y > 2 * h > 0:
        raise DomainError(f"need y > 2h > 0, got y={y}, h={h}")
    u0 = complex(field(x, y))
    laplacian_x = 0.0
    for j in range(d):
        step = np.zeros(d)
        step[j] = h
        laplacian_x += complex(field(x + step, y)) - 2.0 * u0 + complex(field(x - step, y))
    up, down = complex(field(x, y + h)), complex(field(x, y - h))
    u_yy = up - 2.0 * u0 + down
    u_y = (up - down) / (2.0 * h)
    value = y * y * (laplacian_x + u_yy) / (h * h) - (ctx.n - 2) * y * u_y
    return value, u0


def eigen_residual(
    spec: HyperbolicEigenSpec,
    point: Tuple[Sequence[float], float],
    h: float,
    field: Optional[Tuple[Field, complex]] = None,
) -> float:
    """
    |Delta_FD u + (lambda^2 + rho^2) u| / max(|u|, 1e-300).

    `field` is a (callable, eigenvalue) pair; it defaults to the generalized
    Poisson kernel of `spec`. With an explicit field the field's own
    eigenvalue is used.
    """
    ctx = spec.context
    func, eigenvalue = field if field is not None else generalized_poisson_field(ctx, spec.lam)
    x, y = point
    applied, u = laplace_beltrami_fd(ctx, func, x, float(y), h)
    return abs(applied - eigenvalue * u) / max(abs(u), 1e-300)


def hardy_norm_estimate(
    spec: HyperbolicEigenSpec,
    y_grid: Sequence[float],
    x_grid: Sequence[Sequence[float]],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """max over the grids of y^{Im lambda - rho} |u(x, y)|, a lower bound for the Hardy-type norm."""
    ctx = spec.context
    psi = psi_lambda(ctx, spec.lam, settings=settings)
    weight_exponent = spec.lam.imag - ctx.rho
    best = 0.0
    for y in np.asarray(y_grid, dtype=float):
        for x in x_grid:
            u = poisson_transform(spec, x, float(y), settings, kernel=psi)
            best = max(best, float(y) ** weight_exponent * abs(u))
    return best
