"""
Radial approximate-identity kernels on R^n.

A RadialKernel stores an undilated base profile together with a scale and
a weight, so that dilation and normalization are exact bookkeeping:

    profile(r) = weight * scale^{-n} * base(r / scale)

Builders cover the Poisson kernel, the Gaussian and heat kernels, the K
and G families, power kernels, the normalized ball indicator and the
counterexample kernel whose Mellin transform vanishes at y = pi.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import beta as beta_function
from scipy.special import betainc

from mathtools.errors import DomainError, IntegrationError
from mathtools.quadrature import (
    DEFAULT_SETTINGS,
    HalfLineProfile,
    QuadratureSettings,
    integrate,
    radial_integral,
)
from mathtools.specfun import ball_volume, poisson_constant, sphere_area


logger = logging.getLogger("mathtools.kernels")

Profile = Callable[[np.ndarray], np.ndarray]

GRID_POINTS_PER_DECADE = 64
DEFAULT_T_RANGE = (1e-4, 1.0 - 1e-4)
DEFAULT_R_RANGE = (1.0 + 1e-6, 1e4)


@dataclass(frozen=True)
class ClosedFormRef:
    """Reference into the closed-form Mellin registry, scaled by `factor`."""
    id: str
    params: Tuple = ()
    factor: complex = 1.0


@dataclass(frozen=True)
class RadialKernel:
    dim: int
    base: Profile
    name: str
    scale: float = 1.0
    weight: complex = 1.0
    mellin_closed_form: Optional[ClosedFormRef] = None
    monotone_decreasing: bool = True
    strictly_positive: bool = True
    complex_valued: bool = False
    breaks: Tuple[float, ...] = ()
    log_base: Optional[Profile] = field(default=None, compare=False)

    def profile(self, r):
        """Evaluate the kernel at radius r (scalar or array)."""
        r = np.asarray(r, dtype=float)
        value = np.asarray(self.weight * self.scale ** (-self.dim) * self.base(r / self.scale))
        if not self.complex_valued:
            value = np.real(value)
        return value.item() if np.ndim(value) == 0 else value

    def __call__(self, r):
        return self.profile(r)

    @property
    def radial_breaks(self) -> Tuple[float, ...]:
        return tuple(b * self.scale for b in self.breaks)

    @property
    def log_center(self) -> float:
        return math.log(self.scale)


@dataclass(frozen=True)
class ComparisonReport:
    sup_estimate: float
    t_grid: np.ndarray
    r_grid: np.ndarray
    argmax: Tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "sup_estimate": self.sup_estimate,
            "argmax": {"t": self.argmax[0], "r": self.argmax[1]},
            "t_range": [float(self.t_grid[0]), float(self.t_grid[-1]), int(self.t_grid.size)],
            "r_range": [float(self.r_grid[0]), float(self.r_grid[-1]), int(self.r_grid.size)],
        }


@dataclass(frozen=True)
class DecayReport:
    near_zero_max: float
    near_infinity_max: float
    near_zero_final: float
    near_infinity_final: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class CounterexampleBounds:
    a_n: float
    b_n: float
    ratio_bound: float


def geometric_grid(start: float, stop: float, per_decade: int = GRID_POINTS_PER_DECADE) -> np.ndarray:
    """Geometric grid from start to stop (inclusive), `per_decade` points per decade."""
    if start <= 0 or stop <= 0:
        raise DomainError("geometric grids need positive end points")
    decades = abs(math.log10(stop / start))
    count = max(2, int(math.ceil(decades * per_decade)) + 1)
    return np.geomspace(start, stop, count)


def dilate(k: RadialKernel, t: float) -> RadialKernel:
    """phi_t(x) = t^{-n} phi(x/t)."""
    if not t > 0:
        raise DomainError(f"dilation parameter must be positive, got t={t}")
    return replace(k, scale=k.scale * t)


def kernel_mass(k: RadialKernel, settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    result = radial_integral(
        k.profile,
        k.dim,
        area=sphere_area(k.dim),
        center=k.log_center,
        breaks=k.radial_breaks,
        settings=settings,
        label=f"mass of {k.name}",
    )
    return result.value if k.complex_valued else result.value.real


def normalization_factor(k: RadialKernel, settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    try:
        mass = kernel_mass(k, settings)
    except IntegrationError as exc:
        raise DomainError(f"kernel {k.name} has no finite mass: {exc}") from exc
    if not np.isfinite(mass) or mass == 0:
        raise DomainError(f"kernel {k.name} has mass {mass}")
    if not k.complex_valued and mass < 0:
        raise DomainError(f"kernel {k.name} has negative mass {mass}")
    return 1.0 / mass


def normalize(k: RadialKernel, settings: QuadratureSettings = DEFAULT_SETTINGS) -> RadialKernel:
    """Rescale the weight so that the kernel has unit integral."""
    factor = normalization_factor(k, settings)
    logger.debug(f"normalize {k.name}: factor {factor}")
    return replace(k, weight=k.weight * factor)


def comparison_sup(
    k: RadialKernel,
    t_grid: Optional[np.ndarray] = None,
    r_grid: Optional[np.ndarray] = None,
) -> ComparisonReport:
    """
    Grid estimate of sup { phi_t(x) / phi(x) : t in (0,1), |x| > 1 }.
    """
    t_grid = geometric_grid(*DEFAULT_T_RANGE) if t_grid is None else np.asarray(t_grid, dtype=float)
    r_grid = geometric_grid(*DEFAULT_R_RANGE) if r_grid is None else np.asarray(r_grid, dtype=float)
    if np.any(t_grid <= 0) or np.any(t_grid >= 1) or np.any(r_grid <= 1):
        raise DomainError("comparison grids must lie in t in (0,1) and r > 1")

    t = t_grid[:, None]
    r = r_grid[None, :] / k.scale
    n = k.dim

    if k.log_base is not None:
        ratio = np.exp(k.log_base(r / t) - k.log_base(r) - n * np.log(t))
    else:
        denominator = np.abs(k.base(r))
        if np.any(denominator == 0):
            bad = r_grid[np.argmax(denominator[0] == 0)]
            raise DomainError(f"kernel {k.name} vanishes at r={bad:.6g}; comparison ratio undefined")
        ratio = t ** (-n) * np.abs(k.base(r / t)) / denominator

    index = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    return ComparisonReport(
        sup_estimate=float(ratio[index]),
        t_grid=t_grid,
        r_grid=r_grid,
        argmax=(float(t_grid[index[0]]), float(r_grid[index[1]])),
    )


def decay_check(
    k: RadialKernel,
    r_ends: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    relative_threshold: float = 1e-6,
) -> DecayReport:
    """Check that r^n * profile(r) tends to 0 at both ends of (0, infinity)."""
    if r_ends is None:
        r_ends = (geometric_grid(1e-12, 1e-4, 2), geometric_grid(1e4, 1e12, 2))
    near_zero = np.sort(np.asarray(r_ends[0], dtype=float))[::-1]
    near_infinity = np.sort(np.asarray(r_ends[1], dtype=float))
    n = k.dim

    def moment(r):
        return np.abs(r ** n * np.asarray(k.profile(r)))

    zero_values = moment(near_zero)
    infinity_values = moment(near_infinity)
    reference = abs(k.profile(1.0)) or abs(k.profile(0.0))
    threshold = relative_threshold * reference

    def heading_to_zero(values):
        return bool(np.all(np.diff(values) <= 1e-12 * values[:-1]))

    passed = (
        heading_to_zero(zero_values)
        and heading_to_zero(infinity_values)
        and zero_values[-1] < threshold
        and infinity_values[-1] < threshold
    )
    return DecayReport(
        near_zero_max=float(zero_values.max()),
        near_infinity_max=float(infinity_values.max()),
        near_zero_final=float(zero_values[-1]),
        near_infinity_final=float(infinity_values[-1]),
        threshold=float(threshold),
        passed=bool(passed),
    )


def is_monotone_decreasing(k: RadialKernel, grid: Optional[np.ndarray] = None) -> bool:
    grid = geometric_grid(1e-4, 1e4) if grid is None else np.asarray(grid, dtype=float)
    values = np.asarray(k.profile(np.concatenate([[0.0], grid])))
    if k.complex_valued:
        return False
    return bool(np.all(np.diff(values) <= 1e-14 * np.abs(values[:-1])))


def is_nonnegative(k: RadialKernel, grid: Optional[np.ndarray] = None) -> bool:
    grid = geometric_grid(1e-4, 1e4) if grid is None else np.asarray(grid, dtype=float)
    values = np.asarray(k.profile(np.concatenate([[0.0], grid])))
    return not k.complex_valued and bool(np.all(values >= 0))


# Builders

def _power_log(alpha: complex) -> Profile:
    return lambda r: -alpha * np.log1p(r * r)


def poisson(n: int) -> RadialKernel:
    """P(x) = c_n (1+|x|^2)^{-(n+1)/2}, unit mass."""
    alpha = (n + 1) / 2.0
    constant = poisson_constant(n)
    log_constant = math.log(constant)
    return RadialKernel(
        dim=n,
        base=lambda r: constant * np.exp(-alpha * np.log1p(r * r)),
        log_base=lambda r: log_constant - alpha * np.log1p(r * r),
        name="poisson",
        mellin_closed_form=ClosedFormRef("power", (alpha,), constant),
    )


def gaussian(n: int) -> RadialKernel:
    """w(x) = (4 pi)^{-n/2} e^{-|x|^2/4}, unit mass."""
    log_constant = -0.5 * n * math.log(4.0 * math.pi)
    return RadialKernel(
        dim=n,
        base=lambda r: np.exp(log_constant - 0.25 * r * r),
        log_base=lambda r: log_constant - 0.25 * r * r,
        name="gaussian",
        mellin_closed_form=ClosedFormRef("gaussian"),
    )


def heat(n: int, t: float) -> RadialKernel:
    """Heat kernel h_t = w dilated by sqrt(t)."""
    if not t > 0:
        raise DomainError(f"heat kernel time must be positive, got t={t}")
    return replace(dilate(gaussian(n), math.sqrt(t)), name=f"heat:{t:g}")


def k_kernel(n: int, alpha: float, beta: float) -> RadialKernel:
    """K(x) = (1+|x|^2)^{-alpha} / log(2 + |x|^beta)."""
    if alpha <= 0 or beta < 0:
        raise DomainError(f"K kernel needs alpha > 0 and beta >= 0, got alpha={alpha}, beta={beta}")

    def log_base(r):
        return -alpha * np.log1p(r * r) - np.log(np.log(2.0 + r ** beta))

    return RadialKernel(
        dim=n,
        base=lambda r: np.exp(log_base(r)),
        log_base=log_base,
        name=f"K:{alpha:g}:{beta:g}",
    )


def g_kernel(n: int, alpha: float, beta: float) -> RadialKernel:
    """G(x) = exp(-alpha |x|^beta)."""
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"G kernel needs alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}")
    return RadialKernel(
        dim=n,
        base=lambda r: np.exp(-alpha * r ** beta),
        log_base=lambda r: -alpha * r ** beta,
        name=f"G:{alpha:g}:{beta:g}",
        mellin_closed_form=ClosedFormRef("G", (alpha, beta)),
    )


def power_kernel(n: int, alpha: float) -> RadialKernel:
    """(1+|x|^2)^{-alpha}, unnormalized."""
    if alpha <= 0:
        raise DomainError(f"power kernel needs alpha > 0, got {alpha}")
    log_base = _power_log(alpha)
    return RadialKernel(
        dim=n,
        base=lambda r: np.exp(log_base(r)),
        log_base=log_base,
        name=f"power:{alpha:g}",
        mellin_closed_form=ClosedFormRef("power", (alpha,)),
    )


def ball(n: int, normalized: bool = True) -> RadialKernel:
    """Indicator of the unit ball, divided by its volume when normalized."""
    return RadialKernel(
        dim=n,
        base=lambda r: np.where(r < 1.0, 1.0, 0.0),
        name="ball" if normalized else "ball_indicator",
        weight=1.0 / ball_volume(n) if normalized else 1.0,
        mellin_closed_form=ClosedFormRef("ball"),
        strictly_positive=False,
        breaks=(1.0,),
    )


# Counterexample kernel: psi = f *_(0,inf) chi_[1/e, e] with f(u) = u^n / (1+u)^{2n}

_SERIES_CUTOFF = 1e-6


def counterexample_psi_values(s, n: int) -> np.ndarray:
    """
    psi(s) = int_{s/e}^{se} u^{n-1} (1+u)^{-2n} du in closed form.

    With w = u/(1+u) the integrand becomes w^{n-1}(1-w)^{n-1}, so psi is a
    difference of regularized incomplete beta functions. For s >= 1 the
    complementary form keeps full relative precision.
    """
    s = np.asarray(s, dtype=float)
    e = math.e
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        small = betainc(n, n, s * e / (1.0 + s * e)) - betainc(n, n, (s / e) / (1.0 + s / e))
        large = betainc(n, n, 1.0 / (1.0 + s / e)) - betainc(n, n, 1.0 / (1.0 + s * e))
    return beta_function(n, n) * np.where(s >= 1.0, large, small)


def counterexample_psi_limit(n: int) -> float:
    """lim_{s->0} psi(s)/s^n = int g(r) r^{-(n+1)} dr = (e^n - e^{-n}) / n."""
    return 2.0 * math.sinh(n) / n


def _psi_over_power(s, n: int) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    leading = counterexample_psi_limit(n)
    slope = 4.0 * n * math.sinh(n + 1) / (n + 1)
    series = leading - slope * s
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        direct = counterexample_psi_values(s, n) / s ** n
    return np.where(s < _SERIES_CUTOFF, series, direct)


def counterexample_psi(n: int) -> HalfLineProfile:
    return HalfLineProfile(
        evaluator=lambda s: counterexample_psi_values(s, n),
        name=f"counterexample_psi:{n}",
    )


def counterexample_psi_quadrature(s: float, n: int, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """psi(s) from its defining integral over log r in [-1, 1]."""
    def integrand(v):
        u = s * np.exp(-v)
        return u ** n / (1.0 + u) ** (2 * n)

    return integrate(integrand, -1.0, 1.0, settings=settings).value.real


def counterexample_constant(n: int) -> float:
    """c_psi = int psi ds/s = B(n,n) * 2."""
    return 2.0 * float(beta_function(n, n))


def counterexample_bounds(n: int) -> CounterexampleBounds:
    e = math.e
    a_n = (e - 1.0 / e) * math.exp(-(n - 1)) / (2.0 * e) ** (2 * n)
    b_n = (e ** n - e ** (-n)) / n
    return CounterexampleBounds(a_n=a_n, b_n=b_n, ratio_bound=max(1.0, b_n / a_n))


def build_counterexample_kernel(n: int) -> RadialKernel:
    """
    phi(x) = psi(|x|) / (c_psi omega_{n-1} |x|^n), with the limit value at 0.

    Strictly positive, radially decreasing, unit mass; its radial Mellin
    transform vanishes at y = pi.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {n!r}")
    constant = 1.0 / (counterexample_constant(n) * sphere_area(n))
    return RadialKernel(
        dim=n,
        base=lambda r: constant * _psi_over_power(r, n),
        name="counterexample",
        mellin_closed_form=ClosedFormRef("counterexample"),
    )
