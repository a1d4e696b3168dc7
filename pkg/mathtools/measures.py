"""
Radial measures and the limits taken along them.

A RadialMeasure is a density radial about a declared center plus point
atoms anywhere. Ball masses, the mean ratio M(r), convolutions with dilated
kernels and the restriction to a closed ball are all evaluated at the
center, which reduces every integral to a one-dimensional radial one.

LimitTrace stores the values of a quantity along a geometric parameter
grid together with a finite-grid classification (converged, oscillatory,
diverged or undetermined).
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from mathtools.errors import DomainError, UnsupportedError
from mathtools.kernels import RadialKernel, ball, dilate, geometric_grid
from mathtools.quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_line, oscillation_width
from mathtools.specfun import ball_volume, sphere_area


logger = logging.getLogger("mathtools.measures")

TRACE_WINDOW = 12
TRACE_TOLERANCE = 1e-4
ABSOLUTE_FLOOR = 1e-6
AMPLITUDE_STABILITY = 0.10
GROWTH_STABILITY = 1.1


# Radial functions and measures

@dataclass(frozen=True)
class RadialFunction:
    """
    A function of |x - center|, vectorized over numpy arrays.

    `cumulative(r, n)` is an optional closed form of int_0^r f(s) s^{n-1} ds.
    `oscillation` is the largest frequency of f in log r, used to size panels.
    """
    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    breaks: Tuple[float, ...] = ()
    oscillation: float = 0.0
    cumulative: Optional[Callable[[float, int], float]] = field(default=None, compare=False)
    nonnegative: bool = True
    complex_valued: bool = False
    bounded: bool = True
    value_at_zero: Optional[complex] = None
    translation_invariant: bool = False

    def __call__(self, r):
        value = np.asarray(self.evaluate(np.asarray(r, dtype=float)))
        return value.item() if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class Atom:
    location: Tuple[float, ...]
    mass: float


@dataclass(frozen=True)
class RadialMeasure:
    dim: int
    center: Tuple[float, ...]
    density: Optional[RadialFunction] = None
    atoms: Tuple[Atom, ...] = ()
    growth_claim: Optional[float] = None
    support_radius: Optional[float] = None
    name: str = "measure"

    def __post_init__(self):
        if len(self.center) != self.dim:
            raise DomainError(f"center {self.center} is not a point of R^{self.dim}")
        for atom in self.atoms:
            if atom.mass < 0:
                raise DomainError(f"atom masses must be nonnegative, got {atom.mass}")
            if len(atom.location) != self.dim:
                raise DomainError(f"atom location {atom.location} is not a point of R^{self.dim}")
        if self.density is not None and (self.density.complex_valued or not self.density.nonnegative):
            raise DomainError(f"density {self.density.name} is not a nonnegative real function")

    def atom_distances(self, point: Optional[Sequence[float]] = None) -> np.ndarray:
        origin = np.asarray(self.center if point is None else point, dtype=float)
        if not self.atoms:
            return np.zeros(0)
        locations = np.array([a.location for a in self.atoms], dtype=float)
        return np.linalg.norm(locations - origin, axis=1)

    def atom_masses(self) -> np.ndarray:
        return np.array([a.mass for a in self.atoms], dtype=float)


def translate(mu: RadialMeasure, shift: Sequence[float]) -> RadialMeasure:
    """tau_shift mu: every point (center and atoms) moved by `shift`."""
    shift = np.asarray(shift, dtype=float)
    atoms = tuple(Atom(tuple(np.asarray(a.location) + shift), a.mass) for a in mu.atoms)
    return replace(mu, center=tuple(np.asarray(mu.center) + shift), atoms=atoms)


# Density families

def _constant(value: float) -> RadialFunction:
    return RadialFunction(
        name="one" if value == 1.0 else f"constant:{value:g}",
        evaluate=lambda r: np.full_like(r, value, dtype=float),
        cumulative=lambda r, n: value * r ** n / n,
        value_at_zero=value,
        translation_invariant=True,
    )


def lebesgue_density() -> RadialFunction:
    return _constant(1.0)


def one_plus_r() -> RadialFunction:
    return RadialFunction(
        name="one_plus_r",
        evaluate=lambda r: 1.0 + r,
        cumulative=lambda r, n: r ** n / n + r ** (n + 1) / (n + 1),
        bounded=False,
        value_at_zero=1.0,
    )


def linear() -> RadialFunction:
    return RadialFunction(
        name="linear",
        evaluate=lambda r: np.asarray(r, dtype=float) * 1.0,
        cumulative=lambda r, n: r ** (n + 1) / (n + 1),
        bounded=False,
        value_at_zero=0.0,
    )


def one_plus_r_sin_inv(floor: float = 1e-3) -> RadialFunction:
    """1 + r sin(1/max(r, floor)); nonnegative for every floor in (0, 1]."""
    if not 0 < floor <= 1:
        raise DomainError(f"floor must lie in (0, 1], got {floor}")
    decades = tuple(10.0 ** k for k in range(int(math.floor(math.log10(floor))) + 1, 1))
    return RadialFunction(
        name=f"one_plus_r_sin_inv:{floor:g}",
        evaluate=lambda r: 1.0 + r * np.sin(1.0 / np.maximum(r, floor)),
        breaks=(floor,) + decades,
        bounded=False,
        value_at_zero=1.0,
    )


def three_plus_inv_sqrt() -> RadialFunction:
    return RadialFunction(
        name="three_plus_inv_sqrt",
        evaluate=lambda r: 3.0 + 1.0 / np.sqrt(1.0 + r),
        value_at_zero=4.0,
    )


def one_plus_inv() -> RadialFunction:
    return RadialFunction(
        name="one_plus_inv",
        evaluate=lambda r: 1.0 + 1.0 / (1.0 + r),
        value_at_zero=2.0,
    )


def log_oscillation(y0: float) -> RadialFunction:
    """2 + cos(y0 log r); the value at r = 0 is irrelevant (a null set)."""
    def cumulative(r, n):
        return 2.0 * r ** n / n + (r ** complex(n, y0) / complex(n, y0)).real

    def evaluate(r):
        with np.errstate(divide="ignore"):
            return 2.0 + np.cos(y0 * np.log(r))

    return RadialFunction(
        name=f"log_oscillation:{y0:g}",
        evaluate=evaluate,
        oscillation=abs(y0),
        cumulative=cumulative,
    )


def imaginary_power(y0: float) -> RadialFunction:
    """|x|^{i y0}, a bounded complex function (not a measure)."""
    def evaluate(r):
        with np.errstate(divide="ignore"):
            return np.exp(1j * y0 * np.log(r))

    return RadialFunction(
        name=f"imaginary_power:{y0:g}",
        evaluate=evaluate,
        oscillation=abs(y0),
        cumulative=lambda r, n: r ** complex(n, y0) / complex(n, y0),
        nonnegative=False,
        complex_valued=True,
    )


def absolutely_continuous(n: int, density: RadialFunction, name: Optional[str] = None, **kwargs) -> RadialMeasure:
    return RadialMeasure(dim=n, center=(0.0,) * n, density=density, name=name or density.name, **kwargs)


def lebesgue(n: int) -> RadialMeasure:
    return absolutely_continuous(n, lebesgue_density(), name="lebesgue", growth_claim=float(n))


def point_mass(n: int, mass: float, location: Optional[Sequence[float]] = None) -> RadialMeasure:
    location = tuple(float(x) for x in (location if location is not None else (0.0,) * n))
    return RadialMeasure(dim=n, center=(0.0,) * n, atoms=(Atom(location, mass),), name=f"atom:{mass:g}")


def counterexample_measure(n: int, y0: float = math.pi) -> RadialMeasure:
    """d mu = (2 + cos(y0 log|x|)) dx."""
    return absolutely_continuous(n, log_oscillation(y0), name=f"counterexample:{y0:g}", growth_claim=float(n))


# Ball masses and the mean ratio

def _density_integral(
    mu: RadialMeasure,
    weight: Callable[[np.ndarray], np.ndarray],
    lower: float,
    upper: float,
    center: float,
    extra_breaks: Sequence[float],
    extra_oscillation: float,
    settings: QuadratureSettings,
    label: str,
) -> complex:
    """omega_{n-1} int_lower^upper f(r) weight(r) r^{n-1} dr over log r."""
    f = mu.density
    if mu.support_radius is not None:
        upper = min(upper, mu.support_radius)
    if upper <= lower:
        return 0.0
    n = mu.dim
    area = sphere_area(n)

    def integrand(u):
        r = np.exp(u)
        return area * f.evaluate(r) * weight(r) * np.exp(n * u)

    breaks = [math.log(b) for b in tuple(f.breaks) + tuple(extra_breaks) if lower < b < upper]
    result = integrate_line(
        integrand,
        lower=math.log(lower) if lower > 0 else -math.inf,
        upper=math.log(upper) if math.isfinite(upper) else math.inf,
        center=center,
        breaks=breaks,
        max_width=oscillation_width(max(f.oscillation, extra_oscillation)),
        settings=settings,
        label=label,
    )
    return result.value


def ball_mass(mu: RadialMeasure, r: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """mu(B(center, r)) for the open ball."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    mass = 0.0
    if mu.density is not None:
        upper = r if mu.support_radius is None else min(r, mu.support_radius)
        if mu.density.cumulative is not None:
            mass += sphere_area(mu.dim) * float(np.real(mu.density.cumulative(upper, mu.dim)))
        else:
            mass += _density_integral(
                mu, lambda s: 1.0, 0.0, upper, math.log(upper), (), 0.0, settings,
                label=f"mass of {mu.name} in B(0,{r:g})",
            ).real
    if mu.atoms:
        inside = mu.atom_distances() < r
        mass += float(mu.atom_masses()[inside].sum())
    return mass


def mean_ratio(mu: RadialMeasure, r: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """M(r) = mu(B(0,r)) / m(B(0,r))."""
    return ball_mass(mu, r, settings) / (ball_volume(mu.dim) * r ** mu.dim)


# Convolutions

def _kernel_weight(k: RadialKernel) -> Callable[[np.ndarray], np.ndarray]:
    return lambda r: k.profile(r)


def convolve_at_center(
    mu: RadialMeasure,
    k: RadialKernel,
    t: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """mu * phi_t evaluated at the center of mu."""
    if mu.dim != k.dim:
        raise DomainError(f"measure lives on R^{mu.dim} but kernel on R^{k.dim}")
    kt = dilate(k, t)
    value = 0.0
    if mu.density is not None:
        value += _density_integral(
            mu, _kernel_weight(kt), 0.0, math.inf, kt.log_center, kt.radial_breaks, 0.0, settings,
            label=f"{mu.name} * {k.name}_{t:g}",
        )
    if mu.atoms:
        value += complex(np.sum(mu.atom_masses() * np.asarray(kt.profile(mu.atom_distances()))))
    return value if k.complex_valued else value.real


def convolve_at_point(
    mu: RadialMeasure,
    k: RadialKernel,
    t: float,
    point: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """
    mu * phi_t at an arbitrary point. Densities are radial about the center,
    so only atom-only measures can be evaluated away from it.
    """
    point = tuple(float(x) for x in point)
    if np.allclose(point, mu.center, rtol=0.0, atol=0.0):
        return convolve_at_center(mu, k, t, settings)
    if mu.density is not None:
        raise UnsupportedError("off-center convolution of a radial density needs genuine R^n quadrature")
    kt = dilate(k, t)
    value = complex(np.sum(mu.atom_masses() * np.asarray(kt.profile(mu.atom_distances(point)))))
    return value if k.complex_valued else value.real


def convolve_function_at_center(
    f: RadialFunction,
    k: RadialKernel,
    t: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> complex:
    """f * phi_t(0) for a bounded radial function, possibly complex."""
    n = k.dim
    kt = dilate(k, t)
    area = sphere_area(n)

    def integrand(u):
        r = np.exp(u)
        return area * f.evaluate(r) * kt.profile(r) * np.exp(n * u)

    result = integrate_line(
        integrand,
        center=kt.log_center,
        breaks=[math.log(b) for b in tuple(f.breaks) + kt.radial_breaks],
        max_width=oscillation_width(max(f.oscillation, 1.0)),
        settings=settings,
        label=f"{f.name} * {k.name}_{t:g}",
    )
    value = result.value
    return value if (f.complex_valued or k.complex_valued) else value.real


def ball_average(f: RadialFunction, n: int, r: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """Mean of f over B(0, r)."""
    return convolve_function_at_center(f, ball(n), r, settings)


# Restriction and growth

def restrict(mu: RadialMeasure, R: float) -> RadialMeasure:
    """Restriction of mu to the closed ball of radius R about its center."""
    if not R > 0:
        raise DomainError(f"restriction radius must be positive, got {R}")
    radius = R if mu.support_radius is None else min(R, mu.support_radius)
    kept = tuple(a for a, d in zip(mu.atoms, mu.atom_distances()) if d <= R)
    return replace(mu, atoms=kept, support_radius=radius, name=f"{mu.name}|B({R:g})")


def restriction_tail(
    mu: RadialMeasure,
    k: RadialKernel,
    t: float,
    R: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """The part of mu * phi_t(0) carried outside the closed ball of radius R."""
    kt = dilate(k, t)
    value = 0.0
    if mu.density is not None and (mu.support_radius is None or mu.support_radius > R):
        value += _density_integral(
            mu, _kernel_weight(kt), R, math.inf, max(kt.log_center, math.log(R)), kt.radial_breaks, 0.0,
            settings, label=f"tail of {mu.name} beyond {R:g}",
        ).real
    if mu.atoms:
        outside = mu.atom_distances() > R
        value += float(np.sum(mu.atom_masses()[outside] * np.asarray(kt.profile(mu.atom_distances()[outside]))))
    return value


@dataclass(frozen=True)
class GrowthReport:
    sup_mean_ratio: float
    last_decade_sup: float
    previous_decade_sup: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def growth_check(
    mu: RadialMeasure,
    r_grid: Optional[np.ndarray] = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> GrowthReport:
    """Is mu(B(0,r)) = O(r^n)? Compares sup M over the top two decades of the grid."""
    r_grid = geometric_grid(1.0, 1e6, 16) if r_grid is None else np.asarray(r_grid, dtype=float)
    if np.any(np.diff(r_grid) <= 0):
        raise DomainError("growth grid must be increasing")
    values = np.array([mean_ratio(mu, float(r), settings) for r in r_grid])
    top = r_grid[-1]
    last = values[r_grid >= top / 10.0]
    previous = values[(r_grid >= top / 100.0) & (r_grid <= top / 10.0)]
    if previous.size == 0:
        previous = last
    last_sup, previous_sup = float(last.max()), float(previous.max())
    passed = bool(np.all(np.isfinite(values)) and last_sup <= GROWTH_STABILITY * previous_sup)
    logger.info(f"growth check {mu.name}: sup M = {values.max():.6g}, passed={passed}")
    return GrowthReport(
        sup_mean_ratio=float(values.max()),
        last_decade_sup=last_sup,
        previous_decade_sup=previous_sup,
        passed=passed,
    )


def maximal_constant(k: RadialKernel, terms: int = 64) -> float:
    """m(B(0,1)) (phi(0) + sum_{j>=1} 2^{nj} phi(2^{j-1})), for a monotone kernel."""
    n = k.dim
    j = np.arange(1, terms + 1, dtype=float)
    dyadic = np.sum(2.0 ** (n * j) * np.asarray(k.profile(2.0 ** (j - 1))))
    return ball_volume(n) * (float(k.profile(0.0)) + float(dyadic))


@dataclass(frozen=True)
class BoundednessReport:
    lower_ratio_max: float
    upper_ratio_max: float
    comparison_constant: float
    holds: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def boundedness_report(
    mu: RadialMeasure,
    k: RadialKernel,
    t_grid: np.ndarray,
    terms: int = 48,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> BoundednessReport:
    """
    Two-sided comparison of v(t) = mu * phi_t(0) and M for a monotone kernel:

        M(t) <= C v(t),  C = (m(B(0,1)) phi(1))^{-1}
        v(t) <= m(B(0,1)) (phi(0) M(t) + sum_j 2^{nj} phi(2^{j-1}) M(2^j t))

    Ratios <= 1 mean the inequalities hold on the grid.
    """
    n = k.dim
    volume = ball_volume(n)
    constant = 1.0 / (volume * float(k.profile(1.0)))
    dyadic = np.arange(1, terms + 1, dtype=float)
    weights = 2.0 ** (n * dyadic) * np.asarray(k.profile(2.0 ** (dyadic - 1)))

    lower, upper = [], []
    for t in np.asarray(t_grid, dtype=float):
        v = float(np.real(convolve_at_center(mu, k, float(t), settings)))
        m_t = mean_ratio(mu, float(t), settings)
        lower.append(m_t / (constant * v) if v > 0 else math.inf)
        tail = np.array([mean_ratio(mu, float(t * 2.0 ** j), settings) for j in dyadic])
        bound = volume * (float(k.profile(0.0)) * m_t + float(np.sum(weights * tail)))
        upper.append(v / bound if bound > 0 else math.inf)

    lower_max, upper_max = float(max(lower)), float(max(upper))
    slack = 1.0 + 1e-8
    return BoundednessReport(
        lower_ratio_max=lower_max,
        upper_ratio_max=upper_max,
        comparison_constant=constant,
        holds=lower_max <= slack and upper_max <= slack,
    )


# Limit traces

@dataclass(frozen=True)
class TraceClassification:
    kind: str
    limit: Optional[complex] = None
    amplitude: Optional[float] = None
    center: Optional[complex] = None
    spread: float = 0.0
    slow: bool = False
    frequency: Optional[float] = None
    warning: str = ""

    def to_dict(self) -> dict:
        def encode(value):
            if value is None:
                return None
            value = complex(value)
            return {"re": value.real, "im": value.imag}

        return {
            "kind": self.kind,
            "limit": encode(self.limit),
            "amplitude": self.amplitude,
            "center": encode(self.center),
            "spread": self.spread,
            "slow": self.slow,
            "frequency": self.frequency,
            "warning": self.warning,
        }


@dataclass
class LimitTrace:
    name: str
    grid: np.ndarray
    values: np.ndarray
    classification: TraceClassification
    window: int = TRACE_WINDOW

    @property
    def converged(self) -> bool:
        return self.classification.kind == "converged"

    @property
    def oscillatory(self) -> bool:
        return self.classification.kind == "oscillatory"


def _diameter(values: np.ndarray) -> float:
    if np.iscomplexobj(values):
        return float(np.abs(values[:, None] - values[None, :]).max())
    return float(values.max() - values.min())


def _median(values: np.ndarray) -> complex:
    if np.iscomplexobj(values):
        return complex(np.median(values.real), np.median(values.imag))
    return float(np.median(values))


def _fit_sinusoid(u: np.ndarray, values: np.ndarray):
    """Least-squares a + b cos(w u) + c sin(w u) over a scan of w."""
    step = float(np.median(np.abs(np.diff(u))))
    span = float(abs(u[-1] - u[0]))
    if step == 0 or span == 0:
        return None

    def residual(w):
        basis = np.column_stack([np.ones_like(u), np.cos(w * u), np.sin(w * u)])
        coeffs, *_ = np.linalg.lstsq(basis, values, rcond=None)
        return float(np.linalg.norm(basis @ coeffs - values)), coeffs

    scan = np.linspace(math.pi / span, math.pi / step, 400)
    errors = [residual(w)[0] for w in scan]
    i = int(np.argmin(errors))
    lo, hi = scan[max(i - 1, 0)], scan[min(i + 1, scan.size - 1)]
    best = minimize_scalar(lambda w: residual(w)[0], bounds=(lo, hi), method="bounded",
                           options={"xatol": 1e-10})
    w = float(best.x)
    error, (a, b, c) = residual(w)
    theta = np.linspace(0.0, 2.0 * math.pi, 3600)
    amplitude = float(np.abs(b * np.cos(theta) + c * np.sin(theta)).max())
    rms = error / math.sqrt(values.size)
    return a, amplitude, w, rms


def classify_trace(
    grid: Sequence[float],
    values: Sequence[complex],
    window: int = TRACE_WINDOW,
    tolerance: float = TRACE_TOLERANCE,
    absolute_floor: float = ABSOLUTE_FLOOR,
) -> TraceClassification:
    """
    Classify the behaviour of a trace toward the end of its grid.

    The last `window` values decide convergence; the two last windows
    decide oscillation. A monotone tail with shrinking steps converges
    slowly; a monotone tail growing by more than a factor 10 diverges.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values)
    if values.size < 2 * window:
        raise DomainError(f"trace needs at least {2 * window} points, got {values.size}")
    if not np.all(np.isfinite(values)):
        return TraceClassification(kind="diverged", warning="non-finite values")
    if np.iscomplexobj(values) and np.all(values.imag == 0):
        values = values.real

    tail = values[-window:]
    previous = values[-2 * window:-window]
    both = values[-2 * window:]
    center = _median(tail)
    threshold = max(absolute_floor, tolerance * abs(center))
    spread = _diameter(tail)

    if spread <= threshold:
        return TraceClassification(kind="converged", limit=tail[-1], center=center, spread=spread)

    steps = np.diff(both.real) if not np.iscomplexobj(both) else np.abs(np.diff(both))
    monotone = not np.iscomplexobj(both) and (np.all(steps >= 0) or np.all(steps <= 0))
    if monotone:
        magnitudes = np.abs(steps)
        shrinking = bool(
            np.all(magnitudes[1:] <= magnitudes[:-1] * (1.0 + 1e-9))
            and magnitudes[-1] <= 0.5 * magnitudes[0]
        )
        growth = abs(both[-1]) / max(abs(both[0]), 1e-300)
        if shrinking:
            return TraceClassification(
                kind="converged", limit=tail[-1], center=center, spread=spread, slow=True,
                warning=f"slow convergence: monotone tail with spread {spread:.3g} above {threshold:.3g}",
            )
        if growth > 10.0:
            return TraceClassification(kind="diverged", spread=spread,
                                       warning=f"monotone growth by a factor {growth:.3g}")

    # sampled extremes undershoot the true amplitude; prefer a sinusoid fit per window
    amp_tail, amp_previous = spread / 2.0, _diameter(previous) / 2.0
    frequency = None
    middle = complex(np.mean(tail)) if np.iscomplexobj(tail) else 0.5 * float(tail.max() + tail.min())
    u = np.log(grid)
    fit_tail = _fit_sinusoid(u[-window:], tail)
    fit_previous = _fit_sinusoid(u[-2 * window:-window], previous)
    if fit_tail and fit_previous and fit_tail[3] <= 0.05 * fit_tail[1] and fit_previous[3] <= 0.05 * fit_previous[1]:
        middle, amp_tail, frequency = fit_tail[0], fit_tail[1], fit_tail[2]
        amp_previous = fit_previous[1]

    if (abs(amp_tail - amp_previous) <= AMPLITUDE_STABILITY * max(amp_tail, amp_previous)
            and amp_tail > threshold):
        if not np.iscomplexobj(tail):
            middle = float(np.real(middle))
        return TraceClassification(
            kind="oscillatory", amplitude=float(amp_tail), center=middle, spread=spread, frequency=frequency,
        )

    return TraceClassification(kind="undetermined", center=center, spread=spread,
                               warning="neither converged nor a stable oscillation")


def make_trace(name: str, grid: Sequence[float], values: Sequence[complex], **classifier_options) -> LimitTrace:
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values)
    classification = classify_trace(grid, values, **classifier_options)
    window = classifier_options.get("window", TRACE_WINDOW)
    logger.debug(f"trace {name}: {classification.kind}")
    return LimitTrace(name=name, grid=grid, values=values, classification=classification, window=window)


def sym_derivative_trace(
    mu: RadialMeasure,
    r_grid: Sequence[float],
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    **classifier_options,
) -> LimitTrace:
    """Trace of M(r) along a grid decreasing to 0."""
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.size > 1 and np.any(np.diff(r_grid) >= 0):
        raise DomainError("symmetric-derivative grid must decrease toward 0")
    values = np.array([mean_ratio(mu, float(r), settings) for r in r_grid])
    return make_trace(f"M(r) of {mu.name}", r_grid, values, **classifier_options)
