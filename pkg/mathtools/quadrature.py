"""
Adaptive Gauss-Legendre quadrature shared by the Mellin, measure and
multiplicative-convolution code.

Half-line integrals are taken in logarithmic coordinates (r = e^u), where
every integrand of interest becomes an absolutely convergent, possibly
oscillatory, integral over the real line. Panels are processed as numpy
batches: each pass evaluates a high and a low order rule on all active
panels and bisects the ones whose estimates disagree.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from mathtools.errors import IntegrationError


logger = logging.getLogger("mathtools.quadrature")

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and limits of the adaptive engine."""
    epsabs: float = 1e-15
    epsrel: float = 1e-12
    low_order: int = 10
    high_order: int = 20
    max_panels: int = 20000
    max_depth: int = 48
    core_half_width: float = 8.0
    tail_chunk: float = 4.0
    tail_tolerance: float = 1e-14
    u_span: float = 80.0

    @classmethod
    def from_config(cls, config: Optional[dict]) -> "QuadratureSettings":
        if not config:
            return cls()
        known = {name: config[name] for name in cls.__dataclass_fields__ if name in config}
        return cls(**known)


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_value: float
    error: float
    panels: int
    converged: bool = True

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            value=self.value + other.value,
            abs_value=self.abs_value + other.abs_value,
            error=self.error + other.error,
            panels=self.panels + other.panels,
            converged=self.converged and other.converged,
        )


_EMPTY = QuadResult(value=0.0, abs_value=0.0, error=0.0, panels=0)


@dataclass(frozen=True)
class HalfLineProfile:
    """
    A function on (0, infinity), integrated against ds/s.

    `breaks` are points of discontinuity and `center` a point near the
    bulk of the function, both in s (not log s).
    """
    evaluator: Callable[[np.ndarray], np.ndarray]
    name: str = "profile"
    integrable: bool = True
    breaks: Tuple[float, ...] = ()
    center: float = 1.0
    complex_valued: bool = False

    def __call__(self, s):
        value = np.asarray(self.evaluator(np.asarray(s, dtype=float)))
        return value.item() if np.ndim(value) == 0 else value

    @property
    def log_breaks(self) -> Tuple[float, ...]:
        return tuple(math.log(b) for b in self.breaks if b > 0)


def oscillation_width(frequency: float) -> float:
    """Largest panel width that resolves e^{i*frequency*u}."""
    return math.pi / (2.0 * max(1.0, abs(frequency)))


@lru_cache(maxsize=None)
def _rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def _estimate(func: Integrand, left: np.ndarray, right: np.ndarray, order: int):
    nodes, weights = _rule(order)
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    u = mid[:, None] + half[:, None] * nodes[None, :]
    values = np.broadcast_to(np.asarray(func(u)), u.shape)
    finite = np.isfinite(values)
    if not finite.all():
        where = u[~finite].flat[0]
        raise IntegrationError(f"non-finite integrand at u={where:.6g}")
    integral = (values * weights).sum(axis=1) * half
    absolute = (np.abs(values) * weights).sum(axis=1) * half
    return integral, absolute


def _initial_edges(a: float, b: float, breaks: Iterable[float], max_width: Optional[float]) -> np.ndarray:
    points = sorted({a, b, *(p for p in breaks if a < p < b)})
    edges = [points[0]]
    for left, right in zip(points[:-1], points[1:]):
        pieces = 1 if not max_width else max(1, int(math.ceil((right - left) / max_width)))
        edges.extend(np.linspace(left, right, pieces + 1)[1:])
    return np.asarray(edges, dtype=float)


def integrate(
    func: Integrand,
    a: float,
    b: float,
    *,
    breaks: Iterable[float] = (),
    max_width: Optional[float] = None,
    scale_hint: float = 0.0,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> QuadResult:
    """
    Integrate a vectorized function over the finite interval [a, b].

    `breaks` are interior points where the integrand may be discontinuous;
    panels never straddle them. `scale_hint` is an externally known
    magnitude used in the relative tolerance (the running integral of a
    longer computation this interval belongs to).
    """
    if b <= a:
        return _EMPTY
    edges = _initial_edges(a, b, breaks, max_width)
    left, right = edges[:-1], edges[1:]
    length = b - a

    total = 0.0 + 0.0j
    total_abs = 0.0
    error = 0.0
    accepted = 0
    depth = 0
    converged = True

    while left.size:
        high, high_abs = _estimate(func, left, right, settings.high_order)
        low, _ = _estimate(func, left, right, settings.low_order)
        diff = np.abs(high - low)
        scale = max(scale_hint, total_abs + float(high_abs.sum()))
        tol = max(settings.epsabs, settings.epsrel * scale) * (right - left) / length
        ok = diff <= tol

        pending = int((~ok).sum())
        if pending and (depth >= settings.max_depth or accepted + left.size + pending > settings.max_panels):
            logger.warning(
                f"Panel budget exhausted on [{a:.4g}, {b:.4g}] after {accepted + left.size} panels; "
                f"accepting estimate with error {float(diff.sum()):.3g}"
            )
            ok[:] = True
            converged = False

        total += complex(high[ok].sum())
        total_abs += float(high_abs[ok].sum())
        error += float(diff[ok].sum())
        accepted += int(ok.sum())

        mid = 0.5 * (left[~ok] + right[~ok])
        left, right = np.concatenate([left[~ok], mid]), np.concatenate([mid, right[~ok]])
        depth += 1

    logger.debug(f"integrate [{a:.4g}, {b:.4g}]: {accepted} panels, depth {depth}, error {error:.3g}")
    return QuadResult(value=total, abs_value=total_abs, error=error, panels=accepted, converged=converged)


def _extend_tail(
    func: Integrand,
    start: float,
    direction: int,
    bound: float,
    center: float,
    running_abs: float,
    max_width: Optional[float],
    settings: QuadratureSettings,
    label: str,
) -> QuadResult:
    side = "upper" if direction > 0 else "lower"
    result = _EMPTY
    edge = start
    quiet = 0
    while quiet < 2:
        if direction * (bound - edge) <= 0:
            return result
        if abs(edge - center) >= settings.u_span:
            raise IntegrationError(
                f"{label}: {side} tail still carries {result.abs_value:.3g} at log-radius {edge:.1f}",
                tail=side,
            )
        nxt = edge + direction * settings.tail_chunk
        nxt = min(nxt, bound) if direction > 0 else max(nxt, bound)
        lo, hi = sorted((edge, nxt))
        try:
            chunk = integrate(func, lo, hi, max_width=max_width,
                              scale_hint=running_abs + result.abs_value, settings=settings)
        except IntegrationError as exc:
            raise IntegrationError(f"{label}: {exc}", tail=side) from exc
        result = result + chunk
        if chunk.abs_value <= settings.tail_tolerance * (running_abs + result.abs_value):
            quiet += 1
        else:
            quiet = 0
        edge = nxt
    logger.debug(f"{label}: {side} tail closed at log-radius {edge:.1f}")
    return result


def integrate_line(
    func: Integrand,
    *,
    lower: float = -math.inf,
    upper: float = math.inf,
    center: float = 0.0,
    breaks: Iterable[float] = (),
    max_width: Optional[float] = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    label: str = "integrand",
) -> QuadResult:
    """
    Integrate func(u) over (lower, upper), where either end may be infinite.

    A core interval around `center` (and around every break) is integrated
    first; infinite ends are then extended chunk by chunk until two
    consecutive chunks are negligible against the running absolute
    integral. A tail that has not decayed within `settings.u_span` of the
    center raises IntegrationError naming that tail.
    """
    breaks = sorted(p for p in breaks if lower < p < upper)
    if math.isfinite(lower) and math.isfinite(upper):
        try:
            return integrate(func, lower, upper, breaks=breaks, max_width=max_width, settings=settings)
        except IntegrationError as exc:
            raise IntegrationError(f"{label}: {exc}") from exc

    core_lo = min([center - settings.core_half_width] + [p - 1.0 for p in breaks])
    core_hi = max([center + settings.core_half_width] + [p + 1.0 for p in breaks])
    core_lo, core_hi = max(lower, core_lo), min(upper, core_hi)
    if core_hi <= core_lo:
        if math.isfinite(upper):
            core_lo = upper - settings.core_half_width
        else:
            core_hi = lower + settings.core_half_width

    try:
        result = integrate(func, core_lo, core_hi, breaks=breaks, max_width=max_width, settings=settings)
    except IntegrationError as exc:
        raise IntegrationError(f"{label}: {exc}") from exc

    if not math.isfinite(upper):
        result = result + _extend_tail(func, core_hi, +1, upper, center, result.abs_value,
                                       max_width, settings, label)
    if not math.isfinite(lower):
        result = result + _extend_tail(func, core_lo, -1, lower, center, result.abs_value,
                                       max_width, settings, label)
    return result


def radial_integral(
    profile: Callable[[np.ndarray], np.ndarray],
    dim: int,
    y: float = 0.0,
    *,
    area: float = 1.0,
    center: float = 0.0,
    breaks: Iterable[float] = (),
    upper_radius: float = math.inf,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    label: str = "radial integral",
) -> QuadResult:
    """
    area * int_0^R profile(r) r^{dim-1+iy} dr, computed as
    area * int profile(e^u) e^{(dim+iy)u} du.

    `breaks` are radii; `center` is a log-radius near the bulk of the mass.
    """
    exponent = dim + 1j * y if y else float(dim)

    def integrand(u):
        return area * profile(np.exp(u)) * np.exp(exponent * u)

    upper = math.log(upper_radius) if math.isfinite(upper_radius) else math.inf
    log_breaks = [math.log(p) for p in breaks if p > 0]
    return integrate_line(
        integrand,
        upper=upper,
        center=min(center, upper) if math.isfinite(upper) else center,
        breaks=log_breaks,
        max_width=oscillation_width(y),
        settings=settings,
        label=label,
    )
