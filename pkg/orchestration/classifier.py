"""
Finite-grid stand-in for limit claims: every harness trace is classified here.
"""

from typing import Any, Dict, Optional, Sequence

from mathtools.errors import DomainError
from mathtools.measures import (
    ABSOLUTE_FLOOR,
    TRACE_TOLERANCE,
    TRACE_WINDOW,
    LimitTrace,
    TraceClassification,
    classify_trace,
    make_trace,
)

MIN_POINTS = 2 * TRACE_WINDOW


def classifier_options(config: Optional[Dict[str, Any]] = None, tolerance: Optional[float] = None) -> Dict[str, Any]:
    """Keyword options for classify_trace from the `classifier` section of config.yaml."""
    config = config or {}
    return {
        "window": int(config.get("window", TRACE_WINDOW)),
        "tolerance": float(tolerance if tolerance is not None else config.get("tolerance", TRACE_TOLERANCE)),
        "absolute_floor": float(config.get("absolute_floor", ABSOLUTE_FLOOR)),
    }


def estimate_limit(
    grid: Sequence[float],
    values: Sequence[complex],
    config: Optional[Dict[str, Any]] = None,
    tolerance: Optional[float] = None,
) -> TraceClassification:
    """Classify values sampled on a geometric grid (at least 24 points)."""
    options = classifier_options(config, tolerance)
    minimum = max(MIN_POINTS, 2 * options["window"])
    if len(values) < minimum:
        raise DomainError(f"a limit estimate needs at least {minimum} points, got {len(values)}")
    return classify_trace(grid, values, **options)


def build_trace(
    name: str,
    grid: Sequence[float],
    values: Sequence[complex],
    config: Optional[Dict[str, Any]] = None,
    tolerance: Optional[float] = None,
) -> LimitTrace:
    return make_trace(name, grid, values, **classifier_options(config, tolerance))
