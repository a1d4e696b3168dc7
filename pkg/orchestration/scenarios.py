"""
Scenario registry: each scenario pairs the two limits a theorem relates,
samples both on geometric grids and declares the verdict it expects.

A scenario builder receives a ScenarioRun and records raw samples through
`run.sample(name, grid, fn)`; classification and judging happen later in
the workflow, so the verdict stays a function of the recorded traces.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from mathtools import hyperbolic, kernels, measures
from mathtools.errors import ConfigError, DomainError, IntegrationError, UnknownIdError
from mathtools.kernels import RadialKernel, geometric_grid
from mathtools.measures import RadialFunction, RadialMeasure
from mathtools.quadrature import DEFAULT_SETTINGS, QuadratureSettings
from mathtools.tool_registry import get_function, get_kernel, get_measure
from orchestration.verdict import CONSISTENT, COUNTEREXAMPLE
from utils.validators import ScenarioConfig, parse_scenario_config


logger = logging.getLogger("harness.scenarios")

Sample = Dict[str, Any]


class ScenarioRun:
    """Mutable collector for one scenario execution."""

    def __init__(self, config: ScenarioConfig, settings: QuadratureSettings = DEFAULT_SETTINGS):
        self.config = config
        self.settings = settings
        self.samples: List[Sample] = []
        self.failed: List[Dict[str, Any]] = []
        self.extras: Dict[str, Any] = {}
        self.warnings: List[str] = []

    @property
    def params(self) -> Dict[str, Any]:
        return self.config.params

    def grid(self, name: str) -> np.ndarray:
        return self.config.grids[name].values()

    def warn(self, message: str):
        logger.warning(f"{self.config.scenario}: {message}")
        self.warnings.append(message)

    def sample(self, name: str, grid: np.ndarray, fn: Callable[[float], complex]) -> Optional[Sample]:
        """Evaluate fn over the grid; an integration failure marks the trace as failed."""
        try:
            values = np.array([fn(float(p)) for p in grid])
        except IntegrationError as e:
            logger.error(f"{self.config.scenario}: trace '{name}' failed: {e}")
            self.failed.append({"name": name, "failed": True, "error": str(e), "tail": e.tail})
            return None
        entry = {"name": name, "grid": np.asarray(grid, dtype=float), "values": values}
        self.samples.append(entry)
        return entry

    # Builders shared by scenarios

    def kernel(self, identifier: Optional[str] = None, n: Optional[int] = None) -> RadialKernel:
        return unit_mass(
            get_kernel(identifier or self.config.kernel, n or self.config.n), self.settings,
        )

    def measure(self, n: Optional[int] = None) -> RadialMeasure:
        mu = get_measure(self.config.measure, n or self.config.n)
        radius = self.params.get("restrict_radius")
        if radius is not None:
            mu = measures.restrict(mu, float(radius))
        return mu

    def function(self) -> RadialFunction:
        return get_function(self.config.function)

    def mirror_pair(self, first: Optional[Sample], second: Optional[Sample], label: str):
        """Record an already sampled pair again with the roles of its traces exchanged."""
        if first is None or second is None:
            return
        for entry in (second, first):
            self.samples.append({**entry, "name": f"{entry['name']} [{label}]"})


@dataclass(frozen=True)
class Scenario:
    id: str
    theorem: str
    expected: str
    builder: Callable[[ScenarioRun], None]
    n: int
    grids: Dict[str, str]
    kernel: Optional[str] = None
    companion_kernel: Optional[str] = None
    measure: Optional[str] = None
    function: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def describe(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "theorem": self.theorem,
            "expected_verdict": self.expected,
            "n": self.n,
            "kernel": self.kernel,
            "companion_kernel": self.companion_kernel,
            "measure": self.measure,
            "function": self.function,
            "grids": dict(self.grids),
            "params": dict(self.params),
        }


_UNNORMALIZED_FAMILIES = ("K", "G", "power")


def unit_mass(k: RadialKernel, settings: QuadratureSettings = DEFAULT_SETTINGS) -> RadialKernel:
    """Families registered without a normalizing constant are rescaled to unit mass."""
    if k.name.split(":")[0] in _UNNORMALIZED_FAMILIES:
        return kernels.normalize(k, settings)
    return k


def tame_measure(run: ScenarioRun, mu: RadialMeasure, k: RadialKernel) -> RadialMeasure:
    """
    Restrict mu to the closed unit ball when mu * phi_t(0) diverges at infinity.
    Restriction leaves every limit at the center unchanged.
    """
    if mu.support_radius is not None:
        return mu
    try:
        measures.convolve_at_center(mu, k, 1.0, run.settings)
    except IntegrationError as e:
        if e.tail != "upper":
            raise
        run.warn(f"{mu.name} * {k.name} diverges at infinity; restricting to the closed unit ball")
        return measures.restrict(mu, 1.0)
    return mu


# Euclidean measure scenarios: v(t) = mu * phi_t(0) as t -> 0 against M(r) as r -> 0

def _measure_pair(run: ScenarioRun):
    k = run.kernel()
    mu = tame_measure(run, run.measure(), k)
    run.sample(f"v(t) = {mu.name} * {k.name}_t(0)", run.grid("t"),
               lambda t: measures.convolve_at_center(mu, k, t, run.settings))
    run.sample(f"M(r) of {mu.name}", run.grid("r"),
               lambda r: measures.mean_ratio(mu, r, run.settings))
    return mu, k


def _fatou_forward(run: ScenarioRun):
    _measure_pair(run)


def _rudin_converse(run: ScenarioRun):
    mu, k = _measure_pair(run)
    run.extras["kernel_flags"] = {
        "strictly_positive": k.strictly_positive,
        "monotone_decreasing": k.monotone_decreasing,
    }


def _nec1_counterexample(run: ScenarioRun):
    _, k = _measure_pair(run)
    n = run.config.n
    y0 = math.pi
    run.extras["mellin_at_pi"] = _encode(_closed_form_or_none(k, y0))
    run.extras["predicted_amplitude"] = n / math.hypot(n, y0)
    run.extras["comparison_bound"] = kernels.counterexample_bounds(n).ratio_bound


def _mt2_growth(run: ScenarioRun):
    mu, k = _measure_pair(run)
    report = measures.growth_check(mu, settings=run.settings)
    run.extras["growth"] = report.to_dict()
    run.extras["maximal_constant"] = measures.maximal_constant(k)
    t_grid = geometric_grid(1e-3, 1.0, 2)
    run.extras["boundedness"] = measures.boundedness_report(mu, k, t_grid, settings=run.settings).to_dict()
    if not report.passed:
        run.warn(f"growth check failed for {mu.name}: sup M = {report.sup_mean_ratio:.6g}")


def _heat_positive(run: ScenarioRun):
    w = run.kernel()
    mu = tame_measure(run, run.measure(), w)
    run.sample(f"u(0,t) = {mu.name} * heat_t(0)", run.grid("t"),
               lambda t: measures.convolve_at_center(mu, w, math.sqrt(t), run.settings))
    run.sample(f"M(r) of {mu.name}", run.grid("r"),
               lambda r: measures.mean_ratio(mu, r, run.settings))


# Bounded functions at large time: f * phi_t(0) against f * psi_t(0) as t -> infinity

def _function_pair(run: ScenarioRun):
    f = run.function()
    phi = run.kernel()
    psi = run.kernel(run.config.companion_kernel)
    entries = [
        run.sample(f"{f.name} * {k.name}_t(0)", run.grid("t"),
                   lambda t, k=k: measures.convolve_function_at_center(f, k, t, run.settings))
        for k in (phi, psi)
    ]
    return f, phi, psi, entries


def _transfer_large_time(run: ScenarioRun):
    _, phi, psi, (first, second) = _function_pair(run)
    run.mirror_pair(first, second, f"{psi.name} to {phi.name}")
    run.extras["directions"] = [f"{phi.name} to {psi.name}", f"{psi.name} to {phi.name}"]


def _repnikov_counterexample(run: ScenarioRun):
    _function_pair(run)
    n = run.config.n
    y0 = float(run.params.get("y0", math.pi))
    run.extras["predicted_ball_trace"] = "t^(i y0) * n / (n + i y0)"
    run.extras["predicted_amplitude"] = n / math.hypot(n, y0)


def _bounded_harmonic(run: ScenarioRun):
    _function_pair(run)


# Hyperbolic scenarios

def _variants(run: ScenarioRun) -> List[Tuple[float, float]]:
    betas = run.params.get("betas", [1.0])
    coefficients = run.params.get("C", [0.0])
    return [(float(b), float(c)) for b in betas for c in coefficients]


def _hyperbolic_fatou_converse(run: ScenarioRun):
    ctx = hyperbolic.HyperbolicContext.create(run.config.n)
    data = [run.measure(ctx.boundary_dim)]
    data += [get_measure(m, ctx.boundary_dim) for m in run.params.get("companion_measures", [])]
    for mu in data:
        _hyperbolic_measure_pairs(run, ctx, mu)
    run.extras["boundary_data"] = [mu.name for mu in data]
    run.extras["c_function"] = _encode_dict(hyperbolic.c_function_report(ctx))


def _hyperbolic_measure_pairs(run: ScenarioRun, ctx: hyperbolic.HyperbolicContext, mu: RadialMeasure):
    for beta, C in _variants(run):
        lam = 1j * beta
        psi = hyperbolic.psi_lambda(ctx, lam, settings=run.settings)
        mu_b = tame_measure(run, mu, psi)
        spec = hyperbolic.HyperbolicEigenSpec(ctx, lam, C=C, boundary_datum=mu_b)
        origin = (0.0,) * ctx.boundary_dim
        run.sample(
            f"y^(beta-rho) u(0,y) of {mu_b.name} [beta={beta:g}, C={C:g}]", run.grid("y"),
            lambda y, spec=spec, psi=psi: hyperbolic.normalized_transform(spec, origin, y, run.settings, psi).real,
        )
        run.sample(f"M(r) of {mu_b.name} [beta={beta:g}, C={C:g}]", run.grid("r"),
                   lambda r, mu_b=mu_b: measures.mean_ratio(mu_b, r, run.settings))


def _hyperbolic_large_time(run: ScenarioRun):
    ctx = hyperbolic.HyperbolicContext.create(run.config.n)
    f = run.function()
    ball = kernels.ball(ctx.boundary_dim)
    for beta, C in _variants(run):
        lam = 1j * beta
        psi = hyperbolic.psi_lambda(ctx, lam, settings=run.settings)
        spec = hyperbolic.HyperbolicEigenSpec(ctx, lam, C=C, boundary_datum=f)
        origin = (0.0,) * ctx.boundary_dim
        run.sample(
            f"y^(beta-rho) u(0,y) [beta={beta:g}, C={C:g}]", run.grid("y"),
            lambda y, spec=spec, psi=psi: hyperbolic.normalized_transform(spec, origin, y, run.settings, psi).real,
        )
        run.sample(f"ball average of {f.name} [beta={beta:g}, C={C:g}]", run.grid("r"),
                   lambda r: measures.convolve_function_at_center(f, ball, r, run.settings))
        heights = geometric_grid(1.0, 1e4, 2)
        run.extras.setdefault("hardy_norm_estimate", {})[f"beta={beta:g}, C={C:g}"] = (
            hyperbolic.hardy_norm_estimate(spec, heights, [origin], run.settings)
        )


def _closed_form_or_none(k: RadialKernel, y: float) -> Optional[complex]:
    from mathtools.mellin import kernel_closed_form_mellin
    try:
        return kernel_closed_form_mellin(k, y)
    except UnknownIdError:
        return None


def _encode(value) -> Any:
    if value is None:
        return None
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _encode_dict(data: Dict[str, Any]) -> Dict[str, Any]:
    return {k: (_encode(v) if isinstance(v, complex) else v) for k, v in data.items()}


# Registry

SCENARIOS: Dict[str, Scenario] = {}


def register_scenario(scenario: Scenario):
    SCENARIOS[scenario.id] = scenario
    logger.debug(f"Registered scenario: {scenario.id}")


def _register_standard_scenarios():
    register_scenario(Scenario(
        id="fatou_forward",
        theorem="Fatou: a symmetric derivative L of mu at 0 forces mu * P_t(0) -> L as t -> 0",
        expected=CONSISTENT,
        builder=_fatou_forward,
        n=1,
        kernel="poisson",
        measure="density:one_plus_r",
        grids={"t": "zero", "r": "zero"},
        params={"restrict_radius": 1.0},
    ))
    register_scenario(Scenario(
        id="rudin_converse",
        theorem="Converse Fatou for positive measures: mu * phi_t(0) -> L as t -> 0 forces D_sym mu(0) = L",
        expected=CONSISTENT,
        builder=_rudin_converse,
        n=1,
        kernel="gaussian",
        measure="density:one_plus_r_sin_inv",
        grids={"t": "zero", "r": "zero"},
    ))
    register_scenario(Scenario(
        id="nec1_counterexample",
        theorem="A kernel whose radial Mellin transform vanishes admits a measure with v(t) -> 2 but no symmetric derivative",
        expected=COUNTEREXAMPLE,
        builder=_nec1_counterexample,
        n=1,
        kernel="counterexample",
        measure="counterexample",
        grids={"t": "zero", "r": "zero"},
    ))
    register_scenario(Scenario(
        id="mt2_growth",
        theorem="Converse Fatou for measures with mu(B(0,r)) = O(r^n) and a monotone kernel of finite maximal constant",
        expected=CONSISTENT,
        builder=_mt2_growth,
        n=1,
        kernel="G:1:1",
        measure="density:one_plus_inv",
        grids={"t": "zero", "r": "zero"},
    ))
    register_scenario(Scenario(
        id="heat_positive",
        theorem="Positive solutions of the heat equation: u(0,t) -> L as t -> 0 iff D_sym mu(0) = L",
        expected=CONSISTENT,
        builder=_heat_positive,
        n=1,
        kernel="gaussian",
        measure="density:one_plus_r",
        grids={"t": "zero", "r": "zero"},
    ))
    register_scenario(Scenario(
        id="transfer_large_time",
        theorem="Bounded f: f * phi_t(0) -> L as t -> infinity iff f * psi_t(0) -> L, for kernels with nonvanishing Mellin transform",
        expected=CONSISTENT,
        builder=_transfer_large_time,
        n=1,
        kernel="gaussian",
        companion_kernel="ball",
        function="three_plus_inv_sqrt",
        grids={"t": "infinity"},
    ))
    register_scenario(Scenario(
        id="repnikov_counterexample",
        theorem="Without the Mellin condition the transfer fails: f = |x|^(i pi) has f * phi_t(0) = 0 but oscillating ball averages",
        expected=COUNTEREXAMPLE,
        builder=_repnikov_counterexample,
        n=1,
        kernel="counterexample",
        companion_kernel="ball",
        function="imaginary_power",
        grids={"t": "infinity"},
        params={"y0": math.pi},
    ))
    register_scenario(Scenario(
        id="bounded_harmonic",
        theorem="Bounded harmonic functions on the half-space: u(0,y) -> L as y -> infinity iff ball averages of f tend to L",
        expected=CONSISTENT,
        builder=_bounded_harmonic,
        n=1,
        kernel="poisson",
        companion_kernel="ball",
        function="one_plus_inv",
        grids={"t": "infinity"},
    ))
    register_scenario(Scenario(
        id="hyperbolic_fatou_converse",
        theorem="Positive eigenfunctions on H^n: y^(beta-rho) u(0,y) -> L as y -> 0 iff D_sym mu(0) = L",
        expected=CONSISTENT,
        builder=_hyperbolic_fatou_converse,
        n=3,
        measure="density:one_plus_r",
        grids={"y": "zero", "r": "zero"},
        params={"betas": [0.5, 1.0], "C": [0.0, 1.0], "companion_measures": ["lebesgue"]},
    ))
    register_scenario(Scenario(
        id="hyperbolic_large_time",
        theorem="Eigenfunctions on H^n with bounded boundary data: y^(beta-rho) u(0,y) -> L as y -> infinity iff ball averages tend to L",
        expected=CONSISTENT,
        builder=_hyperbolic_large_time,
        n=3,
        function="three_plus_inv_sqrt",
        grids={"y": "infinity", "r": "infinity"},
        params={"betas": [1.0], "C": [0.0]},
    ))


_registered = False


def ensure_scenarios_registered():
    global _registered
    if not _registered:
        _registered = True
        _register_standard_scenarios()


def get_scenario(scenario_id: str) -> Scenario:
    ensure_scenarios_registered()
    try:
        return SCENARIOS[scenario_id]
    except KeyError:
        raise UnknownIdError(f"unknown scenario '{scenario_id}'; known: {sorted(SCENARIOS)}") from None


def list_scenarios() -> List[Dict[str, Any]]:
    ensure_scenarios_registered()
    return [s.describe() for s in SCENARIOS.values()]


# Configuration

def default_grid(direction: str, harness: Dict[str, Any]) -> Dict[str, Any]:
    if direction == "zero":
        return {
            "start": float(harness.get("start_to_zero", 1.0)),
            "ratio": float(harness.get("ratio_to_zero", 0.75)),
            "count": int(harness.get("points", 48)),
            "direction": "zero",
        }
    return {
        "start": float(harness.get("start_to_infinity", 1.0)),
        "ratio": float(harness.get("ratio_to_infinity", 1.5)),
        "count": int(harness.get("points", 48)),
        "direction": "infinity",
    }


def resolve_config(
    raw: Dict[str, Any],
    harness: Optional[Dict[str, Any]] = None,
    classifier: Optional[Dict[str, Any]] = None,
) -> ScenarioConfig:
    """
    Merge a raw configuration over the scenario defaults and config.yaml,
    validate it, and check that every referenced id exists.
    """
    harness = harness or {}
    classifier = classifier or {}
    if "scenario" not in raw:
        raise ConfigError("configuration names no scenario")
    try:
        scenario = get_scenario(raw["scenario"])
    except UnknownIdError as e:
        raise ConfigError(str(e)) from None

    raw_grids = raw.get("grids", {}) or {}
    unknown = set(raw_grids) - set(scenario.grids)
    if unknown:
        raise ConfigError(f"scenario {scenario.id} has no grid(s) {sorted(unknown)}; grids: {sorted(scenario.grids)}")
    grids = {}
    for name, direction in scenario.grids.items():
        spec = default_grid(direction, harness)
        override = raw_grids.get(name, {})
        if not isinstance(override, dict):
            raise ConfigError(f"grid '{name}' must be an object")
        spec.update(override)
        grids[name] = spec

    merged = {
        "scenario": scenario.id,
        "n": scenario.n,
        "kernel": scenario.kernel,
        "companion_kernel": scenario.companion_kernel,
        "measure": scenario.measure,
        "function": scenario.function,
        "trace_tolerance": float(classifier.get("tolerance", 1e-4)),
        "verdict_tolerance": float(harness.get("verdict_tolerance", 5e-3)),
        "output_dir": harness.get("output_dir", "./results"),
        "format": harness.get("format", "both"),
    }
    merged.update({k: v for k, v in raw.items() if k not in ("grids", "params") and v is not None})
    merged["grids"] = grids
    merged["params"] = {**scenario.params, **(raw.get("params") or {})}
    config = parse_scenario_config(merged)
    _check_ids(config)
    return config


def _check_ids(config: ScenarioConfig):
    try:
        if config.scenario.startswith("hyperbolic"):
            boundary = config.n - 1
            if boundary < 1:
                raise ConfigError(f"hyperbolic scenarios need n >= 2, got {config.n}")
            for identifier in [config.measure, *config.params.get("companion_measures", [])]:
                if identifier:
                    get_measure(identifier, boundary)
            if config.function:
                get_function(config.function)
            return
        for identifier in (config.kernel, config.companion_kernel):
            if identifier:
                get_kernel(identifier, config.n)
        if config.measure:
            get_measure(config.measure, config.n)
        if config.function:
            get_function(config.function)
    except (UnknownIdError, DomainError) as e:
        raise ConfigError(str(e)) from None


def execute_scenario(config: ScenarioConfig, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ScenarioRun:
    """Run the scenario builder; failed traces are recorded, not raised."""
    scenario = get_scenario(config.scenario)
    run = ScenarioRun(config, settings)
    scenario.builder(run)
    return run
