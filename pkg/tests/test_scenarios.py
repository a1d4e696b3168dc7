import pytest

from mathtools.errors import ConfigError, UnknownIdError
from orchestration.scenarios import default_grid, get_scenario, list_scenarios, resolve_config
from orchestration.verdict import CONSISTENT, COUNTEREXAMPLE

HARNESS = {"points": 48, "ratio_to_zero": 0.75, "ratio_to_infinity": 1.5, "output_dir": "out"}


def test_registered_scenarios():
    ids = [s["id"] for s in list_scenarios()]
    assert ids[0] == "fatou_forward"
    assert {"nec1_counterexample", "repnikov_counterexample", "hyperbolic_large_time"} <= set(ids)
    assert get_scenario("nec1_counterexample").expected == COUNTEREXAMPLE
    assert get_scenario("bounded_harmonic").expected == CONSISTENT
    with pytest.raises(UnknownIdError):
        get_scenario("nope")


def test_default_grids():
    assert default_grid("zero", HARNESS) == {"start": 1.0, "ratio": 0.75, "count": 48, "direction": "zero"}
    assert default_grid("infinity", {})["ratio"] == 1.5


def test_resolve_defaults():
    config = resolve_config({"scenario": "fatou_forward"}, HARNESS, {"tolerance": 1e-5})
    assert config.n == 1
    assert config.kernel == "poisson"
    assert config.trace_tolerance == 1e-5
    assert config.output_dir == "out"
    assert config.params == {"restrict_radius": 1.0}
    assert config.grids["t"].count == 48


def test_resolve_overrides():
    config = resolve_config(
        {
            "scenario": "rudin_converse",
            "n": 2,
            "kernel": "poisson",
            "grids": {"r": {"count": 30}},
            "params": {"restrict_radius": 2.0},
        },
        HARNESS,
    )
    assert config.n == 2
    assert config.kernel == "poisson"
    assert config.grids["r"].count == 30
    assert config.grids["r"].ratio == 0.75
    assert config.params["restrict_radius"] == 2.0


@pytest.mark.parametrize("raw", [
    {},
    {"scenario": "nope"},
    {"scenario": "fatou_forward", "grids": {"q": {}}},
    {"scenario": "fatou_forward", "grids": {"t": {"ratio": 1.5}}},
    {"scenario": "fatou_forward", "kernel": "unknown_kernel"},
    {"scenario": "fatou_forward", "format": "xml"},
    {"scenario": "hyperbolic_fatou_converse", "n": 1},
])
def test_resolve_errors(raw):
    with pytest.raises(ConfigError):
        resolve_config(raw, HARNESS)
