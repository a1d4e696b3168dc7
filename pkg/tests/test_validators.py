import json

import pytest
from pydantic import ValidationError

from mathtools.errors import ConfigError
from utils.validators import (
    GridSpec,
    load_config_file,
    parse_scenario_config,
    validate_output_dir,
)

ZERO_GRID = {"start": 1.0, "ratio": 0.5, "count": 24, "direction": "zero"}


def test_grid_spec_values():
    grid = GridSpec(**ZERO_GRID).values()
    assert grid.size == 24
    assert grid[0] == 1.0
    assert grid[-1] == pytest.approx(0.5 ** 23)


@pytest.mark.parametrize("change", [
    {"ratio": 2.0},
    {"count": 10},
    {"start": 0.0},
    {"direction": "sideways"},
    {"extra": 1},
])
def test_invalid_grids(change):
    with pytest.raises(ValidationError):
        GridSpec.model_validate({**ZERO_GRID, **change})


def test_infinity_grid_needs_ratio_above_one():
    assert GridSpec(**{**ZERO_GRID, "ratio": 1.5, "direction": "infinity"}).values()[-1] > 1.0
    with pytest.raises(ValidationError, match="ratio > 1"):
        GridSpec(**{**ZERO_GRID, "ratio": 0.5, "direction": "infinity"})


def test_parse_scenario_config():
    config = parse_scenario_config({"scenario": "fatou_forward", "n": 1, "grids": {"t": ZERO_GRID}})
    assert config.format == "both"
    assert config.grids["t"].count == 24

    with pytest.raises(ConfigError, match="n"):
        parse_scenario_config({"scenario": "fatou_forward", "n": 0})
    with pytest.raises(ConfigError):
        parse_scenario_config({"scenario": "fatou_forward", "n": 1, "unknown_key": True})


def test_load_config_file(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"n": 2}), encoding="utf-8")
    assert load_config_file(str(good)) == {"n": 2}

    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(str(bad))

    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(str(listing))

    with pytest.raises(ConfigError, match="not found"):
        load_config_file(str(tmp_path / "missing.json"))


def test_output_format():
    assert parse_scenario_config({"scenario": "fatou_forward", "n": 1, "format": "csv"}).format == "csv"
    with pytest.raises(ConfigError, match="format"):
        parse_scenario_config({"scenario": "fatou_forward", "n": 1, "format": "xml"})


def test_output_dir(tmp_path):
    assert validate_output_dir(str(tmp_path / "a" / "b")) == (True, "")
    assert (tmp_path / "a" / "b").is_dir()

    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    ok, message = validate_output_dir(str(blocker / "sub"))
    assert not ok
    assert "Cannot create" in message
    assert not validate_output_dir("")[0]
