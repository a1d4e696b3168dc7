import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from utils.config_loader import ConfigLoader  # noqa: E402


@pytest.fixture
def app_config(tmp_path):
    """config.yaml with logs and results redirected under tmp_path."""
    loader = ConfigLoader(str(ROOT / "config.yaml"))
    config = {key: (dict(value) if isinstance(value, dict) else value)
              for key, value in loader.load_config().items()}
    config["logging"]["log_file"] = str(tmp_path / "logs" / "harness.log")
    config["harness"]["output_dir"] = str(tmp_path / "results")
    return config
