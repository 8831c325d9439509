import os
import sys

import pytest
from click.testing import CliRunner

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skylink.scenario import ScenarioConfig, dump_scenario, parse_scenario

MINIMAL_SCENARIO = """\
grid_width: 20
grid_height: 20
rng_seed: 7
launch_areas:
  - region: [0, 0, 1, 1]
    launch_probability: 1.0
landing_areas:
  - region: [15, 15, 16, 16]
    selection_probability: 1.0
"""


def base_document(**overrides) -> dict:
    document = {
        "name": "desk",
        "grid_width": 20,
        "grid_height": 20,
        "sim_steps": 60,
        "t_min": 10,
        "rng_seed": 7,
        "launch_areas": [
            {"region": [0, 0, 1, 1], "launch_probability": 1.0, "name": "west"},
            {"region": [0, 18, 1, 19], "launch_probability": 1.0, "name": "north"},
        ],
        "landing_areas": [
            {"region": [18, 18, 19, 19], "selection_probability": 0.5},
            {"region": [18, 0, 19, 1], "selection_probability": 0.5},
        ],
    }
    document.update(overrides)
    return document


@pytest.fixture
def minimal_text():
    return MINIMAL_SCENARIO


@pytest.fixture
def minimal_config(minimal_text):
    return parse_scenario(minimal_text)


@pytest.fixture
def make_config():
    def _make(**overrides) -> ScenarioConfig:
        return ScenarioConfig.model_validate(base_document(**overrides))
    return _make


@pytest.fixture
def unmanaged_config(make_config):
    return make_config(trajectory_type="manhattan")


@pytest.fixture
def managed_config(make_config):
    return make_config(trajectory_type="manhattan", managed=True, max_hold=2)


@pytest.fixture
def write_scenario(tmp_path):
    def _write(config_or_text, name: str = "scenario.yaml"):
        text = config_or_text if isinstance(config_or_text, str) else dump_scenario(config_or_text)
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def head_on():
    """Two launch areas facing each other across a single landing cell; both agents arrive at step 6."""
    def _make(**overrides) -> ScenarioConfig:
        document = {
            "name": "head-on",
            "grid_width": 13,
            "grid_height": 11,
            "sim_steps": 10,
            "t_min": 10,
            "trajectory_type": "manhattan",
            "rng_seed": 1,
            "launch_areas": [
                {"region": [0, 5, 0, 5], "launch_probability": 1.0},
                {"region": [12, 5, 12, 5], "launch_probability": 1.0},
            ],
            "landing_areas": [{"region": [6, 5, 6, 5], "selection_probability": 1.0}],
        }
        document.update(overrides)
        return ScenarioConfig.model_validate(document)
    return _make


@pytest.fixture(autouse=True)
def _no_output_override(monkeypatch):
    monkeypatch.delenv("SKYLINK_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("SKYLINK_WORKERS", raising=False)
