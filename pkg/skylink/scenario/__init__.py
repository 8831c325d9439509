from .models import (
    BaseStationConfig,
    Cell,
    GeoAnchor,
    LandingArea,
    LaunchArea,
    PathLossParams,
    Point,
    Rect,
    ScenarioConfig,
    TrajectoryType,
)
from .parser import dump_scenario, load_scenario, parse_scenario
from .validator import validate

__all__ = [
    "BaseStationConfig",
    "Cell",
    "GeoAnchor",
    "LandingArea",
    "LaunchArea",
    "PathLossParams",
    "Point",
    "Rect",
    "ScenarioConfig",
    "TrajectoryType",
    "dump_scenario",
    "load_scenario",
    "parse_scenario",
    "validate",
]
