from .links import (
    LINK_CLASS_CODES,
    BaseStationState,
    CoverageMap,
    LinkClass,
    LinkSample,
    allocate_channels,
    classify_link,
    coverage_mask,
    reset_stations,
    station_states,
)
from .propagation import PROPAGATION_MODELS, LogDistanceModel, PropagationModel, coverage_radius, path_loss

__all__ = [
    "LINK_CLASS_CODES",
    "BaseStationState",
    "CoverageMap",
    "LinkClass",
    "LinkSample",
    "LogDistanceModel",
    "PROPAGATION_MODELS",
    "PropagationModel",
    "allocate_channels",
    "classify_link",
    "coverage_mask",
    "coverage_radius",
    "path_loss",
    "reset_stations",
    "station_states",
]
