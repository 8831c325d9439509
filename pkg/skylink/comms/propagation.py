"""
PropagationModel 📡
────────────────────────────────────────────
Pluggable path-loss models, keyed by the scenario's `path_loss.model`.

Use:
- Subclass PropagationModel and register it in PROPAGATION_MODELS
- Only the log-distance model ships
"""

import math
from abc import ABC, abstractmethod
from typing import Dict

import numpy as np

from ..scenario.models import PathLossParams


class PropagationModel(ABC):
    name: str = ""

    @abstractmethod
    def loss_db(self, distance_m, params: PathLossParams, shadowing_db=0.0):
        """Override: path loss in dB for a scalar or numpy array of distances."""

    @abstractmethod
    def radius_for(self, threshold_db: float, params: PathLossParams) -> float:
        """Override: largest distance whose shadow-free loss stays <= threshold."""


class LogDistanceModel(PropagationModel):
    """PL(d) = PL(d0) + 10·n·log10(d/d0) + x, with d clamped below at d0."""
    name = "log-distance"

    def loss_db(self, distance_m, params: PathLossParams, shadowing_db=0.0):
        d = np.maximum(np.asarray(distance_m, dtype=float), params.d0)
        loss = params.pl_d0 + 10.0 * params.n * np.log10(d / params.d0) + shadowing_db
        return float(loss) if np.ndim(loss) == 0 else loss

    def radius_for(self, threshold_db: float, params: PathLossParams) -> float:
        if threshold_db < params.pl_d0:
            return 0.0
        return params.d0 * 10.0 ** ((threshold_db - params.pl_d0) / (10.0 * params.n))


# ⬇️ Model registry
PROPAGATION_MODELS: Dict[str, PropagationModel] = {
    LogDistanceModel.name: LogDistanceModel(),
}


def get_model(params: PathLossParams) -> PropagationModel:
    try:
        return PROPAGATION_MODELS[params.model]
    except KeyError:
        raise KeyError(f"unknown propagation model '{params.model}'") from None


def path_loss(d: float, params: PathLossParams, shadowing: float = 0.0) -> float:
    """
    Path loss in dB at distance `d` meters.

    Distances below the reference distance are clamped to it, so the
    result never drops under `pl_d0 + shadowing`.
    """
    if not math.isfinite(d):
        return math.inf
    return get_model(params).loss_db(d, params, shadowing)


def coverage_radius(threshold_db: float, params: PathLossParams) -> float:
    """Closed-form distance at which the shadow-free loss reaches `threshold_db`."""
    return get_model(params).radius_for(threshold_db, params)
