"""
validator.py ✅
----------------
Semantic checks over a parsed ScenarioConfig.

Violations are data: validate() returns one human-readable entry per
broken invariant, in a fixed order, and an empty list for a valid
scenario.
"""

import math
from datetime import datetime
from itertools import combinations
from typing import List, Tuple

from ..comms.propagation import PROPAGATION_MODELS
from .models import PATH_LOSS_EXPONENT_RANGES, Rect, ScenarioConfig

PROBABILITY_TOLERANCE = 1e-9
MAX_SEED = 2**64


def _label(kind: str, index: int, name) -> str:
    return f"{kind}[{index}] '{name}'" if name else f"{kind}[{index}]"


def _regions(config: ScenarioConfig) -> List[Tuple[str, Rect]]:
    regions = [(_label("launch_areas", i, a.name), a.region) for i, a in enumerate(config.launch_areas)]
    regions += [(_label("landing_areas", i, a.name), a.region) for i, a in enumerate(config.landing_areas)]
    regions += [(_label("no_fly_zones", i, None), r) for i, r in enumerate(config.no_fly_zones)]
    return regions


def _fmt(value: float) -> str:
    return f"{round(value, 9):g}"


def _check_run(config: ScenarioConfig, report: List[str]) -> None:
    if config.grid_width < 1 or config.grid_height < 1:
        report.append(f"grid {config.grid_width}x{config.grid_height} must be at least 1x1")
    if config.cell_size_m <= 0:
        report.append(f"cell_size_m {_fmt(config.cell_size_m)} must be > 0")
    if config.sim_steps <= 0:
        report.append(f"sim_steps {config.sim_steps} must be > 0")
    if config.step_seconds <= 0:
        report.append(f"step_seconds {_fmt(config.step_seconds)} must be > 0")
    if config.t_min < 1:
        report.append(f"t_min {config.t_min} must be >= 1")
    if config.max_hold < 0:
        report.append(f"max_hold {config.max_hold} must be >= 0")
    if config.speed_cells_per_step <= 0:
        report.append(f"speed_cells_per_step {_fmt(config.speed_cells_per_step)} must be > 0")
    if config.density_window_w < 1:
        report.append(f"density_window_w {config.density_window_w} must be >= 1")
    if config.density_stride_s < 1:
        report.append(f"density_stride_s {config.density_stride_s} must be >= 1")
    if not 0 <= config.rng_seed < MAX_SEED:
        report.append(f"rng_seed {config.rng_seed} must lie in [0, 2^64)")


def _check_areas(config: ScenarioConfig, report: List[str]) -> None:
    if not config.launch_areas:
        report.append("at least one launch area is required")
    if not config.landing_areas:
        report.append("at least one landing area is required")

    for label, rect in _regions(config):
        if rect.x_min > rect.x_max or rect.y_min > rect.y_max:
            report.append(f"{label} region {rect} has min corner beyond max corner")
        elif not rect.inside_grid(config.grid_width, config.grid_height):
            report.append(f"{label} region {rect} lies outside the {config.grid_width}x{config.grid_height} grid")

    for i, area in enumerate(config.launch_areas):
        if not 0.0 <= area.launch_probability <= 1.0:
            report.append(f"{_label('launch_areas', i, area.name)} launch probability {_fmt(area.launch_probability)} outside [0, 1]")
    for i, area in enumerate(config.landing_areas):
        if not 0.0 <= area.selection_probability <= 1.0:
            report.append(f"{_label('landing_areas', i, area.name)} selection probability {_fmt(area.selection_probability)} outside [0, 1]")

    if config.landing_areas:
        total = math.fsum(a.selection_probability for a in config.landing_areas)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            report.append(f"landing probabilities sum {_fmt(total)} ≠ 1")

    for (label_a, a), (label_b, b) in combinations(_regions(config), 2):
        if a.overlaps(b):
            report.append(f"{label_a} {a} overlaps {label_b} {b}")


def _check_stations(config: ScenarioConfig, report: List[str]) -> None:
    for i, station in enumerate(config.base_stations):
        label = _label("base_stations", i, station.name)
        if station.channels < 1:
            report.append(f"{label} channels {station.channels} must be >= 1")
        x, y = station.position
        if not (0.0 <= x <= config.map_width_m and 0.0 <= y <= config.map_height_m):
            report.append(
                f"{label} position ({_fmt(x)}, {_fmt(y)}) m outside map "
                f"{_fmt(config.map_width_m)}x{_fmt(config.map_height_m)} m"
            )


def _check_path_loss(config: ScenarioConfig, report: List[str]) -> None:
    params = config.path_loss
    if params.model not in PROPAGATION_MODELS:
        known = ", ".join(sorted(PROPAGATION_MODELS))
        report.append(f"unknown propagation model '{params.model}' (known: {known})")
    if params.environment is not None and params.environment not in PATH_LOSS_EXPONENT_RANGES:
        report.append(f"unknown path-loss environment '{params.environment}'")
    if params.d0 <= 0:
        report.append(f"path_loss.d0 {_fmt(params.d0)} must be > 0")
    if params.n <= 0:
        report.append(f"path_loss.n {_fmt(params.n)} must be > 0")
    if params.sigma < 0:
        report.append(f"path_loss.sigma {_fmt(params.sigma)} must be >= 0")
    if params.good_threshold_db >= params.nolink_threshold_db:
        report.append(
            f"path_loss.good_threshold_db {_fmt(params.good_threshold_db)} must be below "
            f"nolink_threshold_db {_fmt(params.nolink_threshold_db)}"
        )


def _check_export(config: ScenarioConfig, report: List[str]) -> None:
    anchor = config.geo_anchor
    if anchor is not None:
        if not -90.0 <= anchor.lat <= 90.0:
            report.append(f"geo_anchor.lat {_fmt(anchor.lat)} outside [-90, 90]")
        if not -180.0 <= anchor.lon <= 180.0:
            report.append(f"geo_anchor.lon {_fmt(anchor.lon)} outside [-180, 180]")
        if anchor.meters_per_degree <= 0:
            report.append(f"geo_anchor.meters_per_degree {_fmt(anchor.meters_per_degree)} must be > 0")
    try:
        datetime.fromisoformat(config.start_time.replace("Z", "+00:00"))
    except ValueError:
        report.append(f"start_time '{config.start_time}' is not an ISO-8601 timestamp")


def validate(config: ScenarioConfig) -> List[str]:
    """
    Check every scenario invariant.

    Returns:
        list[str]: one entry per violation; empty when the scenario is valid.
    """
    report: List[str] = []
    _check_run(config, report)
    _check_areas(config, report)
    _check_stations(config, report)
    _check_path_loss(config, report)
    _check_export(config, report)
    return report
