"""
links.py 📶
------------
Link classification, coverage maps and per-step channel allocation.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..scenario.models import BaseStationConfig, Cell, PathLossParams, Point
from .propagation import get_model


class LinkClass(str, Enum):
    GOOD = "Good"
    POOR = "Poor"
    NO_LINK = "NoLink"


# Graymap-friendly codes: brighter is better
LINK_CLASS_CODES = {LinkClass.NO_LINK: 0, LinkClass.POOR: 1, LinkClass.GOOD: 2}


def classify_link(pl_db: float, params: PathLossParams) -> LinkClass:
    """≤ good threshold → Good; ≤ no-link threshold → Poor; above → NoLink."""
    if pl_db <= params.good_threshold_db:
        return LinkClass.GOOD
    if pl_db <= params.nolink_threshold_db:
        return LinkClass.POOR
    return LinkClass.NO_LINK


@dataclass
class BaseStationState:
    station_id: int
    config: BaseStationConfig
    in_use: int = 0

    @property
    def free(self) -> int:
        return self.config.channels - self.in_use


def station_states(configs: Sequence[BaseStationConfig]) -> List[BaseStationState]:
    return [BaseStationState(station_id=i, config=c) for i, c in enumerate(configs)]


def reset_stations(states: Sequence[BaseStationState]) -> None:
    for state in states:
        state.in_use = 0


@dataclass(frozen=True, slots=True)
class LinkSample:
    """
    One agent's link at one step.

    `station` is None exactly when the class is NoLink. For unassigned
    samples `path_loss_db` is the lowest loss over all stations and
    `congested` tells whether a reachable station was full.
    """
    agent: int
    step: int
    station: Optional[int]
    path_loss_db: float
    link_class: LinkClass
    congested: bool = False


@dataclass(frozen=True, eq=False)
class CoverageMap:
    """
    Per-cell best (shadow-free) path loss over all stations.

    Arrays are indexed [y, x]. Calling the map with a cell answers the
    coverage predicate: True when some station is within the no-link
    threshold.
    """
    best_loss_db: np.ndarray
    codes: np.ndarray
    params: PathLossParams

    @property
    def width(self) -> int:
        return self.best_loss_db.shape[1]

    @property
    def height(self) -> int:
        return self.best_loss_db.shape[0]

    def __call__(self, cell: Cell) -> bool:
        x, y = cell
        if not (0 <= x < self.width and 0 <= y < self.height):
            return False
        return bool(self.best_loss_db[y, x] <= self.params.nolink_threshold_db)

    def class_at(self, cell: Cell) -> LinkClass:
        return classify_link(float(self.best_loss_db[cell[1], cell[0]]), self.params)

    def mask(self, link_class: LinkClass) -> np.ndarray:
        return self.codes == LINK_CLASS_CODES[link_class]


def coverage_mask(
    stations: Sequence[BaseStationConfig],
    params: PathLossParams,
    grid: Tuple[int, int],
    cell_size_m: float,
) -> CoverageMap:
    """
    Shadow-free best path loss from each cell center to its nearest-loss
    station, and the resulting class codes.
    """
    width, height = grid
    model = get_model(params)
    xs = (np.arange(width) + 0.5) * cell_size_m
    ys = (np.arange(height) + 0.5) * cell_size_m
    gx, gy = np.meshgrid(xs, ys)

    best = np.full((height, width), np.inf)
    for station in stations:
        sx, sy = station.position
        loss = model.loss_db(np.hypot(gx - sx, gy - sy), params)
        np.minimum(best, loss, out=best)

    codes = np.zeros((height, width), dtype=np.uint8)
    codes[best <= params.nolink_threshold_db] = LINK_CLASS_CODES[LinkClass.POOR]
    codes[best <= params.good_threshold_db] = LINK_CLASS_CODES[LinkClass.GOOD]
    return CoverageMap(best_loss_db=best, codes=codes, params=params)


def allocate_channels(
    agents: Sequence[Tuple[int, Point]],
    stations: Sequence[BaseStationState],
    params: PathLossParams,
    step: int = 0,
    shadowing: Optional[Mapping[int, float]] = None,
) -> List[LinkSample]:
    """
    Greedy channel assignment for one step.

    Agents are served in ascending id order. Each takes the reachable
    station (loss ≤ no-link threshold) with the lowest loss, ties by
    station id, that still has a free channel. Station counters must be
    reset by the caller at the start of the step.
    """
    ordered = sorted(agents, key=lambda item: item[0])
    if not ordered:
        return []
    if not stations:
        return [LinkSample(agent, step, None, math.inf, LinkClass.NO_LINK) for agent, _ in ordered]

    model = get_model(params)
    positions = np.asarray([pos for _, pos in ordered], dtype=float)
    station_xy = np.asarray([s.config.position for s in stations], dtype=float)
    distances = np.hypot(
        positions[:, None, 0] - station_xy[None, :, 0],
        positions[:, None, 1] - station_xy[None, :, 1],
    )
    offsets = np.zeros(len(ordered))
    if shadowing:
        offsets = np.asarray([shadowing.get(agent, 0.0) for agent, _ in ordered])
    losses = model.loss_db(distances, params, offsets[:, None])
    # stable sort keeps station-id order among equal losses
    ranking = np.argsort(losses, axis=1, kind="stable")

    samples: List[LinkSample] = []
    for row, (agent, _) in enumerate(ordered):
        assigned = None
        congested = False
        for col in ranking[row]:
            loss = float(losses[row, col])
            if loss > params.nolink_threshold_db:
                break
            state = stations[col]
            if state.in_use < state.config.channels:
                state.in_use += 1
                assigned = (state.station_id, loss)
                break
            congested = True
        if assigned is None:
            best = float(losses[row, ranking[row][0]])
            samples.append(LinkSample(agent, step, None, best, LinkClass.NO_LINK, congested))
        else:
            station_id, loss = assigned
            samples.append(LinkSample(agent, step, station_id, loss, classify_link(loss, params)))
    return samples
