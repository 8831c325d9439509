"""
density.py 🌡️
---------------
Sparse distribution and density maps.

A distribution map counts agents per cell. A density map slides a W x W
window with stride S over it and keeps either the sum (all-pass filter)
or the max (max filter) of each window. Only fully interior windows are
evaluated, so each axis has ceil((size - W + 1) / S) windows.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple, Union

import numpy as np
import pandas as pd

from ..scenario.models import Cell
from .conflicts import positions_to_frame

Counts = Dict[Cell, int]


@dataclass
class DistributionMap:
    """Cell -> agent count. Absent keys are zero; stored counts are ≥ 1."""
    width: int
    height: int
    counts: Counts = field(default_factory=dict)

    def __post_init__(self):
        self.counts = {cell: int(v) for cell, v in self.counts.items() if v > 0}

    def __getitem__(self, cell: Cell) -> int:
        return self.counts.get(cell, 0)

    def __iter__(self) -> Iterator[Tuple[Cell, int]]:
        return iter(sorted(self.counts.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def peak(self) -> int:
        return max(self.counts.values(), default=0)

    def to_dense(self) -> np.ndarray:
        """Array indexed [y, x]."""
        dense = np.zeros((self.height, self.width), dtype=np.int64)
        for (x, y), v in self.counts.items():
            dense[y, x] = v
        return dense


@dataclass
class DensityMap:
    """Window index -> value, for a W x W window moved with stride S."""
    width: int
    height: int
    window: int
    stride: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        return self.values.get(index, 0)

    def __len__(self) -> int:
        return len(self.values)

    def peak(self) -> int:
        return max(self.values.values(), default=0)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.height, self.width), dtype=np.int64)
        for (x, y), v in self.values.items():
            dense[y, x] = v
        return dense


def window_count(size: int, window: int, stride: int) -> int:
    if size < window:
        return 0
    return math.ceil((size - window + 1) / stride)


def _windows_covering(coord: int, window: int, stride: int, limit: int) -> range:
    """Window indices k with k*S <= coord <= k*S + W - 1, clipped to [0, limit)."""
    first = max(0, -((window - 1 - coord) // stride))
    last = min(limit - 1, coord // stride)
    return range(first, last + 1)


def _check_window(window: int, stride: int) -> None:
    if window < 1 or stride < 1:
        raise ValueError(f"window and stride must be ≥ 1 (got W={window}, S={stride})")


def density_map(dist: DistributionMap, window: int, stride: int) -> DensityMap:
    """Sum of each W x W window; only windows touching a nonzero cell are stored."""
    _check_window(window, stride)
    nx = window_count(dist.width, window, stride)
    ny = window_count(dist.height, window, stride)
    values: Dict[Tuple[int, int], int] = {}
    for (x, y), v in dist.counts.items():
        for wy in _windows_covering(y, window, stride, ny):
            for wx in _windows_covering(x, window, stride, nx):
                values[(wx, wy)] = values.get((wx, wy), 0) + v
    return DensityMap(nx, ny, window, stride, values)


def max_density_map(dist: DistributionMap, window: int, stride: int) -> DensityMap:
    """Max of each W x W window."""
    _check_window(window, stride)
    nx = window_count(dist.width, window, stride)
    ny = window_count(dist.height, window, stride)
    values: Dict[Tuple[int, int], int] = {}
    for (x, y), v in dist.counts.items():
        for wy in _windows_covering(y, window, stride, ny):
            for wx in _windows_covering(x, window, stride, nx):
                if v > values.get((wx, wy), 0):
                    values[(wx, wy)] = v
    return DensityMap(nx, ny, window, stride, values)


DENSITY_MODES = {"sum": density_map, "max": max_density_map}


# -------- distributions from positions --------

def distribution_at(positions: Union[pd.DataFrame, list], step: int, grid: Tuple[int, int]) -> DistributionMap:
    """Occupancy of a single step."""
    frame = positions_to_frame(positions)
    at = frame[frame["step"] == step]
    counts = at.groupby(["cell_x", "cell_y"]).size()
    return DistributionMap(grid[0], grid[1], {(int(x), int(y)): int(n) for (x, y), n in counts.items()})


def peak_distribution(positions: Union[pd.DataFrame, list], grid: Tuple[int, int]) -> DistributionMap:
    """Element-wise max over all steps of the per-step occupancy."""
    frame = positions_to_frame(positions)
    if frame.empty:
        return DistributionMap(grid[0], grid[1])
    per_step = frame.groupby(["step", "cell_x", "cell_y"]).size()
    peaks = per_step.groupby(level=["cell_x", "cell_y"]).max()
    return DistributionMap(grid[0], grid[1], {(int(x), int(y)): int(n) for (x, y), n in peaks.items()})
