"""
trajectories.py 🧭
-------------------
Per-step trajectory generators: straight free flight (P2P), L-shaped
Manhattan routes and shortest 4-connected routes around blocked cells.
"""

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from itertools import count
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..scenario.models import Cell, Point, Rect

CellPredicate = Callable[[Cell], bool]

# +x, −x, +y, −y
NEIGHBOR_ORDER: Tuple[Tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


class AxisOrder(str, Enum):
    X_FIRST = "XFirst"
    Y_FIRST = "YFirst"


@dataclass(frozen=True, slots=True)
class Trajectory:
    """
    One cell per step from `launch_step` on. `positions_m` carries the
    continuous position per step for free-flight trajectories.
    """
    launch_step: int
    cells: Tuple[Cell, ...]
    positions_m: Optional[Tuple[Point, ...]] = None

    @property
    def origin(self) -> Cell:
        return self.cells[0]

    @property
    def destination(self) -> Cell:
        return self.cells[-1]

    @property
    def flight_steps(self) -> int:
        return len(self.cells) - 1

    @property
    def end_step(self) -> int:
        return self.launch_step + self.flight_steps

    def shifted(self, launch_step: int) -> "Trajectory":
        return Trajectory(launch_step, self.cells, self.positions_m)

    def occupancy(self, hold: int = 0) -> Iterator[Tuple[Cell, int]]:
        """(cell, step) pairs, including `hold` steps parked at the origin before launch_step."""
        start = self.launch_step - hold
        for i in range(hold):
            yield self.cells[0], start + i
        for k, cell in enumerate(self.cells):
            yield cell, self.launch_step + k


class GridMask:
    """Boolean cell predicate over a [y, x] array; cells off the grid read as False."""

    def __init__(self, mask: np.ndarray):
        self.mask = np.asarray(mask, dtype=bool)

    @classmethod
    def from_rects(cls, rects: Iterable[Rect], grid: Tuple[int, int]) -> "GridMask":
        width, height = grid
        mask = np.zeros((height, width), dtype=bool)
        for rect in rects:
            mask[max(rect.y_min, 0):rect.y_max + 1, max(rect.x_min, 0):rect.x_max + 1] = True
        return cls(mask)

    def __call__(self, cell: Cell) -> bool:
        x, y = cell
        height, width = self.mask.shape
        return 0 <= x < width and 0 <= y < height and bool(self.mask[y, x])

    def __len__(self) -> int:
        return int(self.mask.sum())


def _cell_of(point: Point, cell_size_m: float) -> Cell:
    return (math.floor(point[0] / cell_size_m), math.floor(point[1] / cell_size_m))


def p2p_trajectory(
    origin_m: Point,
    dest_m: Point,
    speed_m_per_step: float,
    cell_size_m: float,
    launch_step: int = 0,
) -> Trajectory:
    """
    Straight-line flight sampled once per step.

    Position at step k is origin + min(k·speed, D)·unit(dest − origin);
    the trajectory has ceil(D/speed) + 1 cells.
    """
    ox, oy = origin_m
    dx, dy = dest_m[0] - ox, dest_m[1] - oy
    distance = math.hypot(dx, dy)
    if distance == 0.0:
        return Trajectory(launch_step, (_cell_of(origin_m, cell_size_m),), (tuple(origin_m),))

    steps = math.ceil(distance / speed_m_per_step - 1e-12)
    ux, uy = dx / distance, dy / distance
    positions: List[Point] = []
    for k in range(steps):
        travelled = min(k * speed_m_per_step, distance)
        positions.append((ox + travelled * ux, oy + travelled * uy))
    positions.append((float(dest_m[0]), float(dest_m[1])))
    cells = tuple(_cell_of(p, cell_size_m) for p in positions)
    return Trajectory(launch_step, cells, tuple(positions))


def manhattan_trajectory(
    origin_cell: Cell,
    dest_cell: Cell,
    axis_order: AxisOrder = AxisOrder.X_FIRST,
    launch_step: int = 0,
) -> Trajectory:
    """L-shaped route: all of one axis, then all of the other."""
    (x0, y0), (x1, y1) = origin_cell, dest_cell
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    cells: List[Cell] = [(x0, y0)]
    x, y = x0, y0
    if axis_order == AxisOrder.X_FIRST:
        while x != x1:
            x += sx
            cells.append((x, y))
        while y != y1:
            y += sy
            cells.append((x, y))
    else:
        while y != y1:
            y += sy
            cells.append((x, y))
        while x != x1:
            x += sx
            cells.append((x, y))
    return Trajectory(launch_step, tuple(cells))


def l1_distance(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def constrained_route(
    origin_cell: Cell,
    dest_cell: Cell,
    blocked: CellPredicate,
    grid: Tuple[int, int],
    launch_step: int = 0,
) -> Optional[Trajectory]:
    """
    Shortest 4-connected route that avoids blocked cells (A* with L1).

    Ties are broken by (estimated total, heuristic, insertion order) and
    neighbors are expanded in NEIGHBOR_ORDER, so equal inputs give equal
    routes. Returns None when the destination is cut off.
    """
    width, height = grid

    def passable(cell: Cell) -> bool:
        return 0 <= cell[0] < width and 0 <= cell[1] < height and not blocked(cell)

    if not passable(origin_cell) or not passable(dest_cell):
        return None

    tie = count()
    h0 = l1_distance(origin_cell, dest_cell)
    frontier: List[Tuple[int, int, int, Cell]] = [(h0, h0, next(tie), origin_cell)]
    came_from: Dict[Cell, Optional[Cell]] = {origin_cell: None}
    cost: Dict[Cell, int] = {origin_cell: 0}
    closed = set()

    while frontier:
        _, _, _, current = heapq.heappop(frontier)
        if current in closed:
            continue
        if current == dest_cell:
            path: List[Cell] = []
            node: Optional[Cell] = current
            while node is not None:
                path.append(node)
                node = came_from[node]
            path.reverse()
            return Trajectory(launch_step, tuple(path))
        closed.add(current)
        x, y = current
        for dx, dy in NEIGHBOR_ORDER:
            nxt = (x + dx, y + dy)
            if nxt in closed or not passable(nxt):
                continue
            g = cost[current] + 1
            if g < cost.get(nxt, math.inf):
                cost[nxt] = g
                came_from[nxt] = current
                h = l1_distance(nxt, dest_cell)
                heapq.heappush(frontier, (g + h, h, next(tie), nxt))
    return None
