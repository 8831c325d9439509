"""Scenario Models 🗺️
────────────────────────────────────────────
Pydantic schema for the declarative scenario document.

Models are frozen and reject unknown keys. Structural problems (missing
keys, wrong types) fail at parse time; semantic invariants (ranges,
overlaps, probability sums) are reported by `validator.validate`.
"""

from enum import Enum
from typing import Any, Iterator, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Cell = Tuple[int, int]
Point = Tuple[float, float]

DEFAULT_PATH_LOSS_EXPONENT = 2.7

# 📶 Typical path-loss exponent ranges per propagation environment
PATH_LOSS_EXPONENT_RANGES = {
    "free_space": (2.0, 2.0),
    "urban": (2.7, 3.5),
    "shadowed_urban": (3.0, 5.0),
    "building_los": (1.6, 1.8),
    "building_obstructed": (4.0, 6.0),
}


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class TrajectoryType(str, Enum):
    P2P = "p2p"
    MANHATTAN = "manhattan"


class Rect(_Frozen):
    """Inclusive rectangle of grid cells."""
    x_min: int
    y_min: int
    x_max: int
    y_max: int

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data: Any) -> Any:
        # [x_min, y_min, x_max, y_max] shorthand
        if isinstance(data, (list, tuple)):
            if len(data) != 4:
                raise ValueError("rectangle shorthand needs exactly 4 numbers")
            return dict(zip(("x_min", "y_min", "x_max", "y_max"), data))
        return data

    @property
    def center(self) -> Cell:
        return ((self.x_min + self.x_max) // 2, (self.y_min + self.y_max) // 2)

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    def contains(self, cell: Cell) -> bool:
        x, y = cell
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def overlaps(self, other: "Rect") -> bool:
        return not (
            self.x_max < other.x_min
            or other.x_max < self.x_min
            or self.y_max < other.y_min
            or other.y_max < self.y_min
        )

    def inside_grid(self, width: int, height: int) -> bool:
        return 0 <= self.x_min and 0 <= self.y_min and self.x_max < width and self.y_max < height

    def cells(self) -> Iterator[Cell]:
        for y in range(self.y_min, self.y_max + 1):
            for x in range(self.x_min, self.x_max + 1):
                yield (x, y)

    def __str__(self) -> str:
        return f"({self.x_min},{self.y_min})-({self.x_max},{self.y_max})"


class LaunchArea(_Frozen):
    region: Rect
    launch_probability: float
    name: Optional[str] = None


class LandingArea(_Frozen):
    region: Rect
    selection_probability: float
    name: Optional[str] = None


class BaseStationConfig(_Frozen):
    position: Point
    channels: int = 8
    name: Optional[str] = None


class PathLossParams(_Frozen):
    """
    Log-distance propagation parameters and link-class thresholds.

    `environment` picks `n` from PATH_LOSS_EXPONENT_RANGES (low end) when
    `n` is absent.
    """
    model: str = "log-distance"
    environment: Optional[str] = None
    pl_d0: float = 40.0
    d0: float = 1.0
    n: float = DEFAULT_PATH_LOSS_EXPONENT
    sigma: float = 0.0
    good_threshold_db: float = 80.0
    nolink_threshold_db: float = 120.0

    @model_validator(mode="before")
    @classmethod
    def _exponent_from_environment(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("n") is None:
            data = {k: v for k, v in data.items() if k != "n"}
            env = data.get("environment")
            if env in PATH_LOSS_EXPONENT_RANGES:
                data["n"] = PATH_LOSS_EXPONENT_RANGES[env][0]
        return data


class GeoAnchor(_Frozen):
    """Geographic position of the grid origin corner, for trajectory exports."""
    lat: float
    lon: float
    meters_per_degree: float = 111_320.0


class ScenarioConfig(_Frozen):
    name: str = "scenario"
    grid_width: int
    grid_height: int
    cell_size_m: float = 18.0
    sim_steps: int = 20_000
    step_seconds: float = 1.0
    t_min: int = 10
    trajectory_type: TrajectoryType = TrajectoryType.P2P
    managed: bool = False
    max_hold: int = 0
    speed_cells_per_step: float = 1.0
    launch_areas: Tuple[LaunchArea, ...]
    landing_areas: Tuple[LandingArea, ...]
    no_fly_zones: Tuple[Rect, ...] = ()
    base_stations: Tuple[BaseStationConfig, ...] = ()
    path_loss: PathLossParams = Field(default_factory=PathLossParams)
    density_window_w: int = 5
    density_stride_s: int = 5
    random_endpoints: bool = False
    require_coverage: bool = True
    geo_anchor: Optional[GeoAnchor] = None
    start_time: str = "1970-01-01T00:00:00Z"
    rng_seed: int

    @field_validator("trajectory_type", mode="before")
    @classmethod
    def _lower_trajectory_type(cls, value: Any) -> Any:
        return value.lower() if isinstance(value, str) else value

    @property
    def map_width_m(self) -> float:
        return self.grid_width * self.cell_size_m

    @property
    def map_height_m(self) -> float:
        return self.grid_height * self.cell_size_m

    @property
    def speed_m_per_step(self) -> float:
        return self.speed_cells_per_step * self.cell_size_m

    def cell_center_m(self, cell: Cell) -> Point:
        return ((cell[0] + 0.5) * self.cell_size_m, (cell[1] + 0.5) * self.cell_size_m)

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return self.model_copy(update={"rng_seed": seed})
