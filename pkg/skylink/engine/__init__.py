from .agents import AgentState, UasAgent
from .log import (
    CancelEvent,
    LandEvent,
    LaunchEvent,
    LogFrames,
    PositionRecord,
    SimulationLog,
    read_frames,
    write_frames,
)
from .simulator import LaunchDecision, run, run_replicates, schedule_launches, step
from .world import Stream, WorldState, new_world, replicate_seed, substream

__all__ = [
    "AgentState",
    "CancelEvent",
    "LandEvent",
    "LaunchDecision",
    "LaunchEvent",
    "LogFrames",
    "PositionRecord",
    "SimulationLog",
    "Stream",
    "UasAgent",
    "WorldState",
    "new_world",
    "read_frames",
    "replicate_seed",
    "run",
    "run_replicates",
    "schedule_launches",
    "step",
    "substream",
    "write_frames",
]
