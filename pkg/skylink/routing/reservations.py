"""
reservations.py 📅
-------------------
Sparse space-time booking table: (cell, step) → agent id.
"""

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ..core.utils.error_handlers import ReservationConflict
from ..scenario.models import Cell
from .trajectories import Trajectory

Key = Tuple[int, int, int]


class ReservationTable:
    """
    Answers "is cell (x, y) free at step t?" and books whole plans.

    Every key has exactly one owner. Booking a taken key raises
    ReservationConflict and leaves the table unchanged.
    """

    def __init__(self):
        self._owner: Dict[Key, int] = {}
        self._keys: Dict[int, List[Key]] = {}

    # -------- queries --------

    def is_free(self, cell: Cell, step: int) -> bool:
        return (cell[0], cell[1], step) not in self._owner

    def owner(self, cell: Cell, step: int) -> Optional[int]:
        return self._owner.get((cell[0], cell[1], step))

    def all_free(self, pairs: Iterable[Tuple[Cell, int]]) -> bool:
        owner = self._owner
        return all((cell[0], cell[1], step) not in owner for cell, step in pairs)

    def keys_of(self, agent_id: int) -> List[Key]:
        return list(self._keys.get(agent_id, ()))

    def agents(self) -> List[int]:
        return sorted(self._keys)

    def items(self) -> Iterator[Tuple[Key, int]]:
        return iter(sorted(self._owner.items()))

    def __len__(self) -> int:
        return len(self._owner)

    def __contains__(self, key: Key) -> bool:
        return key in self._owner

    # -------- bookings --------

    def book(self, pairs: Iterable[Tuple[Cell, int]], agent_id: int) -> None:
        keys = [(cell[0], cell[1], step) for cell, step in pairs]
        staged = set()
        for key in keys:
            owner = self._owner.get(key)
            if owner is not None or key in staged:
                raise ReservationConflict((key[0], key[1]), key[2], agent_id if owner is None else owner, agent_id)
            staged.add(key)
        for key in keys:
            self._owner[key] = agent_id
        self._keys.setdefault(agent_id, []).extend(keys)

    def release(self, agent_id: int) -> int:
        keys = self._keys.pop(agent_id, [])
        for key in keys:
            if self._owner.get(key) == agent_id:
                del self._owner[key]
        return len(keys)


def reserve(trajectory: Trajectory, agent_id: int, table: ReservationTable, hold: int = 0) -> ReservationTable:
    """Book every (cell, step) of the trajectory, including hold steps, for `agent_id`."""
    table.book(trajectory.occupancy(hold), agent_id)
    return table


def release_landed(agent_id: int, table: ReservationTable) -> ReservationTable:
    table.release(agent_id)
    return table
