"""
executors.py ⚙️
────────────────────────────────────────────
Step executors shared by the services.

BaseExecutor walks a chain of steps and keeps the result history in
chain order. ParallelExecutor runs each step through a picklable job,
optionally in a process pool; results are still returned in chain order.
"""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Generic, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

S = TypeVar("S")
R = TypeVar("R")


class BaseExecutor(ABC, Generic[S, R]):
    def __init__(self):
        self.history: List[R] = []

    @abstractmethod
    def execute_step(self, step: S) -> R:
        """Override: logic for one step in the chain"""

    def run(self, chain: Iterable[S]) -> List[R]:
        """
        Executes the steps in order.

        Args:
            chain: steps to execute

        Returns:
            list: result history, one entry per step
        """
        for step in chain:
            self.history.append(self.execute_step(step))
        return self.history


class ParallelExecutor(BaseExecutor[S, R]):
    """
    ParallelExecutor 🧵
    Runs `job(step)` for every step, in-process for one worker or short
    chains, otherwise across a process pool.
    """

    def __init__(self, job: Callable[[S], R], workers: int = 1):
        super().__init__()
        self.job = job
        self.workers = max(1, int(workers))

    def execute_step(self, step: S) -> R:
        return self.job(step)

    def run(self, chain: Iterable[S]) -> List[R]:
        steps = list(chain)
        if self.workers == 1 or len(steps) <= 1:
            return super().run(steps)
        workers = min(self.workers, len(steps))
        logger.info(f"Running {len(steps)} jobs on {workers} worker processes")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map yields in submission order
            self.history.extend(pool.map(self.job, steps))
        return self.history
