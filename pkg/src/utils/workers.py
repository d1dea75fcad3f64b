"""
Process pool for independent Monte Carlo trial chunks
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from ..config.settings import TRIAL_CHUNK
from .helpers import worker_count

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(n_trials: int, chunk: int = TRIAL_CHUNK) -> List[Tuple[int, int]]:
    """Split [0, n_trials) into consecutive [start, stop) ranges of at most `chunk` trials"""
    if chunk < 1:
        raise ValueError(f"chunk must be >= 1, got {chunk}")
    return [(start, min(start + chunk, n_trials)) for start in range(0, n_trials, chunk)]


class TrialPool:
    """Runs a pure function over task chunks; results come back in submission order"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = worker_count(workers)
        self.executor: Optional[ProcessPoolExecutor] = None
        self.running = False

        # Statistics
        self.tasks_done = 0

    def start(self) -> None:
        """Start the worker processes (no-op for a single worker)"""
        if self.running:
            return
        if self.workers > 1:
            self.executor = ProcessPoolExecutor(max_workers=self.workers)
            logger.debug("started %d worker processes", self.workers)
        self.running = True

    def stop(self) -> None:
        """Shut the pool down and wait for outstanding tasks"""
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None
        self.running = False

    def map(self, fn: Callable[[T], R], tasks: Sequence[T],
            on_done: Optional[Callable[[T, R], None]] = None) -> List[R]:
        """Apply fn to every task; on_done is called in task order as results arrive"""
        if not self.running:
            self.start()
        if self.executor is None:
            results: Iterable[R] = map(fn, tasks)
        else:
            results = self.executor.map(fn, tasks)

        collected = []
        for task, result in zip(tasks, results):
            collected.append(result)
            self.tasks_done += 1
            if on_done:
                on_done(task, result)
        return collected

    def __enter__(self) -> "TrialPool":
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()
