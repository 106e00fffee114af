"""
Per-stage wall-clock accounting for solver runs.
"""

import threading
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Any, Iterator

from loguru import logger


@dataclass
class StageMetrics:
    """Accumulated timings of one pipeline stage"""

    name: str
    calls: int = 0
    total_seconds: float = 0.0
    max_seconds: float = 0.0

    def record(self, seconds: float):
        self.calls += 1
        self.total_seconds += seconds
        self.max_seconds = max(self.max_seconds, seconds)


class RunMonitor:
    """Thread-safe stage timer shared by the worker threads of one solve"""

    def __init__(self):
        self.start_time = time.perf_counter()
        self._stages: dict[str, StageMetrics] = {}
        self._metrics_lock = threading.RLock()

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            with self._metrics_lock:
                self._stages.setdefault(name, StageMetrics(name)).record(elapsed)

    def metrics(self, name: str) -> StageMetrics | None:
        with self._metrics_lock:
            return self._stages.get(name)

    def summary(self) -> dict[str, Any]:
        with self._metrics_lock:
            stages = {name: asdict(m) for name, m in sorted(self._stages.items())}
        total = time.perf_counter() - self.start_time
        logger.debug(f"run finished in {total:.3f}s over {len(stages)} stages")
        return {"total_seconds": total, "stages": stages}
