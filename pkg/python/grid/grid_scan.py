from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from python import settings
from python.notify import notify


@dataclass
class _ScanStats:
    label: str
    tuples: int
    completed: int
    stopped_early: bool


class GridScanService:
    """Evaluates pre-assigned parameter tuples and returns results in tuple order.

    Work is split into fixed chunks; each chunk is mapped over a thread pool and
    the coordinator keeps the order, so output never depends on the worker count.
    """

    def __init__(self, workers: Optional[int] = None) -> None:
        self.workers = max(1, int(workers or settings.WORKERS))
        self._lock = threading.Lock()

        self.scans = 0
        self.evaluated = 0
        self.failed = 0
        self.last_error = ""
        self.last_scan: Optional[_ScanStats] = None

    def _record(self, ok: bool, error: str = "") -> None:
        with self._lock:
            self.evaluated += 1
            if not ok:
                self.failed += 1
                self.last_error = error

    def _run_one(self, fn: Callable[[Any], Any], item: Any) -> Any:
        try:
            result = fn(item)
        except Exception as exc:
            self._record(False, f"{type(exc).__name__}: {exc}")
            raise
        self._record(True)
        return result

    def map_ordered(self, fn: Callable[[Any], Any], items: Sequence[Any], workers: Optional[int] = None) -> List[Any]:
        count = max(1, int(workers or self.workers))
        if count == 1 or len(items) <= 1:
            return [self._run_one(fn, item) for item in items]
        with ThreadPoolExecutor(max_workers=count) as pool:
            return list(pool.map(lambda item: self._run_one(fn, item), items))

    def scan(self,
             items: Sequence[Any],
             fn: Callable[[Any], Any],
             stop: Optional[Callable[[Any], bool]] = None,
             chunk_size: Optional[int] = None,
             label: str = "scan",
             workers: Optional[int] = None) -> List[Any]:
        """Results for ``items`` in order; with ``stop``, up to and including the first hit."""
        count = max(1, int(workers or self.workers))
        size = max(1, int(chunk_size or count))
        results: List[Any] = []
        stopped = False
        for start in range(0, len(items), size):
            chunk = list(items[start:start + size])
            chunk_results = self.map_ordered(fn, chunk, workers=count)
            if stop is not None:
                hit = next((i for i, r in enumerate(chunk_results) if stop(r)), None)
                if hit is not None:
                    results.extend(chunk_results[:hit + 1])
                    stopped = True
                    break
            results.extend(chunk_results)

        with self._lock:
            self.scans += 1
            self.last_scan = _ScanStats(label, len(items), len(results), stopped)
        if len(items) > 1:
            notify("GRID", f"{label}: {len(results)}/{len(items)} tuples evaluated"
                           f"{' (stopped at first hit)' if stopped else ''} with {count} worker(s)")
        return results

    def snapshot(self) -> Dict[str, Any]:
        with self._lock:
            last = self.last_scan
            return {
                "workers": self.workers,
                "scans": self.scans,
                "evaluated": self.evaluated,
                "failed": self.failed,
                "last_error": self.last_error,
                "last_scan": None if last is None else {
                    "label": last.label,
                    "tuples": last.tuples,
                    "completed": last.completed,
                    "stopped_early": last.stopped_early,
                },
            }


def ordered_sum(values: Sequence[float]) -> float:
    return math.fsum(values)


grid_scan = GridScanService()
