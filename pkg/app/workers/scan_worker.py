"""Scan worker — concurrent evaluation of family scan rows.

Runs FamilyScanner.evaluate_point for every point on a thread pool.
Rows are independent; the report is assembled in input order, so the
result is identical to the sequential scan.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from typing import TYPE_CHECKING, Sequence

from app.core.family_scan import FamilyScanner, assemble_report

if TYPE_CHECKING:
    from app.models.config import ScanConfig
    from app.models.family import FamilyParameterization, ScanReport, ScanRow, SpecPoint

logger = logging.getLogger(__name__)


class ScanWorker:
    """Thread-pool scan runner.

    Reports progress (0-100, point label) through ``progress_callback``
    and supports cooperative cancellation via ``cancel()``.

    Usage:
        worker = ScanWorker(config, progress_callback=on_progress)
        worker.setup(family, points)
        report = worker.run()
    """

    def __init__(
        self,
        config: ScanConfig | None = None,
        progress_callback: Callable[[int, str], None] | None = None,
    ) -> None:
        self._scanner = FamilyScanner(config)
        self._progress = progress_callback or (lambda p, label: None)
        self._cancel_event = threading.Event()
        self._family: FamilyParameterization | None = None
        self._points: list[SpecPoint] = []

    def setup(self, family: FamilyParameterization, points: Sequence[SpecPoint]) -> None:
        """Configure the scan; must be called before run()."""
        self._scanner.check_points(family, points)
        self._family = family
        self._points = list(points)
        self._cancel_event.clear()

    def cancel(self) -> None:
        """Request cancellation; pending rows are dropped."""
        self._cancel_event.set()

    @property
    def cancelled(self) -> bool:
        return self._cancel_event.is_set()

    def run(self) -> ScanReport:
        """Evaluate all rows and assemble the report.

        Raises:
            RuntimeError: If setup() was not called.
            InterruptedError: If cancelled before completion.
        """
        if self._family is None:
            raise RuntimeError("ScanWorker.setup() must be called before run()")
        points = self._points
        special = [k for k, p in enumerate(points) if not p.is_generic]
        generic = [k for k, p in enumerate(points) if p.is_generic]
        rows: dict[int, ScanRow] = {}

        with ThreadPoolExecutor(max_workers=self._scanner.config.workers) as pool:
            self._run_batch(pool, special, rows, None)
            cut = self._scanner.generic_truncation([rows[k] for k in special])
            self._run_batch(pool, generic, rows, cut)

        return assemble_report(self._family, [rows[k] for k in range(len(points))])

    def _run_batch(
        self,
        pool: ThreadPoolExecutor,
        indices: list[int],
        rows: dict[int, ScanRow],
        cut: int | None,
    ) -> None:
        total = len(self._points)
        pending: dict[Future, int] = {
            pool.submit(self._scanner.evaluate_point, self._family, self._points[k], cut): k
            for k in indices
        }
        while pending:
            if self.cancelled:
                for fut in pending:
                    fut.cancel()
                logger.info("Scan cancelled with %d rows pending", len(pending))
                raise InterruptedError("Scan cancelled")
            done, _ = wait(pending, timeout=0.1, return_when=FIRST_COMPLETED)
            for fut in done:
                k = pending.pop(fut)
                rows[k] = fut.result()
                self._progress(int(len(rows) / total * 100), self._points[k].label)
