"""JSON report export.

Writes certificates, Undecided outcomes and scan reports with the stable
key order of ``app.core.serializers``.
"""

from __future__ import annotations

from typing import Union

from app.core.serializers import dumps, outcome_to_dict, scan_report_to_dict
from app.models.family import ScanReport
from app.models.results import DeltaCertificate, Undecided

Report = Union[DeltaCertificate, Undecided, ScanReport]


class JsonExporter:
    """JSON report file operations."""

    def report_to_dict(self, result: Report, timings: bool = False) -> dict:
        if isinstance(result, ScanReport):
            return scan_report_to_dict(result, timings)
        return outcome_to_dict(result)

    def export_report(self, result: Report, output_path: str, timings: bool = False) -> None:
        """Write a report as formatted JSON.

        Args:
            result: Certificate, Undecided outcome or scan report.
            output_path: Destination file path (.json).
            timings: Include per-row wall times (scan reports only).
        """
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(dumps(self.report_to_dict(result, timings)))
