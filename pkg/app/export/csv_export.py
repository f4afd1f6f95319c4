"""CSV export — one row per specialization point of a scan.

BOM UTF-8 encoding for Excel compatibility.
"""

from __future__ import annotations

import csv

from app.models.family import InvalidAtPoint, ScanReport
from app.models.results import DeltaCertificate, Undecided

SCAN_HEADERS = [
    "Point", "Valid", "Certified", "Delta", "Delta Lower Bound",
    "Conductor Total", "Conductor Exponents", "D Used", "Wall Time (s)",
]


class CsvExporter:
    """CSV file export operations."""

    def export_scan(self, report: ScanReport, output_path: str) -> None:
        """Export scan rows as CSV.

        Args:
            report: Scan report.
            output_path: Destination file path (.csv).
        """
        with open(output_path, "w", newline="", encoding="utf-8-sig") as f:
            writer = csv.writer(f)
            writer.writerow(SCAN_HEADERS)
            for row in report.rows:
                outcome = row.outcome
                cells = [row.point.label, row.valid.valid]
                if isinstance(outcome, DeltaCertificate):
                    cells += [
                        True, outcome.delta, outcome.delta, outcome.cond_total,
                        " ".join(str(c) for c in outcome.cond_exp), outcome.d_used,
                    ]
                elif isinstance(outcome, Undecided):
                    cells += [False, "", outcome.delta_bounded, "", "", outcome.d_max]
                elif isinstance(outcome, InvalidAtPoint):
                    cells += [False, "", "", "", "", ""]
                cells.append(f"{row.wall_time_s:.4f}")
                writer.writerow(cells)
