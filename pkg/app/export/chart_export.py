"""Scan chart export — δ and c_φ per specialization point (PNG/SVG/PDF).

Uses a standalone matplotlib Figure with the Agg canvas; no display needed.
"""

from __future__ import annotations

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from app.models.family import ScanReport
from app.models.results import DeltaCertificate, Undecided


class ChartExporter:
    """Scan chart export operations."""

    def build_figure(self, report: ScanReport) -> Figure:
        """Bar chart of certified δ and c_φ; Undecided rows show δ_{≤D} hatched."""
        labels = [row.point.label for row in report.rows]
        x = list(range(len(labels)))
        deltas, conductors, hatched = [], [], []
        for row in report.rows:
            outcome = row.outcome
            if isinstance(outcome, DeltaCertificate):
                deltas.append(outcome.delta)
                conductors.append(outcome.cond_total)
                hatched.append(False)
            elif isinstance(outcome, Undecided):
                deltas.append(outcome.delta_bounded)
                conductors.append(0)
                hatched.append(True)
            else:
                deltas.append(0)
                conductors.append(0)
                hatched.append(False)

        fig = Figure(figsize=(max(4.0, 1.2 * len(labels)), 3.5), dpi=100)
        ax = fig.add_subplot(111)
        width = 0.38
        bars = ax.bar([k - width / 2 for k in x], deltas, width, label="δ", color="#3B82F6")
        for bar, h in zip(bars, hatched):
            if h:
                bar.set_hatch("//")
                bar.set_alpha(0.5)
        ax.bar([k + width / 2 for k in x], conductors, width, label="c", color="#F59E0B")

        audit = report.audit
        if audit is not None and audit.generic_delta is not None:
            ax.axhline(audit.generic_delta, color="#64748B", linestyle="--",
                       linewidth=1, label="generic δ")

        ax.set_xticks(x)
        ax.set_xticklabels(labels)
        ax.set_ylabel("value")
        ax.set_title(f"Scan over Spec {report.family.ring.label}")
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
        ax.legend(fontsize=8)
        fig.tight_layout()
        return fig

    def export_scan_chart(self, report: ScanReport, output_path: str, dpi: int = 150) -> None:
        """Render the scan chart to *output_path* (format from the extension).

        Args:
            report: Scan report.
            output_path: Destination file path (.png, .svg, .pdf).
            dpi: Raster resolution.
        """
        fig = self.build_figure(report)
        FigureCanvasAgg(fig)
        fig.savefig(output_path, dpi=dpi)
