"""Export — report output (text, JSON, CSV, chart)."""

from app.export.chart_export import ChartExporter
from app.export.csv_export import CsvExporter
from app.export.json_export import JsonExporter

__all__ = [
    "ChartExporter",
    "CsvExporter",
    "JsonExporter",
]
