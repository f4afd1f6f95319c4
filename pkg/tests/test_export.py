"""Tests for export modules — JSON, CSV, chart and text reports."""

import csv
import json

import pytest

from app.core.coeffield import FieldDescriptor
from app.core.delta_engine import DeltaEngine
from app.core.family_scan import scan
from app.core.parameterization import monomial_curve
from app.core.serializers import parse_document
from app.export.chart_export import ChartExporter
from app.export.csv_export import SCAN_HEADERS, CsvExporter
from app.export.json_export import JsonExporter
from app.export.text_report import emit_report
from app.models.config import EngineConfig, ScanConfig
from app.models.family import SpecPoint

QQ_F = FieldDescriptor.rationals()


# ── Helpers ──────────────────────────────────────────────────────────

@pytest.fixture(scope="module")
def cusp_cert():
    return DeltaEngine().delta_certified(monomial_curve(QQ_F, [2, 3]))


@pytest.fixture(scope="module")
def undecided():
    return DeltaEngine(EngineConfig(d_init=8, d_max=16)).delta_certified(monomial_curve(QQ_F, [4]))


@pytest.fixture(scope="module")
def jump_report():
    fam = parse_document(
        '{"ring":"Q[s]","n":4,"r":1,"entries":[["t^5","t^6","(s)*t^4 + t^8","t^9"]]}'
    )
    return scan(fam, [SpecPoint.generic_s(), SpecPoint.lam(0), SpecPoint.lam(1)])


# ── JSON Export ──────────────────────────────────────────────────────

class TestJsonExport:

    def test_certificate_file(self, tmp_path, cusp_cert):
        path = tmp_path / "cusp.json"
        JsonExporter().export_report(cusp_cert, str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["delta"] == 1
        assert data["certified"] is True

    def test_scan_file(self, tmp_path, jump_report):
        path = tmp_path / "scan.json"
        JsonExporter().export_report(jump_report, str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        assert [row["point"] for row in data["rows"]] == ["generic", "s=0", "s=1"]
        assert data["audit"]["pass"] is True

    def test_formatted(self, tmp_path, undecided):
        path = tmp_path / "und.json"
        JsonExporter().export_report(undecided, str(path))
        content = path.read_text(encoding="utf-8")
        assert "  " in content
        assert content.endswith("\n")

    def test_timings_only_on_request(self, jump_report):
        exporter = JsonExporter()
        plain = exporter.report_to_dict(jump_report)
        timed = exporter.report_to_dict(jump_report, timings=True)
        assert "wall_time_s" not in plain["rows"][0]
        assert timed["rows"][0]["wall_time_s"] >= 0.0


# ── CSV Export ───────────────────────────────────────────────────────

class TestCsvExport:
    """CSV export with BOM UTF-8."""

    def test_bom_and_headers(self, tmp_path, jump_report):
        path = tmp_path / "scan.csv"
        CsvExporter().export_scan(jump_report, str(path))
        raw = path.read_bytes()
        assert raw.startswith(b"\xef\xbb\xbf")
        with open(path, encoding="utf-8-sig", newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == SCAN_HEADERS
        assert len(rows) == 4

    def test_values(self, tmp_path, jump_report):
        path = tmp_path / "scan.csv"
        CsvExporter().export_scan(jump_report, str(path))
        with open(path, encoding="utf-8-sig", newline="") as f:
            rows = list(csv.DictReader(f))
        special = rows[1]
        assert special["Point"] == "s=0"
        assert special["Certified"] == "True"
        assert special["Delta"] == "5"
        assert special["Conductor Total"] == "8"

    def test_undecided_row(self, tmp_path):
        fam = parse_document('{"ring":"Q[s]","n":1,"r":1,"entries":[["t^4"]]}')
        report = scan(fam, [SpecPoint.lam(0)], ScanConfig(engine=EngineConfig(d_init=8, d_max=16)))
        path = tmp_path / "und.csv"
        CsvExporter().export_scan(report, str(path))
        with open(path, encoding="utf-8-sig", newline="") as f:
            row = next(csv.DictReader(f))
        assert row["Certified"] == "False"
        assert row["Delta"] == ""
        assert row["D Used"] == "16"


# ── Chart Export ─────────────────────────────────────────────────────

class TestChartExport:

    def test_png_written(self, tmp_path, jump_report):
        path = tmp_path / "scan.png"
        ChartExporter().export_scan_chart(jump_report, str(path), dpi=50)
        assert path.exists()
        assert path.read_bytes()[:4] == b"\x89PNG"

    def test_figure_bars(self, jump_report):
        fig = ChartExporter().build_figure(jump_report)
        ax = fig.axes[0]
        heights = [bar.get_height() for bar in ax.patches]
        # δ bars first, then c bars
        assert heights[:3] == [4, 5, 4]
        assert heights[3:] == [8, 8, 8]
        assert [t.get_text() for t in ax.get_xticklabels()] == ["generic", "s=0", "s=1"]


# ── Text reports ─────────────────────────────────────────────────────

class TestEmitReport:

    def test_certificate_human(self, cusp_cert):
        text = emit_report(cusp_cert)
        lines = dict(line.split(None, 1) for line in text.splitlines())
        assert lines["delta"] == "1"
        assert lines["gorenstein"] == "yes"

    def test_undecided_human(self, undecided):
        text = emit_report(undecided)
        assert "gcd_evidence  4" in text
        assert "D_max         16" in text

    def test_scan_human(self, jump_report):
        text = emit_report(jump_report)
        assert "audit: PASS" in text
        assert "jumping points: s=0" in text

    def test_json(self, cusp_cert, jump_report):
        assert json.loads(emit_report(cusp_cert, "json"))["cond_total"] == 2
        data = json.loads(emit_report(jump_report, "json", timings=True))
        assert "wall_time_s" in data["rows"][0]

    def test_semigroup(self, cusp_cert):
        sg = DeltaEngine().semigroup(cusp_cert)
        assert json.loads(emit_report(sg, "json")) == {
            "gaps": [1], "generators": [2, 3], "frobenius": 1, "conductor": 2,
        }

    def test_unknown_format(self, cusp_cert):
        with pytest.raises(ValueError):
            emit_report(cusp_cert, "xml")
