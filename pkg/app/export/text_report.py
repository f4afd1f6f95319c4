"""Text rendering of results: fixed-width human tables or stable JSON."""

from __future__ import annotations

from typing import Any, Union

from app.core.serializers import dumps, outcome_to_dict, scan_report_to_dict, semigroup_to_dict
from app.models.family import InvalidAtPoint, ScanReport
from app.models.results import DeltaCertificate, SemigroupData, Undecided

Result = Union[DeltaCertificate, Undecided, ScanReport, SemigroupData]

FORMATS = ("human", "json")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _ints(values: Any) -> str:
    return " ".join(str(v) for v in values) or "-"


def _kv(rows: list[tuple[str, Any]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _certificate_text(cert: DeltaCertificate) -> str:
    rows: list[tuple[str, Any]] = [
        ("field", cert.field_label),
        ("delta", cert.delta),
        ("cond_exp", _ints(cert.cond_exp)),
        ("cond_total", cert.cond_total),
        ("gorenstein", _yes(cert.gorenstein)),
        ("det_bound_max", cert.det_bound_max),
        ("det_bound_delta", cert.det_bound_delta),
        ("D_used", cert.d_used),
    ]
    if cert.semigroup is not None:
        rows += [
            ("gaps", _ints(cert.semigroup.gaps)),
            ("generators", _ints(cert.semigroup.generators)),
            ("frobenius", cert.semigroup.frobenius),
        ]
    return _kv(rows)


def _undecided_text(und: Undecided) -> str:
    return _kv([
        ("field", und.field_label),
        ("certified", "no"),
        ("delta >=", und.delta_bounded),
        ("gcd_evidence", _ints(und.gcd_evidence)),
        ("D_max", und.d_max),
        ("note", und.note),
    ])


def _semigroup_text(sg: SemigroupData) -> str:
    return _kv([
        ("gaps", _ints(sg.gaps)),
        ("generators", _ints(sg.generators)),
        ("frobenius", sg.frobenius),
        ("conductor", sg.conductor),
    ])


def _scan_text(report: ScanReport) -> str:
    header = f"{'point':<12} {'valid':<5} {'delta':>7} {'c':>5} {'cond_exp':<12} {'D':>6}  status"
    lines = [header, "-" * len(header)]
    for row in report.rows:
        outcome = row.outcome
        if isinstance(outcome, DeltaCertificate):
            delta, c, exps, d, status = (
                str(outcome.delta), str(outcome.cond_total),
                _ints(outcome.cond_exp), str(outcome.d_used), "certified",
            )
        elif isinstance(outcome, Undecided):
            delta, c, exps, d, status = (
                f">={outcome.delta_bounded}", "?", "-", str(outcome.d_max), "undecided",
            )
        else:
            delta, c, exps, d = "-", "-", "-", "-"
            status = "invalid" if isinstance(outcome, InvalidAtPoint) else "?"
        lines.append(
            f"{row.point.label:<12} {_yes(row.valid.valid):<5} {delta:>7} {c:>5} "
            f"{exps:<12} {d:>6}  {status}"
        )
    audit = report.audit
    lines.append("")
    if audit is None:
        lines.append("audit: skipped (no generic point)")
    else:
        lines.append(f"audit: {'PASS' if audit.passed else 'FAIL'}")
        if audit.violations:
            lines.append(f"  violations: {', '.join(audit.violations)}")
        lines.append(f"  jumping points: {', '.join(audit.jumping_points) or '-'}")
        for point, reason in audit.failures:
            lines.append(f"  failure at {point}: {reason}")
        for note in audit.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def emit_report(result: Result, fmt: str = "human", timings: bool = False) -> str:
    """Render *result* as a human table or as byte-stable JSON.

    Args:
        result: Certificate, Undecided, scan report or semigroup data.
        fmt: ``"human"`` or ``"json"``.
        timings: Include per-row wall times in scan JSON.
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown report format: {fmt!r}")
    if fmt == "json":
        if isinstance(result, ScanReport):
            return dumps(scan_report_to_dict(result, timings))
        if isinstance(result, SemigroupData):
            return dumps(semigroup_to_dict(result))
        return dumps(outcome_to_dict(result))
    if isinstance(result, ScanReport):
        return _scan_text(result)
    if isinstance(result, SemigroupData):
        return _semigroup_text(result)
    if isinstance(result, DeltaCertificate):
        return _certificate_text(result)
    return _undecided_text(result)
