"""Serialization utilities — input documents and JSON-safe report dicts.

Input documents are JSON objects with a ``"field"`` tag (parameterization)
or a ``"ring"`` tag (family), ``n``, ``r`` and ``entries`` as strings in
the entry grammar of ``app.core.expression_parser``.  Reports are plain
dicts with a fixed key order; ``dumps`` renders them byte-stably.

Rational numbers are written as strings (``"3/4"``), never as floats.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from app.constants import DOCUMENT_SCHEMA_VERSION, ENGINE_STRATEGIES
from app.core.coeffield import FieldDescriptor, RingDescriptor, RingKind
from app.core.errors import DocumentSyntaxError, ShapeError
from app.core.expression_parser import parse_entry
from app.core.series import format_polynomial
from app.models.document import DocumentOptions, InputDocument
from app.models.family import (
    AuditFindings,
    FamilyParameterization,
    InvalidAtPoint,
    ScanReport,
    ScanRow,
    SpecPoint,
)
from app.models.param import Parameterization
from app.models.results import DeltaCertificate, SemigroupData, Undecided

_PRIME_TAG = re.compile(r"^(?:GF\((\d+)\)|F_(\d+))$")


# =====================================================================
# Field / ring tags and point labels
# =====================================================================


def parse_field_tag(tag: str) -> FieldDescriptor:
    """``"Q"``, ``"GF(7)"`` / ``"F_7"``, ``"Q(s)"`` → FieldDescriptor."""
    if tag == "Q":
        return FieldDescriptor.rationals()
    if tag == "Q(s)":
        return FieldDescriptor.rational_functions()
    match = _PRIME_TAG.match(tag)
    if match:
        p = int(match.group(1) or match.group(2))
        try:
            return FieldDescriptor.prime_field(p)
        except ValueError as exc:
            raise DocumentSyntaxError(str(exc)) from exc
    raise DocumentSyntaxError(f"Unknown field tag: {tag!r}")


def parse_ring_tag(tag: str) -> RingDescriptor:
    """``"Z"`` or ``"Q[s]"`` → RingDescriptor."""
    if tag == "Z":
        return RingDescriptor.integers()
    if tag == "Q[s]":
        return RingDescriptor.polynomials()
    raise DocumentSyntaxError(f"Unknown ring tag: {tag!r}")


def point_from_label(label: str, ring: RingDescriptor) -> SpecPoint:
    """``s=0``, ``s=-1/2``, ``p=3``, ``generic`` → SpecPoint of Spec *ring*."""
    text = label.strip()
    if text == "generic":
        return SpecPoint.generic_z() if ring.kind is RingKind.INTEGERS else SpecPoint.generic_s()
    key, _, value = text.partition("=")
    key, value = key.strip(), value.strip()
    try:
        if key == "s" and ring.kind is RingKind.POLYNOMIALS:
            return SpecPoint.lam(Fraction(value))
        if key == "p" and ring.kind is RingKind.INTEGERS:
            return SpecPoint.prime(int(value))
    except ValueError as exc:
        raise DocumentSyntaxError(f"Bad point {label!r}: {exc}") from exc
    raise DocumentSyntaxError(f"Point {label!r} is not a point of Spec {ring.label}")


# =====================================================================
# Document parsing
# =====================================================================


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _require(data: dict, key: str, kind: type) -> Any:
    if key not in data:
        raise DocumentSyntaxError(f"Missing key {key!r}")
    value = data[key]
    if (kind is int and isinstance(value, bool)) or not isinstance(value, kind):
        raise DocumentSyntaxError(f"Key {key!r} must be {kind.__name__}, got {value!r}")
    return value


def _parse_options(raw: Any) -> DocumentOptions:
    if raw is None:
        return DocumentOptions()
    if not isinstance(raw, dict):
        raise DocumentSyntaxError(f"'options' must be an object, got {raw!r}")
    unknown = set(raw) - {"dinit", "dmax", "strategy"}
    if unknown:
        raise DocumentSyntaxError(f"Unknown options: {sorted(unknown)}")
    opts = DocumentOptions(
        dinit=_require(raw, "dinit", int) if "dinit" in raw else None,
        dmax=_require(raw, "dmax", int) if "dmax" in raw else None,
        strategy=_require(raw, "strategy", str) if "strategy" in raw else None,
    )
    if opts.strategy is not None and opts.strategy not in ENGINE_STRATEGIES:
        raise DocumentSyntaxError(f"Unknown strategy: {opts.strategy!r}")
    return opts


def read_document(text: str) -> InputDocument:
    """Parse a document into value, options and points.

    Raises:
        DocumentSyntaxError: Malformed JSON, unknown tags, bad entries
            (with the document line/column of the offending entry).
        ShapeError: Entry count differs from r × n.
        ConstantTermError: An entry has a constant term.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise DocumentSyntaxError("Document must be a JSON object", 1, 1)

    has_field, has_ring = "field" in data, "ring" in data
    if has_field == has_ring:
        raise DocumentSyntaxError("Document needs exactly one of 'field' or 'ring'")
    domain: FieldDescriptor | RingDescriptor
    if has_field:
        domain = parse_field_tag(_require(data, "field", str))
    else:
        domain = parse_ring_tag(_require(data, "ring", str))
    n = _require(data, "n", int)
    r = _require(data, "r", int)
    raw_entries = _require(data, "entries", list)
    if len(raw_entries) != r or any(not isinstance(row, list) or len(row) != n for row in raw_entries):
        raise ShapeError(f"Expected {r} branches of {n} entries each")

    cursor = 0
    rows = []
    for j, row in enumerate(raw_entries):
        polys = []
        for i, entry in enumerate(row):
            if not isinstance(entry, str):
                raise DocumentSyntaxError(f"Entry ({j + 1}, {i + 1}) must be a string, got {entry!r}")
            quoted = json.dumps(entry, ensure_ascii=False)
            found = text.find(quoted, cursor)
            if found >= 0:
                cursor = found + len(quoted)
            try:
                polys.append(parse_entry(entry, domain))
            except DocumentSyntaxError as exc:
                line = column = None
                if found >= 0 and exc.column is not None:
                    line, column = _position(text, found + exc.column)
                raise DocumentSyntaxError(
                    f"Entry ({j + 1}, {i + 1}): {exc.reason}", line, column,
                ) from exc
        rows.append(tuple(polys))
    entries = tuple(rows)

    value: Parameterization | FamilyParameterization
    if has_field:
        value = Parameterization(domain, n, r, entries)
    else:
        value = FamilyParameterization(domain, n, r, entries)

    points = []
    if "points" in data:
        if not has_ring:
            raise DocumentSyntaxError("'points' is only allowed in family documents")
        labels = _require(data, "points", list)
        points = [point_from_label(str(label), domain) for label in labels]

    return InputDocument(
        value=value,
        options=_parse_options(data.get("options")),
        points=points,
        name=str(data.get("name", "")),
    )


def parse_document(text: str) -> Parameterization | FamilyParameterization:
    """Parameterization or family described by *text*."""
    return read_document(text).value


def load_document(path: str | Path) -> InputDocument:
    """Read a UTF-8 document file."""
    return read_document(Path(path).read_text(encoding="utf-8"))


# =====================================================================
# Document serialization
# =====================================================================


def document_to_dict(
    value: Parameterization | FamilyParameterization,
    options: DocumentOptions | None = None,
    points: list[SpecPoint] | None = None,
    name: str = "",
) -> dict:
    """Inverse of ``read_document``."""
    d: dict[str, Any] = {}
    if name:
        d["name"] = name
    if isinstance(value, Parameterization):
        d["field"] = value.field.label
    else:
        d["ring"] = value.ring.label
    d["n"] = value.n
    d["r"] = value.r
    d["entries"] = [[format_polynomial(p) for p in row] for row in value.entries]
    if options is not None and not options.is_empty():
        d["options"] = {
            k: v for k, v in (
                ("dinit", options.dinit), ("dmax", options.dmax), ("strategy", options.strategy),
            ) if v is not None
        }
    if points:
        d["points"] = [p.label for p in points]
    return d


def serialize_document(
    value: Parameterization | FamilyParameterization | InputDocument,
) -> str:
    """Document text for a value or a full InputDocument."""
    if isinstance(value, InputDocument):
        d = document_to_dict(value.value, value.options, value.points, value.name)
    else:
        d = document_to_dict(value)
    return dumps(d)


def dumps(d: dict) -> str:
    """Byte-stable JSON rendering (insertion key order, 2-space indent)."""
    return json.dumps(d, indent=2, ensure_ascii=False) + "\n"


# =====================================================================
# Report dicts
# =====================================================================


def semigroup_to_dict(sg: SemigroupData) -> dict:
    return {
        "gaps": list(sg.gaps),
        "generators": list(sg.generators),
        "frobenius": sg.frobenius,
        "conductor": sg.conductor,
    }


def outcome_to_dict(outcome: DeltaCertificate | Undecided | InvalidAtPoint) -> dict:
    """Certificate, Undecided or invalid-point outcome as a dict."""
    if isinstance(outcome, DeltaCertificate):
        d: dict[str, Any] = {
            "delta": outcome.delta,
            "cond_exp": list(outcome.cond_exp),
            "cond_total": outcome.cond_total,
            "gorenstein": outcome.gorenstein,
            "det_bound_max": outcome.det_bound_max,
            "det_bound_delta": outcome.det_bound_delta,
        }
        if outcome.semigroup is not None:
            sg = semigroup_to_dict(outcome.semigroup)
            d["semigroup"] = {k: sg[k] for k in ("gaps", "generators", "frobenius")}
        d["certified"] = True
        d["D_used"] = outcome.d_used
        d["field"] = outcome.field_label
        return d
    if isinstance(outcome, Undecided):
        return {
            "certified": False,
            "delta_lower_bound": outcome.delta_bounded,
            "gcd_evidence": list(outcome.gcd_evidence),
            "D_max": outcome.d_max,
            "windows": list(outcome.windows),
            "note": outcome.note,
            "field": outcome.field_label,
        }
    return {"certified": False, "reasons": list(outcome.reasons)}


def row_to_dict(row: ScanRow, timings: bool = False) -> dict:
    d: dict[str, Any] = {"point": row.point.label, "valid": row.valid.valid}
    d.update(outcome_to_dict(row.outcome))
    if timings:
        d["wall_time_s"] = round(row.wall_time_s, 6)
    return d


def audit_to_dict(audit: AuditFindings) -> dict:
    return {
        "pass": audit.passed,
        "jumping_points": list(audit.jumping_points),
        "failures": [{"point": p, "reason": why} for p, why in audit.failures],
        "violations": list(audit.violations),
        "generic_delta": audit.generic_delta,
        "generic_certified": audit.generic_certified,
        "generic_pinned": audit.generic_pinned,
        "special_bound": audit.special_bound,
        "conductor_drops": list(audit.conductor_drops),
        "notes": list(audit.notes),
    }


def scan_report_to_dict(report: ScanReport, timings: bool = False) -> dict:
    """Scan report dict; wall times only with *timings* (keeps output byte-stable)."""
    fam = report.family
    return {
        "schema_version": DOCUMENT_SCHEMA_VERSION,
        "family": {
            "ring": fam.ring.label,
            "n": fam.n,
            "r": fam.r,
            "entries": [[format_polynomial(p) for p in row] for row in fam.entries],
        },
        "rows": [row_to_dict(row, timings) for row in report.rows],
        "audit": audit_to_dict(report.audit) if report.audit is not None else None,
    }
