"""Family specialization, scans and the semicontinuity audit.

A family over A ∈ {ℤ, ℚ[s]} is specialized at points of Spec A by mapping
every coefficient to the residue field.  Scans certify δ at each point;
the audit checks δ_generic ≤ δ_special, which holds at every special
point, so any violation is an implementation bug.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from typing import Sequence

from sympy import prime as nth_prime

from app.core.coeffield import (
    RingKind,
    check_compatible,
    residue_field,
    residue_raw,
)
from app.core.delta_engine import DeltaEngine
from app.core.errors import NoGenericRow
from app.core.parameterization import truncate, validate
from app.models.config import ScanConfig
from app.models.family import (
    AuditFindings,
    FamilyParameterization,
    InvalidAtPoint,
    ScanReport,
    ScanRow,
    SpecPoint,
)
from app.models.param import Parameterization
from app.models.results import DeltaCertificate, Undecided

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Specialization
# ---------------------------------------------------------------------------

def specialize(fam: FamilyParameterization, point: SpecPoint) -> Parameterization:
    """Map every coefficient of *fam* to the residue field of *point*.

    Raises:
        IncompatiblePoint: If *point* is not a point of Spec ``fam.ring``.
    """
    check_compatible(fam.ring, point)
    field = residue_field(point)
    entries = tuple(
        tuple(
            poly.map_coefficients(field, lambda c: residue_raw(fam.ring, c, point))
            for poly in row
        )
        for row in fam.entries
    )
    return Parameterization(field, fam.n, fam.r, entries)


def truncate_family(fam: FamilyParameterization, order: int) -> FamilyParameterization:
    """Drop every monomial t^m with m > *order* from every entry."""
    if order < 1:
        raise ValueError(f"Truncation order must be >= 1, got {order!r}")
    entries = tuple(tuple(p.truncate(order) for p in row) for row in fam.entries)
    return FamilyParameterization(fam.ring, fam.n, fam.r, entries)


def default_points(fam: FamilyParameterization, count: int) -> list[SpecPoint]:
    """Deterministic sample, generic point first.

    ℚ[s]: generic, s=0, s=1, s=−1, s=2, s=−2, …
    ℤ:    generic, p=2, p=3, p=5, …
    """
    if count < 2:
        raise ValueError(f"Need at least 2 points, got {count!r}")
    if fam.ring.kind is RingKind.INTEGERS:
        return [SpecPoint.generic_z()] + [SpecPoint.prime(int(nth_prime(k))) for k in range(1, count)]

    points = [SpecPoint.generic_s(), SpecPoint.lam(0)]
    k = 1
    while len(points) < count:
        points.append(SpecPoint.lam(k))
        if len(points) < count:
            points.append(SpecPoint.lam(-k))
        k += 1
    return points


# ---------------------------------------------------------------------------
# Scanner
# ---------------------------------------------------------------------------

class FamilyScanner:
    """Evaluates a family at a list of specialization points.

    Args:
        config: Engine settings and generic-point truncation switch.
        progress_callback: Optional ``(percent: int, point_label: str) -> None``.
        cancelled_check: Optional ``() -> bool``; True aborts with InterruptedError.
    """

    def __init__(
        self,
        config: ScanConfig | None = None,
        progress_callback: Callable[[int, str], None] | None = None,
        cancelled_check: Callable[[], bool] | None = None,
    ) -> None:
        self.config = config or ScanConfig()
        self.config.validate()
        self.engine = DeltaEngine(self.config.engine)
        self._progress = progress_callback or (lambda p, label: None)
        self._cancelled = cancelled_check or (lambda: False)

    # ------------------------------------------------------------------
    # Row evaluation
    # ------------------------------------------------------------------

    def evaluate_point(
        self,
        fam: FamilyParameterization,
        point: SpecPoint,
        truncate_at: int | None = None,
    ) -> ScanRow:
        """Specialize, validate and certify one point."""
        t0 = time.perf_counter()
        phi = specialize(fam, point)
        if truncate_at is not None:
            phi = truncate(phi, truncate_at)
        valid = validate(phi)
        if not valid.valid:
            outcome = InvalidAtPoint(tuple(valid.reasons()))
            logger.warning("Point %s: invalid specialization (%s)", point.label, "; ".join(outcome.reasons))
        else:
            outcome = self.engine.delta_certified(phi)
        elapsed = time.perf_counter() - t0
        logger.info("Point %s done in %.3f s", point.label, elapsed)
        return ScanRow(point=point, valid=valid, outcome=outcome, wall_time_s=elapsed)

    def generic_truncation(self, special_rows: Sequence[ScanRow]) -> int | None:
        """Truncation order 4·(min certified special δ) − 1 for the generic point."""
        if not self.config.truncate_generic:
            return None
        bound = _special_bound(special_rows)
        if bound is None:
            return None
        return max(1, 4 * bound - 1)

    # ------------------------------------------------------------------
    # Scan
    # ------------------------------------------------------------------

    def check_points(self, fam: FamilyParameterization, points: Sequence[SpecPoint]) -> None:
        if not points:
            raise ValueError("A scan needs at least one point")
        for point in points:
            check_compatible(fam.ring, point)

    def run(self, fam: FamilyParameterization, points: Sequence[SpecPoint]) -> ScanReport:
        """Scan *fam* at *points*; special points first when truncating the generic one.

        Raises:
            IncompatiblePoint: For the first point outside Spec A.
            InterruptedError: If cancelled.
        """
        self.check_points(fam, points)
        order = sorted(range(len(points)), key=lambda k: points[k].is_generic)
        rows: dict[int, ScanRow] = {}
        for done, k in enumerate(order):
            if self._cancelled():
                raise InterruptedError("Scan cancelled")
            point = points[k]
            cut = None
            if point.is_generic:
                cut = self.generic_truncation([rows[i] for i in rows if not points[i].is_generic])
            rows[k] = self.evaluate_point(fam, point, cut)
            self._progress(int((done + 1) / len(points) * 100), point.label)
        return assemble_report(fam, [rows[k] for k in range(len(points))])


def scan(
    fam: FamilyParameterization,
    points: Sequence[SpecPoint],
    config: ScanConfig | None = None,
) -> ScanReport:
    """Sequential scan with default callbacks."""
    return FamilyScanner(config).run(fam, points)


def assemble_report(fam: FamilyParameterization, rows: Sequence[ScanRow]) -> ScanReport:
    """Rows in input order plus the audit (None without a generic row)."""
    report = ScanReport(family=fam, rows=tuple(rows))
    try:
        audit = audit_semicontinuity(report)
    except NoGenericRow:
        logger.info("No generic point in scan; audit skipped")
        return report
    return ScanReport(family=fam, rows=report.rows, audit=audit)


# ---------------------------------------------------------------------------
# Audit
# ---------------------------------------------------------------------------

def _special_bound(rows: Sequence[ScanRow]) -> int | None:
    deltas = [
        row.outcome.delta for row in rows
        if not row.point.is_generic and isinstance(row.outcome, DeltaCertificate)
    ]
    return min(deltas) if deltas else None


def _failure_reason(row: ScanRow) -> str | None:
    outcome = row.outcome
    if isinstance(outcome, InvalidAtPoint):
        return "invalid: " + "; ".join(outcome.reasons)
    if isinstance(outcome, Undecided):
        return f"undecided: delta >= {outcome.delta_bounded} at D={outcome.d_max}"
    return None


def audit_semicontinuity(report: ScanReport) -> AuditFindings:
    """Check δ_generic ≤ δ_special on every certified special row.

    The generic δ is known exactly when the generic row is certified, or
    when its bounded value already equals the smallest certified special δ
    (δ_{≤D} ≤ δ_generic ≤ δ_special).  An uncertified generic row still
    contributes its lower bound δ_{≤D} to the violation check.

    Raises:
        NoGenericRow: If the report has no generic point.
    """
    generic = next((row for row in report.rows if row.point.is_generic), None)
    if generic is None:
        raise NoGenericRow("Scan has no generic point")
    specials = [row for row in report.rows if not row.point.is_generic]
    certified = [(row.point.label, row.outcome) for row in specials
                 if isinstance(row.outcome, DeltaCertificate)]
    special_bound = _special_bound(specials)
    failures = tuple(
        (row.point.label, reason) for row in report.rows
        if (reason := _failure_reason(row)) is not None
    )
    notes: list[str] = []

    outcome = generic.outcome
    generic_delta: int | None = None
    generic_certified = isinstance(outcome, DeltaCertificate)
    generic_pinned = False
    lower: int | None = None
    if generic_certified:
        generic_delta = lower = outcome.delta
    elif isinstance(outcome, Undecided):
        lower = outcome.delta_bounded
        if special_bound is not None and outcome.delta_bounded == special_bound:
            generic_delta = special_bound
            generic_pinned = True
            notes.append(
                f"generic delta pinned to {special_bound} by the special-point bound; "
                f"conductor unknown"
            )
        else:
            notes.append(f"generic row has no certificate; delta >= {outcome.delta_bounded}")
    else:
        notes.append("generic specialization is invalid")

    violations: tuple[str, ...] = ()
    if lower is not None:
        violations = tuple(label for label, cert in certified if cert.delta < lower)
    jumping: tuple[str, ...] = ()
    if generic_delta is not None:
        jumping = tuple(label for label, cert in certified if cert.delta > generic_delta)

    drops: tuple[str, ...] = ()
    if generic_certified:
        c_gen = outcome.cond_total
        drops = tuple(label for label, cert in certified if cert.cond_total < c_gen)
        for label, cert in certified:
            if cert.cond_total < c_gen:
                notes.append(
                    f"conductor not upper semicontinuous: c = {cert.cond_total} at {label}, "
                    f"c = {c_gen} at the generic point"
                )

    passed = not violations
    if not passed:
        logger.warning("Semicontinuity audit FAILED at %s", ", ".join(violations))
    return AuditFindings(
        passed=passed,
        violations=violations,
        jumping_points=jumping,
        failures=failures,
        generic_delta=generic_delta,
        generic_certified=generic_certified,
        generic_pinned=generic_pinned,
        special_bound=special_bound,
        conductor_drops=drops,
        notes=tuple(notes),
    )
