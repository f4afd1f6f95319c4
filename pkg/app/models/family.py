"""Family, specialization point and scan report data models.

A family is a parameterization with coefficients in a base ring A ∈ {ℤ, ℚ[s]};
a scan evaluates it at points of Spec A.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from sympy import isprime

if TYPE_CHECKING:
    from app.core.coeffield import RingDescriptor
    from app.core.series import UniPolynomial
    from app.models.param import ValidityReport
    from app.models.results import DeltaCertificate, Undecided


class PointKind(Enum):
    LAMBDA = "lambda"          # ⟨s − λ⟩ ⊂ ℚ[s], residue field ℚ
    GENERIC_S = "generic_s"    # ⟨0⟩ ⊂ ℚ[s], residue field ℚ(s)
    PRIME = "prime"            # ⟨p⟩ ⊂ ℤ, residue field 𝔽ₚ
    GENERIC_Z = "generic_z"    # ⟨0⟩ ⊂ ℤ, residue field ℚ


@dataclass(frozen=True)
class SpecPoint:
    """Point of Spec A used for specialization.

    Attributes:
        kind: Point kind.
        value: λ (Fraction) for LAMBDA, p (int) for PRIME, None for generic points.
    """
    kind: PointKind
    value: Fraction | int | None = None

    def __post_init__(self) -> None:
        if self.kind is PointKind.PRIME:
            if not isinstance(self.value, int) or not isprime(self.value):
                raise ValueError(f"Prime point needs a prime, got {self.value!r}")
        elif self.kind is PointKind.LAMBDA:
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def lam(cls, value: Fraction | int | str) -> SpecPoint:
        return cls(PointKind.LAMBDA, Fraction(value))

    @classmethod
    def generic_s(cls) -> SpecPoint:
        return cls(PointKind.GENERIC_S)

    @classmethod
    def prime(cls, p: int) -> SpecPoint:
        return cls(PointKind.PRIME, p)

    @classmethod
    def generic_z(cls) -> SpecPoint:
        return cls(PointKind.GENERIC_Z)

    @property
    def is_generic(self) -> bool:
        return self.kind in (PointKind.GENERIC_S, PointKind.GENERIC_Z)

    @property
    def label(self) -> str:
        """Text form used by ``--points`` and reports: ``s=0``, ``p=2``, ``generic``."""
        if self.kind is PointKind.LAMBDA:
            return f"s={self.value}"
        if self.kind is PointKind.PRIME:
            return f"p={self.value}"
        return "generic"


@dataclass(frozen=True)
class FamilyParameterization:
    """Family of parameterizations over A ∈ {ℤ, ℚ[s]}.

    Attributes:
        ring: Base ring A.
        n: Number of source variables.
        r: Number of branches.
        entries: r × n polynomials in t over A, zero constant term.
    """
    ring: RingDescriptor
    n: int
    r: int
    entries: tuple[tuple[UniPolynomial, ...], ...]

    def __post_init__(self) -> None:
        from app.models.param import check_entry_shape
        check_entry_shape(self.n, self.r, self.entries, self.ring)


@dataclass(frozen=True)
class InvalidAtPoint:
    """Scan outcome when the specialization fails validation.

    Attributes:
        reasons: Human-readable validation failures.
    """
    reasons: tuple[str, ...] = ()


Outcome = Union["DeltaCertificate", "Undecided", InvalidAtPoint]


@dataclass(frozen=True)
class ScanRow:
    """Result of one specialization point.

    Attributes:
        point: Specialization point.
        valid: Validation report of the specialized parameterization.
        outcome: Certificate, Undecided, or InvalidAtPoint (iff not valid).
        wall_time_s: Wall-clock time of the row [s].
    """
    point: SpecPoint
    valid: ValidityReport
    outcome: Outcome
    wall_time_s: float = 0.0


@dataclass(frozen=True)
class AuditFindings:
    """Semicontinuity audit of a scan.

    Attributes:
        passed: False iff some certified special δ is below the generic δ.
        violations: Points with δ_special < δ_generic (implementation bug).
        jumping_points: Points with δ_special > δ_generic.
        failures: ``(point, reason)`` for invalid or undecided rows.
        generic_delta: Exact generic δ when known, else None.
        generic_certified: Generic row carries a certificate.
        generic_pinned: Generic δ pinned by the special-point bound.
        special_bound: Minimum certified special δ (upper bound for generic δ).
        conductor_drops: Points with c_special < c_generic.
        notes: Caveats and remarks.
    """
    passed: bool = True
    violations: tuple[str, ...] = ()
    jumping_points: tuple[str, ...] = ()
    failures: tuple[tuple[str, str], ...] = ()
    generic_delta: int | None = None
    generic_certified: bool = False
    generic_pinned: bool = False
    special_bound: int | None = None
    conductor_drops: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ScanReport:
    """Full scan of a family.

    Attributes:
        family: The scanned family.
        rows: One row per requested point, in input order.
        audit: Semicontinuity findings; None when no generic point was scanned.
    """
    family: FamilyParameterization
    rows: tuple[ScanRow, ...]
    audit: AuditFindings | None = None

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("A scan report needs at least one row")

    def row_for(self, label: str) -> ScanRow:
        for row in self.rows:
            if row.point.label == label:
                return row
        raise KeyError(f"No row for point {label!r}")
