"""Delta engine and oracle result data models.

Dataclasses returned by DeltaEngine (bounded reports, certificates,
Undecided outcomes) and by the oracle sieve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

import numpy as np
from numpy.typing import NDArray

if TYPE_CHECKING:
    from app.core.series import BranchVector

UNDECIDED_NOTE = (
    "no certificate at budget: delta may be infinite "
    "(non-primitive parameterization) or the budget is too small"
)


@dataclass(frozen=True)
class Membership:
    """Outcome of reducing a vector against an echelon basis.

    Attributes:
        in_span: True iff the vector reduced to zero.
        remainder: Fully reduced nonzero remainder when not in span.
        pivot: ``(m, j)`` of the remainder (degree, 1-based branch).
    """
    in_span: bool
    remainder: BranchVector | None = None
    pivot: tuple[int, int] | None = None


@dataclass(frozen=True)
class BoundedReport:
    """Finite-precision data of the truncated image V_D.

    Attributes:
        precision: D.
        rank: dim V_D.
        delta_bounded: δ_{≤D} = r(D+1) − rank.
        windows: Per branch aⱼ = min{a : eⱼt^m ∈ V_D for a ≤ m ≤ D}, None
            when eⱼt^D ∉ V_D.
        members: Per branch, sorted m ≤ D with eⱼt^m ∈ V_D.
        attained: Per branch, sorted pivot degrees on that branch; for
            r = 1 this is Γ ∩ [0, D].
    """
    precision: int
    rank: int
    delta_bounded: int
    windows: tuple[int | None, ...]
    members: tuple[tuple[int, ...], ...]
    attained: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.windows)

    def certifies(self) -> bool:
        """Tail certificate: every window exists and D ≥ 2aⱼ − 1."""
        return all(a is not None and self.precision >= 2 * a - 1 for a in self.windows)


@dataclass(frozen=True)
class SemigroupData:
    """Value semigroup Γ of a uni-branch certificate.

    Attributes:
        gaps: ℕ \\ Γ, ascending.
        generators: Minimal generators of Γ.
        frobenius: Largest gap, −1 when Γ = ℕ.
        conductor: Frobenius + 1.
    """
    gaps: tuple[int, ...]
    generators: tuple[int, ...]
    frobenius: int
    conductor: int


@dataclass(frozen=True)
class DeterminacyBounds:
    """Truncation orders that provably preserve the certified data.

    Attributes:
        det_bound_max: max(1, 2·max cⱼ − 1).
        det_bound_delta: max(1, 4δ − 1).
    """
    det_bound_max: int
    det_bound_delta: int


@dataclass(frozen=True)
class DeltaCertificate:
    """Certified δ and conductor of a primitive parameterization.

    Attributes:
        delta: δ = dim R̃/φ(P).
        cond_exp: Conductor exponents (c₁, …, c_r).
        cond_total: c_φ = Σ cⱼ.
        d_used: Precision at which the tail certificate fired.
        gorenstein: cond_total = 2·delta.
        det_bound_max: 2·max cⱼ − 1, floored at 1.
        det_bound_delta: 4δ − 1, floored at 1.
        semigroup: Value semigroup for r = 1, else None.
        attained: Per-branch attained pivot degrees at d_used.
        field_label: Coefficient field of the certified parameterization.
    """
    delta: int
    cond_exp: tuple[int, ...]
    cond_total: int
    d_used: int
    gorenstein: bool
    det_bound_max: int
    det_bound_delta: int
    semigroup: SemigroupData | None = None
    attained: tuple[tuple[int, ...], ...] = ()
    field_label: str = ""

    @property
    def r(self) -> int:
        return len(self.cond_exp)

    @property
    def certified(self) -> bool:
        return True


@dataclass(frozen=True)
class Undecided:
    """No tail certificate up to d_max.

    Attributes:
        d_max: Largest precision tried.
        delta_bounded: δ_{≤d_max}, a lower bound for δ.
        gcd_evidence: Per branch, gcd of the nonzero orders attained by
            the branch image; > 1 suggests (does not prove) non-primitivity.
        windows: Per-branch windows at d_max (None = no window).
        note: Fixed explanation text.
        field_label: Coefficient field of the parameterization.
    """
    d_max: int
    delta_bounded: int
    gcd_evidence: tuple[int, ...]
    windows: tuple[int | None, ...] = ()
    note: str = UNDECIDED_NOTE
    field_label: str = ""

    @property
    def certified(self) -> bool:
        return False


DeltaOutcome = Union[DeltaCertificate, Undecided]


@dataclass(frozen=True)
class GluingReport:
    """Gluing codimension of a multi-branch certificate.

    Attributes:
        total: Certificate of φ.
        branches: Certificates of the single-branch restrictions φⱼ.
        codim: δ(φ) − Σ δ(φⱼ), always ≥ r − 1.
    """
    total: DeltaCertificate
    branches: tuple[DeltaCertificate, ...]
    codim: int


@dataclass
class SieveResult:
    """Numerical semigroup sieve on [0, B].

    Attributes:
        bound: B.
        generators: Input generators, ascending.
        membership: Boolean array of length B+1, True on ⟨generators⟩.
        gaps: Non-members in [0, B], ascending.
        conductor: Start of the first run of min(generators) consecutive
            members, None when no such run fits in [0, B].
    """
    bound: int
    generators: tuple[int, ...]
    membership: NDArray[np.bool_]
    gaps: list[int] = field(default_factory=list)
    conductor: int | None = None

    @property
    def frobenius(self) -> int | None:
        return None if self.conductor is None else self.conductor - 1
