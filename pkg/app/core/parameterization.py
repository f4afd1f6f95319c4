"""Operations on parameterizations: validation, truncation and equivalence moves.

Target reparameterization (t ↦ τ(t) on one branch) and linear source
changes (x ↦ M·x) realize 𝒜-equivalence; they preserve δ, the conductor
exponents and the value semigroup, which the invariance tests rely on.
"""

from __future__ import annotations

import logging
from typing import Any, Sequence

from app.core.coeffield import FieldDescriptor, Scalar
from app.core.errors import IndexOutOfRange, InvalidSubstitution, SingularMatrix
from app.core.series import UniPolynomial
from app.models.param import Parameterization, ValidityReport

logger = logging.getLogger(__name__)


def validate(phi: Parameterization) -> ValidityReport:
    """Check condition (*): every branch nonzero, branches pairwise distinct.

    Distinctness is the syntactic check on entry tuples; coinciding branch
    images with different entries are left to the engine (Undecided).
    """
    nonzero = tuple(any(not p.is_zero() for p in row) for row in phi.entries)
    dupes = tuple(
        (a + 1, b + 1)
        for a in range(phi.r)
        for b in range(a + 1, phi.r)
        if phi.entries[a] == phi.entries[b]
    )
    report = ValidityReport(branch_nonzero=nonzero, duplicate_pairs=dupes)
    if not report.valid:
        logger.debug("Parameterization invalid: %s", "; ".join(report.reasons()))
    return report


def truncate(phi: Parameterization, order: int) -> Parameterization:
    """Keep monomials of degree ≤ *order* in every entry.

    The result may fail ``validate`` (a branch can become zero); this is
    not an error here.
    """
    if order < 1:
        raise ValueError(f"Truncation order must be >= 1, got {order!r}")
    entries = tuple(tuple(p.truncate(order) for p in row) for row in phi.entries)
    return Parameterization(phi.field, phi.n, phi.r, entries)


def reparameterize_target(
    phi: Parameterization,
    j: int,
    tau: UniPolynomial,
    d_work: int,
) -> Parameterization:
    """Substitute t ↦ τ(t) on branch *j* (1-based), truncating at *d_work*.

    Raises:
        InvalidSubstitution: If τ has a constant term or no linear term.
        IndexOutOfRange: If *j* is not a branch index.
        ValueError: If *d_work* is below the maximal entry degree.
    """
    if not 1 <= j <= phi.r:
        raise IndexOutOfRange(f"Branch index {j!r} outside [1, {phi.r}]")
    field = phi.field
    if tau.domain != field:
        raise InvalidSubstitution(f"Substitution over {tau.domain.label}, expected {field.label}")
    if tau.min_exponent != 1:
        raise InvalidSubstitution(f"Substitution must have order exactly 1, got {tau}")
    if d_work < phi.max_degree:
        raise ValueError(f"d_work={d_work} below maximal entry degree {phi.max_degree}")

    entries = list(phi.entries)
    entries[j - 1] = tuple(p.compose(tau, d_work) for p in phi.entries[j - 1])
    return Parameterization(field, phi.n, phi.r, tuple(entries))


def determinant(field: FieldDescriptor, matrix: Sequence[Sequence[Any]]) -> Any:
    """Exact determinant of a square matrix of raw field values."""
    size = len(matrix)
    rows = [list(row) for row in matrix]
    det = field.one()
    for col in range(size):
        pivot = next((k for k in range(col, size) if not field.is_zero(rows[k][col])), None)
        if pivot is None:
            return field.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = field.neg(det)
        p = rows[col][col]
        det = field.mul(det, p)
        p_inv = field.inv(p)
        for k in range(col + 1, size):
            factor = field.mul(rows[k][col], p_inv)
            if field.is_zero(factor):
                continue
            rows[k] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[k], rows[col])]
    return det


def linear_source_change(phi: Parameterization, matrix: Sequence[Sequence[Any]]) -> Parameterization:
    """Apply the linear source automorphism x ↦ M·x.

    New entries are ``Σ_k M[i][k] · entries[j][k]``.  Matrix cells may be
    Scalars, ints or Fractions; they are coerced into the field.

    Raises:
        SingularMatrix: If M is not square n × n or det M = 0.
    """
    field = phi.field
    n = phi.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise SingularMatrix(f"Source change needs an {n}x{n} matrix")
    raw = [[Scalar.of(field, c).value for c in row] for row in matrix]
    if field.is_zero(determinant(field, raw)):
        raise SingularMatrix("Source change matrix has zero determinant")

    entries = []
    for row in phi.entries:
        new_row = []
        for i in range(n):
            acc = UniPolynomial.zero(field)
            for k in range(n):
                if not field.is_zero(raw[i][k]):
                    acc = acc.add(row[k].scale(raw[i][k]))
            new_row.append(acc)
        entries.append(tuple(new_row))
    return Parameterization(field, n, phi.r, tuple(entries))


def restrict_to_branch(phi: Parameterization, j: int) -> Parameterization:
    """Single-branch parameterization φⱼ (1-based *j*)."""
    if not 1 <= j <= phi.r:
        raise IndexOutOfRange(f"Branch index {j!r} outside [1, {phi.r}]")
    return Parameterization(phi.field, phi.n, 1, (phi.entries[j - 1],))


def monomial_curve(field: FieldDescriptor, exponents: Sequence[int]) -> Parameterization:
    """Uni-branch monomial parameterization (t^a₁, …, t^aₙ)."""
    row = tuple(UniPolynomial.monomial(field, a) for a in exponents)
    return Parameterization(field, len(row), 1, (row,))


def from_coefficients(
    field: FieldDescriptor,
    branches: Sequence[Sequence[dict[int, Any]]],
) -> Parameterization:
    """Build a parameterization from ``{exponent: coefficient}`` maps per entry.

    Coefficients may be ints, Fractions or Scalars of *field*.
    """
    entries = tuple(
        tuple(
            UniPolynomial.from_terms(
                field, ((e, Scalar.of(field, c).value) for e, c in entry.items())
            )
            for entry in row
        )
        for row in branches
    )
    return Parameterization(field, len(entries[0]) if entries else 0, len(entries), entries)
