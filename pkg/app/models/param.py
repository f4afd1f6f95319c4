"""Parameterization data model.

A parameterization φ: 𝕜[[x₁..xₙ]] → 𝕜[[t₁]] ⊕ … ⊕ 𝕜[[t_r]] is stored as an
r × n array of polynomial entries: ``entries[j][i]`` = φⱼ(xᵢ), each with
zero constant term.  Branch and variable indices are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from app.core.errors import ConstantTermError, ShapeError

if TYPE_CHECKING:
    from app.core.coeffield import FieldDescriptor
    from app.core.series import UniPolynomial


def check_entry_shape(n: int, r: int, entries: Any, domain: Any) -> None:
    """Shared shape and zero-constant-term check for parameterizations and families.

    Raises:
        ShapeError: If n, r < 1, entries is not r × n, or an entry lives
            over another domain.
        ConstantTermError: If some entry has a constant term.
    """
    if n < 1 or r < 1:
        raise ShapeError(f"Need n >= 1 and r >= 1, got n={n!r}, r={r!r}")
    if len(entries) != r or any(len(row) != n for row in entries):
        got = [len(row) for row in entries]
        raise ShapeError(f"Expected {r} branches of {n} entries, got {got}")
    for j, row in enumerate(entries):
        for i, poly in enumerate(row):
            if poly.domain != domain:
                raise ShapeError(
                    f"Entry ({j + 1}, {i + 1}) is over {poly.domain.label}, expected {domain.label}"
                )
            if poly.min_exponent == 0:
                raise ConstantTermError(
                    f"Entry ({j + 1}, {i + 1}) has a nonzero constant term: {poly}"
                )


@dataclass(frozen=True)
class Parameterization:
    """Polynomial parameterization over an exact field.

    Attributes:
        field: Coefficient field 𝕜.
        n: Number of source variables.
        r: Number of branches.
        entries: ``entries[j][i]`` = φⱼ(xᵢ), polynomial in t, no constant term.
    """
    field: FieldDescriptor
    n: int
    r: int
    entries: tuple[tuple[UniPolynomial, ...], ...]

    def __post_init__(self) -> None:
        check_entry_shape(self.n, self.r, self.entries, self.field)

    def branch(self, j: int) -> tuple[UniPolynomial, ...]:
        """Entries of branch *j* (1-based)."""
        return self.entries[j - 1]

    @property
    def max_degree(self) -> int:
        return max((p.degree for row in self.entries for p in row), default=-1)

    def active_variables(self) -> list[int]:
        """Variables whose image is nonzero on some branch (0-based)."""
        return [
            i for i in range(self.n)
            if any(not self.entries[j][i].is_zero() for j in range(self.r))
        ]


@dataclass(frozen=True)
class ValidityReport:
    """Result of checking condition (*) on a parameterization.

    Attributes:
        branch_nonzero: Per branch, True iff some entry is nonzero.
        duplicate_pairs: 1-based branch pairs ``(j, j′)`` with identical entry tuples.
        valid: All branches nonzero and no duplicate pair.
    """
    branch_nonzero: tuple[bool, ...]
    duplicate_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def valid(self) -> bool:
        return all(self.branch_nonzero) and not self.duplicate_pairs

    @property
    def zero_branches(self) -> list[int]:
        return [j + 1 for j, ok in enumerate(self.branch_nonzero) if not ok]

    def reasons(self) -> list[str]:
        """Human-readable failures, empty when valid."""
        out = [f"branch {j} is identically zero" for j in self.zero_branches]
        out += [f"branches {a} and {b} have identical entries" for a, b in self.duplicate_pairs]
        return out
