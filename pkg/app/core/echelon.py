"""Valuation-adapted reduced echelon basis over an exact field.

Vectors of R̃/𝔪̃^{D+1} are handled as sparse dicts ``{flat index: raw}``
with flat index ``m·r + (j−1)``, so the total order (m, j) < (m′, j′) is
integer order on flat indices.  The pivot of a row is its minimal flat
index; pivot coefficients are 1 and every row is zero at every other
pivot (fully reduced), hence one pass suffices to reduce a vector.
"""

from __future__ import annotations

from typing import Any, Iterable

from app.core.coeffield import FieldDescriptor
from app.core.errors import MixedShapes
from app.core.series import BranchVector
from app.models.results import Membership

SparseVector = dict[int, Any]


class EchelonBasis:
    """Reduced row echelon basis with (degree, branch) pivot order.

    Args:
        field: Coefficient field.
        r: Number of branches.
        precision: D; flat indices range over [0, r(D+1)).
    """

    def __init__(self, field: FieldDescriptor, r: int, precision: int) -> None:
        self.field = field
        self.r = r
        self.precision = precision
        self._rows: dict[int, SparseVector] = {}
        # flat index -> pivots of the rows that are nonzero there
        self._cols: dict[int, set[int]] = {}

    # -- shape -------------------------------------------------------------

    @property
    def size(self) -> int:
        return self.r * (self.precision + 1)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def flat_index(self, m: int, j: int) -> int:
        """Flat index of ``e_j t^m`` (1-based *j*)."""
        return m * self.r + (j - 1)

    def position(self, idx: int) -> tuple[int, int]:
        """``(m, j)`` of a flat index (1-based *j*)."""
        m, j = divmod(idx, self.r)
        return m, j + 1

    def check_shape(self, v: BranchVector) -> None:
        if v.field != self.field or v.r != self.r or v.precision != self.precision:
            raise MixedShapes(
                f"Vector ({v.field.label}, r={v.r}, D={v.precision}) does not match basis "
                f"({self.field.label}, r={self.r}, D={self.precision})"
            )

    # -- reduction ---------------------------------------------------------

    def reduce(self, v: SparseVector) -> SparseVector:
        """Remainder of *v* modulo the basis (zero entries removed)."""
        f = self.field
        hits = [(p, v[p]) for p in v if p in self._rows]
        if not hits:
            return dict(v)
        out = dict(v)
        for p, coeff in hits:
            for idx, x in self._rows[p].items():
                cur = out.get(idx)
                val = f.neg(f.mul(coeff, x)) if cur is None else f.sub(cur, f.mul(coeff, x))
                if f.is_zero(val):
                    out.pop(idx, None)
                else:
                    out[idx] = val
        return out

    def insert(self, v: SparseVector) -> SparseVector | None:
        """Reduce *v* and add the remainder as a new row.

        Returns:
            The normalized remainder (pivot coefficient 1), or None if *v*
            was already in the span.
        """
        w = self.reduce(v)
        if not w:
            return None
        f = self.field
        q = min(w)
        lead_inv = f.inv(w[q])
        if w[q] != f.one():
            w = {idx: f.mul(lead_inv, x) for idx, x in w.items()}
        for p in list(self._cols.get(q, ())):
            row = self._rows[p]
            c = row[q]
            for idx, x in w.items():
                cur = row.get(idx)
                val = f.neg(f.mul(c, x)) if cur is None else f.sub(cur, f.mul(c, x))
                if f.is_zero(val):
                    if cur is not None:
                        del row[idx]
                        self._cols[idx].discard(p)
                else:
                    if cur is None:
                        self._cols.setdefault(idx, set()).add(p)
                    row[idx] = val
        self._rows[q] = w
        for idx in w:
            self._cols.setdefault(idx, set()).add(q)
        return w

    def contains_unit(self, idx: int) -> bool:
        """``e_j t^m ∈ span`` for the flat index *idx*."""
        row = self._rows.get(idx)
        return row is not None and len(row) == 1

    # -- views -------------------------------------------------------------

    def pivot_indices(self) -> list[int]:
        return sorted(self._rows)

    def pivots(self) -> list[tuple[int, int]]:
        """Pivot positions ``(m, j)`` in increasing order."""
        return [self.position(p) for p in self.pivot_indices()]

    def sparse_rows(self) -> list[SparseVector]:
        return [dict(self._rows[p]) for p in self.pivot_indices()]

    def rows(self) -> list[BranchVector]:
        return [
            BranchVector.from_sparse(self.field, self.r, self.precision, self._rows[p])
            for p in self.pivot_indices()
        ]


def echelonize(
    vectors: Iterable[BranchVector],
    field: FieldDescriptor | None = None,
    r: int | None = None,
    precision: int | None = None,
) -> EchelonBasis:
    """Reduced echelon basis of the span of *vectors*.

    Shape parameters default to those of the first vector.

    Raises:
        MixedShapes: If vectors disagree in field, branch count or precision.
    """
    vectors = list(vectors)
    if vectors:
        first = vectors[0]
        field = field or first.field
        r = r or first.r
        precision = first.precision if precision is None else precision
    if field is None or r is None or precision is None:
        raise MixedShapes("Cannot infer the shape of an empty vector list")
    basis = EchelonBasis(field, r, precision)
    for v in vectors:
        basis.check_shape(v)
        basis.insert(v.to_sparse())
    return basis


def member(v: BranchVector, basis: EchelonBasis) -> Membership:
    """Reduce *v* against *basis*: in span, or the nonzero remainder.

    Raises:
        MixedShapes: If *v* does not match the basis shape.
    """
    basis.check_shape(v)
    w = basis.reduce(v.to_sparse())
    if not w:
        return Membership(in_span=True)
    remainder = BranchVector.from_sparse(basis.field, basis.r, basis.precision, w)
    return Membership(in_span=False, remainder=remainder, pivot=basis.position(min(w)))
