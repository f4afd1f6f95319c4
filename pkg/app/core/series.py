"""Truncated univariate power series and r-branch vectors.

A ``TruncatedSeries`` is known modulo t^{D+1}: it stores exactly D+1 raw
coefficients over one ``FieldDescriptor``.  A ``BranchVector`` is an
r-tuple of series of equal precision, an element of R̃/𝔪̃^{D+1}.

Mixed precision is always an error (PrecisionMismatch), never an implicit
re-truncation.

``UniPolynomial`` is the exact polynomial in t used for parameterization
entries; its coefficients live in a field or in a family base ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Iterable

from app.core.coeffield import FieldDescriptor, Scalar
from app.core.errors import FieldMismatch, IndexOutOfRange, PrecisionMismatch

if TYPE_CHECKING:
    from app.core.coeffield import RingDescriptor

    Domain = FieldDescriptor | RingDescriptor


# ---------------------------------------------------------------------------
# Polynomials in t
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniPolynomial:
    """Polynomial in t over a field or base ring.

    Attributes:
        domain: Coefficient field or ring descriptor.
        terms: ``(exponent, raw coefficient)`` pairs, strictly increasing
            exponents, no zero coefficients.
    """
    domain: Any
    terms: tuple[tuple[int, Any], ...] = ()

    @classmethod
    def from_terms(cls, domain: Domain, terms: Iterable[tuple[int, Any]]) -> UniPolynomial:
        """Collect ``(exponent, raw)`` pairs, summing repeats and dropping zeros."""
        acc: dict[int, Any] = {}
        for exp, raw in terms:
            if exp < 0:
                raise ValueError(f"Negative exponent: {exp!r}")
            acc[exp] = domain.add(acc[exp], raw) if exp in acc else raw
        return cls(domain, tuple(
            (e, acc[e]) for e in sorted(acc) if not domain.is_zero(acc[e])
        ))

    @classmethod
    def monomial(cls, domain: Domain, exp: int, coeff: Any = None) -> UniPolynomial:
        """``coeff · t^exp``; coefficient defaults to 1."""
        raw = domain.one() if coeff is None else coeff
        return cls.from_terms(domain, [(exp, raw)])

    @classmethod
    def zero(cls, domain: Domain) -> UniPolynomial:
        return cls(domain)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Highest exponent; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def min_exponent(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def coefficient(self, exp: int) -> Any:
        for e, raw in self.terms:
            if e == exp:
                return raw
        return self.domain.zero()

    def truncate(self, order: int) -> UniPolynomial:
        """Keep monomials of degree ≤ *order*."""
        return UniPolynomial(self.domain, tuple((e, c) for e, c in self.terms if e <= order))

    def map_coefficients(self, target: Domain, fn: Callable[[Any], Any]) -> UniPolynomial:
        """Apply *fn* to every raw coefficient, re-normalizing in *target*."""
        return UniPolynomial.from_terms(target, ((e, fn(c)) for e, c in self.terms))

    def add(self, other: UniPolynomial) -> UniPolynomial:
        _check_domain(self.domain, other.domain)
        return UniPolynomial.from_terms(self.domain, self.terms + other.terms)

    def scale(self, c: Any) -> UniPolynomial:
        d = self.domain
        return UniPolynomial.from_terms(d, ((e, d.mul(c, x)) for e, x in self.terms))

    def mul(self, other: UniPolynomial, cutoff: int | None = None) -> UniPolynomial:
        """Product; terms above *cutoff* are discarded when given."""
        _check_domain(self.domain, other.domain)
        d = self.domain
        prod = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                if cutoff is not None and e1 + e2 > cutoff:
                    break
                prod.append((e1 + e2, d.mul(c1, c2)))
        return UniPolynomial.from_terms(d, prod)

    def compose(self, tau: UniPolynomial, cutoff: int) -> UniPolynomial:
        """``self(τ(t))`` truncated at *cutoff* (Horner scheme)."""
        _check_domain(self.domain, tau.domain)
        d = self.domain
        result = UniPolynomial.zero(d)
        exps = dict(self.terms)
        for k in range(self.degree, -1, -1):
            result = result.mul(tau, cutoff)
            if k in exps:
                result = result.add(UniPolynomial.monomial(d, 0, exps[k]))
        return result.truncate(cutoff)

    def __str__(self) -> str:
        return format_polynomial(self)


def _check_domain(a: Any, b: Any) -> None:
    if a != b:
        raise FieldMismatch(f"Polynomials over {a.label} and {b.label}")


def _coeff_text(domain: Any, raw: Any) -> str:
    text = domain.format_value(raw)
    if any(ch in text for ch in "+ ") or "s" in text:
        return f"({text})"
    return text


def format_polynomial(poly: UniPolynomial) -> str:
    """Entry-grammar text form, ascending degree: ``(s)*t^4 + t^8``."""
    if poly.is_zero():
        return "0"
    parts: list[str] = []
    one = poly.domain.one()
    neg_one = poly.domain.neg(one)
    for exp, raw in poly.terms:
        tpow = "t" if exp == 1 else f"t^{exp}"
        if exp == 0:
            body = _coeff_text(poly.domain, raw)
        elif raw == one:
            body = tpow
        elif raw == neg_one and _is_ordered(poly.domain):
            body = f"-{tpow}"
        else:
            body = f"{_coeff_text(poly.domain, raw)}*{tpow}"
        if parts and body.startswith("-"):
            parts.append(f"- {body[1:]}")
        elif parts:
            parts.append(f"+ {body}")
        else:
            parts.append(body)
    return " ".join(parts)


def _is_ordered(domain: Any) -> bool:
    # 𝔽ₚ residues print as non-negative integers, never with a sign
    return getattr(domain, "p", None) is None


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderValue:
    """Order of a truncated series: finite ``m`` or above precision.

    Attributes:
        value: Minimal exponent with nonzero coefficient, None when all
            stored coefficients vanish (zero or order > D).
    """
    value: int | None = None

    @classmethod
    def finite(cls, m: int) -> OrderValue:
        return cls(m)

    @classmethod
    def above_precision(cls) -> OrderValue:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.is_finite else "> D"


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series modulo t^{D+1}.

    Attributes:
        field: Coefficient field.
        precision: D ≥ 0.
        values: Raw coefficients, length D+1, index m = coefficient of t^m.
    """
    field: FieldDescriptor
    precision: int
    values: tuple[Any, ...]

    def __post_init__(self) -> None:
        if self.precision < 0:
            raise ValueError(f"Precision must be >= 0, got {self.precision!r}")
        if len(self.values) != self.precision + 1:
            raise ValueError(
                f"Series at precision {self.precision} needs {self.precision + 1} "
                f"coefficients, got {len(self.values)}"
            )

    @classmethod
    def zero(cls, field: FieldDescriptor, precision: int) -> TruncatedSeries:
        return cls(field, precision, (field.zero(),) * (precision + 1))

    @classmethod
    def from_coeffs(cls, field: FieldDescriptor, coeffs: Iterable[Any]) -> TruncatedSeries:
        """Series from ints, Fractions or Scalars; precision = len − 1."""
        raw = tuple(Scalar.of(field, c).value for c in coeffs)
        return cls(field, len(raw) - 1, raw)

    @property
    def coeffs(self) -> tuple[Scalar, ...]:
        return tuple(Scalar(self.field, v) for v in self.values)

    def coefficient(self, m: int) -> Scalar:
        if not 0 <= m <= self.precision:
            raise IndexOutOfRange(f"Exponent {m!r} outside [0, {self.precision}]")
        return Scalar(self.field, self.values[m])

    def is_zero(self) -> bool:
        return all(self.field.is_zero(v) for v in self.values)

    def nonzero_terms(self) -> list[tuple[int, Any]]:
        return [(m, v) for m, v in enumerate(self.values) if not self.field.is_zero(v)]


def _check_pair(x: TruncatedSeries, y: TruncatedSeries) -> None:
    if x.field != y.field:
        raise FieldMismatch(f"Series over {x.field.label} and {y.field.label}")
    if x.precision != y.precision:
        raise PrecisionMismatch(f"Series at precision {x.precision} and {y.precision}")


def order(x: TruncatedSeries) -> OrderValue:
    """Minimal exponent with a nonzero coefficient."""
    for m, v in enumerate(x.values):
        if not x.field.is_zero(v):
            return OrderValue.finite(m)
    return OrderValue.above_precision()


def mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product at the common precision."""
    _check_pair(x, y)
    f, d = x.field, x.precision
    out = [f.zero()] * (d + 1)
    y_terms = y.nonzero_terms()
    for i, a in x.nonzero_terms():
        for j, b in y_terms:
            if i + j > d:
                break
            out[i + j] = f.add(out[i + j], f.mul(a, b))
    return TruncatedSeries(f, d, tuple(out))


def add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    _check_pair(x, y)
    f = x.field
    return TruncatedSeries(f, x.precision, tuple(f.add(a, b) for a, b in zip(x.values, y.values)))


def scale(c: Scalar, x: TruncatedSeries) -> TruncatedSeries:
    if c.field != x.field:
        raise FieldMismatch(f"Scalar in {c.field.label}, series over {x.field.label}")
    f = x.field
    return TruncatedSeries(f, x.precision, tuple(f.mul(c.value, v) for v in x.values))


def from_polynomial(poly: UniPolynomial, precision: int) -> TruncatedSeries:
    """Coefficients of *poly* up to degree D; higher degrees are discarded."""
    field = poly.domain
    if not isinstance(field, FieldDescriptor):
        raise FieldMismatch(f"Series need a field, got ring {field.label}")
    out = [field.zero()] * (precision + 1)
    for exp, raw in poly.terms:
        if exp <= precision:
            out[exp] = raw
    return TruncatedSeries(field, precision, tuple(out))


# ---------------------------------------------------------------------------
# Branch vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchVector:
    """Element of R̃/𝔪̃^{D+1}: one truncated series per branch.

    Attributes:
        branches: r ≥ 1 series sharing field and precision.
    """
    branches: tuple[TruncatedSeries, ...]

    def __post_init__(self) -> None:
        if not self.branches:
            raise ValueError("A branch vector needs at least one branch")
        first = self.branches[0]
        for b in self.branches[1:]:
            _check_pair(first, b)

    @property
    def field(self) -> FieldDescriptor:
        return self.branches[0].field

    @property
    def precision(self) -> int:
        return self.branches[0].precision

    @property
    def r(self) -> int:
        return len(self.branches)

    @classmethod
    def constant_one(cls, field: FieldDescriptor, r: int, precision: int) -> BranchVector:
        one = TruncatedSeries(field, precision, (field.one(),) + (field.zero(),) * precision)
        return cls((one,) * r)

    def to_sparse(self) -> dict[int, Any]:
        """Nonzero entries keyed by flat index ``m·r + (j−1)``."""
        r = self.r
        return {
            m * r + j: v
            for j, series in enumerate(self.branches)
            for m, v in series.nonzero_terms()
        }

    @classmethod
    def from_sparse(
        cls, field: FieldDescriptor, r: int, precision: int, entries: dict[int, Any],
    ) -> BranchVector:
        cols = [[field.zero()] * (precision + 1) for _ in range(r)]
        for idx, v in entries.items():
            m, j = divmod(idx, r)
            cols[j][m] = v
        return cls(tuple(TruncatedSeries(field, precision, tuple(c)) for c in cols))

    def flatten(self) -> list[Any]:
        """Dense raw values in (degree, branch) order."""
        return [self.branches[j].values[m] for m in range(self.precision + 1) for j in range(self.r)]

    def mul(self, other: BranchVector) -> BranchVector:
        """Componentwise product (the ring structure of R̃)."""
        if self.r != other.r:
            raise PrecisionMismatch(f"Branch counts differ: {self.r} vs {other.r}")
        return BranchVector(tuple(mul(a, b) for a, b in zip(self.branches, other.branches)))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.branches)


def unit_vector(j: int, m: int, r: int, precision: int, field: FieldDescriptor) -> BranchVector:
    """``e_j · t^m``: branch *j* (1-based) equals t^m, all others zero.

    Raises:
        IndexOutOfRange: Unless 1 ≤ j ≤ r and 0 ≤ m ≤ D.
    """
    if not 1 <= j <= r:
        raise IndexOutOfRange(f"Branch index {j!r} outside [1, {r}]")
    if not 0 <= m <= precision:
        raise IndexOutOfRange(f"Exponent {m!r} outside [0, {precision}]")
    zero = TruncatedSeries.zero(field, precision)
    values = [field.zero()] * (precision + 1)
    values[m] = field.one()
    hit = TruncatedSeries(field, precision, tuple(values))
    return BranchVector(tuple(hit if k == j - 1 else zero for k in range(r)))
