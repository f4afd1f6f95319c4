"""Exact coefficient fields and rings.

Fields:
    ℚ      raw value ``fractions.Fraction`` (lowest terms, positive denominator)
    𝔽ₚ     raw value ``int`` residue in [0, p)
    ℚ(s)   raw value ``RationalFunction`` (coprime, monic denominator)

Rings (bases of families):
    ℤ      raw value ``int``
    ℚ[s]   raw value sympy ``PolyElement`` in ``QS_RING``

``FieldDescriptor`` / ``RingDescriptor`` implement the arithmetic on raw
values; this is the hot path of the echelon engine.  ``Scalar`` and
``RingElement`` wrap a raw value with its descriptor for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from sympy import isprime
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from app.constants import MAX_PRIME
from app.core.errors import DivisionByZero, FieldMismatch, IncompatiblePoint
from app.models.family import PointKind

if TYPE_CHECKING:
    from sympy.polys.rings import PolyElement

    from app.models.family import SpecPoint

QS_RING, S_GEN = ring("s", QQ)


# ---------------------------------------------------------------------------
# ℚ[s] helpers (sympy PolyElement over QQ)
# ---------------------------------------------------------------------------

def qq(value: Fraction | int) -> Any:
    """Fraction → sympy QQ element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(c: Any) -> Fraction:
    """sympy QQ element → Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def poly_from_coeffs(coeffs: dict[int, Fraction] | list[Fraction]) -> PolyElement:
    """Build a ℚ[s] polynomial from ``{degree: coefficient}`` or a dense list."""
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    return QS_RING.from_dict({(k,): qq(c) for k, c in items if c})


def poly_coeffs(p: PolyElement) -> list[Fraction]:
    """Dense ascending coefficient list, no trailing zero (``[]`` for 0)."""
    if p.is_zero:
        return []
    terms = {k: to_fraction(c) for (k,), c in p.items()}
    return [terms.get(k, Fraction(0)) for k in range(max(terms) + 1)]


def poly_eval(p: PolyElement, point: Fraction) -> Fraction:
    """Evaluate a ℚ[s] polynomial at ``s = point``."""
    total = Fraction(0)
    for c in reversed(poly_coeffs(p)):
        total = total * point + c
    return total


def format_poly(p: PolyElement, var: str = "s") -> str:
    """Canonical text form, highest degree first: ``s^2 - 2*s + 1``."""
    coeffs = poly_coeffs(p)
    if not coeffs:
        return "0"
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# ℚ(s)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RationalFunction:
    """Element of ℚ(s) in canonical form.

    Attributes:
        num: Numerator in ℚ[s].
        den: Monic denominator in ℚ[s], coprime to ``num``; 1 when num = 0.
    """
    num: Any
    den: Any

    @classmethod
    def make(cls, num: PolyElement, den: PolyElement | None = None) -> RationalFunction:
        """Normalize ``num/den`` to canonical form."""
        if den is None:
            den = QS_RING.one
        if den.is_zero:
            raise DivisionByZero("Zero denominator in Q(s)")
        if num.is_zero:
            return cls(QS_RING.zero, QS_RING.one)
        if den != QS_RING.one:
            g = num.gcd(den)
            if g != QS_RING.one:
                g = g.monic()
                num = num.exquo(g)
                den = den.exquo(g)
            lc = den.LC
            if lc != QQ.one:
                num = num.quo_ground(lc)
                den = den.monic()
        return cls(num, den)

    @classmethod
    def constant(cls, value: Fraction | int) -> RationalFunction:
        return cls.make(QS_RING.ground_new(qq(value)))

    @property
    def is_polynomial(self) -> bool:
        return self.den == QS_RING.one

    @property
    def is_constant(self) -> bool:
        return self.is_polynomial and (self.num.is_zero or self.num.degree() == 0)

    def constant_value(self) -> Fraction:
        """Value of a constant rational function."""
        coeffs = poly_coeffs(self.num)
        return coeffs[0] if coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((tuple(poly_coeffs(self.num)), tuple(poly_coeffs(self.den))))

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def rf_neg(a: RationalFunction) -> RationalFunction:
    return RationalFunction(-a.num, a.den)


def rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.den == b.den:
        if a.den == QS_RING.one:
            return RationalFunction.make(a.num + b.num)
        return RationalFunction.make(a.num + b.num, a.den)
    return RationalFunction.make(a.num * b.den + b.num * a.den, a.den * b.den)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.num.is_zero or b.num.is_zero:
        return RationalFunction(QS_RING.zero, QS_RING.one)
    if a.den == QS_RING.one and b.den == QS_RING.one:
        return RationalFunction(a.num * b.num, QS_RING.one)
    return RationalFunction.make(a.num * b.num, a.den * b.den)


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------

class FieldKind(Enum):
    RATIONALS = "Q"
    PRIME = "GF"
    RATIONAL_FUNCTIONS = "Q(s)"


@dataclass(frozen=True)
class FieldDescriptor:
    """Exact coefficient field ℚ, 𝔽ₚ or ℚ(s).

    Attributes:
        kind: Field kind.
        p: Verified prime for ``PRIME`` fields, else None.
    """
    kind: FieldKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind is FieldKind.PRIME:
            if self.p is None or not (2 <= self.p < MAX_PRIME) or not isprime(self.p):
                raise ValueError(f"GF(p) needs a prime 2 <= p < 2^61, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"Only prime fields carry p, got {self.p!r} for {self.kind.value}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rationals(cls) -> FieldDescriptor:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> FieldDescriptor:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def rational_functions(cls) -> FieldDescriptor:
        return cls(FieldKind.RATIONAL_FUNCTIONS)

    @property
    def label(self) -> str:
        if self.kind is FieldKind.PRIME:
            return f"GF({self.p})"
        return self.kind.value

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is FieldKind.PRIME else 0

    # -- raw arithmetic ----------------------------------------------------

    def zero(self) -> Any:
        if self.kind is FieldKind.RATIONALS:
            return Fraction(0)
        if self.kind is FieldKind.PRIME:
            return 0
        return RationalFunction(QS_RING.zero, QS_RING.one)

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, n: int) -> Any:
        if self.kind is FieldKind.RATIONALS:
            return Fraction(n)
        if self.kind is FieldKind.PRIME:
            return n % self.p
        return RationalFunction.constant(n)

    def from_fraction(self, value: Fraction | int) -> Any:
        """Image of a rational number; raises DivisionByZero mod p."""
        value = Fraction(value)
        if self.kind is FieldKind.PRIME:
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"Denominator of {value} vanishes in {self.label}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if self.kind is FieldKind.RATIONALS:
            return value
        return RationalFunction.constant(value)

    def is_zero(self, a: Any) -> bool:
        if self.kind is FieldKind.RATIONAL_FUNCTIONS:
            return a.num.is_zero
        return a == 0

    def add(self, a: Any, b: Any) -> Any:
        if self.kind is FieldKind.PRIME:
            return (a + b) % self.p
        if self.kind is FieldKind.RATIONALS:
            return a + b
        return rf_add(a, b)

    def neg(self, a: Any) -> Any:
        if self.kind is FieldKind.PRIME:
            return -a % self.p
        if self.kind is FieldKind.RATIONALS:
            return -a
        return rf_neg(a)

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def mul(self, a: Any, b: Any) -> Any:
        if self.kind is FieldKind.PRIME:
            return a * b % self.p
        if self.kind is FieldKind.RATIONALS:
            return a * b
        return rf_mul(a, b)

    def inv(self, a: Any) -> Any:
        if self.is_zero(a):
            raise DivisionByZero(f"Inverse of zero in {self.label}")
        if self.kind is FieldKind.PRIME:
            return pow(a, -1, self.p)
        if self.kind is FieldKind.RATIONALS:
            return 1 / a
        return RationalFunction.make(a.den, a.num)

    def format_value(self, a: Any) -> str:
        return str(a)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """Element of an exact coefficient field.

    Attributes:
        field: Owning field.
        value: Canonical raw value (see module docstring).
    """
    field: FieldDescriptor
    value: Any

    @classmethod
    def of(cls, field: FieldDescriptor, value: Any) -> Scalar:
        """Coerce an int, Fraction, RationalFunction or Scalar into *field*."""
        if isinstance(value, Scalar):
            _check_same(field, value.field)
            return value
        if isinstance(value, RationalFunction):
            if field.kind is FieldKind.RATIONAL_FUNCTIONS:
                return cls(field, value)
            if not value.is_constant:
                raise FieldMismatch(f"{value} is not an element of {field.label}")
            value = value.constant_value()
        return cls(field, field.from_fraction(value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __add__(self, other: Scalar) -> Scalar:
        return arith(self, other, "add")

    def __sub__(self, other: Scalar) -> Scalar:
        return arith(self, other, "sub")

    def __mul__(self, other: Scalar) -> Scalar:
        return arith(self, other, "mul")

    def __neg__(self) -> Scalar:
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other: Scalar) -> Scalar:
        return arith(self, invert(other), "mul")

    def __str__(self) -> str:
        return self.field.format_value(self.value)


def _check_same(a: Any, b: Any) -> None:
    if a != b:
        raise FieldMismatch(f"Operands in {getattr(a, 'label', a)} and {getattr(b, 'label', b)}")


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact ``add`` / ``sub`` / ``mul`` of two scalars of the same field.

    Raises:
        FieldMismatch: If the descriptors differ.
    """
    _check_same(a.field, b.field)
    f = a.field
    if op == "add":
        return Scalar(f, f.add(a.value, b.value))
    if op == "sub":
        return Scalar(f, f.sub(a.value, b.value))
    if op == "mul":
        return Scalar(f, f.mul(a.value, b.value))
    raise ValueError(f"Unknown operation: {op!r}")


def invert(a: Scalar) -> Scalar:
    """Multiplicative inverse; raises DivisionByZero for 0."""
    return Scalar(a.field, a.field.inv(a.value))


# ---------------------------------------------------------------------------
# Coefficient rings ℤ and ℚ[s]
# ---------------------------------------------------------------------------

class RingKind(Enum):
    INTEGERS = "Z"
    POLYNOMIALS = "Q[s]"


@dataclass(frozen=True)
class RingDescriptor:
    """Base ring A of a family: ℤ or ℚ[s].

    Attributes:
        kind: Ring kind.
    """
    kind: RingKind

    @classmethod
    def integers(cls) -> RingDescriptor:
        return cls(RingKind.INTEGERS)

    @classmethod
    def polynomials(cls) -> RingDescriptor:
        return cls(RingKind.POLYNOMIALS)

    @property
    def label(self) -> str:
        return self.kind.value

    def zero(self) -> Any:
        return 0 if self.kind is RingKind.INTEGERS else QS_RING.zero

    def one(self) -> Any:
        return 1 if self.kind is RingKind.INTEGERS else QS_RING.one

    def from_int(self, n: int) -> Any:
        return n if self.kind is RingKind.INTEGERS else QS_RING.ground_new(qq(n))

    def is_zero(self, a: Any) -> bool:
        return a == 0 if self.kind is RingKind.INTEGERS else a.is_zero

    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def neg(self, a: Any) -> Any:
        return -a

    def sub(self, a: Any, b: Any) -> Any:
        return a - b

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def format_value(self, a: Any) -> str:
        return str(a) if self.kind is RingKind.INTEGERS else format_poly(a)


@dataclass(frozen=True, eq=False)
class RingElement:
    """Element of ℤ or ℚ[s].

    Attributes:
        ring: Owning ring.
        value: ``int`` or ℚ[s] ``PolyElement`` (exact degree, canonical zero).
    """
    ring: RingDescriptor
    value: Any

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self) -> int:
        if self.ring.kind is RingKind.INTEGERS:
            return hash((self.ring, self.value))
        return hash((self.ring, tuple(poly_coeffs(self.value))))

    def __add__(self, other: RingElement) -> RingElement:
        _check_same(self.ring, other.ring)
        return RingElement(self.ring, self.value + other.value)

    def __mul__(self, other: RingElement) -> RingElement:
        _check_same(self.ring, other.ring)
        return RingElement(self.ring, self.value * other.value)

    def __str__(self) -> str:
        return self.ring.format_value(self.value)


# ---------------------------------------------------------------------------
# Residue maps A → k(𝔭)
# ---------------------------------------------------------------------------

_POINT_RINGS = {
    PointKind.LAMBDA: RingKind.POLYNOMIALS,
    PointKind.GENERIC_S: RingKind.POLYNOMIALS,
    PointKind.PRIME: RingKind.INTEGERS,
    PointKind.GENERIC_Z: RingKind.INTEGERS,
}


def check_compatible(ring_desc: RingDescriptor, point: SpecPoint) -> None:
    """Raise IncompatiblePoint unless *point* lies in Spec of *ring_desc*."""
    if _POINT_RINGS[point.kind] is not ring_desc.kind:
        raise IncompatiblePoint(f"Point {point.label!r} is not a point of Spec {ring_desc.label}")


def residue_field(point: SpecPoint) -> FieldDescriptor:
    """Residue field k(𝔭) of a specialization point."""
    if point.kind is PointKind.LAMBDA or point.kind is PointKind.GENERIC_Z:
        return FieldDescriptor.rationals()
    if point.kind is PointKind.GENERIC_S:
        return FieldDescriptor.rational_functions()
    return FieldDescriptor.prime_field(point.value)


def residue_raw(ring_desc: RingDescriptor, value: Any, point: SpecPoint) -> Any:
    """Raw-value residue map (no compatibility check)."""
    if point.kind is PointKind.LAMBDA:
        return poly_eval(value, point.value)
    if point.kind is PointKind.GENERIC_S:
        return RationalFunction(value, QS_RING.one)
    if point.kind is PointKind.PRIME:
        return value % point.value
    return Fraction(value)


def residue_map(x: RingElement, point: SpecPoint) -> Scalar:
    """Image of a ring element in the residue field of *point*.

    ℚ[s] at ⟨s−λ⟩ evaluates at λ; ℚ[s] at ⟨0⟩ includes into ℚ(s);
    ℤ at ⟨p⟩ reduces mod p; ℤ at ⟨0⟩ includes into ℚ.

    Raises:
        IncompatiblePoint: If *point* is not a point of Spec ``x.ring``.
    """
    check_compatible(x.ring, point)
    return Scalar(residue_field(point), residue_raw(x.ring, x.value, point))
