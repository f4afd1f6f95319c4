"""Tests for app.core.coeffield — exact fields, base rings and residue maps.

Covers:
  - ℚ, 𝔽ₚ, ℚ(s) arithmetic and canonical forms
  - Field mismatch and division by zero
  - ℤ / ℚ[s] ring elements
  - Residue maps at every kind of specialization point
  - Field axioms and residue homomorphisms on seeded random elements
"""

from fractions import Fraction

import numpy as np
import pytest

from app.core.coeffield import (
    QS_RING,
    S_GEN,
    FieldDescriptor,
    FieldKind,
    RationalFunction,
    RingDescriptor,
    RingElement,
    RingKind,
    Scalar,
    arith,
    check_compatible,
    format_poly,
    invert,
    poly_coeffs,
    poly_eval,
    poly_from_coeffs,
    residue_field,
    residue_map,
)
from app.core.errors import DivisionByZero, FieldMismatch, IncompatiblePoint
from app.models.family import SpecPoint

QQ_F = FieldDescriptor.rationals()
QS_F = FieldDescriptor.rational_functions()


def _rf(num, den=None) -> Scalar:
    return Scalar(QS_F, RationalFunction.make(num, den))


# ── Field descriptors ────────────────────────────────────────────────

class TestFieldDescriptor:

    def test_labels(self):
        assert QQ_F.label == "Q"
        assert FieldDescriptor.prime_field(7).label == "GF(7)"
        assert QS_F.label == "Q(s)"

    def test_characteristic(self):
        assert QQ_F.characteristic == 0
        assert FieldDescriptor.prime_field(5).characteristic == 5

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 2**61 + 1])
    def test_non_prime_rejected(self, p):
        with pytest.raises(ValueError):
            FieldDescriptor.prime_field(p)

    def test_equal_descriptors(self):
        assert FieldDescriptor.prime_field(7) == FieldDescriptor.prime_field(7)
        assert FieldDescriptor.prime_field(7) != FieldDescriptor.prime_field(5)


# ── Rationals ────────────────────────────────────────────────────────

class TestRationals:

    def test_add(self):
        a = Scalar.of(QQ_F, Fraction(1, 2))
        b = Scalar.of(QQ_F, Fraction(1, 3))
        assert (a + b).value == Fraction(5, 6)

    def test_sub_mul_div(self):
        a = Scalar.of(QQ_F, 3)
        b = Scalar.of(QQ_F, Fraction(3, 4))
        assert (a - b).value == Fraction(9, 4)
        assert (a * b).value == Fraction(9, 4)
        assert (a / b).value == 4

    def test_arith_unknown_op(self):
        a = Scalar.of(QQ_F, 1)
        with pytest.raises(ValueError):
            arith(a, a, "pow")

    def test_invert_zero(self):
        with pytest.raises(DivisionByZero):
            invert(Scalar.of(QQ_F, 0))

    def test_division_by_zero_is_zero_division_error(self):
        with pytest.raises(ZeroDivisionError):
            invert(Scalar.of(QQ_F, 0))


# ── Prime fields ─────────────────────────────────────────────────────

class TestPrimeField:

    def test_mul_wraps(self):
        f = FieldDescriptor.prime_field(7)
        assert (Scalar.of(f, 3) * Scalar.of(f, 5)).value == 1

    def test_inverse(self):
        f = FieldDescriptor.prime_field(7)
        assert invert(Scalar.of(f, 3)).value == 5

    def test_fraction_image(self):
        f = FieldDescriptor.prime_field(7)
        assert f.from_fraction(Fraction(1, 2)) == 4

    def test_negative_residue(self):
        f = FieldDescriptor.prime_field(5)
        assert Scalar.of(f, -1).value == 4

    def test_denominator_vanishes(self):
        f = FieldDescriptor.prime_field(3)
        with pytest.raises(DivisionByZero):
            f.from_fraction(Fraction(1, 3))

    def test_field_mismatch(self):
        a = Scalar.of(FieldDescriptor.prime_field(5), 1)
        b = Scalar.of(FieldDescriptor.prime_field(7), 1)
        with pytest.raises(FieldMismatch):
            _ = a + b


# ── Rational functions ───────────────────────────────────────────────

class TestRationalFunctions:

    def test_gcd_cancellation(self):
        x = _rf(S_GEN**2 - 1, S_GEN - 1)
        assert x.value == RationalFunction.make(S_GEN + 1)
        assert x.value.is_polynomial

    def test_denominator_monic(self):
        x = RationalFunction.make(QS_RING.one, 2 * S_GEN + 2)
        assert x.den == S_GEN + 1
        assert poly_coeffs(x.num) == [Fraction(1, 2)]

    def test_zero_canonical(self):
        z = RationalFunction.make(QS_RING.zero, S_GEN + 3)
        assert z.den == QS_RING.one
        assert QS_F.is_zero(z)

    def test_inverse_of_s(self):
        inv = invert(_rf(S_GEN))
        assert inv.value == RationalFunction.make(QS_RING.one, S_GEN)
        assert not inv.value.is_polynomial
        assert str(inv) == "(1)/(s)"

    def test_product_cancels(self):
        x = _rf(S_GEN, S_GEN + 1)
        y = _rf(S_GEN + 1, S_GEN)
        assert (x * y).value == RationalFunction.constant(1)

    def test_sum_over_common_denominator(self):
        x = _rf(QS_RING.one, S_GEN)
        y = _rf(S_GEN - 1, S_GEN)
        assert (x + y).value == RationalFunction.constant(1)

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZero):
            RationalFunction.make(S_GEN, QS_RING.zero)

    def test_coerce_constant_into_rationals(self):
        assert Scalar.of(QQ_F, RationalFunction.constant(Fraction(2, 3))).value == Fraction(2, 3)

    def test_coerce_nonconstant_into_rationals(self):
        with pytest.raises(FieldMismatch):
            Scalar.of(QQ_F, RationalFunction.make(S_GEN))

    def test_hash_consistent_with_eq(self):
        a = RationalFunction.make(2 * S_GEN, 2 * S_GEN + 2)
        b = RationalFunction.make(S_GEN, S_GEN + 1)
        assert a == b
        assert hash(a) == hash(b)


# ── ℚ[s] helpers ─────────────────────────────────────────────────────

class TestPolynomialHelpers:

    def test_round_trip_coeffs(self):
        p = poly_from_coeffs([Fraction(1), Fraction(0), Fraction(-2, 3)])
        assert poly_coeffs(p) == [1, 0, Fraction(-2, 3)]

    def test_eval(self):
        p = poly_from_coeffs({0: Fraction(1), 2: Fraction(1)})
        assert poly_eval(p, Fraction(2)) == 5

    def test_format(self):
        assert format_poly(S_GEN**2 - 2 * S_GEN + 1) == "s^2 - 2*s + 1"
        assert format_poly(QS_RING.zero) == "0"


# ── Rings and residue maps ───────────────────────────────────────────

class TestResidueMaps:

    def test_ring_element_arith(self):
        zz = RingDescriptor.integers()
        assert (RingElement(zz, 3) * RingElement(zz, 4)).value == 12
        qs = RingDescriptor.polynomials()
        assert (RingElement(qs, S_GEN) + RingElement(qs, QS_RING.one)).value == S_GEN + 1

    def test_ring_mismatch(self):
        with pytest.raises(FieldMismatch):
            _ = RingElement(RingDescriptor.integers(), 1) + RingElement(
                RingDescriptor.polynomials(), QS_RING.one
            )

    def test_lambda_point_evaluates(self):
        x = RingElement(RingDescriptor.polynomials(), S_GEN**2 + 1)
        y = residue_map(x, SpecPoint.lam(2))
        assert y.field == QQ_F
        assert y.value == 5

    def test_generic_s_includes(self):
        x = RingElement(RingDescriptor.polynomials(), S_GEN)
        y = residue_map(x, SpecPoint.generic_s())
        assert y.field == QS_F
        assert y.value == RationalFunction.make(S_GEN)

    def test_prime_point_reduces(self):
        y = residue_map(RingElement(RingDescriptor.integers(), 10), SpecPoint.prime(3))
        assert y.field == FieldDescriptor.prime_field(3)
        assert y.value == 1

    def test_generic_z_includes(self):
        y = residue_map(RingElement(RingDescriptor.integers(), -4), SpecPoint.generic_z())
        assert y.field == QQ_F
        assert y.value == Fraction(-4)

    def test_incompatible_point(self):
        with pytest.raises(IncompatiblePoint):
            check_compatible(RingDescriptor.integers(), SpecPoint.lam(0))
        with pytest.raises(IncompatiblePoint):
            residue_map(RingElement(RingDescriptor.polynomials(), S_GEN), SpecPoint.prime(2))

    def test_residue_fields(self):
        assert residue_field(SpecPoint.lam(Fraction(1, 2))) == QQ_F
        assert residue_field(SpecPoint.generic_s()) == QS_F
        assert residue_field(SpecPoint.prime(5)) == FieldDescriptor.prime_field(5)
        assert residue_field(SpecPoint.generic_z()) == QQ_F

    def test_prime_point_needs_prime(self):
        with pytest.raises(ValueError):
            SpecPoint.prime(4)


# ── Field and homomorphism laws on random elements ───────────────────

SEED = 20260612
TRIALS = 40
LAW_FIELDS = [QQ_F, FieldDescriptor.prime_field(2), FieldDescriptor.prime_field(7), QS_F]


def _random_fraction(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))


def _random_poly(rng: np.random.Generator, max_len: int = 3):
    return poly_from_coeffs([_random_fraction(rng) for _ in range(int(rng.integers(1, max_len + 1)))])


def _random_scalar(rng: np.random.Generator, field: FieldDescriptor) -> Scalar:
    if field.kind is FieldKind.PRIME:
        return Scalar(field, field.from_int(int(rng.integers(0, field.p))))
    if field.kind is FieldKind.RATIONALS:
        return Scalar(field, _random_fraction(rng))
    den = _random_poly(rng, 2)
    return Scalar(field, RationalFunction.make(_random_poly(rng), den if not den.is_zero else None))


def _random_ring_element(rng: np.random.Generator, ring_desc: RingDescriptor) -> RingElement:
    if ring_desc.kind is RingKind.INTEGERS:
        return RingElement(ring_desc, int(rng.integers(-50, 51)))
    return RingElement(ring_desc, _random_poly(rng, 4))


@pytest.mark.parametrize("field", LAW_FIELDS, ids=lambda f: f.label)
class TestFieldLaws:

    def test_associativity(self, field):
        rng = np.random.default_rng(SEED)
        for _ in range(TRIALS):
            a, b, c = (_random_scalar(rng, field) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)

    def test_commutativity(self, field):
        rng = np.random.default_rng(SEED + 1)
        for _ in range(TRIALS):
            a, b = _random_scalar(rng, field), _random_scalar(rng, field)
            assert a + b == b + a
            assert a * b == b * a

    def test_distributivity(self, field):
        rng = np.random.default_rng(SEED + 2)
        for _ in range(TRIALS):
            a, b, c = (_random_scalar(rng, field) for _ in range(3))
            assert a * (b + c) == a * b + a * c

    def test_inverses(self, field):
        rng = np.random.default_rng(SEED + 3)
        one = Scalar(field, field.one())
        for _ in range(TRIALS):
            a = _random_scalar(rng, field)
            assert (a - a).is_zero()
            assert (a + (-a)).is_zero()
            if a.is_zero():
                with pytest.raises(DivisionByZero):
                    invert(a)
            else:
                assert a * invert(a) == one
                assert a / a == one


_HOMOMORPHISM_POINTS = [
    (RingDescriptor.integers(), SpecPoint.prime(2)),
    (RingDescriptor.integers(), SpecPoint.prime(7)),
    (RingDescriptor.integers(), SpecPoint.generic_z()),
    (RingDescriptor.polynomials(), SpecPoint.lam(0)),
    (RingDescriptor.polynomials(), SpecPoint.lam(Fraction(-3, 2))),
    (RingDescriptor.polynomials(), SpecPoint.generic_s()),
]


@pytest.mark.parametrize(
    "ring_desc, point", _HOMOMORPHISM_POINTS, ids=lambda v: getattr(v, "label", None),
)
class TestResidueHomomorphism:

    def test_respects_sum_and_product(self, ring_desc, point):
        rng = np.random.default_rng(SEED + 4)
        for _ in range(TRIALS):
            x = _random_ring_element(rng, ring_desc)
            y = _random_ring_element(rng, ring_desc)
            assert residue_map(x + y, point) == residue_map(x, point) + residue_map(y, point)
            assert residue_map(x * y, point) == residue_map(x, point) * residue_map(y, point)

    def test_maps_one_to_one(self, ring_desc, point):
        image = residue_map(RingElement(ring_desc, ring_desc.one()), point)
        assert image == Scalar(residue_field(point), residue_field(point).one())
