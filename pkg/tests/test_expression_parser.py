"""Tests for app.core.expression_parser — entry grammar and domain coercion."""

from fractions import Fraction

import pytest

from app.core.coeffield import QS_RING, S_GEN, FieldDescriptor, RationalFunction, RingDescriptor
from app.core.errors import ConstantTermError, DocumentSyntaxError
from app.core.expression_parser import parse_entry, tokenize
from app.core.series import format_polynomial

QQ_F = FieldDescriptor.rationals()
QS_F = FieldDescriptor.rational_functions()
ZZ = RingDescriptor.integers()
QS_R = RingDescriptor.polynomials()


class TestTokenize:

    def test_columns(self):
        tokens = tokenize("t^2 + 3*t")
        assert [t.kind for t in tokens] == ["t", "^", "int", "+", "int", "*", "t", "end"]
        assert tokens[4].column == 7

    def test_bad_character(self):
        with pytest.raises(DocumentSyntaxError) as exc:
            tokenize("t^2 + x")
        assert exc.value.column == 7


class TestParseEntry:

    def test_monomial(self):
        assert parse_entry("t^5", QQ_F).terms == ((5, 1),)

    def test_bare_t(self):
        assert parse_entry("t", QQ_F).terms == ((1, 1),)

    def test_signs_and_fractions(self):
        p = parse_entry("-t^2 + 3/4*t^3 - 2*t^5", QQ_F)
        assert p.terms == ((2, -1), (3, Fraction(3, 4)), (5, -2))

    def test_repeated_terms_collect(self):
        assert parse_entry("t^2 + t^2 - 2*t^2 + t^3", QQ_F).terms == ((3, 1),)

    def test_zero_entry(self):
        assert parse_entry("0", QQ_F).is_zero()

    def test_prime_field(self):
        f5 = FieldDescriptor.prime_field(5)
        assert parse_entry("7*t^2 - t^3", f5).terms == ((2, 2), (3, 4))

    def test_prime_field_denominator_vanishes(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("1/5*t", FieldDescriptor.prime_field(5))

    def test_s_coefficient_over_qs(self):
        p = parse_entry("(s)*t^4 + t^8", QS_F)
        assert p.terms[0] == (4, RationalFunction.make(S_GEN))
        assert format_polynomial(p) == "(s)*t^4 + t^8"

    def test_rational_function_coefficient(self):
        p = parse_entry("((s^2 - 1)/(s - 1))*t", QS_F)
        assert p.terms == ((1, RationalFunction.make(S_GEN + 1)),)

    def test_polynomial_ring(self):
        p = parse_entry("(2*s^2 - s)*t^3", QS_R)
        assert p.terms == ((3, 2 * S_GEN**2 - S_GEN),)

    def test_polynomial_ring_rejects_quotient(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("(1/s)*t", QS_R)

    def test_integers(self):
        assert parse_entry("t^6 + t^7", ZZ).terms == ((6, 1), (7, 1))

    def test_integers_reject_fraction(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("1/2*t", ZZ)

    def test_rationals_reject_s(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("(s)*t", QQ_F)

    def test_constant_term(self):
        with pytest.raises(ConstantTermError):
            parse_entry("t^3 + 1", QQ_F)

    def test_cancelling_constant_is_fine(self):
        assert parse_entry("1 + t - 1", QQ_F).terms == ((1, 1),)

    def test_s_division_by_zero(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("((s)/(s - s))*t", QS_F)

    @pytest.mark.parametrize("text,column", [
        ("t^", 3),
        ("t^2 +", 6),
        ("3*", 3),
        ("t^2 t", 5),
        ("(s + 1*t", 8),
    ])
    def test_syntax_error_column(self, text, column):
        with pytest.raises(DocumentSyntaxError) as exc:
            parse_entry(text, QS_F)
        assert exc.value.line == 1
        assert exc.value.column == column

    def test_zero_denominator(self):
        with pytest.raises(DocumentSyntaxError):
            parse_entry("1/0*t", QQ_F)

    def test_format_round_trip(self):
        for text in ["t^2 - t^3", "3/4*t + t^9", "(s^2 + 1)*t^2 - (s)*t^5"]:
            domain = QS_F if "s" in text else QQ_F
            p = parse_entry(text, domain)
            assert parse_entry(format_polynomial(p), domain) == p

    def test_qs_ring_zero(self):
        assert parse_entry("(s - s)*t^2", QS_R).terms == ()
        assert QS_RING.zero.is_zero
