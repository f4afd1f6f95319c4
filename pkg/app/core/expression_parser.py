"""Recursive-descent parser for entry expressions.

Grammar (whitespace ignored)::

    entry   := ['+' | '-'] term (('+' | '-') term)*
    term    := coeff ['*' tpow] | tpow
    tpow    := 't' ['^' INT]
    coeff   := INT ['/' INT] | '(' sexpr ')'
    sexpr   := ['+' | '-'] sterm (('+' | '-') sterm)*
    sterm   := sfactor (('*' | '/') sfactor)*
    sfactor := INT | 's' ['^' INT] | '(' sexpr ')'

Coefficients are parsed into ℚ(s) and then coerced into the target field
or ring: ℚ and 𝔽ₚ need constants, ℤ needs integers, ℚ[s] needs
polynomials in s, ℚ(s) takes anything.  A nonzero term of degree 0 in t
raises ConstantTermError; the entry ``0`` is the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from app.core.coeffield import (
    QS_RING,
    S_GEN,
    FieldDescriptor,
    FieldKind,
    RationalFunction,
    RingDescriptor,
    RingKind,
    rf_add,
    rf_mul,
    rf_neg,
)
from app.core.errors import ConstantTermError, DivisionByZero, DocumentSyntaxError
from app.core.series import UniPolynomial

_SYMBOLS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str       # "int", "t", "s", one of _SYMBOLS, or "end"
    text: str
    column: int     # 1-based


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(Token("int", text[start:k], start + 1))
            continue
        if ch in ("t", "s") or ch in _SYMBOLS:
            tokens.append(Token(ch, ch, k + 1))
            k += 1
            continue
        raise DocumentSyntaxError(f"Unexpected character {ch!r}", 1, k + 1)
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


def _rf_const(value: Fraction | int) -> RationalFunction:
    return RationalFunction.constant(value)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Token | None = None) -> DocumentSyntaxError:
        token = token or self.tok
        return DocumentSyntaxError(f"{message} in {self.text!r}", 1, token.column)

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            tok = self.tok
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"Expected {kind!r}, found {found!r}")
        return tok

    def integer(self) -> int:
        return int(self.expect("int").text)

    # -- entry level -------------------------------------------------------

    def entry(self) -> list[tuple[int, RationalFunction, Token]]:
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            start = self.tok
            exp, coeff = self.term()
            terms.append((exp, coeff if sign > 0 else rf_neg(coeff), start))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        if self.tok.kind != "end":
            raise self.error(f"Unexpected {self.tok.text!r}")
        return terms

    def term(self) -> tuple[int, RationalFunction]:
        if self.tok.kind == "t":
            return self.tpow(), _rf_const(1)
        coeff = self.coeff()
        if self.accept("*"):
            return self.tpow(), coeff
        return 0, coeff

    def tpow(self) -> int:
        self.expect("t")
        if self.accept("^"):
            return self.integer()
        return 1

    def coeff(self) -> RationalFunction:
        if self.accept("("):
            value = self.sexpr()
            self.expect(")")
            return value
        if self.tok.kind != "int":
            raise self.error(f"Expected a coefficient, found {self.tok.text or 'end of input'!r}")
        num = self.integer()
        if self.accept("/"):
            den_tok = self.tok
            den = self.integer()
            if den == 0:
                raise self.error("Zero denominator", den_tok)
            return _rf_const(Fraction(num, den))
        return _rf_const(num)

    # -- s-expressions -----------------------------------------------------

    def sexpr(self) -> RationalFunction:
        negate = self.accept("-") is not None
        if not negate:
            self.accept("+")
        value = self.sterm()
        if negate:
            value = rf_neg(value)
        while True:
            if self.accept("+"):
                value = rf_add(value, self.sterm())
            elif self.accept("-"):
                value = rf_add(value, rf_neg(self.sterm()))
            else:
                return value

    def sterm(self) -> RationalFunction:
        value = self.sfactor()
        while True:
            if self.accept("*"):
                value = rf_mul(value, self.sfactor())
            elif self.tok.kind == "/":
                op = self.expect("/")
                divisor = self.sfactor()
                if divisor.num.is_zero:
                    raise self.error("Division by zero", op)
                value = rf_mul(value, RationalFunction.make(divisor.den, divisor.num))
            else:
                return value

    def sfactor(self) -> RationalFunction:
        if self.tok.kind == "int":
            return _rf_const(self.integer())
        if self.accept("s"):
            power = self.integer() if self.accept("^") else 1
            return RationalFunction(S_GEN**power, QS_RING.one)
        if self.accept("("):
            value = self.sexpr()
            self.expect(")")
            return value
        raise self.error(f"Unexpected {self.tok.text or 'end of input'!r}")


# ---------------------------------------------------------------------------
# Coercion into the target domain
# ---------------------------------------------------------------------------

def _coerce(value: RationalFunction, domain: Any, token: Token, text: str) -> Any:
    def fail(what: str) -> DocumentSyntaxError:
        return DocumentSyntaxError(f"Coefficient {value} is not {what} in {text!r}", 1, token.column)

    if isinstance(domain, FieldDescriptor):
        if domain.kind is FieldKind.RATIONAL_FUNCTIONS:
            return value
        if not value.is_constant:
            raise fail(f"an element of {domain.label}")
        try:
            return domain.from_fraction(value.constant_value())
        except DivisionByZero as exc:
            raise DocumentSyntaxError(f"{exc} in {text!r}", 1, token.column) from exc

    if domain.kind is RingKind.POLYNOMIALS:
        if not value.is_polynomial:
            raise fail("a polynomial in s")
        return value.num
    if not value.is_constant or value.constant_value().denominator != 1:
        raise fail("an integer")
    return int(value.constant_value())


def parse_entry(text: str, domain: FieldDescriptor | RingDescriptor) -> UniPolynomial:
    """Parse one entry expression into a polynomial in t over *domain*.

    Raises:
        DocumentSyntaxError: Malformed text or a coefficient outside *domain*
            (line 1, column within *text*).
        ConstantTermError: If the entry has a nonzero constant term.
    """
    parser = _Parser(text)
    raw_terms = []
    for exp, coeff, token in parser.entry():
        if coeff.num.is_zero:
            continue
        raw_terms.append((exp, _coerce(coeff, domain, token, text), token))
    poly = UniPolynomial.from_terms(domain, ((e, c) for e, c, _ in raw_terms))
    if poly.min_exponent == 0:
        lead = domain.format_value(poly.coefficient(0))
        raise ConstantTermError(f"Entry {text!r} has a nonzero constant term {lead}")
    return poly

