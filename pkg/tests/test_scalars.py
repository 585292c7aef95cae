"""Exact coefficient arithmetic: complex rationals and Planck-monomial
fractions."""

from fractions import Fraction

import pytest

from pbracket.scalars import (CRat, CR_I, CR_MINUS_I, CR_MINUS_ONE, CR_ONE,
                              CR_ZERO, S_ONE, S_ZERO, Scalar, scalar)


def test_crat_construction_and_equality():
    a = CRat(Fraction(1, 2), Fraction(-3))
    assert a.re == Fraction(1, 2)
    assert a.im == Fraction(-3)
    assert CRat.of(2) == CRat(Fraction(2))
    assert CRat.of(Fraction(1, 3)).re == Fraction(1, 3)
    with pytest.raises(TypeError):
        CRat.of(0.5)


def test_crat_field_operations():
    a = CRat(Fraction(1), Fraction(2))
    b = CRat(Fraction(3), Fraction(-1))
    assert a + b == CRat(Fraction(4), Fraction(1))
    assert a - b == CRat(Fraction(-2), Fraction(3))
    # (1+2i)(3-i) = 3 - i + 6i + 2 = 5 + 5i
    assert a * b == CRat(Fraction(5), Fraction(5))
    assert (a / b) * b == a
    assert a * a.conjugate() == CRat(Fraction(5))


def test_crat_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CR_ONE / CR_ZERO


def test_crat_powers():
    assert CR_I ** 2 == CR_MINUS_ONE
    assert CR_I ** 3 == CR_MINUS_I
    assert CR_I ** 4 == CR_ONE
    assert CRat.of(3) ** 0 == CR_ONE


def test_crat_rendering():
    assert str(CR_ONE) == "1"
    assert str(CR_MINUS_ONE) == "-1"
    assert str(CR_I) == "i"
    assert str(CR_MINUS_I) == "-i"
    assert str(CRat(Fraction(-1, 2))) == "-1/2"
    assert str(CRat(Fraction(0), Fraction(2))) == "2i"
    assert str(CRat(Fraction(1), Fraction(-2))) == "(1-2i)"


def test_scalar_symbols_and_cancellation():
    h1 = Scalar.symbol("h1")
    h2 = Scalar.symbol("h2")
    expr = (h1 * h2 + h2 * h2) / h2
    assert expr == h1 + h2
    # common monomial factors cancel on construction
    assert (h1 * h1) / h1 == h1


def test_scalar_division_restrictions():
    h1 = Scalar.symbol("h1")
    h2 = Scalar.symbol("h2")
    with pytest.raises(ZeroDivisionError):
        (h1 + h2).inverse()
    assert (S_ONE / h1) * h1 == S_ONE


def test_scalar_substitute_exact():
    h1 = Scalar.symbol("h1")
    h2 = Scalar.symbol("h2")
    expr = (h1 + h2) / h1
    assert expr.substitute(h1=1, h2=1) == scalar(2)
    assert expr.substitute(h1=Fraction(1, 2), h2=Fraction(1, 3)) == scalar(Fraction(5, 3))
    with pytest.raises(ZeroDivisionError):
        expr.substitute(h1=0)
    # partial substitution keeps the other symbol formal
    partial = expr.substitute(h2=1)
    assert partial.substitute(h1=2) == scalar(Fraction(3, 2))


def test_scalar_evalf():
    h = Scalar.symbol("h")
    val = (scalar(CRat(Fraction(0), Fraction(2))) * h).evalf(h=3.0)
    assert val == pytest.approx(6j)


def test_scalar_as_crat_rejects_symbols():
    with pytest.raises(ValueError):
        Scalar.symbol("h").as_crat()
    assert scalar(5).as_crat() == CRat.of(5)


def test_scalar_rendering():
    h = Scalar.symbol("h")
    h1 = Scalar.symbol("h1")
    h2 = Scalar.symbol("h2")
    assert str((h1 + h2) / h1) == "(h1 + h2)/h1"
    assert str(scalar(CRat(Fraction(0), Fraction(2))) * h) == "2i*h"
    assert str(S_ONE / (scalar(CR_I) * h)) == "-i/h"
    assert str(S_ZERO) == "0"
