"""Expression front end: grammar, error positions, round-tripping and
evaluation into classical polynomials or algebra elements."""

from fractions import Fraction

import pytest

from pbracket.errors import ExprSyntaxError, IndexOutOfRange, UnknownSymbol
from pbracket.expressions import (Add, CSym, Delta, Mul, Neg, Num, Pow, Sub,
                                  evaluate, expr_str, parse)
from pbracket.scalars import CRat, CR_I
from pbracket.group_algebra import GroupSignature, delta_to_element
from pbracket.pmech import ClassicalPoly

SIG = GroupSignature(dof=1)


def test_parse_power_of_symbol():
    node = parse("q1^2")
    assert node == Pow(CSym("q", 1, 1), 2)


def test_parse_delta_kernel():
    node = parse("delta[x1,x1]")
    assert node == Delta(("x1", "x1"))


def test_parse_trailing_operator_is_syntax_error():
    with pytest.raises(ExprSyntaxError):
        parse("q1^")


def test_parse_precedence_shapes():
    assert parse("q1 + p1*q2", dof=1) == Add(CSym("q", 1, 1),
                                             Mul(CSym("p", 1, 1), CSym("q", 2, 1)))
    assert parse("-q1^2") == Neg(Pow(CSym("q", 1, 1), 2))
    assert parse("(q1 + p1)^3") == Pow(Add(CSym("q", 1, 1), CSym("p", 1, 1)), 3)
    assert parse("q1 - p1 - q2") == Sub(Sub(CSym("q", 1, 1), CSym("p", 1, 1)),
                                        CSym("q", 2, 1))


def test_parse_numbers():
    assert parse("3") == Num(CRat.of(3))
    assert parse("1/2") == Num(CRat.of(Fraction(1, 2)))
    assert parse("i") == Num(CR_I)
    assert parse("2*i*q1") == Mul(Mul(Num(CRat.of(2)), Num(CR_I)), CSym("q", 1, 1))
    with pytest.raises(ExprSyntaxError):
        parse("1/0")


def test_parse_dof_digits():
    node = parse("q21", dof=2)
    assert node == CSym("q", 2, 1)
    assert parse("p12", dof=2) == CSym("p", 1, 2)
    with pytest.raises(IndexOutOfRange):
        parse("q12", dof=1)
    with pytest.raises(IndexOutOfRange):
        parse("q3")


def test_parse_delta_variables():
    assert parse("delta[s2]") == Delta(("s2",))
    assert parse("delta[x_1, y_1]") == Delta(("x1", "y1"))
    with pytest.raises(UnknownSymbol):
        parse("delta[z1]")
    with pytest.raises(IndexOutOfRange):
        parse("delta[x12]", dof=1)
    with pytest.raises(ExprSyntaxError):
        parse("delta[]")
    with pytest.raises(ExprSyntaxError):
        parse("delta[x1")


def test_unknown_symbol_and_positions():
    with pytest.raises(UnknownSymbol):
        parse("foo")
    try:
        parse("q1 + foo")
    except UnknownSymbol as exc:
        assert exc.line == 1
        assert exc.col == 6
    try:
        parse("q1 +\nbar")
    except UnknownSymbol as exc:
        assert exc.line == 2
    with pytest.raises(ExprSyntaxError):
        parse("q1 q2")
    with pytest.raises(ExprSyntaxError):
        parse("")
    with pytest.raises(ExprSyntaxError):
        parse("q1^p1")


def test_syntax_error_is_a_syntax_error():
    assert issubclass(ExprSyntaxError, SyntaxError)


def test_expr_str_round_trip():
    samples = [
        "q1^2",
        "delta[x1,x1]",
        "q1*p1 - q2*p2",
        "-(q1 + p1)^3*q2",
        "1/2*q1 + 2*i*p1",
        "delta[s1]*delta[x1,y1]",
        "-(-q1)",
    ]
    for src in samples:
        node = parse(src, dof=1)
        assert parse(expr_str(node), dof=1) == node


def test_evaluate_classical():
    out = evaluate("q1^2 + 3*p2", SIG)
    assert out.kind == "classical"
    q1 = ClassicalPoly.var(1, "q", 1)
    p2 = ClassicalPoly.var(1, "p", 2)
    assert out.value == q1 ** 2 + p2.scale(3)


def test_evaluate_element():
    out = evaluate("2*delta[x1,y1] + delta[s1]", SIG)
    assert out.kind == "element"
    expected = (delta_to_element(SIG, {"x1": 1, "y1": 1}).scale(2)
                + delta_to_element(SIG, {"s1": 1}))
    assert out.value == expected


def test_evaluate_pure_number_is_classical_constant():
    out = evaluate("3/4", SIG)
    assert out.kind == "classical"
    assert out.value == ClassicalPoly.constant(1, Fraction(3, 4))


def test_evaluate_rejects_mixed_expressions():
    with pytest.raises(ExprSyntaxError) as err:
        evaluate("q1 + delta[s1]", SIG)
    assert "cannot mix" in str(err.value)
    with pytest.raises(ExprSyntaxError):
        evaluate("delta[x1]*p1", SIG)


def test_evaluate_delta_products_convolve():
    # delta[x1] * delta[y1] versus the opposite order differ by the central term
    ab = evaluate("delta[x1]*delta[y1]", SIG).value
    ba = evaluate("delta[y1]*delta[x1]", SIG).value
    comm = ab - ba
    assert comm == delta_to_element(SIG, {"s1": 1}).scale(
        SIG.convention.eps_comm * SIG.convention.kappa_x * SIG.convention.kappa_y
        / SIG.convention.kappa_s)
