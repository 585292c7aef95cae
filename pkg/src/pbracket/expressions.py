"""Small expression language for observables.

Grammar (whitespace insignificant):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := number | 'i' | csym | delta | '(' expr ')'
    number := uint ('/' uint)?
    csym   := ('q' | 'p') digit digit?
    delta  := 'delta[' var (',' var)* ']'

A csym names a phase-space coordinate: first digit the sector, optional
second digit the degree of freedom (default 1).  A delta var is s1, s2 or an
x/y name with the same digit convention.  Unary minus, the imaginary literal
'i' and rational literals extend the minimal grammar; everything the minimal
grammar accepts parses identically.

Every error carries the offending line and column.  Parse errors are
ExprSyntaxError (a builtin SyntaxError subclass), unrecognized names raise
UnknownSymbol, and out-of-bounds sector or dof digits raise IndexOutOfRange.

Evaluation folds an AST into either a ClassicalPoly (phase-space symbols) or
an Element (delta kernels).  The two atom families cannot be mixed in one
expression; pure numbers land on the classical side as constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

from .errors import ExprSyntaxError, IndexOutOfRange, UnknownSymbol, ExprError
from .scalars import CRat, CR_ONE, CR_I, CR_MINUS_ONE
from .group_algebra import Element, GroupSignature, delta_to_element
from .pmech import ClassicalPoly

__all__ = [
    "Num", "CSym", "Delta", "Neg", "Add", "Sub", "Mul", "Pow",
    "parse", "expr_str", "evaluate", "EvalResult",
]


# ---------------------------------------------------------------------------
# AST

_POS = dict(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: CRat
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class CSym:
    kind: str
    sector: int
    index: int
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Delta:
    names: Tuple[str, ...]
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"
    line: int = field(**_POS)
    col: int = field(**_POS)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    line: int = field(**_POS)
    col: int = field(**_POS)


Node = Union[Num, CSym, Delta, Neg, Add, Sub, Mul, Pow]


# ---------------------------------------------------------------------------
# tokenizer


class _Token(NamedTuple):
    kind: str          # "num", "name", "op", "end"
    value: str
    line: int
    col: int


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_NUM_RE = re.compile(r"[0-9]+")
_OPS = set("+-*^()[],/")


def _tokenize(src: str) -> List[_Token]:
    tokens: List[_Token] = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, line, col))
            col += 1
            i += 1
            continue
        m = _NUM_RE.match(src, i)
        if m:
            tokens.append(_Token("num", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _NAME_RE.match(src, i)
        if m:
            tokens.append(_Token("name", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser


_CSYM_RE = re.compile(r"([qp])([0-9])([0-9])?\Z")
_GVAR_RE = re.compile(r"([sxy])([0-9])([0-9])?\Z")


class _Parser:
    def __init__(self, tokens: List[_Token], dof: int):
        self.tokens = tokens
        self.pos = 0
        self.dof = dof

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.value == op:
            return self.advance()
        shown = tok.value or "end of input"
        raise ExprSyntaxError(f"expected {op!r}, found {shown!r}", tok.line, tok.col)

    # grammar rules ---------------------------------------------------------

    def expr(self) -> Node:
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.advance()
                right = self.term()
                cls = Add if tok.value == "+" else Sub
                node = cls(node, right, line=tok.line, col=tok.col)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.advance()
                node = Mul(node, self.factor(), line=tok.line, col=tok.col)
            else:
                return node

    def factor(self) -> Node:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.advance()
            return Neg(self.factor(), line=tok.line, col=tok.col)
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.advance()
            etok = self.peek()
            if etok.kind != "num":
                shown = etok.value or "end of input"
                raise ExprSyntaxError(
                    f"expected integer exponent, found {shown!r}", etok.line, etok.col)
            self.advance()
            node = Pow(node, int(etok.value), line=tok.line, col=tok.col)
        return node

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            value = Fraction(int(tok.value))
            nxt = self.peek()
            if nxt.kind == "op" and nxt.value == "/":
                self.advance()
                dtok = self.peek()
                if dtok.kind != "num":
                    shown = dtok.value or "end of input"
                    raise ExprSyntaxError(
                        f"expected integer denominator, found {shown!r}",
                        dtok.line, dtok.col)
                self.advance()
                if int(dtok.value) == 0:
                    raise ExprSyntaxError("zero denominator", dtok.line, dtok.col)
                value = value / int(dtok.value)
            return Num(CRat(value), line=tok.line, col=tok.col)
        if tok.kind == "op" and tok.value == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "name":
            self.advance()
            if tok.value == "i":
                return Num(CR_I, line=tok.line, col=tok.col)
            if tok.value == "delta":
                return self.delta(tok)
            m = _CSYM_RE.match(tok.value)
            if m:
                kind, d1, d2 = m.groups()
                sector = int(d1)
                index = int(d2) if d2 is not None else 1
                if sector not in (1, 2):
                    raise IndexOutOfRange(
                        f"sector in {tok.value!r} must be 1 or 2", tok.line, tok.col)
                if not 1 <= index <= self.dof:
                    raise IndexOutOfRange(
                        f"dof index in {tok.value!r} outside 1..{self.dof}",
                        tok.line, tok.col)
                return CSym(kind, sector, index, line=tok.line, col=tok.col)
            raise UnknownSymbol(f"unknown symbol {tok.value!r}", tok.line, tok.col)
        shown = tok.value or "end of input"
        raise ExprSyntaxError(f"unexpected {shown!r}", tok.line, tok.col)

    def delta(self, head: _Token) -> Node:
        self.expect_op("[")
        names: List[str] = []
        while True:
            tok = self.peek()
            if tok.kind != "name":
                shown = tok.value or "end of input"
                raise ExprSyntaxError(
                    f"expected variable name, found {shown!r}", tok.line, tok.col)
            self.advance()
            names.append(self._group_var(tok))
            tok = self.peek()
            if tok.kind == "op" and tok.value == ",":
                self.advance()
                continue
            self.expect_op("]")
            return Delta(tuple(names), line=head.line, col=head.col)

    def _group_var(self, tok: _Token) -> str:
        raw = tok.value.replace("_", "")
        m = _GVAR_RE.match(raw)
        if not m:
            raise UnknownSymbol(
                f"unknown delta variable {tok.value!r}", tok.line, tok.col)
        kind, d1, d2 = m.groups()
        if kind == "s":
            if d2 is not None:
                raise UnknownSymbol(
                    f"unknown delta variable {tok.value!r}", tok.line, tok.col)
            if int(d1) not in (1, 2):
                raise IndexOutOfRange(
                    f"sector in {tok.value!r} must be 1 or 2", tok.line, tok.col)
            return raw
        sector = int(d1)
        index = int(d2) if d2 is not None else 1
        if sector not in (1, 2):
            raise IndexOutOfRange(
                f"sector in {tok.value!r} must be 1 or 2", tok.line, tok.col)
        if not 1 <= index <= self.dof:
            raise IndexOutOfRange(
                f"dof index in {tok.value!r} outside 1..{self.dof}",
                tok.line, tok.col)
        return raw


def parse(src: str, dof: int = 1) -> Node:
    """Parse source text; sector and dof digits are validated against dof."""
    parser = _Parser(_tokenize(src), dof)
    node = parser.expr()
    tail = parser.peek()
    if tail.kind != "end":
        shown = tail.value or "end of input"
        raise ExprSyntaxError(f"unexpected {shown!r} after expression",
                              tail.line, tail.col)
    return node


# ---------------------------------------------------------------------------
# printing

# precedence: additive 1, multiplicative 2, unary/power 3, atoms 4


def _print(node: Node, minimum: int) -> str:
    if isinstance(node, Num):
        text, prec = _num_str(node.value)
    elif isinstance(node, CSym):
        suffix = str(node.sector) + (str(node.index) if node.index != 1 else "")
        text, prec = node.kind + suffix, 4
    elif isinstance(node, Delta):
        text, prec = "delta[" + ",".join(node.names) + "]", 4
    elif isinstance(node, Neg):
        text, prec = "-" + _print(node.operand, 3), 3
    elif isinstance(node, Add):
        text, prec = _print(node.left, 1) + " + " + _print(node.right, 2), 1
    elif isinstance(node, Sub):
        text, prec = _print(node.left, 1) + " - " + _print(node.right, 2), 1
    elif isinstance(node, Mul):
        text, prec = _print(node.left, 2) + "*" + _print(node.right, 3), 2
    elif isinstance(node, Pow):
        text, prec = _print(node.base, 4) + "^" + str(node.exponent), 3
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return "(" + text + ")" if prec < minimum else text


def _num_str(c: CRat) -> Tuple[str, int]:
    if c == CR_I:
        return "i", 4
    if c.im == 0 and c.re >= 0:
        if c.re.denominator == 1:
            return str(c.re.numerator), 4
        return f"{c.re.numerator}/{c.re.denominator}", 2
    # general complex constants fall back to arithmetic on printable pieces
    re_part = CRat(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i", 4
        if c.im == -1:
            return "-i", 3
        mag, _ = _num_str(CRat(abs(c.im)))
        text = f"{mag}*i"
        return (f"-{text}", 3) if c.im < 0 else (text, 2)
    re_text = _print(Num(re_part), 2) if c.re >= 0 else "-" + _print(Num(CRat(-c.re)), 3)
    im_text, _ = _num_str(CRat(Fraction(0), abs(c.im)))
    op = " - " if c.im < 0 else " + "
    return re_text + op + im_text, 1


def expr_str(node: Node) -> str:
    """Render an AST back to source.  Parser-produced trees round-trip:
    parse(expr_str(t)) == t."""
    return _print(node, 1)


# ---------------------------------------------------------------------------
# evaluation


class EvalResult(NamedTuple):
    kind: str                                   # "classical" or "element"
    value: Union[ClassicalPoly, Element]


_MIX_MSG = "cannot mix phase-space symbols and delta kernels"


def _combine(a, b, op, sig: GroupSignature, node: Node):
    ka, va = a
    kb, vb = b
    if ka == "n" and kb == "n":
        return ("n", op(va, vb))
    if "e" in (ka, kb) and "c" in (ka, kb):
        raise ExprSyntaxError(_MIX_MSG, node.line, node.col)
    target = "e" if "e" in (ka, kb) else "c"
    return (target, op(_lift(a, target, sig), _lift(b, target, sig)))


def _lift(tagged, target: str, sig: GroupSignature):
    kind, value = tagged
    if kind == target:
        return value
    if kind != "n":
        raise AssertionError("lift applies to scalars only")
    if target == "c":
        return ClassicalPoly.constant(sig.dof, value)
    return Element.one(sig).scale(value)


def _eval(node: Node, sig: GroupSignature):
    if isinstance(node, Num):
        return ("n", node.value)
    if isinstance(node, CSym):
        return ("c", ClassicalPoly.var(sig.dof, node.kind, node.sector, node.index))
    if isinstance(node, Delta):
        return ("e", delta_to_element(sig, node.names))
    if isinstance(node, Neg):
        kind, value = _eval(node.operand, sig)
        return (kind, value * CR_MINUS_ONE if kind == "n" else value.scale(CR_MINUS_ONE))
    if isinstance(node, Add):
        return _combine(_eval(node.left, sig), _eval(node.right, sig),
                        lambda x, y: x + y, sig, node)
    if isinstance(node, Sub):
        return _combine(_eval(node.left, sig), _eval(node.right, sig),
                        lambda x, y: x - y, sig, node)
    if isinstance(node, Mul):
        return _combine(_eval(node.left, sig), _eval(node.right, sig),
                        lambda x, y: x * y, sig, node)
    if isinstance(node, Pow):
        kind, value = _eval(node.base, sig)
        if kind == "n":
            return ("n", value ** node.exponent)
        return (kind, value ** node.exponent)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(src: Union[str, Node], sig: GroupSignature) -> EvalResult:
    """Evaluate source text or an AST over the given signature.

    Expressions built from numbers and q/p symbols produce a ClassicalPoly;
    expressions with delta kernels produce an Element (products are the
    noncommutative convolution).  Pure numbers count as classical constants.
    """
    node = parse(src, sig.dof) if isinstance(src, str) else src
    kind, value = _eval(node, sig)
    if kind == "n":
        return EvalResult("classical", ClassicalPoly.constant(sig.dof, value))
    return EvalResult("classical" if kind == "c" else "element", value)
