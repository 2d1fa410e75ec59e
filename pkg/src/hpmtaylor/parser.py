"""Recursive-descent parser for the expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' INT))*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | NAME '(' args ')' | '(' expr ')'

The same tree is evaluated three ways: as a spatial polynomial, as a
differential operator (``D(var, order)`` tokens), and as a closed form in
``exp``/``sinh``/``cosh`` of a rational multiple of ``t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .closedform import ClosedForm
from .diffop import DiffOp, DiffOpTerm
from .polyalg import AlgebraError, Polynomial, VariableSet, poly_add, poly_mul, poly_scale


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(self._render())

    def _render(self) -> str:
        s = f"{self.message} at position {self.pos}"
        if self.text:
            s += f"\n  {self.text}\n  {' ' * self.pos}^"
        return s


# -- tokens ------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_]\w*)|(\S)")


@dataclass(frozen=True)
class Tok:
    kind: str  # INT, DEC, NAME, OP, END
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        dec, num, name, ch = m.groups()
        if dec:
            toks.append(Tok("DEC", dec, i))
        elif num:
            toks.append(Tok("INT", num, i))
        elif name:
            toks.append(Tok("NAME", name, i))
        else:
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", i, text)
            toks.append(Tok("OP", ch, i))
        i = m.end()
    toks.append(Tok("END", "", len(text)))
    return toks


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


Node = Union[Num, Name, Call, Neg, BinOp, Pow]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.peek().pos if pos is None else pos, self.text)

    def peek(self) -> Tok:
        return self.toks[self.i]

    def take(self) -> Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> Tok | None:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == op:
            self.i += 1
            return tok
        return None

    def expect(self, op: str) -> Tok:
        tok = self.accept(op)
        if tok is None:
            found = self.peek().text or "end of input"
            self.error(f"expected {op!r}, found {found!r}")
        return tok

    def parse(self) -> Node:
        if self.peek().kind == "END":
            self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "END":
            tok = self.peek()
            if tok.text == ")":
                self.error("unbalanced ')'")
            self.error(f"unexpected {tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            tok = self.accept("+") or self.accept("-")
            if tok is None:
                return node
            node = BinOp(tok.text, node, self.term(), tok.pos)

    def term(self) -> Node:
        node = self.unary()
        while True:
            tok = self.accept("*")
            if tok:
                node = BinOp("*", node, self.unary(), tok.pos)
                continue
            tok = self.accept("/")
            if tok:
                den = self.peek()
                if den.kind != "INT":
                    self.error("division is only allowed by an integer literal", den.pos)
                self.take()
                if int(den.text) == 0:
                    self.error("division by zero", den.pos)
                node = BinOp("/", node, Num(int(den.text), den.pos), tok.pos)
                continue
            nxt = self.peek()
            if nxt.kind in ("NAME", "INT", "DEC") or (nxt.kind == "OP" and nxt.text == "("):
                self.error("implicit multiplication is not allowed; use '*'")
            return node

    def unary(self) -> Node:
        tok = self.accept("-")
        if tok:
            return Neg(self.unary(), tok.pos)
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        tok = self.accept("^")
        if tok is None:
            return base
        nxt = self.peek()
        if nxt.kind == "OP" and nxt.text == "-":
            self.error("negative exponent", nxt.pos)
        if nxt.kind == "DEC":
            self.error("fractional exponent", nxt.pos)
        if nxt.kind != "INT":
            self.error("exponent must be a non-negative integer literal", nxt.pos)
        self.take()
        return Pow(base, int(nxt.text), tok.pos)

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "INT":
            self.take()
            return Num(int(tok.text), tok.pos)
        if tok.kind == "DEC":
            self.error("decimal literals are not supported; write p/q")
        if tok.kind == "NAME":
            self.take()
            if self.accept("("):
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                return Call(tok.text, tuple(args), tok.pos)
            return Name(tok.text, tok.pos)
        if self.accept("("):
            if self.peek().kind == "OP" and self.peek().text == ")":
                self.error("empty parentheses")
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "END":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.text!r}")


def parse_tree(text: str) -> Node:
    return _Parser(text).parse()


# -- evaluation: polynomials --------------------------------------------------


class _Eval:
    def __init__(self, text: str, variables: VariableSet):
        self.text = text
        self.vars = variables

    def fail(self, msg: str, pos: int):
        raise ParseError(msg, pos, self.text)

    def name(self, node: Name):
        if node.name not in self.vars:
            self.fail(f"unknown variable {node.name!r}", node.pos)
        return Polynomial.var(self.vars, node.name)

    def call(self, node: Call):
        self.fail(f"unknown function {node.name!r}", node.pos)

    def const(self, c):
        return Polynomial.const(self.vars, c)

    def ev(self, node: Node):
        try:
            return self._ev(node)
        except AlgebraError as exc:
            self.fail(str(exc), node.pos)

    def _ev(self, node: Node):
        if isinstance(node, Num):
            return self.const(node.value)
        if isinstance(node, Name):
            return self.name(node)
        if isinstance(node, Call):
            return self.call(node)
        if isinstance(node, Neg):
            return self.scale(self.ev(node.operand), -1, node.pos)
        if isinstance(node, Pow):
            return self.power(self.ev(node.base), node.exponent, node.pos)
        if node.op == "/":
            return self.scale(self.ev(node.left), Fraction(1, node.right.value), node.pos)
        left, right = self.ev(node.left), self.ev(node.right)
        if node.op == "*":
            return self.mul(left, right, node.pos)
        if node.op == "-":
            right = self.scale(right, -1, node.pos)
        return self.add(left, right, node.pos)

    def scale(self, a, c, pos):
        return poly_scale(a, c)

    def add(self, a, b, pos):
        return poly_add(a, b)

    def mul(self, a, b, pos):
        return poly_mul(a, b)

    def power(self, a, k, pos):
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, a, pos)
        return out


def parse_poly(text: str, variables: VariableSet) -> Polynomial:
    """Parse an expression such as ``x^4*y^4*z^4`` or ``(1/2)*x^2 - y``."""
    return _Eval(text, variables).ev(parse_tree(text))


# -- evaluation: operators ----------------------------------------------------


@dataclass(frozen=True)
class _OpTerm:
    coefficient: Polynomial
    deriv: tuple


class _OpEval(_Eval):
    def call(self, node: Call):
        if node.name != "D":
            self.fail(f"unknown function {node.name!r} in operator", node.pos)
        if len(node.args) != 2:
            self.fail("D takes exactly two arguments: D(var, order)", node.pos)
        var, order = node.args
        if not isinstance(var, Name):
            self.fail("first argument of D must be a variable name", _pos(var))
        if var.name not in self.vars:
            self.fail(f"unknown variable {var.name!r}", var.pos)
        k = _int_literal(order)
        if k is None:
            self.fail("derivative order must be an integer literal", _pos(order))
        if k < 1:
            self.fail("derivative order must be >= 1", _pos(order))
        idx = [0] * len(self.vars)
        idx[self.vars.index(var.name)] = k
        return _OpTerm(Polynomial.const(self.vars, 1), tuple(idx))

    def scale(self, a, c, pos):
        if isinstance(a, _OpTerm):
            return _OpTerm(poly_scale(a.coefficient, c), a.deriv)
        return poly_scale(a, c)

    def add(self, a, b, pos):
        if isinstance(a, _OpTerm) or isinstance(b, _OpTerm):
            self.fail("sums of derivative terms are only allowed at the top level", pos)
        return poly_add(a, b)

    def mul(self, a, b, pos):
        if isinstance(a, Polynomial) and isinstance(b, Polynomial):
            return poly_mul(a, b)
        if isinstance(a, Polynomial):
            return _OpTerm(poly_mul(a, b.coefficient), b.deriv)
        if isinstance(b, Polynomial):
            self.fail("the derivative token must be the last factor of a term", pos)
        if b.coefficient != Polynomial.const(self.vars, 1):
            self.fail("a coefficient may not follow a derivative token", pos)
        return _OpTerm(a.coefficient, tuple(x + y for x, y in zip(a.deriv, b.deriv)))

    def power(self, a, k, pos):
        if isinstance(a, _OpTerm):
            self.fail("powers of derivative tokens are not supported", pos)
        return super().power(a, k, pos)


def _pos(node: Node) -> int:
    return node.pos


def _int_literal(node: Node) -> int | None:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg) and isinstance(node.operand, Num):
        return -node.operand.value
    return None


def _split_terms(node: Node, sign: int = 1) -> list[tuple[int, Node]]:
    if isinstance(node, BinOp) and node.op in "+-":
        right_sign = sign if node.op == "+" else -sign
        return _split_terms(node.left, sign) + _split_terms(node.right, right_sign)
    return [(sign, node)]


def parse_operator(text: str, variables: VariableSet) -> DiffOp:
    """Parse ``c1*D(x,2) + c2*D(y,2) + ...``; ``0`` is the zero operator."""
    tree = parse_tree(text)
    ev = _OpEval(text, variables)
    if isinstance(tree, Num) and tree.value == 0:
        return DiffOp.zero(variables)
    terms = []
    for sign, node in _split_terms(tree):
        val = ev.ev(node)
        if isinstance(val, Polynomial):
            ev.fail("missing D token in operator term", _first_pos(node))
        coef = poly_scale(val.coefficient, sign)
        if not coef.is_zero():
            terms.append(DiffOpTerm(coef, val.deriv))
    return DiffOp(variables, tuple(terms))


def _first_pos(node: Node) -> int:
    while isinstance(node, (BinOp, Pow)):
        node = node.left if isinstance(node, BinOp) else node.base
    return node.pos


# -- evaluation: closed forms ---------------------------------------------------

_TIME = VariableSet(["tau"])  # stand-in for t while reading exp/sinh/cosh arguments


class _TimeArgEval(_Eval):
    def name(self, node: Name):
        if node.name != "t":
            self.fail(f"only t may appear inside a time function, found {node.name!r}", node.pos)
        return Polynomial.var(self.vars, "tau")


class _FormEval(_Eval):
    """Values are dicts rate -> Polynomial."""

    def const(self, c):
        return {Fraction(0): Polynomial.const(self.vars, c)}

    def name(self, node: Name):
        if node.name == "t":
            self.fail("t may only appear inside exp, sinh or cosh", node.pos)
        return {Fraction(0): super().name(node)}

    def call(self, node: Call):
        if node.name not in ("exp", "sinh", "cosh"):
            self.fail(f"unknown function {node.name!r}", node.pos)
        if len(node.args) != 1:
            self.fail(f"{node.name} takes one argument", node.pos)
        arg = _TimeArgEval(self.text, _TIME).ev(node.args[0])
        if any(m != (1,) for m in arg.terms):
            self.fail(f"argument of {node.name} must be a rational multiple of t", _first_pos(node.args[0]))
        a = arg.coefficient((1,))
        one = Polynomial.const(self.vars, 1)
        if node.name == "exp":
            return {a: one}
        half = poly_scale(one, Fraction(1, 2))
        sign = 1 if node.name == "cosh" else -1
        if a == 0:
            return {Fraction(0): one} if node.name == "cosh" else {}
        return {a: half, -a: poly_scale(half, sign)}

    def scale(self, a, c, pos):
        return {r: poly_scale(p, c) for r, p in a.items()}

    def add(self, a, b, pos):
        out = dict(a)
        for r, p in b.items():
            out[r] = poly_add(out[r], p) if r in out else p
        return out

    def mul(self, a, b, pos):
        out: dict = {}
        for ra, pa in a.items():
            for rb, pb in b.items():
                r = ra + rb
                prod = poly_mul(pa, pb)
                out[r] = poly_add(out[r], prod) if r in out else prod
        return out


def parse_closed_form(text: str, variables: VariableSet) -> ClosedForm:
    """Parse e.g. ``y^2*cosh(t) + x^2*sinh(t)`` into the exponential basis."""
    parts = _FormEval(text, variables).ev(parse_tree(text))
    return ClosedForm(variables, tuple(parts.items()))
