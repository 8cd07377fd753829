"""Operator expression parser and evaluators.

Grammar (standard precedence, ``*``/``.`` bind tighter than ``+``/``-``,
unary minus, parentheses)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '.') factor)*
    factor := '-' factor | atom
    atom   := number | 'I' | 'i' | shorthand | call | '(' expr ')'

Numbers are real or imaginary literals (``2``, ``0.5``, ``3i``, ``1e-3i``);
complex values come from arithmetic, e.g. ``(1+2i)``.  Shorthand atoms
``c3``/``cd3`` match the canonical printing format, so printed polynomials
parse back.  Calls: ``c(j)``, ``cd(j)``, ``hat(name)``, ``pairC(name)``,
``pairA(name)``, ``adj(e)``, ``exp(e)``, ``comm(e, e)``, ``acomm(e, e)``.

``evaluate`` produces a canonical OperatorPoly and rejects ``exp``;
``evaluate_fock`` produces a dense Fock matrix and supports ``exp``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from fermihat.algebra import OperatorPoly, anticommutator, commutator
from fermihat.embedding import hat, pair_annihilate, pair_create
from fermihat.expbch import matrix_exp
from fermihat.fock import poly_to_fock


class ExprSyntaxError(ValueError):
    """Malformed expression; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class EvalError(ValueError):
    """Expression is well-formed but cannot be evaluated in this context."""


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    value: complex


@dataclass(frozen=True)
class Ladder:
    index: int
    dagger: bool


@dataclass(frozen=True)
class MatrixForm:
    func: str  # "hat" | "pairC" | "pairA"
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" | "adj" | "exp"
    arg: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # "+" | "-" | "*" | "comm" | "acomm"
    lhs: "Node"
    rhs: "Node"


Node = Union[Scalar, Ladder, MatrixForm, Unary, Binary]


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
      (?P<ws>\s+)
    | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?P<imag>i)?)
    | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<op>[-+*().,])
""", re.VERBOSE)

_SHORTHAND_RE = re.compile(r"^(cd|c)([0-9]+)$")


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "name" | one of "+-*.(),", or "end"
    text: str
    pos: int
    value: complex = 0j


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws" and m.lastgroup is not None:
            if m.lastgroup in ("num", "imag"):
                digits = m.group("num")
                if m.group("imag"):
                    value = complex(0.0, float(digits[:-1]))
                else:
                    value = complex(float(digits), 0.0)
                tokens.append(_Token("num", digits, pos, value))
            elif m.lastgroup == "name":
                tokens.append(_Token("name", m.group("name"), pos))
            else:
                tokens.append(_Token(m.group("op"), m.group("op"), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# -- parser ------------------------------------------------------------------

_UNARY_FUNCS = {"adj", "exp"}
_BINARY_FUNCS = {"comm", "acomm"}
_LADDER_FUNCS = {"c", "cd"}
_MATRIX_FUNCS = {"hat", "pairC", "pairA"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if self.cur.kind != kind:
            raise ExprSyntaxError(f"expected {what}", self.cur.pos)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.cur.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.cur.kind in ("*", "."):
            self.advance()
            node = Binary("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.cur.kind == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.atom()

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return Scalar(tok.value)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if tok.kind == "name":
            self.advance()
            if self.cur.kind == "(":
                return self.call(tok)
            if tok.text == "I":
                return Scalar(1.0 + 0j)
            if tok.text == "i":
                return Scalar(1j)
            m = _SHORTHAND_RE.match(tok.text)
            if m:
                index = int(m.group(2))
                if index < 1:
                    raise ExprSyntaxError("mode index must be a positive integer",
                                          tok.pos)
                return Ladder(index, m.group(1) == "cd")
            raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.kind == "end":
            raise ExprSyntaxError("unexpected end of input", tok.pos)
        raise ExprSyntaxError(f"expected a value, found {tok.text!r}", tok.pos)

    def call(self, name: _Token) -> Node:
        func = name.text
        self.expect("(", "'('")
        if func in _LADDER_FUNCS:
            arg = self.expect("num", "a mode index")
            if arg.value.imag != 0 or arg.value.real != int(arg.value.real) \
                    or int(arg.value.real) < 1:
                raise ExprSyntaxError("mode index must be a positive integer", arg.pos)
            self.expect(")", "')'")
            return Ladder(int(arg.value.real), func == "cd")
        if func in _MATRIX_FUNCS:
            ref = self.expect("name", "a matrix name")
            self.expect(")", "')'")
            return MatrixForm(func, ref.text)
        if func in _UNARY_FUNCS:
            inner = self.expr()
            self.expect(")", "')'")
            return Unary(func, inner)
        if func in _BINARY_FUNCS:
            lhs = self.expr()
            self.expect(",", "','")
            rhs = self.expr()
            self.expect(")", "')'")
            return Binary(func, lhs, rhs)
        raise ExprSyntaxError(f"unknown function {func!r}", name.pos)


def parse(text: str) -> Node:
    """Parse an operator expression into its AST."""
    return _Parser(text).parse()


# -- evaluation --------------------------------------------------------------

def _resolve(name: str, workspace) -> np.ndarray:
    try:
        return workspace.matrices[name]
    except KeyError:
        raise EvalError(f"unknown matrix {name!r}; load it into the workspace") from None


def evaluate(node: Node, workspace) -> OperatorPoly:
    """Evaluate an AST to a canonical OperatorPoly (``exp`` is rejected)."""
    n = workspace.n_modes
    if isinstance(node, Scalar):
        return node.value * OperatorPoly.identity(n)
    if isinstance(node, Ladder):
        if not 1 <= node.index <= n:
            raise EvalError(f"mode {node.index} outside 1..{n}")
        maker = OperatorPoly.create if node.dagger else OperatorPoly.annihilate
        return maker(node.index, n)
    if isinstance(node, MatrixForm):
        mat = _resolve(node.name, workspace)
        if mat.shape != (n, n):
            raise EvalError(f"matrix {node.name!r} is {mat.shape[0]}x{mat.shape[1]} "
                            f"but the workspace has {n} modes")
        if node.func == "hat":
            return hat(mat)
        if node.func == "pairC":
            return pair_create(mat)
        return pair_annihilate(mat)
    if isinstance(node, Unary):
        if node.op == "exp":
            raise EvalError("exp() is numeric-only; use a Fock-level command")
        inner = evaluate(node.arg, workspace)
        return -inner if node.op == "neg" else inner.adjoint()
    if isinstance(node, Binary):
        lhs = evaluate(node.lhs, workspace)
        rhs = evaluate(node.rhs, workspace)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        if node.op == "comm":
            return commutator(lhs, rhs)
        return anticommutator(lhs, rhs)
    raise EvalError(f"cannot evaluate node {node!r}")


def evaluate_fock(node: Node, workspace) -> np.ndarray:
    """Evaluate an AST to a dense Fock matrix; supports ``exp``."""
    n = workspace.n_modes
    if isinstance(node, Unary):
        if node.op == "exp":
            return matrix_exp(evaluate_fock(node.arg, workspace))
        inner = evaluate_fock(node.arg, workspace)
        return -inner if node.op == "neg" else inner.conj().T
    if isinstance(node, Binary):
        lhs = evaluate_fock(node.lhs, workspace)
        rhs = evaluate_fock(node.rhs, workspace)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs @ rhs
        if node.op == "comm":
            return lhs @ rhs - rhs @ lhs
        return lhs @ rhs + rhs @ lhs
    if isinstance(node, Scalar):
        return node.value * np.eye(1 << n, dtype=complex)
    return poly_to_fock(evaluate(node, workspace))


def contains_exp(node: Node) -> bool:
    """Whether the AST contains an exp() node (needs the Fock evaluator)."""
    if isinstance(node, Unary):
        return node.op == "exp" or contains_exp(node.arg)
    if isinstance(node, Binary):
        return contains_exp(node.lhs) or contains_exp(node.rhs)
    return False
