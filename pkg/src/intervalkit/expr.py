"""A small expression language over intervals, used by the command line.

Grammar (``^`` binds tighter than unary minus and is right associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := number | "[...]" | name | name "(" expr ("," expr)* ")" | "(" expr ")"

``x ^ n`` with an integer literal ``n`` is :func:`arith.pown`, otherwise
:func:`arith.pow`.  Numbers become the tightest point interval enclosing them.
"""

from __future__ import annotations

import dataclasses
import re
from typing import Dict, Tuple

from . import arith, elem
from .endpoint import BINARY64
from .errors import InvalidLiteral
from .interval import Interval, hull, intersection
from .textio import parse

__all__ = ["ExpressionError", "Expression", "parse_expression", "FUNCTIONS"]


class ExpressionError(ValueError):
    """Syntax or name-resolution error in an interval expression."""


FUNCTIONS = {
    "sqr": (arith.sqr, 1), "sqrt": (arith.sqrt, 1), "abs": (arith.abs_, 1),
    "exp": (elem.exp, 1), "log": (elem.log, 1), "log2": (elem.log2, 1), "log10": (elem.log10, 1),
    "sin": (elem.sin, 1), "cos": (elem.cos, 1), "tan": (elem.tan, 1),
    "asin": (elem.asin, 1), "acos": (elem.acos, 1), "atan": (elem.atan, 1),
    "sinh": (elem.sinh, 1), "cosh": (elem.cosh, 1), "tanh": (elem.tanh, 1),
    "asinh": (elem.asinh, 1), "acosh": (elem.acosh, 1), "atanh": (elem.atanh, 1),
    "pow": (arith.pow, 2), "fma": (arith.fma, 3),
    "hull": (hull, 2), "intersection": (intersection, 2),
    "cancel_minus": (arith.cancel_minus, 2), "cancel_plus": (arith.cancel_plus, 2),
}
# pown takes an integer literal as its second argument
_POWN = "pown"

_TOKEN = re.compile(
    r"\s*(?:(?P<interval>\[[^\]]*\])"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos:].lstrip()[:1]!r} "
                                  f"at offset {pos}")
        kind = m.lastgroup
        out.append((kind, m[kind], pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


@dataclasses.dataclass(frozen=True)
class Node:
    kind: str            # num, lit, var, neg, bin, call, pown
    value: object = None
    args: Tuple = ()


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            where = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionError(f"expected {value!r} but found {where} at offset {tok[2]}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionError(f"unexpected {tok[1]!r} at offset {tok[2]}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Node("bin", op, (node, self.term()))
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Node("bin", op, (node, self.unary()))
        return node

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            inner = self.unary()
            return Node("neg", None, (inner,)) if op == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exponent = self.unary()
            n = _integer_literal(exponent)
            if n is not None:
                return Node("pown", n, (base,))
            return Node("bin", "^", (base, exponent))
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "number":
            return Node("num", text)
        if kind == "interval":
            return Node("lit", text)
        if kind == "name":
            if self.peek()[1] == "(":
                return self.call(text, pos)
            return Node("var", text)
        if kind == "op" and text == "(":
            node = self.expr()
            self.take(")")
            return node
        where = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"unexpected {where} at offset {pos}")

    def call(self, name, pos):
        self.take("(")
        args = [self.expr()]
        while self.peek()[1] == ",":
            self.take()
            args.append(self.expr())
        self.take(")")
        if name == _POWN:
            n = _integer_literal(args[1]) if len(args) == 2 else None
            if n is None:
                raise ExpressionError("pown expects an interval and an integer literal")
            return Node("pown", n, (args[0],))
        if name not in FUNCTIONS:
            raise ExpressionError(f"unknown function {name!r} at offset {pos}")
        arity = FUNCTIONS[name][1]
        if len(args) != arity:
            raise ExpressionError(f"{name} takes {arity} argument(s), got {len(args)}")
        return Node("call", name, tuple(args))


def _integer_literal(node):
    if node.kind == "num" and re.fullmatch(r"\d+", node.value):
        return int(node.value)
    if node.kind == "neg" and node.args[0].kind == "num":
        n = _integer_literal(node.args[0])
        return None if n is None else -n
    return None


_BINARY = {"+": arith.add, "-": arith.sub, "*": arith.mul, "/": arith.div, "^": arith.pow}


class Expression:
    """A parsed expression; call :meth:`evaluate` with variable bindings."""

    def __init__(self, text):
        self.text = text
        self.root = _Parser(text).parse()

    def variables(self):
        out, stack = set(), [self.root]
        while stack:
            node = stack.pop()
            if node.kind == "var":
                out.add(node.value)
            stack.extend(node.args)
        return out

    def evaluate(self, env: Dict[str, Interval], fmt=BINARY64) -> Interval:
        missing = self.variables() - set(env)
        if missing:
            raise ExpressionError(f"unbound variable(s): {', '.join(sorted(missing))}")
        return _eval(self.root, env, fmt)


def _eval(node, env, fmt):
    k = node.kind
    if k == "num":
        return parse(f"[{node.value}]", fmt)
    if k == "lit":
        try:
            return parse(node.value, fmt)
        except InvalidLiteral as exc:
            raise ExpressionError(str(exc)) from None
    if k == "var":
        return env[node.value]
    args = [_eval(a, env, fmt) for a in node.args]
    if k == "neg":
        return arith.neg(args[0])
    if k == "pown":
        return arith.pown(args[0], node.value)
    if k == "bin":
        return _BINARY[node.value](*args)
    return FUNCTIONS[node.value][0](*args)


def parse_expression(text):
    return Expression(text)
