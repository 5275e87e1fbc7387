"""Text syntax for elements and forms.

Grammar (LL(1), whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | GEN | "(" expr ")"
    GEN    := "x"<i> | "th"<i> | "dx"<i> | "dth"<i>

``*`` is the single product of the form algebra; on two elements of A it
is the supercommutative product.  ``/`` only builds rational literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .algebra import AlgebraElement, Generator, Key, Signature, SignatureError, SuperForm, key_form_degree

MAX_EXPONENT = 256


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Symbol:
    kind: str  # "x", "th", "dx" or "dth"
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Sum:
    items: Tuple["Node", ...]


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


Node = Union[Num, Symbol, Neg, Sum, Product, Power]


# -- lexer ------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<gen>dth|dx|th|x)(?P<idx>\d+)|(?P<op>[-+*^/()]))")


@dataclass
class _Tok:
    kind: str  # "num", "gen", "op", "eof"
    text: str
    line: int
    col: int
    value: object = None


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            line, col = _position(text, pos)
            toks.append(_Tok("eof", "", line, col))
            return toks
        m = _TOKEN_RE.match(text, pos)
        start = pos
        line, col = _position(text, start)
        if not m or m.end() == pos:
            raise ParseError(f"unknown token {text[pos]!r}", line, col)
        if m.group("num") is not None:
            toks.append(_Tok("num", m.group("num"), line, col, int(m.group("num"))))
        elif m.group("gen") is not None:
            toks.append(_Tok("gen", m.group(0).strip(), line, col, (m.group("gen"), int(m.group("idx")))))
        else:
            toks.append(_Tok("op", m.group("op"), line, col))
        pos = m.end()
        # reject identifiers glued to garbage, e.g. "x1y"
        if toks[-1].kind != "op" and pos < len(text) and (text[pos].isalpha() or text[pos] == "_"):
            l2, c2 = _position(text, pos)
            raise ParseError(f"unknown token {text[pos]!r}", l2, c2)


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def is_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        items = [self.term()]
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            t = self.term()
            items.append(Neg(t) if op == "-" else t)
        return items[0] if len(items) == 1 else Sum(tuple(items))

    def term(self) -> Node:
        factors = [self.unary()]
        while self.is_op("*"):
            self.advance()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self) -> Node:
        if self.is_op("-"):
            self.advance()
            return Neg(self.unary())
        if self.is_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.is_op("^"):
            self.advance()
            t = self.tok
            if t.kind != "num":
                self.error("exponent must be a nonnegative integer")
            self.advance()
            if t.value > MAX_EXPONENT:
                self.error(f"exponent {t.value} exceeds limit {MAX_EXPONENT}", t)
            return Power(base, t.value)
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            if self.is_op("/"):
                self.advance()
                d = self.tok
                if d.kind != "num":
                    self.error("malformed rational: expected integer denominator")
                self.advance()
                if d.value == 0:
                    self.error("malformed rational: zero denominator", d)
                return Num(Fraction(t.value, d.value))
            return Num(Fraction(t.value))
        if t.kind == "gen":
            self.advance()
            kind, idx = t.value
            bound = self.sig.m if kind in ("x", "dx") else self.sig.n
            if idx < 1 or idx > bound:
                self.error(f"index out of range: {t.text} (m={self.sig.m}, n={self.sig.n})", t)
            return Symbol(kind, idx)
        if self.is_op("("):
            self.advance()
            node = self.expr()
            if not self.is_op(")"):
                self.error("expected ')'")
            self.advance()
            return node
        if t.kind == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


def parse(text: str, sig: Signature) -> Node:
    """Parse ``text`` into an AST; raises :class:`ParseError` with a position."""
    return _Parser(text, sig).parse()


def evaluate_ast(node: Node, sig: Signature) -> SuperForm:
    if isinstance(node, Num):
        return sig.const(node.value)
    if isinstance(node, Symbol):
        g = Generator("x" if node.kind in ("x", "dx") else "th", node.index)
        return sig.d(g) if node.kind.startswith("d") else sig.gen(g)
    if isinstance(node, Neg):
        return -evaluate_ast(node.operand, sig)
    if isinstance(node, Sum):
        out = sig.zero()
        for item in node.items:
            out = out + evaluate_ast(item, sig)
        return out
    if isinstance(node, Product):
        out = evaluate_ast(node.factors[0], sig)
        for f in node.factors[1:]:
            out = out * evaluate_ast(f, sig)
        return out
    if isinstance(node, Power):
        return evaluate_ast(node.base, sig) ** node.exponent
    raise TypeError(f"not an AST node: {node!r}")


# named ``eval`` in the public interface
eval = evaluate_ast  # noqa: A001


def form(text: str, sig: Signature) -> SuperForm:
    """Parse and evaluate in one step."""
    return evaluate_ast(parse(text, sig), sig)


def element(text: str, sig: Signature) -> AlgebraElement:
    """Parse text that must denote an element of A."""
    v = form(text, sig)
    try:
        return v.to_element()
    except ValueError:
        raise ParseError(f"{text!r} is a form of positive degree, expected an element of A") from None


# -- printer ----------------------------------------------------------------------


def sort_key(k: Key):
    e, o, x, t = k
    return (key_form_degree(k), x, tuple(-v for v in t), len(o), o, -sum(e), tuple(-v for v in e))


def _factor_text(name: str, power: int) -> str:
    return name if power == 1 else f"{name}^{power}"


def monomial_text(k: Key) -> str:
    e, o, x, t = k
    parts = [_factor_text(f"x{i + 1}", p) for i, p in enumerate(e) if p]
    parts += [f"th{j + 1}" for j in o]
    parts += [f"dx{i + 1}" for i in x]
    parts += [_factor_text(f"dth{j + 1}", p) for j, p in enumerate(t) if p]
    return "*".join(parts)


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(v: SuperForm) -> str:
    """Canonical spelling; ``parse`` of the output evaluates back to ``v``."""
    if v.is_zero():
        return "0"
    out = []
    for idx, k in enumerate(sorted((k for k, _ in v.items()), key=sort_key)):
        c = v._terms[k]
        neg = c < 0
        a = -c if neg else c
        mono = monomial_text(k)
        if not mono:
            body = _coeff_text(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coeff_text(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# named ``print`` in the public interface
print_form = to_text


__all__ = [
    "Num",
    "Symbol",
    "Neg",
    "Sum",
    "Product",
    "Power",
    "ParseError",
    "SignatureError",
    "parse",
    "eval",
    "evaluate_ast",
    "form",
    "element",
    "to_text",
    "print_form",
    "sort_key",
]
