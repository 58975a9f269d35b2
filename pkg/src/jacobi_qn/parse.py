"""Expression grammar for polynomials and exterior elements.

Polynomials::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" unary) | ("/" INT))*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" (INT | atom))*
    atom   := INT | INT "/" INT | IDENT | "(" expr ")"

``^`` followed by an integer literal is a power; between exterior elements it
is the wedge product, so ``x^2*dx^dy`` reads as ``x² dx∧dy``.  Basis symbols
are the frame labels of the algebroid (``d/dx``, ``dx``, ``e1``, ...); the
variance comes from the object being parsed, so ``dx^dy`` and
``d/dx^d/dy`` name the same frame slots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .symalg import KVector, PolyFn, sort_sign


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0, line: Optional[int] = None,
                 col: Optional[int] = None):
        self.message = message
        self.text = text
        self.pos = pos
        self.line = line
        self.col = col
        super().__init__(self.render())

    def render(self) -> str:
        where = ""
        if self.line is not None:
            where = f"line {self.line}, column {self.col}: "
        elif self.text:
            where = f"column {self.pos + 1}: "
        out = where + self.message
        if self.text:
            out += f"\n  {self.text}\n  {' ' * self.pos}^"
        return out

    def located(self, line: int, col: int) -> "ParseError":
        return ParseError(self.message, self.text, self.pos, line, col + self.pos)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<basis>d/d[A-Za-z_]\w*)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Elem:
    """Sparse exterior element: index tuple → PolyFn, of a single degree (None while zero)."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Dict[Tuple[int, ...], PolyFn], degree: Optional[int]):
        self.terms = {k: v for k, v in terms.items() if v}
        self.degree = degree if self.terms or degree == 0 else degree

    def is_scalar(self) -> bool:
        return self.degree == 0


class _Parser:
    def __init__(self, text: str, vars: Sequence[str], basis: Optional[Dict[str, int]]):
        self.text = text
        self.vars = tuple(vars)
        self.basis = basis or {}
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def scalar(self, f: PolyFn) -> _Elem:
        return _Elem({(): f}, 0)

    def add(self, a: _Elem, b: _Elem, sign: int, tok: Token) -> _Elem:
        if a.terms and b.terms and a.degree != b.degree:
            self.error(f"cannot add terms of degree {a.degree} and {b.degree}", tok)
        terms = dict(a.terms)
        for k, v in b.terms.items():
            terms[k] = terms.get(k, PolyFn.zero(self.vars)) + (v if sign > 0 else -v)
        deg = a.degree if a.terms else b.degree
        return _Elem(terms, deg)

    def mul(self, a: _Elem, b: _Elem, tok: Token) -> _Elem:
        if a.degree and b.degree and a.degree > 0 and b.degree > 0:
            return self.wedge(a, b, tok)
        terms: Dict[Tuple[int, ...], PolyFn] = {}
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                k = ka or kb
                terms[k] = terms.get(k, PolyFn.zero(self.vars)) + va * vb
        return _Elem(terms, (a.degree or 0) + (b.degree or 0))

    def wedge(self, a: _Elem, b: _Elem, tok: Token) -> _Elem:
        terms: Dict[Tuple[int, ...], PolyFn] = {}
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                if set(ka) & set(kb):
                    continue
                sign, k = sort_sign(ka + kb)
                c = va * vb
                terms[k] = terms.get(k, PolyFn.zero(self.vars)) + (c if sign > 0 else -c)
        return _Elem(terms, (a.degree or 0) + (b.degree or 0))

    # -- grammar
    def parse(self) -> _Elem:
        if self.peek().kind == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self) -> _Elem:
        e = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            tok = self.take()
            e = self.add(e, self.term(), 1 if tok.text == "+" else -1, tok)
        return e

    def term(self) -> _Elem:
        e = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            tok = self.take()
            if tok.text == "*":
                e = self.mul(e, self.unary(), tok)
            else:
                d = self.peek()
                if d.kind != "int":
                    self.error("division is only by an integer literal", d)
                self.take()
                if int(d.text) == 0:
                    self.error("division by zero", d)
                e = self.mul(e, self.scalar(PolyFn.const(self.vars, Fraction(1, int(d.text)))), tok)
        return e

    def unary(self) -> _Elem:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            e = self.unary()
            if tok.text == "-":
                e = _Elem({k: -v for k, v in e.terms.items()}, e.degree)
            return e
        return self.power()

    def power(self) -> _Elem:
        e = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            tok = self.take()
            nxt = self.peek()
            if nxt.kind == "int":
                self.take()
                if not e.is_scalar():
                    self.error("powers apply to functions only; use ^ between basis symbols", nxt)
                k = int(nxt.text)
                f = e.terms.get((), PolyFn.zero(self.vars))
                e = self.scalar(f ** k)
            elif nxt.kind == "op" and nxt.text in ("-", "+"):
                self.error("exponents must be nonnegative integer literals", nxt)
            else:
                rhs = self.atom()
                if e.is_scalar() or rhs.is_scalar():
                    self.error("^ between a function and a non-integer is not defined", nxt)
                e = self.wedge(e, rhs, tok)
        return e

    def atom(self) -> _Elem:
        tok = self.take()
        if tok.kind == "int":
            val = Fraction(int(tok.text))
            if self.peek().kind == "op" and self.peek().text == "/" and self.toks[self.i + 1].kind == "int":
                self.take()
                d = self.take()
                if int(d.text) == 0:
                    self.error("division by zero", d)
                val = val / int(d.text)
            return self.scalar(PolyFn.const(self.vars, val))
        if tok.kind in ("ident", "basis"):
            if tok.text in self.basis:
                return _Elem({(self.basis[tok.text],): PolyFn.const(self.vars, 1)}, 1)
            if tok.kind == "ident" and tok.text in self.vars:
                return self.scalar(PolyFn.var(self.vars, tok.text))
            what = "basis symbol" if tok.kind == "basis" or tok.text.startswith("d") else "coordinate"
            self.error(f"unknown {what} {tok.text!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            e = self.expr()
            if self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return e
        if tok.kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {tok.text!r}", tok)


def parse_poly(text: str, vars: Sequence[str]) -> PolyFn:
    e = _Parser(str(text), vars, None).parse()
    if not e.is_scalar() and e.terms:
        raise ParseError("expected a function", str(text), 0)
    return e.terms.get((), PolyFn.zero(tuple(vars)))


def basis_symbols(vars: Sequence[str], labels: Sequence[str], form_labels: Sequence[str]) -> Dict[str, int]:
    """Every accepted spelling of each frame slot."""
    out: Dict[str, int] = {}
    for i, (a, b) in enumerate(zip(labels, form_labels)):
        for s in (a, b, f"e{i + 1}"):
            out.setdefault(s, i)
    return out


def parse_kvector(text: str, vars: Sequence[str], rank: int, degree: int, variance: str,
                  basis: Dict[str, int]) -> KVector:
    text = str(text)
    e = _Parser(text, vars, basis).parse()
    if e.terms and e.degree != degree:
        raise ParseError(f"expected degree {degree}, got degree {e.degree}", text, 0)
    return KVector(tuple(vars), rank, degree, variance, e.terms)


def parse_point(text: str, dim: int) -> Tuple[Fraction, ...]:
    """``"(1, 1/2)"`` → rational tuple."""
    s = str(text).strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("a sample point is written (a, b, ...)", s, 0)
    parts = [p.strip() for p in s[1:-1].split(",")] if s[1:-1].strip() else []
    if len(parts) != dim:
        raise ParseError(f"sample point has {len(parts)} coordinates, expected {dim}", s, 0)
    out = []
    for p in parts:
        try:
            out.append(Fraction(p))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational number: {p!r}", s, s.find(p)) from None
    return tuple(out)


def parse_points(text: str, dim: int) -> List[Tuple[Fraction, ...]]:
    """``"(0,0);(1,2)"`` → list of points."""
    return [parse_point(p, dim) for p in str(text).split(";") if p.strip()]


__all__ = ["ParseError", "tokenize", "parse_poly", "parse_kvector", "basis_symbols", "parse_point", "parse_points"]
