"""Recursive-descent parser for the polynomial input grammar.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | atom ('^' INT)?
    atom   := INT | INT '/' INT | 'x' | 'y' | 'z' | '(' expr ')'

Juxtaposition is rejected: ``3x`` and ``x y`` are syntax errors.
"""
from __future__ import annotations

import re
from fractions import Fraction

from zariski.core.homog import HomogPoly, format_monomial
from zariski.errors import NotHomogeneous, PolySyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(.))")

# sparse affine polynomial: {(i, j, k): Fraction}
_Poly = dict


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, var, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif var is not None:
            tokens.append(("var", var, start))
        elif op in "+-*^/()":
            tokens.append((op, op, start))
        else:
            raise PolySyntaxError(f"unexpected character {op!r} at position {start}")
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _add(a: _Poly, b: _Poly, sign: int = 1) -> _Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for (i, j, k), u in a.items():
        for (p, q, r), v in b.items():
            e = (i + p, j + q, k + r)
            w = out.get(e, 0) + u * v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def fail(self, msg: str):
        kind, val, pos = self.tokens[self.i]
        found = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"{msg}, found {found} at position {pos} in {self.text!r}")

    def parse(self) -> _Poly:
        if self.peek() == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek() != "end":
            self.fail("expected operator")
        return p

    def expr(self) -> _Poly:
        p = self.term()
        while self.peek() in ("+", "-"):
            sign = 1 if self.take()[0] == "+" else -1
            p = _add(p, self.term(), sign)
        return p

    def term(self) -> _Poly:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = _mul(p, self.factor())
        return p

    def factor(self) -> _Poly:
        if self.peek() in ("+", "-"):
            sign = 1 if self.take()[0] == "+" else -1
            return {e: sign * c for e, c in self.factor().items()}
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() != "num":
                self.fail("exponent must be a nonnegative integer")
            n = int(self.take()[1])
            out: _Poly = {(0, 0, 0): Fraction(1)}
            for _ in range(n):
                out = _mul(out, base)
            base = out
        if self.peek() in ("num", "var", "("):
            self.fail("implicit multiplication is not allowed; use '*'")
        return base

    def atom(self) -> _Poly:
        kind = self.peek()
        if kind == "num":
            num = int(self.take()[1])
            if self.peek() == "/":
                self.take()
                if self.peek() != "num":
                    self.fail("rational literal needs an integer denominator")
                den = int(self.take()[1])
                if den == 0:
                    self.fail("zero denominator")
                value = Fraction(num, den)
            else:
                value = Fraction(num)
            return {(0, 0, 0): value} if value else {}
        if kind == "var":
            e = [0, 0, 0]
            e["xyz".index(self.take()[1])] = 1
            return {tuple(e): Fraction(1)}
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        self.fail("expected a number, variable or '('")


def parse_poly(text: str) -> HomogPoly:
    """Parse text into a HomogPoly; the result keeps the literal coefficients."""
    terms = _Parser(text).parse()
    if not terms:
        return HomogPoly.zero(0)
    by_degree: dict[int, tuple[int, int, int]] = {}
    for e in sorted(terms, reverse=True):
        by_degree.setdefault(sum(e), e)
    if len(by_degree) > 1:
        (d1, e1), (d2, e2) = sorted(by_degree.items(), reverse=True)[:2]
        raise NotHomogeneous(
            f"monomials {format_monomial(e1) or '1'} (degree {d1}) and "
            f"{format_monomial(e2) or '1'} (degree {d2}) have different degrees"
        )
    coeffs = {e: (c.numerator if c.denominator == 1 else c) for e, c in terms.items()}
    return HomogPoly(coeffs)


def read_poly(source: str) -> HomogPoly:
    """Parse an inline expression, or the contents of a file if ``source`` names one."""
    from pathlib import Path

    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        lines = [ln.split("#", 1)[0] for ln in path.read_text().splitlines()]
        return parse_poly(" ".join(ln for ln in lines if ln.strip()))
    return parse_poly(source)
