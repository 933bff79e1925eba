"""Homogeneous polynomials in the projective variables x, y, z."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from zariski.core.upoly import UniPoly

VARS = ("x", "y", "z")
Exponent = tuple[int, int, int]


def _exponents(d: int) -> list[Exponent]:
    """All exponent triples of total degree d, graded-lex descending (x > y > z)."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def monomials(d: int) -> list[Exponent]:
    return _exponents(d)


class HomogPoly:
    """A form of fixed degree; zero coefficients are never stored."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable = (), degree: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, object] = {}
        for e, c in items:
            e = tuple(e)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise ValueError(f"mixed degrees {sorted(degs)} in HomogPoly")
        if degree is None:
            if not degs:
                raise ValueError("zero polynomial needs an explicit degree")
            degree = degs.pop()
        elif degs and degs.pop() != degree:
            raise ValueError("declared degree does not match terms")
        self.terms = clean
        self.degree = degree

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "HomogPoly":
        return cls({}, degree)

    @classmethod
    def var(cls, name: str) -> "HomogPoly":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1}, 1)

    @classmethod
    def linear(cls, a, b, c) -> "HomogPoly":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    @classmethod
    def constant(cls, c) -> "HomogPoly":
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def from_coeff_vector(cls, degree: int, vec: Sequence) -> "HomogPoly":
        return cls(dict(zip(_exponents(degree), vec)), degree)

    # -- inspection ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Exponent):
        return self.terms.get(tuple(e), 0)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def coeff_vector(self) -> list:
        return [self.terms.get(e, 0) for e in _exponents(self.degree)]

    @property
    def leading_coefficient(self):
        return self.sorted_terms()[0][1] if self.terms else 0

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.degree != other.degree and (self.terms or other.terms):
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomogPoly({self}, degree={self.degree})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            if not other:
                return self
            return self + HomogPoly.constant(other) if self.degree == 0 else NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return HomogPoly(t, self.degree)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly({e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return HomogPoly({e: c * other for e, c in self.terms.items()}, self.degree)
        out: dict[Exponent, object] = {}
        for (a, b, c), u in self.terms.items():
            for (d, e, f), v in other.terms.items():
                k = (a + d, b + e, c + f)
                out[k] = out.get(k, 0) + u * v
        return HomogPoly(out, self.degree + other.degree)

    def __rmul__(self, other) -> "HomogPoly":
        return self * other

    def __pow__(self, n: int) -> "HomogPoly":
        result = HomogPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x, y, z):
        """Evaluate at a point; coordinates may come from any coefficient ring."""
        px = _powers(x, self.degree)
        py = _powers(y, self.degree)
        pz = _powers(z, self.degree)
        acc = 0
        for (i, j, k), c in self.terms.items():
            acc = acc + c * (px[i] * py[j] * pz[k])
        return acc

    def evaluate(self, point: Sequence):
        return self(*point)

    def partial(self, var: str | int) -> "HomogPoly":
        idx = VARS.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                ne = list(e)
                ne[idx] -= 1
                out[tuple(ne)] = c * e[idx]
        return HomogPoly(out, max(self.degree - 1, 0))

    def gradient(self) -> tuple["HomogPoly", "HomogPoly", "HomogPoly"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def map_coeffs(self, fn) -> "HomogPoly":
        return HomogPoly({e: fn(c) for e, c in self.terms.items()}, self.degree)

    # -- normalization ---------------------------------------------------

    def is_rational(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def primitive(self) -> "HomogPoly":
        """Content-cleared integer form with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = max(ints)
        if ints[lead] < 0:
            g = -g
        return HomogPoly({e: c // g for e, c in ints.items()}, self.degree)

    def same_curve(self, other: "HomogPoly") -> bool:
        return self.degree == other.degree and self.primitive() == other.primitive()

    # -- coordinate changes and elimination ------------------------------

    def transform(self, matrix: Sequence[Sequence]) -> "HomogPoly":
        """Return the form X -> self(M X) for a 3x3 matrix M."""
        lin = [HomogPoly.linear(*row) for row in matrix]
        pw = [[HomogPoly.constant(1)] for _ in range(3)]
        for v in range(3):
            for _ in range(self.degree):
                pw[v].append(pw[v][-1] * lin[v])
        out = HomogPoly.zero(self.degree)
        for (i, j, k), c in self.terms.items():
            out = out + (pw[0][i] * pw[1][j] * pw[2][k]) * c
        return out

    def as_poly_in(self, var: int = 2, dehom: int = 1) -> UniPoly:
        """Univariate in ``var`` whose coefficients are univariate in the remaining
        variable, with ``dehom`` set to 1 (bivariate dense form for elimination)."""
        keep = 3 - var - dehom
        rows: dict[int, dict[int, object]] = {}
        for e, c in self.terms.items():
            rows.setdefault(e[var], {})
            rows[e[var]][e[keep]] = rows[e[var]].get(e[keep], 0) + c
        top = max(rows) if rows else -1
        coeffs = []
        for k in range(top + 1):
            row = rows.get(k, {})
            n = max(row) + 1 if row else 0
            coeffs.append(UniPoly([row.get(i, 0) for i in range(n)], VARS[keep]))
        return UniPoly(coeffs, VARS[var])

    def restrict_to_line(self, p: Sequence, q: Sequence) -> list:
        """Coefficients c_0..c_d of self(s*p + t*q) = sum c_i s^(d-i) t^i."""
        d = self.degree
        lin = [UniPoly([p[v], q[v]]) for v in range(3)]
        total = UniPoly([])
        cache = [[UniPoly([1])] for _ in range(3)]
        for v in range(3):
            for _ in range(d):
                cache[v].append(cache[v][-1] * lin[v])
        for (i, j, k), c in self.terms.items():
            total = total + cache[0][i] * cache[1][j] * cache[2][k] * c
        return [total[i] for i in range(d + 1)]


def _powers(x, n: int) -> list:
    out = [1]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def hessian(f: HomogPoly) -> HomogPoly:
    """Determinant of the matrix of second partials."""
    g = f.gradient()
    h = [[g[i].partial(j) for j in range(3)] for i in range(3)]
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def format_monomial(e: Exponent) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: HomogPoly) -> str:
    """Render in the input grammar, graded-lex order."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        mono = format_monomial(e)
        if not isinstance(c, (int, Fraction)):
            body = f"({c})" + (f"*{mono}" if mono else "")
        elif mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag)}*{mono}"
        else:
            body = _format_coeff(mag)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
