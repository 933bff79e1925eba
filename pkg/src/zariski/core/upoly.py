"""Dense univariate polynomials over an exact coefficient ring.

Coefficients may be ``int``, ``Fraction``, tower elements, or ``UniPoly``
itself (giving bivariate polynomials for elimination).  The only protocol
required of a coefficient is ring arithmetic, ``bool()`` as a zero test and
exact division through :func:`exquo`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from zariski.errors import BothZero, ZeroPolynomial


def exquo(a, b):
    """Exact quotient ``a / b`` in whatever ring ``a`` and ``b`` live in."""
    if isinstance(a, UniPoly):
        return a.exquo(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q
    if isinstance(b, UniPoly):
        return UniPoly.constant(a).exquo(b)
    return a / b


class UniPoly:
    """Immutable dense polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, c, var: str = "t") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, c, n: int, var: str = "t") -> "UniPoly":
        return cls([0] * n + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "t") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            if not self.coeffs:
                return not other
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(not (a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # -- ring arithmetic -------------------------------------------------

    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly) and other.var == self.var:
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not (isinstance(other, UniPoly) and other.var == self.var):
            if not other:
                return UniPoly([], self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    # -- division --------------------------------------------------------

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division; needs the leading coefficient of ``other`` invertible."""
        other = self._wrap(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly([], self.var), self
        q = [0] * (len(r) - db)
        lc = other.lc
        inv = None
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            if inv is None:
                inv = 1 if lc == 1 else _inverse(lc)
            f = c * inv
            q[k] = f
            for j, bj in enumerate(other.coeffs):
                r[k + j] = r[k + j] - f * bj
        return UniPoly(q, self.var), UniPoly(r[:db], self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exquo(self, other) -> "UniPoly":
        """Exact division over an integral domain (no inverses needed)."""
        if not isinstance(other, UniPoly) or other.var != self.var:
            return UniPoly([exquo(c, other) for c in self.coeffs], self.var)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError("inexact polynomial division")
            return UniPoly([], self.var)
        q = [0] * (len(r) - db)
        lc = other.lc
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            f = exquo(c, lc)
            q[k] = f
            for j, bj in enumerate(other.coeffs):
                r[k + j] = r[k + j] - f * bj
        if any(r[:db]):
            raise ArithmeticError("inexact polynomial division")
        return UniPoly(q, self.var)

    def prem(self, other: "UniPoly") -> "UniPoly":
        """Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self mod other."""
        da, db = self.degree, other.degree
        if db < 0:
            raise ZeroDivisionError("pseudo-division by zero")
        if da < db:
            return self
        r = list(self.coeffs)
        lc = other.lc
        for _ in range(da - db + 1):
            top = len(r) - 1
            if top < db:
                r = [c * lc for c in r]
                continue
            c = r[top]
            shift = top - db
            r = [x * lc for x in r]
            for j, bj in enumerate(other.coeffs):
                r[shift + j] = r[shift + j] - c * bj
            r.pop()
        return UniPoly(r, self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = _inverse(self.lc)
        return UniPoly([c * inv for c in self.coeffs[:-1]] + [1], self.var)


def _inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c.inverse()


# -- content and primitive parts over Z / Q ---------------------------------


def rational_primitive(p: UniPoly) -> UniPoly:
    """Scale a polynomial over Q to a primitive integer polynomial, lc > 0."""
    if not p:
        return p
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return UniPoly([c // g for c in ints], p.var)


def _is_rational(p: UniPoly) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in p.coeffs)


# -- gcd, resultant, squarefree ---------------------------------------------


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over a field.

    Over Q a primitive integer remainder sequence keeps the numbers small;
    over a tower the plain Euclidean algorithm is used and any zero divisor
    met while inverting a leading coefficient surfaces as a tower split.
    """
    if _is_rational(p) and _is_rational(q):
        return _gcd_rational(p, q)
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _gcd_rational(p: UniPoly, q: UniPoly) -> UniPoly:
    a = rational_primitive(p)
    b = rational_primitive(q)
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = a.prem(b)
        a, b = b, rational_primitive(r)
    if not a:
        return a
    return UniPoly([Fraction(c, a.lc) for c in a.coeffs], p.var)


def xgcd(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, s, t) with s*p + t*q = g and g monic."""
    r0, r1 = p, q
    s0, s1 = UniPoly([1], p.var), UniPoly([], p.var)
    t0, t1 = UniPoly([], p.var), UniPoly([1], p.var)
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = _inverse(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def resultant(p: UniPoly, q: UniPoly):
    """Resultant of ``p`` and ``q`` with the Sylvester-determinant sign.

    Subresultant pseudo-remainder sequence; only exact divisions occur, so
    this works over any integral domain (Z, Z[x], Q, towers).
    """
    if not p and not q:
        raise BothZero("resultant of two zero polynomials")
    if not p or not q:
        return 0
    a, b = p, q
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            sign = -sign
    if b.degree == 0:
        return sign * b.lc ** a.degree
    g = 1
    h = 1
    while True:
        da, db = a.degree, b.degree
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = a.prem(b)
        a = b
        if not r:
            return 0
        b = r.exquo(g * h**delta)
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exquo(g**delta, h ** (delta - 1))
        if b.degree == 0:
            break
    da = a.degree
    if da == 1:
        return sign * b.lc
    return sign * exquo(b.lc**da, h ** (da - 1))


def discriminant(p: UniPoly):
    return resultant(p, p.derivative())


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree f_i with p = lc * prod f_i^i."""
    if not p:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a0 = gcd(p, dp)
    b = _exact(p, a0)
    c = _exact(dp, a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        b = _exact(b, a)
        c = _exact(d, a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if not p:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    part = UniPoly([1], p.var)
    for f, _ in squarefree_decomposition(p):
        part = part * f
    return part


def _exact(a: UniPoly, b: UniPoly) -> UniPoly:
    q, r = a.divmod(b)
    if r:
        raise ArithmeticError("inexact division in squarefree decomposition")
    return q


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q.coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        pv = a[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return result
