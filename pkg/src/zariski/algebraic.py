"""Algebraic numbers as elements of iterated squarefree quotients of Q.

A tower of height h is Q[a1]/(g1)[a2]/(g2)...[ah]/(gh) with every g_i
squarefree (not necessarily irreducible) over the level below.  Such a
quotient is a product of fields; arithmetic proceeds as if it were a field
and the first zero divisor met while inverting splits the modulus into
coprime factors (dynamic evaluation).  A split is reported as a
:class:`SplitEvent`; callers re-run their computation in each replacement
tower, usually through :func:`on_branches`.
"""
from __future__ import annotations

from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from zariski.core.upoly import UniPoly, gcd, xgcd
from zariski.errors import ConstantModulus, DivisionByZero, TowerTooDeep

DEFAULT_MAX_HEIGHT = 6

# number of tower splits handled by on_branches in the current context
split_count: ContextVar[int] = ContextVar("split_count", default=0)


class Tower:
    """An immutable extension tower; ``Tower()`` is Q itself."""

    __slots__ = ("base", "modulus", "name", "height", "_degree")

    def __init__(self, base: "Tower | None" = None, modulus: UniPoly | None = None, name: str | None = None):
        self.base = base
        self.height = 0 if base is None else base.height + 1
        self.name = name or (f"a{self.height}" if self.height else "Q")
        self.modulus = None if modulus is None else UniPoly(modulus.coeffs, self.name)
        if base is None:
            self._degree = 1
        else:
            self._degree = base.degree * modulus.degree

    @property
    def degree(self) -> int:
        """Dimension over Q."""
        return self._degree

    @property
    def levels(self) -> list[tuple[str, UniPoly]]:
        out = []
        t = self
        while t.base is not None:
            out.append((t.name, t.modulus))
            t = t.base
        return out[::-1]

    def chain(self) -> list["Tower"]:
        out = []
        t = self
        while t is not None:
            out.append(t)
            t = t.base
        return out[::-1]

    def generator(self) -> "TowerElement":
        if self.base is None:
            raise ValueError("Q has no generator")
        return TowerElement(self, UniPoly([0, 1], self.name) % self.modulus)

    def element(self, coeffs: Sequence) -> "TowerElement":
        """The element sum coeffs[i] * a^i of the top level, reduced."""
        return TowerElement(self, UniPoly(list(coeffs), self.name) % self.modulus)

    def __call__(self, value):
        return coerce(value, self)

    def is_ancestor_of(self, other: "Tower") -> bool:
        t = other
        while t is not None:
            if t is self:
                return True
            t = t.base
        return False

    def rebase(self, old: "Tower", new: "Tower") -> "Tower":
        """This tower with ancestor ``old`` replaced by its branch ``new``."""
        if self is old:
            return new
        if self.base is None:
            raise ValueError("old is not an ancestor of this tower")
        nb = self.base.rebase(old, new)
        mod = UniPoly([coerce(c, nb) for c in self.modulus.coeffs], self.name)
        return Tower(nb, mod, self.name)

    def __repr__(self) -> str:
        if self.base is None:
            return "Tower(Q)"
        return "Tower(" + ", ".join(f"{n}: {m} = 0" for n, m in self.levels) + ")"


QQ = Tower()


def extend(tower: Tower, modulus: UniPoly, name: str | None = None,
           max_height: int = DEFAULT_MAX_HEIGHT) -> Tower:
    """Adjoin a root of ``modulus``; the new top modulus is its monic squarefree part.

    Computing the squarefree part over a non-trivial tower may itself hit a
    zero divisor, in which case :class:`TowerSplit` propagates.
    """
    if modulus.degree < 1:
        raise ConstantModulus(f"cannot adjoin a root of the constant {modulus}")
    if tower.height + 1 > max_height:
        raise TowerTooDeep(f"tower height would exceed {max_height}")
    m = UniPoly([coerce(c, tower) for c in modulus.coeffs], name or f"a{tower.height + 1}")
    m = m.monic()
    g = gcd(m, m.derivative())
    if g.degree > 0:
        m = m.divmod(g)[0].monic()
    return Tower(tower, m, name or f"a{tower.height + 1}")


@dataclass(frozen=True)
class SplitEvent:
    """``original`` turned out to be a product; ``towers`` are its coprime factors."""

    original: Tower
    towers: tuple[Tower, ...]

    def coerce(self, value, tower: Tower):
        return coerce_value(value, tower)


class TowerSplit(Exception):
    """Raised by arithmetic that needs an inverse of a zero divisor."""

    def __init__(self, event: SplitEvent):
        super().__init__(f"zero divisor in {event.original!r}")
        self.event = event


class TowerElement:
    """Element of the top level of a tower: a polynomial in the top generator
    reduced modulo the top modulus, with coefficients one level down."""

    __slots__ = ("tower", "rep")

    def __init__(self, tower: Tower, rep: UniPoly):
        self.tower = tower
        self.rep = rep

    # -- coercion --------------------------------------------------------

    def _lift(self, other) -> "TowerElement | None":
        if isinstance(other, TowerElement):
            if other.tower is self.tower:
                return other
            if other.tower.height < self.tower.height and other.tower.is_ancestor_of(self.tower):
                return coerce(other, self.tower)
            if other.tower.height > self.tower.height and self.tower.is_ancestor_of(other.tower):
                return None
            raise ValueError(f"elements of unrelated towers {self.tower!r} and {other.tower!r}")
        if isinstance(other, (int, Fraction)):
            return TowerElement(self.tower, UniPoly([other], self.tower.name))
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, -self.rep)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, o.rep - self.rep)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return TowerElement(self.tower, UniPoly([], self.tower.name))
            return TowerElement(self.tower, self.rep * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.rep.degree <= 0 or o.rep.degree <= 0:
            return TowerElement(self.tower, self.rep * o.rep)
        return TowerElement(self.tower, (self.rep * o.rep) % self.tower.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TowerElement(self.tower, UniPoly([1], self.tower.name))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, TowerElement):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            return self * o.inverse()
        if not other:
            raise DivisionByZero("division by exact zero")
        return TowerElement(self.tower, self.rep * (1 / Fraction(other)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- zero tests and inversion ---------------------------------------

    def is_zero(self) -> bool:
        """True iff the reduced representation vanishes (zero in every branch)."""
        return not self.rep.coeffs

    def __bool__(self) -> bool:
        return bool(self.rep.coeffs)

    def __eq__(self, other) -> bool:
        try:
            o = self._lift(other)
        except ValueError:
            return False
        if o is None:
            return other == self if isinstance(other, TowerElement) else NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def invert(self) -> "TowerElement | SplitEvent":
        """Inverse, or the split exposing this element as a zero divisor."""
        if self.is_zero():
            raise DivisionByZero("inverse of exact zero")
        top = self.tower
        g, s, _ = xgcd(self.rep, top.modulus)
        if g.degree == 0:
            return TowerElement(top, s % top.modulus)
        cof = top.modulus.divmod(g)[0].monic()
        parts = (Tower(top.base, g.monic(), top.name), Tower(top.base, cof, top.name))
        return SplitEvent(top, parts)

    def inverse(self) -> "TowerElement":
        r = self.invert()
        if isinstance(r, SplitEvent):
            raise TowerSplit(r)
        return r

    # -- conversions -----------------------------------------------------

    def to_rational(self) -> Fraction | None:
        if self.rep.degree > 0:
            return None
        c = self.rep[0]
        if isinstance(c, TowerElement):
            return c.to_rational()
        return Fraction(c)

    def rational_coordinates(self) -> list[Fraction]:
        """Coordinates over Q in the monomial basis of the tower."""
        d = self.tower.modulus.degree
        out = []
        for i in range(d):
            c = self.rep[i]
            if isinstance(c, TowerElement):
                out.extend(c.rational_coordinates())
            elif self.tower.base.height == 0:
                out.append(Fraction(c))
            else:
                out.extend(coerce(c, self.tower.base).rational_coordinates())
        return out

    def numeric(self, embedding: Sequence[complex]) -> complex:
        """Value under a complex embedding (one root per level, bottom first)."""
        alpha = embedding[self.tower.height - 1]
        acc = 0j
        for c in reversed(self.rep.coeffs):
            cv = c.numeric(embedding) if isinstance(c, TowerElement) else complex(c)
            acc = acc * alpha + cv
        return acc

    def __repr__(self) -> str:
        return f"TowerElement({self.rep}, {self.tower.name})"

    def __str__(self) -> str:
        return str(self.rep)


def coerce(value, tower: Tower):
    """Map a rational or a tower element into ``tower`` (a branch or extension of its home)."""
    if tower.height == 0:
        if isinstance(value, TowerElement):
            r = value.to_rational()
            if r is None:
                raise ValueError("cannot coerce an irrational element into Q")
            return r
        return value
    if isinstance(value, (int, Fraction)):
        return TowerElement(tower, UniPoly([value], tower.name))
    if not isinstance(value, TowerElement):
        raise TypeError(f"cannot coerce {type(value).__name__} into a tower")
    if value.tower is tower:
        return value
    if value.tower.height < tower.height:
        inner = coerce(value, tower.base)
        return TowerElement(tower, UniPoly([inner], tower.name))
    if value.tower.height > tower.height:
        raise ValueError("cannot coerce an element down a tower")
    coeffs = [coerce(c, tower.base) for c in value.rep.coeffs]
    return TowerElement(tower, UniPoly(coeffs, tower.name) % tower.modulus)


def coerce_value(value, tower: Tower):
    """Structural coercion through containers and objects with ``coerce``."""
    if isinstance(value, (TowerElement, int, Fraction)) and not isinstance(value, bool):
        return coerce(value, tower)
    if isinstance(value, UniPoly):
        return UniPoly([coerce_value(c, tower) for c in value.coeffs], value.var)
    if isinstance(value, tuple):
        return tuple(coerce_value(v, tower) for v in value)
    if isinstance(value, list):
        return [coerce_value(v, tower) for v in value]
    if isinstance(value, dict):
        return {k: coerce_value(v, tower) for k, v in value.items()}
    if hasattr(value, "coerce"):
        return value.coerce(tower)
    return value


def decide_zero(x) -> bool:
    """Zero test that refuses to answer for zero divisors: raises TowerSplit instead."""
    if not isinstance(x, TowerElement):
        return x == 0
    if x.is_zero():
        return True
    x.inverse()
    return False


def common_tower(*values) -> Tower:
    """The highest tower among the tower elements in ``values`` (nested containers allowed)."""
    best = QQ

    def visit(v):
        nonlocal best
        if isinstance(v, TowerElement):
            if v.tower.height > best.height:
                best = v.tower
        elif isinstance(v, (list, tuple)):
            for w in v:
                visit(w)
        elif isinstance(v, dict):
            for w in v.values():
                visit(w)
        elif hasattr(v, "tower_values"):
            for w in v.tower_values():
                visit(w)

    for v in values:
        visit(v)
    return best


def on_branches(fn: Callable, tower: Tower, *args, max_branches: int = 256) -> list[tuple[Tower, object]]:
    """Run ``fn(tower, *args)``; on a split, re-run in every replacement.

    Returns ``(tower, result)`` pairs, one per leaf branch.  ``args`` are
    coerced structurally into each branch.
    """
    out: list[tuple[Tower, object]] = []
    todo = [(tower, args)]
    while todo:
        t, a = todo.pop(0)
        try:
            out.append((t, fn(t, *a)))
        except TowerSplit as exc:
            ev = exc.event
            if not ev.original.is_ancestor_of(t):
                raise
            split_count.set(split_count.get() + 1)
            for rep in ev.towers:
                nt = t.rebase(ev.original, rep)
                todo.append((nt, tuple(coerce_value(v, nt) for v in a)))
            if len(out) + len(todo) > max_branches:
                raise TowerTooDeep(f"more than {max_branches} branches")
    return out


def embeddings(tower: Tower) -> list[list[complex]]:
    """All complex embeddings of the tower, each a list of generator values."""
    import numpy as np

    if tower.base is None:
        return [[]]
    out = []
    for emb in embeddings(tower.base):
        coeffs = []
        for c in tower.modulus.coeffs:
            coeffs.append(c.numeric(emb) if isinstance(c, TowerElement) else complex(c))
        for r in np.roots(coeffs[::-1]):
            out.append(emb + [complex(r)])
    return out
