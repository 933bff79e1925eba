"""Smoothness, intersection points with multiplicities, and the combinatorial
signature of a pair of plane curves."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from zariski import series
from zariski.algebraic import (
    QQ,
    Tower,
    TowerElement,
    TowerSplit,
    coerce,
    decide_zero,
    on_branches,
)
from zariski.core.homog import HomogPoly
from zariski.core.roots import rational_roots
from zariski.core.upoly import UniPoly, gcd, resultant, squarefree_decomposition
from zariski.errors import (
    CommonComponent,
    FNotSmoothAtP,
    NonReduced,
    NotOnBothCurves,
    ProjectionRetryExceeded,
)

DEFAULT_RETRIES = 16


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2 with coordinates in Q or in a tower.

    Construct through :func:`make_point`, which scales the last nonzero
    coordinate to 1 (this may split a tower).
    """

    coords: tuple

    @property
    def tower(self) -> Tower:
        for c in self.coords:
            if isinstance(c, TowerElement):
                return c.tower
        return QQ

    def is_rational(self) -> bool:
        return all(not isinstance(c, TowerElement) for c in self.coords)

    @property
    def chart(self) -> int:
        """Index of the coordinate that equals 1."""
        for i in (2, 1, 0):
            if not _is_zero(self.coords[i]):
                return i
        raise ValueError("zero vector is not a projective point")

    def tower_values(self):
        return self.coords

    def coerce(self, tower: Tower) -> "ProjPoint":
        return ProjPoint(tuple(coerce(c, tower) for c in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def numeric(self, embedding: Sequence[complex] = ()) -> tuple[complex, ...]:
        return tuple(c.numeric(embedding) if isinstance(c, TowerElement) else complex(c) for c in self.coords)

    def as_fractions(self) -> tuple[Fraction, Fraction, Fraction]:
        if not self.is_rational():
            raise ValueError("point is not rational")
        return tuple(Fraction(c) for c in self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(_fmt(c) for c in self.coords) + "]"


def _fmt(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, TowerElement) else c == 0


def make_point(coords: Sequence) -> ProjPoint:
    """Normalize so that the last nonzero coordinate is 1."""
    cs = [Fraction(c) if isinstance(c, int) else c for c in coords]
    for i in (2, 1, 0):
        if not decide_zero(cs[i]):
            inv = 1 / cs[i]
            out = [c * inv for c in cs]
            out[i] = Fraction(1)
            return ProjPoint(tuple(c if isinstance(c, TowerElement) else Fraction(c) for c in out))
    raise ValueError("zero vector is not a projective point")


def same_point(p: ProjPoint, q: ProjPoint) -> bool:
    """Proportionality test; decides zero divisors by splitting."""
    a, b = p.coords, q.coords
    return all(
        decide_zero(a[i] * b[j] - a[j] * b[i]) for i, j in ((0, 1), (0, 2), (1, 2))
    )


def apply_matrix(m: Sequence[Sequence], p: Sequence) -> list:
    return [m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2] for i in range(3)]


def inverse_matrix(m: Sequence[Sequence]) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in row] for row in m]
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    if det == 0:
        raise ValueError("singular matrix")
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[j][i] = (-1) ** (i + j) * minor / det
    return cof


def matrix_det(m: Sequence[Sequence]) -> Fraction:
    a = m
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def random_unimodular(rng: random.Random, steps: int = 6, bound: int = 2) -> list[list[int]]:
    """Product of random elementary integer matrices (determinant +-1)."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        k = rng.choice([c for c in range(-bound, bound + 1) if c])
        for row in m:
            row[j] += k * row[i]
    perm = list(range(3))
    rng.shuffle(perm)
    m = [[row[p] for p in perm] for row in m]
    if rng.random() < 0.5:
        m = [[-x for x in row] for row in m]
    return m


# -- elimination helpers ----------------------------------------------------


def _eliminant(F: HomogPoly, B: HomogPoly) -> UniPoly:
    """Res_z(F, B) with y = 1, as a univariate polynomial in x over Z."""
    return resultant(F.as_poly_in(2, 1), B.as_poly_in(2, 1))


def _fiber_poly(F: HomogPoly, x, y) -> UniPoly:
    """F(x, y, z) as a univariate polynomial in z."""
    d = F.degree
    px = [1]
    py = [1]
    for _ in range(d):
        px.append(px[-1] * x)
        py.append(py[-1] * y)
    coeffs: list = [0] * (d + 1)
    for (i, j, k), c in F.terms.items():
        coeffs[k] = coeffs[k] + c * (px[i] * py[j])
    return UniPoly(coeffs, "z")


def _as_rational_tower_poly(p: UniPoly) -> UniPoly:
    return UniPoly([Fraction(c) for c in p.coeffs], "t")


def _centre_off(F: HomogPoly) -> bool:
    """True iff [0:0:1] is not on F, i.e. F has full degree in z."""
    return F.coeff((0, 0, F.degree)) != 0


# -- public operations -------------------------------------------------------


def is_squarefree_form(F: HomogPoly, seed: int = 0, attempts: int = 8) -> bool:
    """A form is reduced iff its restriction to a generic line has distinct roots."""
    if F.degree <= 1:
        return bool(F)
    rng = random.Random(seed)
    for _ in range(attempts):
        p = [rng.randint(-20, 20) for _ in range(3)]
        q = [rng.randint(-20, 20) for _ in range(3)]
        coeffs = F.restrict_to_line(p, q)
        f = UniPoly(coeffs)
        if f.degree < F.degree:
            continue
        if resultant(f, f.derivative()) != 0:
            return True
    return False


def is_smooth(F: HomogPoly, seed: int = 0, retries: int = DEFAULT_RETRIES) -> bool:
    """True iff the three partial derivatives have no common projective zero."""
    if F.is_zero():
        raise ValueError("the zero form does not define a curve")
    if F.degree <= 1:
        return True
    if not is_squarefree_form(F, seed):
        raise NonReduced(f"{F} has a repeated factor")
    F = F.primitive()
    rng = random.Random(seed)
    for attempt in range(retries):
        m = _random_projection(rng, attempt)
        G = F.transform(m)
        parts = [G.partial(v) for v in range(3)]
        gx, gy, gz = parts
        d = F.degree - 1
        if any(p.coeff((0, 0, d)) == 0 for p in parts if p):
            continue
        r1 = _eliminant(gx, gy)
        r2 = _eliminant(gx, gz)
        if not r1 or not r2:
            # two partials share a component, which meets the third partial
            return False
        # y = 0 candidates: only the point [1:0:z] can lie over (1:0)
        deficit1 = d * d - r1.degree
        deficit2 = d * d - r2.degree
        if deficit1 > 0 and deficit2 > 0:
            if _common_zero_in_fiber(parts, Fraction(1), Fraction(0)):
                return False
        g = gcd(_as_rational_tower_poly(r1), _as_rational_tower_poly(r2))
        if g.degree < 1:
            return True
        singular = False
        rest = g
        for root in rational_roots(g):
            singular = singular or _common_zero_in_fiber(parts, root, Fraction(1))
            rest = rest.divmod(UniPoly([-root, 1], "t"))[0]
        if rest.degree >= 1:
            tower = Tower(QQ, rest.monic(), "a1")
            for _, hit in on_branches(
                lambda t: _common_zero_in_fiber(parts, t.generator(), 1), tower
            ):
                singular = singular or hit
        return not singular
    raise ProjectionRetryExceeded("no admissible projection found while testing smoothness")


def _common_zero_in_fiber(parts: Sequence[HomogPoly], x, y) -> bool:
    polys = [_fiber_poly(p, x, y) for p in parts if p]
    g = polys[0]
    for p in polys[1:]:
        g = gcd(g, p)
    return g.degree >= 1


def _random_projection(rng: random.Random, attempt: int = 0) -> list[list[int]]:
    """Determinant-one shear sending the projection centre [0:0:1] to [a:b:1]."""
    bound = 6 + 6 * attempt
    a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
    c = rng.randint(-3, 3)
    return [[1, 0, a], [c, 1, b], [0, 0, 1]]


@dataclass(frozen=True)
class IntersectionRecord:
    """A Galois-stable batch of ``count`` points of F∩B sharing multiplicity I_P.

    ``point`` has coordinates in a tower of degree ``count``; when it is
    rational, ``count`` is 1.
    """

    point: ProjPoint
    multiplicity: int
    count: int = 1
    factor: str = field(default="", compare=False)

    @property
    def tower(self) -> Tower:
        return self.point.tower

    def expanded(self) -> list[int]:
        return [self.multiplicity] * self.count


@dataclass(frozen=True)
class CombinatorialSignature:
    deg_f: int
    deg_b: int
    multiplicities: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"deg_F": self.deg_f, "deg_B": self.deg_b, "multiplicities": list(self.multiplicities)}

    def __str__(self) -> str:
        counts: dict[int, int] = {}
        for m in self.multiplicities:
            counts[m] = counts.get(m, 0) + 1
        body = ", ".join(f"{m}x{c}" if c > 1 else str(m) for m, c in sorted(counts.items()))
        return f"({self.deg_f}, {self.deg_b}, {{{body}}})"


def check_coprime(F: HomogPoly, B: HomogPoly, seed: int = 0) -> None:
    rng = random.Random(seed ^ 0x5EED)
    for _ in range(4):
        m = _random_projection(rng, 2)
        Fm, Bm = F.transform(m), B.transform(m)
        if not _centre_off(Fm) or not _centre_off(Bm):
            continue
        if _eliminant(Fm, Bm):
            return
        raise CommonComponent(f"{F} and {B} share a component")
    raise ProjectionRetryExceeded("no projection centre off both curves")


def intersect(F: HomogPoly, B: HomogPoly, seed: int = 0, retries: int = DEFAULT_RETRIES,
              verify: bool = True) -> list[IntersectionRecord]:
    """All points of F∩B over the algebraic closure, with multiplicities.

    A random shear moves the projection centre [0:0:1] to a generic
    position; multiplicities are root multiplicities of Res_z(F, B).  The
    projection is accepted only if each eliminant root lifts to exactly
    one point.  With ``verify`` every multiplicity is re-derived by
    :func:`local_mult` on the original curves.
    """
    F0, B0 = F, B
    F, B = F.primitive(), B.primitive()
    check_coprime(F, B, seed)
    rng = random.Random(seed)
    total = F.degree * B.degree
    for attempt in range(retries):
        m = _random_projection(rng, attempt)
        Fm, Bm = F.transform(m), B.transform(m)
        if not _centre_off(Fm) or not _centre_off(Bm):
            continue
        res = _eliminant(Fm, Bm)
        if not res:
            raise CommonComponent(f"{F} and {B} share a component")
        records = _lift_eliminant(Fm, Bm, res, total, m)
        if records is None:
            continue
        if sum(r.multiplicity * r.count for r in records) != total:
            continue
        if verify:
            for r in records:
                for _, mult in on_branches(lambda t, p: local_mult(F0, B0, p), r.point.tower, r.point):
                    if mult != r.multiplicity:
                        raise AssertionError(
                            f"eliminant multiplicity {r.multiplicity} disagrees with local "
                            f"multiplicity {mult} at {r.point}"
                        )
        return records
    raise ProjectionRetryExceeded(f"no valid projection in {retries} attempts")


def _lift_eliminant(Fm, Bm, res: UniPoly, total: int, m) -> list[IntersectionRecord] | None:
    records: list[IntersectionRecord] = []
    res = _as_rational_tower_poly(res)
    y_mult = total - res.degree
    for idx, (g, k) in enumerate(squarefree_decomposition(res)):
        rest = g
        for root in rational_roots(g):
            z = _fiber_root(Fm, Bm, root, Fraction(1))
            if z is None:
                return None
            pt = make_point(apply_matrix(m, [root, Fraction(1), z]))
            records.append(IntersectionRecord(pt, k, 1, f"f{idx}"))
            rest = rest.divmod(UniPoly([-root, 1], "t"))[0]
        if rest.degree >= 1:
            tower = Tower(QQ, rest.monic(), "a1")

            def lift(t: Tower):
                a = t.generator()
                z = _fiber_root(Fm, Bm, a, 1)
                if z is None:
                    return None
                return make_point(apply_matrix(m, [a, 1, z]))

            for t, pt in on_branches(lift, tower):
                if pt is None:
                    return None
                records.append(IntersectionRecord(pt, k, t.degree, f"f{idx}"))
    if y_mult > 0:
        z = _fiber_root(Fm, Bm, Fraction(1), Fraction(0))
        if z is None:
            return None
        pt = make_point(apply_matrix(m, [Fraction(1), Fraction(0), z]))
        records.append(IntersectionRecord(pt, y_mult, 1, "y"))
    return records


def _fiber_root(Fm: HomogPoly, Bm: HomogPoly, x, y):
    """The unique common z-root over (x, y), or None if the fiber is not a single point."""
    g = gcd(_fiber_poly(Fm, x, y), _fiber_poly(Bm, x, y))
    if g.degree != 1:
        return None
    return -g[0]


def local_mult(F: HomogPoly, B: HomogPoly, P: ProjPoint) -> int:
    """Intersection multiplicity at P as the u-adic valuation of B along the branch of F."""
    P = P if isinstance(P, ProjPoint) else make_point(P)
    if not decide_zero(F(*P.coords)) or not decide_zero(B(*P.coords)):
        raise NotOnBothCurves(f"{P} is not on both curves")
    P = make_point(P.coords)
    n = F.degree * B.degree + 1
    branch = series.local_branch(F, P.coords, P.chart, n)
    v = series.valuation(series.evaluate(B, branch, n))
    if v is None:
        raise CommonComponent(f"B contains the branch of F through {P}")
    return v


def signature(F: HomogPoly, B: HomogPoly, seed: int = 0,
              records: list[IntersectionRecord] | None = None) -> CombinatorialSignature:
    if records is None:
        records = intersect(F, B, seed)
    mults = sorted(m for r in records for m in r.expanded())
    return CombinatorialSignature(F.degree, B.degree, tuple(mults))
