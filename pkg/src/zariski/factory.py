"""Explicit members of the families of cubic-plus-contact-curve pairs.

A member of type (b, m) with class order mu is built on a catalog cubic F:
choose 3n distinct points whose group sum has exact order mu, then solve
for a degree-b form meeting F with multiplicity m at each of them.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb
from pathlib import Path
from typing import Sequence

from zariski.core.homog import HomogPoly, monomials
from zariski.core.linalg import nullspace, rank
from zariski.core.parse import parse_poly
from zariski.errors import (
    CatalogError,
    ClassConditionFails,
    InsufficientCatalog,
    InvalidFamilySpec,
    NonReduced,
    RetriesExceeded,
    SmoothingRetriesExceeded,
    ZariskiError,
)
from zariski.geometry import ProjPoint, is_smooth, make_point, same_point
from zariski.picard import (
    CubicWithOrigin,
    InvariantReport,
    add,
    analyze,
    is_origin,
    neg,
    point_order,
    scalar_mul,
    vanishing_rows,
)

TORSION_BOUND = 12
SMOOTHING_ATTEMPTS = 64
COEFF_HEIGHT = 10


@dataclass(frozen=True)
class FamilySpec:
    b: int
    m: int
    n: int
    mu: int

    def __post_init__(self):
        if min(self.b, self.m, self.n, self.mu) < 1:
            raise InvalidFamilySpec("b, m, n, mu must be positive")
        if self.b != self.m * self.n:
            raise InvalidFamilySpec(f"b = {self.b} is not m*n = {self.m * self.n}")
        if self.m % self.mu:
            raise InvalidFamilySpec(f"mu = {self.mu} does not divide m = {self.m}")
        if self.b < 4:
            raise InvalidFamilySpec(f"b = {self.b} < 4")

    @property
    def nu(self) -> int:
        return self.m // self.mu

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.b, self.m, self.n, self.mu)


@dataclass
class CurveCatalogEntry:
    label: str
    F: HomogPoly
    O: ProjPoint
    points: list[tuple[ProjPoint, int | None]] = field(default_factory=list)
    _E: CubicWithOrigin | None = field(default=None, repr=False)

    @property
    def cubic(self) -> CubicWithOrigin:
        if self._E is None:
            self._E = CubicWithOrigin(self.F, self.O)
        return self._E

    @property
    def torsion(self) -> list[tuple[ProjPoint, int]]:
        return [(p, k) for p, k in self.points if k is not None]

    @property
    def free_points(self) -> list[ProjPoint]:
        return [p for p, k in self.points if k is None]

    def verify(self) -> None:
        E = self.cubic
        for P, k in self.points:
            if not E.on_curve(P):
                raise CatalogError(f"{self.label}: {P} is not on F")
            found = point_order(E, P, TORSION_BOUND)
            if found != k:
                want = "infinite" if k is None else k
                raise CatalogError(f"{self.label}: {P} has order {found}, catalog says {want}")


def _point(text: str) -> ProjPoint:
    parts = text.split()
    if len(parts) != 3:
        raise CatalogError(f"bad point {text!r}")
    try:
        return make_point([Fraction(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"bad point {text!r}") from exc


def parse_catalog(text: str, verify: bool = True) -> list[CurveCatalogEntry]:
    entries: list[CurveCatalogEntry] = []
    cur: dict | None = None

    def close():
        if cur is None:
            return
        if "F" not in cur or "O" not in cur:
            raise CatalogError(f"entry {cur['label']} needs F and O")
        e = CurveCatalogEntry(cur["label"], cur["F"], cur["O"], cur["points"])
        if verify:
            e.verify()
        entries.append(e)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            close()
            cur = {"label": line[1:-1].strip(), "points": []}
            continue
        if cur is None:
            raise CatalogError(f"line {lineno}: data before the first [label]")
        if line.startswith("F") and "=" in line:
            try:
                cur["F"] = parse_poly(line.split("=", 1)[1])
            except ZariskiError as exc:
                raise CatalogError(f"line {lineno}: {exc}") from exc
        elif line.startswith("O") and "=" in line:
            cur["O"] = _point(line.split("=", 1)[1])
        elif line.startswith("point"):
            body, _, order = line[len("point"):].partition("order")
            order = order.strip()
            if not order:
                raise CatalogError(f"line {lineno}: missing order")
            k = None if order == "inf" else int(order)
            cur["points"].append((_point(body), k))
        else:
            raise CatalogError(f"line {lineno}: cannot parse {raw!r}")
    close()
    if not entries:
        raise CatalogError("catalog is empty")
    return entries


def load_catalog(path: str | Path | None = None, verify: bool = True) -> list[CurveCatalogEntry]:
    if path is None:
        text = resources.files("zariski.data").joinpath("catalog.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_catalog(text, verify)


# -- configurations ------------------------------------------------------------

def _torsion_point(entry: CurveCatalogEntry, order: int) -> ProjPoint | None:
    E = entry.cubic
    if order == 1:
        return E.O
    for P, k in entry.torsion:
        if k % order == 0:
            return scalar_mul(E, k // order, P)
    return None


def _torsion_group(entry: CurveCatalogEntry) -> list[ProjPoint]:
    """All points generated by the catalog torsion points."""
    E = entry.cubic
    group = [E.O]
    for P, _ in entry.torsion:
        frontier = list(group)
        while frontier:
            nxt = []
            for Q in frontier:
                R = add(E, Q, P)
                if not any(same_point(R, S) for S in group):
                    group.append(R)
                    nxt.append(R)
            frontier = nxt
    return group


def _distinct(points: Sequence[ProjPoint]) -> bool:
    return all(not same_point(p, q) for p, q in itertools.combinations(points, 2))


def _sum(E: CubicWithOrigin, points: Sequence[ProjPoint]) -> ProjPoint:
    s = E.O
    for P in points:
        s = add(E, s, P)
    return s


def _height(P: ProjPoint) -> int:
    return max(max(abs(c.numerator), c.denominator) for c in P.as_fractions())


def _order_is(E: CubicWithOrigin, P: ProjPoint, mu: int) -> bool:
    return point_order(E, P, mu) == mu


def pick_configuration(entry: CurveCatalogEntry, spec: FamilySpec, seed: int = 0,
                       retries: int = 32) -> list[ProjPoint]:
    """3n distinct points on F whose sum has exact order mu."""
    E = entry.cubic
    k = 3 * spec.n
    target = _torsion_point(entry, spec.mu)
    if target is None:
        raise InsufficientCatalog(f"{entry.label} has no point of order {spec.mu}")
    torsion = _torsion_group(entry)
    if not entry.free_points:
        if len(torsion) < k:
            raise InsufficientCatalog(f"{entry.label} has {len(torsion)} points, need {k}")
        for combo in itertools.combinations(torsion, k):
            if _order_is(E, _sum(E, combo), spec.mu):
                return list(combo)
        raise InsufficientCatalog(f"no {k} torsion points on {entry.label} sum to order {spec.mu}")
    # Small translates j*N + t of a free point N.  Points come in pairs
    # {A, -A}; one or two singles absorb the target through the last point,
    # which then is itself a small translate instead of a high-height sum.
    N = entry.free_points[0]
    pool: list[ProjPoint] = []
    for j in (1, 2, 3):
        base = scalar_mul(E, j, N)
        pool.extend(add(E, base, t) for t in torsion)
    pool.sort(key=_height)
    singles = 1 if k % 2 == 0 else 2
    npairs = (k - 1 - singles) // 2
    rng = random.Random(seed)
    best = None
    for attempt in range(retries):
        picks = pool[: npairs + singles] if attempt == 0 else rng.sample(pool, npairs + singles)
        chosen = []
        for A in picks[:npairs]:
            chosen += [A, neg(E, A)]
        chosen += picks[npairs:]
        last = add(E, target, neg(E, _sum(E, chosen)))
        pts = chosen + [last]
        if _distinct(pts):
            h = max(_height(P) for P in pts)
            if best is None or h < best[0]:
                best = (h, pts)
    if best is not None:
        return best[1]
    raise RetriesExceeded(f"no distinct configuration in {retries} attempts")


# -- interpolation ---------------------------------------------------------------

def _poly_from_vector(b: int, vec: Sequence[Fraction]) -> HomogPoly:
    return HomogPoly(dict(zip(monomials(b), vec)), b).primitive()


def _multiples_of_F(F: HomogPoly, b: int) -> list[list[Fraction]]:
    if b < 3:
        return []
    out = []
    for e in monomials(b - 3):
        prod = F * HomogPoly({e: 1}, b - 3)
        out.append([Fraction(prod.coeff(x)) for x in monomials(b)])
    return out


def contact_space(F: HomogPoly, points: Sequence[ProjPoint], m: int, b: int) -> list[list[Fraction]]:
    """Basis of degree-b forms vanishing to order m along F at each point."""
    rows = []
    for P in points:
        rows.extend(vanishing_rows(F, P, m, b))
    return nullspace(rows, comb(b + 2, 2))


def interpolate_contact(entry: CurveCatalogEntry, points: Sequence[ProjPoint], spec: FamilySpec,
                        seed: int = 0, attempts: int = SMOOTHING_ATTEMPTS) -> HomogPoly:
    """A smooth degree-b form B with B|_F = m * (sum of the points)."""
    F, b = entry.F, spec.b
    kernel = contact_space(F, points, spec.m, b)
    ideal = _multiples_of_F(F, b)
    base_rank = rank(ideal, comb(b + 2, 2))
    genuine = None
    for v in kernel:
        if rank(ideal + [v], len(v)) > base_rank:
            genuine = v
            break
    if genuine is None:
        raise ClassConditionFails("only multiples of F meet the contact conditions")
    B0 = _poly_from_vector(b, genuine)
    rng = random.Random(seed)
    for attempt in range(attempts):
        B = B0
        if attempt and b >= 3:
            G = HomogPoly({e: rng.randint(-COEFF_HEIGHT, COEFF_HEIGHT) for e in monomials(b - 3)}, b - 3)
            B = (B0 + F * G).primitive() if G else B0
        try:
            if is_smooth(B, seed):
                return B
        except NonReduced:
            continue
    raise SmoothingRetriesExceeded(f"no smooth member in {attempts} attempts")


# -- generation ------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratedPair:
    spec: FamilySpec
    entry: str
    F: HomogPoly
    B: HomogPoly
    points: tuple[ProjPoint, ...]
    report: InvariantReport | None = None


def _entries_for(catalog: Sequence[CurveCatalogEntry], specs: Sequence[FamilySpec]) -> list[CurveCatalogEntry]:
    return [e for e in catalog if all(_torsion_point(e, s.mu) is not None for s in specs)]


def generate(spec: FamilySpec, catalog: Sequence[CurveCatalogEntry] | None = None,
             seed: int = 0, entry: CurveCatalogEntry | None = None, verify: bool = True) -> GeneratedPair:
    """One member of the family of ``spec``, analyzed when ``verify``."""
    catalog = load_catalog() if catalog is None else catalog
    candidates = [entry] if entry is not None else _entries_for(catalog, [spec])
    last_exc: Exception | None = None
    for e in candidates:
        try:
            pts = pick_configuration(e, spec, seed)
        except (InsufficientCatalog, RetriesExceeded) as exc:
            last_exc = exc
            continue
        B = interpolate_contact(e, pts, spec, seed)
        report = analyze(e.F, B, seed) if verify else None
        if report is not None and (report.family != spec.as_tuple() or report.splitting_number != spec.nu):
            raise ClassConditionFails(
                f"generated pair analyzes to family {report.family}, nu {report.splitting_number}"
            )
        return GeneratedPair(spec, e.label, e.F, B, tuple(pts), report)
    raise InsufficientCatalog(str(last_exc) if last_exc else "no catalog entry fits the spec")


def generate_pair(spec1: FamilySpec, spec2: FamilySpec,
                  catalog: Sequence[CurveCatalogEntry] | None = None,
                  seed: int = 0) -> tuple[GeneratedPair, GeneratedPair]:
    """Two analyzed members with equal combinatorics and, if mu differs, different nu."""
    if (spec1.b, spec1.m, spec1.n) != (spec2.b, spec2.m, spec2.n):
        raise InvalidFamilySpec("specs must share (b, m, n)")
    catalog = load_catalog() if catalog is None else catalog
    shared = None
    for e in _entries_for(catalog, [spec1, spec2]):
        try:
            pick_configuration(e, spec1, seed)
            pick_configuration(e, spec2, seed)
        except (InsufficientCatalog, RetriesExceeded):
            continue
        shared = e
        break
    p1 = generate(spec1, catalog, seed, entry=shared)
    p2 = generate(spec2, catalog, seed, entry=shared)
    assert p1.report.signature == p2.report.signature
    assert p1.report.h1_total == p2.report.h1_total
    return p1, p2
