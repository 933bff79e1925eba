"""Divisor classes on a smooth plane cubic and the splitting number.

Two independent routes decide whether a divisor D on F with deg D = 3k is
cut out by a plane curve of degree k:

* the chord-tangent group law with an inflection point O as origin, where
  the test is  (+)_P w_P P = O;
* a linear-system count: the forms of degree k vanishing on D (read along
  the local branches of F) must outnumber the multiples F * S_{k-3}.

The second works with points over any tower because its conditions are
linear over Q, so the splitting number uses it whenever the group law
would need a common splitting field.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from zariski import series
from zariski.algebraic import (
    QQ,
    Tower,
    TowerElement,
    coerce,
    common_tower,
    decide_zero,
    extend,
    on_branches,
)
from zariski.core.homog import HomogPoly, hessian, monomials
from zariski.core.linalg import nullspace, rank
from zariski.core.roots import rational_roots
from zariski.core.upoly import UniPoly
from zariski.errors import (
    BranchMismatch,
    NoDivisorWorks,
    NotAnInflection,
    NotSmooth,
    PointNotOnCurve,
    UnsupportedCover,
    UnsupportedDegreePair,
    UnsupportedGenus,
    ZariskiError,
)
from zariski.geometry import (
    CombinatorialSignature,
    IntersectionRecord,
    ProjPoint,
    intersect,
    is_smooth,
    local_mult,
    make_point,
    same_point,
    signature,
)
from zariski.homology import (
    Contact,
    SubgroupOfZm,
    h1_complement,
    linking_set,
    meridian_quotient,
)


def _cross(a: Sequence, b: Sequence) -> list:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _lift_coords(points: Sequence[ProjPoint]) -> list[tuple]:
    t = common_tower(*points)
    return [tuple(p.coerce(t).coords) if t is not QQ else tuple(p.coords) for p in points]


class CubicWithOrigin:
    """A smooth plane cubic together with an inflection point O."""

    def __init__(self, F: HomogPoly, O: ProjPoint | Sequence, check_smooth: bool = True):
        if F.degree != 3:
            raise UnsupportedGenus(f"expected a cubic, got degree {F.degree}")
        if check_smooth and not is_smooth(F):
            raise NotSmooth("the cubic is singular")
        O = O if isinstance(O, ProjPoint) else make_point(O)
        if not decide_zero(F(*O.coords)):
            raise PointNotOnCurve(f"{O} is not on F")
        if not decide_zero(hessian(F)(*O.coords)):
            raise NotAnInflection(f"Hessian does not vanish at {O}")
        if local_mult(F, tangent_line(F, O), O) != 3:
            raise NotAnInflection(f"tangent at {O} is not a flex tangent")
        self.F = F
        self.O = O

    def on_curve(self, P: ProjPoint) -> bool:
        return decide_zero(self.F(*P.coords))

    def __repr__(self) -> str:
        return f"CubicWithOrigin({self.F}, O={self.O})"


def tangent_line(F: HomogPoly, P: ProjPoint) -> HomogPoly:
    """The tangent line at P; it may have tower coefficients."""
    g = [F.partial(v)(*P.coords) for v in range(3)]
    return HomogPoly({(1, 0, 0): g[0], (0, 1, 0): g[1], (0, 0, 1): g[2]}, 1)


def third_point(F: HomogPoly, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """The residual point R with P + Q + R the section of F by the line PQ.

    When P = Q the line is the tangent at P.  The binary cubic F(sP + tQ)
    has the known roots at the ends; the third is read off linearly.
    """
    p, q = _lift_coords([P, Q])
    if not same_point(P, Q):
        c = F.restrict_to_line(p, q)
        # F(sP + tQ) = s t (c1 s + c2 t)
        s, t = c[2], -c[1]
        if decide_zero(s) and decide_zero(t):
            raise NotSmooth("a line lies on F")
        return make_point([s * p[i] + t * q[i] for i in range(3)])
    g = [F.partial(v)(*p) for v in range(3)]
    qq = None
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        cand = _cross(g, e)
        if not all(decide_zero(x) for x in _cross(cand, p)):
            qq = cand
            break
    if qq is None:
        raise NotSmooth(f"F is singular at {P}")
    c = F.restrict_to_line(p, qq)
    # F(sP + tQ') = t^2 (c2 s + c3 t)
    s, t = c[3], -c[2]
    if decide_zero(s) and decide_zero(t):
        raise NotSmooth("a line lies on F")
    return make_point([s * p[i] + t * qq[i] for i in range(3)])


def _check(E: CubicWithOrigin, *pts: ProjPoint) -> None:
    for P in pts:
        if not E.on_curve(P):
            raise PointNotOnCurve(f"{P} is not on F")


def add(E: CubicWithOrigin, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """P (+) Q = O * (P * Q)."""
    _check(E, P, Q)
    return third_point(E.F, E.O, third_point(E.F, P, Q))


def neg(E: CubicWithOrigin, P: ProjPoint) -> ProjPoint:
    _check(E, P)
    return third_point(E.F, E.O, P)


def scalar_mul(E: CubicWithOrigin, k: int, P: ProjPoint) -> ProjPoint:
    if k < 0:
        return scalar_mul(E, -k, neg(E, P))
    _check(E, P)
    acc = E.O
    base = P
    while k:
        if k & 1:
            acc = add(E, acc, base)
        k >>= 1
        if k:
            base = add(E, base, base)
    return acc


def is_origin(E: CubicWithOrigin, P: ProjPoint) -> bool:
    return same_point(P, E.O)


def point_order(E: CubicWithOrigin, P: ProjPoint, bound: int = 64) -> int | None:
    """Order of P by repeated addition, or None if larger than ``bound``."""
    acc = P
    for k in range(1, bound + 1):
        if is_origin(E, acc):
            return k
        acc = add(E, acc, P)
    return None


def weighted_sum(E: CubicWithOrigin, points: Sequence[tuple[ProjPoint, int]]) -> ProjPoint:
    s = E.O
    for P, w in points:
        s = add(E, s, scalar_mul(E, w, P))
    return s


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def class_order(E: CubicWithOrigin, points: Sequence[tuple[ProjPoint, int]], m: int) -> int:
    """Smallest divisor d of m with d * ((+) w_P P) = O."""
    _check(E, *(P for P, _ in points))
    s = weighted_sum(E, points)
    for d in divisors(m):
        if is_origin(E, scalar_mul(E, d, s)):
            return d
    raise NoDivisorWorks(f"no divisor of {m} kills the class {s}")


def find_inflection(F: HomogPoly, seed: int = 0) -> ProjPoint:
    """An inflection point, rational if one exists, else in the lowest tower."""
    if F.degree != 3:
        raise UnsupportedGenus(f"expected a cubic, got degree {F.degree}")
    recs = intersect(F, hessian(F), seed=seed, verify=False)
    rational = [r.point for r in recs if r.point.is_rational()]
    if rational:
        # canonical and projection independent: lowest chart, then coordinates
        return min(rational, key=lambda p: (p.chart, p.as_fractions()))
    recs = sorted(recs, key=lambda r: (r.count, r.factor, str(r.point)))
    return recs[0].point


def cubic_with_inflection(F: HomogPoly, seed: int = 0) -> CubicWithOrigin:
    return CubicWithOrigin(F, find_inflection(F, seed), check_smooth=False)


def all_roots(p: UniPoly) -> list[tuple[Tower, list]]:
    """Every root of ``p`` (with multiplicity) in a splitting tower, per branch."""

    def run(tower: Tower, poly: UniPoly):
        roots = []
        poly = UniPoly([coerce(c, tower) for c in poly.coeffs], "t")
        t = tower
        for r in (rational_roots(p) if tower is QQ else []):
            while poly.degree > 0 and decide_zero(poly(r)):
                roots.append(coerce(r, t))
                poly = poly.divmod(UniPoly([-r, 1], "t"))[0]
        while poly.degree > 1:
            t = extend(t, poly)
            a = t.generator()
            poly = UniPoly([coerce(c, t) for c in poly.coeffs], "t")
            roots = [coerce(r, t) for r in roots]
            while poly.degree > 0 and decide_zero(poly(a)):
                roots.append(a)
                poly = poly.divmod(UniPoly([-a, 1], "t"))[0]
        if poly.degree == 1:
            roots.append(-poly[0] / poly[1])
        return [coerce(r, t) for r in roots]

    return on_branches(lambda t: run(t, p), QQ)


def line_section(F: HomogPoly, L: HomogPoly) -> list[list[ProjPoint]]:
    """The deg F points of F on the line L, one list per splitting branch."""
    a = [Fraction(L.coeff(e)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    p0, q0 = nullspace([a], 3)
    c = F.restrict_to_line(p0, q0)
    at_infinity = 0
    while at_infinity < len(c) and decide_zero(c[-1 - at_infinity]):
        at_infinity += 1
    if at_infinity == len(c):
        raise NotSmooth("the line lies on F")
    # F(p0 + t q0) = sum c_i t^i; missing top degrees are roots at q0
    poly = UniPoly(c, "t")
    out = []
    for t, roots in all_roots(poly):
        pts = [make_point([p0[i] + r * q0[i] for i in range(3)]) for r in roots]
        pts += [make_point(q0)] * at_infinity
        out.append([P.coerce(t) if t is not QQ else P for P in pts])
    return out


# -- linear-system criterion -------------------------------------------------

def _flatten(c) -> list[Fraction]:
    if isinstance(c, TowerElement):
        return c.rational_coordinates()
    return [Fraction(c)]


def vanishing_rows(F: HomogPoly, P: ProjPoint, order: int, k: int) -> list[list[Fraction]]:
    """Q-linear conditions on degree-k forms to vanish to ``order`` along F at P
    and at all its conjugates."""
    mons = monomials(k)

    def rows_at(t, pt: ProjPoint):
        pt = make_point(pt.coords)
        branch = series.local_branch(F, pt.coords, pt.chart, order)
        pw = []
        for s in branch:
            tbl = [[1] + [0] * (order - 1)]
            for _ in range(k):
                tbl.append(series.mul(tbl[-1], s, order))
            pw.append(tbl)
        cols = []
        for (i, j, l) in mons:
            ser = series.mul(series.mul(pw[0][i], pw[1][j], order), pw[2][l], order)
            col = []
            for c in ser:
                col.extend(_flatten(_lift_to(c, t)))
            cols.append(col)
        return [list(r) for r in zip(*cols)]

    out = []
    for _, rows in on_branches(rows_at, P.tower, P):
        out.extend(rows)
    return out


def _lift_to(c, tower):
    return coerce(c, tower) if tower is not QQ else c


def cut_by_curve(F: HomogPoly, divisor: Sequence[tuple[ProjPoint, int]], k: int) -> bool:
    """Whether sum w_P P (with all conjugates) is F . G for a form G of degree k.

    Needs sum of w_P * (number of conjugates) = 3k.  A form vanishing on D
    and not divisible by F meets F in exactly D, so D is a section iff the
    vanishing space is larger than F * S_{k-3}.
    """
    rows: list[list[Fraction]] = []
    for P, w in divisor:
        if w > 0:
            rows.extend(vanishing_rows(F, P, w, k))
    n = comb(k + 2, 2)
    multiples = comb(k - 1, 2) if k >= 3 else 0
    return n - rank(rows, n) > multiples


# -- splitting number and report ---------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    signature: CombinatorialSignature
    m: int
    mu: int
    splitting_number: int
    linking_index: int
    linking_set: SubgroupOfZm
    h1_total: tuple[int, ...]
    h1_total_text: str
    family: tuple[int, int, int, int] | None
    gcd_discrepancy: bool = False
    method: str = "linear-system"
    conditions: dict = field(default_factory=lambda: {"C1": True, "C2": True})

    def __post_init__(self):
        assert self.splitting_number * self.mu == self.m
        assert self.linking_index == self.splitting_number == self.linking_set.index

    def as_dict(self) -> dict:
        return {
            "signature": self.signature.as_dict(),
            "signature_text": str(self.signature),
            "m": self.m,
            "mu": self.mu,
            "splitting_number": self.splitting_number,
            "linking_index": self.linking_index,
            "linking_set": self.linking_set.as_dict(),
            "h1_total": list(self.h1_total),
            "h1_total_text": self.h1_total_text,
            "family": list(self.family) if self.family else None,
            "gcd_discrepancy": self.gcd_discrepancy,
            "method": self.method,
            "conditions": dict(self.conditions),
        }


def _contacts(records: Sequence[IntersectionRecord]) -> list[Contact]:
    return [Contact((r.multiplicity,), r.count) for r in records]


def _group_law_origin(F: HomogPoly, records: Sequence[IntersectionRecord]) -> CubicWithOrigin | None:
    """A rational inflection origin when every point is rational, else None."""
    if not all(r.point.is_rational() for r in records):
        return None
    try:
        O = find_inflection(F)
    except ZariskiError:
        return None
    if not O.is_rational():
        return None
    return CubicWithOrigin(F, O, check_smooth=False)


def _nu_candidates(m: int, records: Sequence[IntersectionRecord]) -> list[int]:
    return [d for d in reversed(divisors(m)) if all(r.multiplicity % d == 0 for r in records)]


def splitting_number(F: HomogPoly, B: HomogPoly, seed: int = 0,
                     records: Sequence[IntersectionRecord] | None = None,
                     method: str = "auto", weights: Sequence[int] | None = None,
                     _checked: bool = False) -> tuple[int, int, int]:
    """(nu, mu, m) for the simple cyclic cover of degree m branched along B.

    ``method`` is ``"group-law"``, ``"linear-system"``, ``"both"`` (cross
    check, raises BranchMismatch on disagreement) or ``"auto"``.
    """
    if weights is not None and any(w != 1 for w in weights):
        raise UnsupportedCover("only the simple cyclic cover (all weights 1) is supported")
    if F.degree != 3:
        raise UnsupportedGenus(f"deg F = {F.degree}; only cubics are supported")
    if B.degree == 3:
        raise UnsupportedDegreePair("deg B = deg F = 3 is not supported")
    if not _checked:
        if not is_smooth(F, seed):
            raise NotSmooth("is_smooth: F fails")
        if not is_smooth(B, seed):
            raise NotSmooth("is_smooth: B fails")
    if records is None:
        records = intersect(F, B, seed)
    mq = meridian_quotient([B.degree], _contacts(records), F.degree)
    m = mq.order
    nu, _ = _decide_nu(F, B, m, records, method)
    return nu, m // nu, m


def _decide_nu(F, B, m, records, method) -> tuple[int, str]:
    cands = _nu_candidates(m, records)
    if m == 1:
        return 1, "trivial"  # B itself cuts the whole section
    E = None
    if method in ("auto", "group-law", "both"):
        E = _group_law_origin(F, records)
        if E is None and method != "auto":
            if method == "group-law":
                raise UnsupportedCover("group-law route needs rational points and a rational inflection")
    results = {}
    if E is not None:
        for nu in cands:
            pts = [(r.point, r.multiplicity // nu) for r in records]
            if is_origin(E, weighted_sum(E, pts)):
                results["group-law"] = nu
                break
    if method in ("linear-system", "both") or (method == "auto" and E is None):
        for nu in cands:
            pts = [(r.point, r.multiplicity // nu) for r in records]
            if cut_by_curve(F, pts, B.degree // nu):
                results["linear-system"] = nu
                break
    if len(set(results.values())) > 1:
        raise BranchMismatch(f"group law and linear system disagree: {results}")
    if not results:
        raise NoDivisorWorks(f"no divisor of {m} passes the section test")
    used = "+".join(sorted(results))
    return next(iter(results.values())), used


class _Stages:
    """Tracks the current pipeline step and, optionally, wall time per step."""

    def __init__(self, timings: dict | None):
        self.timings = timings
        self.step = "input"
        self._t = time.perf_counter()

    def enter(self, step: str) -> None:
        now = time.perf_counter()
        if self.timings is not None and self.step != "input":
            self.timings[self.step] = self.timings.get(self.step, 0.0) + now - self._t
        self.step, self._t = step, now


def analyze(F: HomogPoly, B: HomogPoly, seed: int = 0, method: str = "auto",
            timings: dict | None = None) -> InvariantReport:
    """Full invariant report for the pair C = F + B.

    Errors carry ``pipeline_step`` naming the step that failed; ``timings``
    if given collects seconds per step.
    """
    st = _Stages(timings)
    try:
        st.enter("degrees")
        if F.degree != 3:
            raise UnsupportedGenus(f"deg F = {F.degree}; only cubics are supported")
        if B.degree == 3:
            raise UnsupportedDegreePair("deg B = deg F = 3 is not supported")
        st.enter("smoothness")
        if not is_smooth(F, seed):
            raise NotSmooth("is_smooth: F fails")
        if not is_smooth(B, seed):
            raise NotSmooth("is_smooth: B fails")
        st.enter("intersection")
        records = intersect(F, B, seed)
        sig = signature(F, B, seed, records)
        st.enter("meridian-quotient")
        mq = meridian_quotient([B.degree], _contacts(records), F.degree)
        m = mq.order
        st.enter("splitting-number")
        nu, used = _decide_nu(F, B, m, records, method)
        mu = m // nu
        st.enter("linking-set")
        ls = linking_set(mq, mu)
        h1 = h1_complement([B.degree, F.degree])
        fam = _family(B.degree, records, mu)
        report = InvariantReport(
            signature=sig, m=m, mu=mu, splitting_number=nu, linking_index=nu,
            linking_set=ls, h1_total=tuple(h1.invariant_factors), h1_total_text=h1.describe(),
            family=fam, gcd_discrepancy=mq.gcd_discrepancy, method=used,
        )
        st.enter("done")
        return report
    except ZariskiError as exc:
        exc.pipeline_step = getattr(exc, "pipeline_step", st.step)
        raise


def _family(b: int, records: Sequence[IntersectionRecord], mu: int) -> tuple[int, int, int, int] | None:
    mults = {r.multiplicity for r in records}
    if len(mults) != 1:
        return None
    mult = mults.pop()
    if mult < 2:
        return None  # transversal: the cover is trivial, no family is meant
    npts = sum(r.count for r in records)
    if b % mult or npts != 3 * (b // mult):
        return None
    return (b, mult, b // mult, mu)
