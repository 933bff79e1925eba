"""First homology of plane-curve complements and the meridian quotient Z_m.

H_1 of the complement of a curve with components of degrees d_1..d_r is
Z^r modulo the single relation sum d_i e_i = 0.  Quotienting further by the
classes sum_b I_{P,b} m_b of the points P of F∩B gives the cyclic group in
which the linking invariants live.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from zariski.errors import IncompleteIntersections, NotADivisor, NotCyclic

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def int_det(m: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    D = [list(map(int, r)) for r in a]
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        for M in (D, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(src, dst, k):
        for M in (D, V):
            for r in M:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: the pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
        t += 1
    return SmithForm(D, U, V)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Z^rank modulo the row span of ``relations``."""

    rank: int
    relations: tuple[tuple[int, ...], ...]
    smith: SmithForm = field(compare=False, repr=False)

    @classmethod
    def build(cls, rank: int, relations: Sequence[Sequence[int]]) -> "AbelianGroupPresentation":
        rel = tuple(tuple(int(x) for x in r) for r in relations) or (tuple([0] * rank),)
        return cls(rank, rel, smith_normal_form([list(r) for r in rel]))

    @property
    def invariant_factors(self) -> list[int]:
        """Diagonal entries d_i (0 = free summand), padded to the number of generators."""
        diag = self.smith.diagonal
        out = [d for d in diag]
        out += [0] * (self.rank - len(out))
        return out

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d > 1]

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def h1_complement(degrees: Sequence[int]) -> AbelianGroupPresentation:
    """H_1(P^2 minus a curve) from the degrees of its irreducible components."""
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError("need at least one component of positive degree")
    return AbelianGroupPresentation.build(len(degrees), [list(degrees)])


@dataclass(frozen=True)
class Contact:
    """Per-component multiplicities I_{P,b} at one point P, repeated ``count`` times."""

    multiplicities: tuple[int, ...]
    count: int = 1


@dataclass(frozen=True)
class MeridianQuotient:
    """Z_m = H_1(P^2 - B) / Ind_F with the image of each component meridian."""

    order: int
    meridian_images: tuple[int, ...]
    presentation: AbelianGroupPresentation = field(compare=False, repr=False)
    gcd_of_contacts: int = 0

    @property
    def gcd_discrepancy(self) -> bool:
        """True when gcd of all I_P differs from the quotient order (gcd with deg B)."""
        return self.gcd_of_contacts != self.order


def meridian_quotient(b_degrees: Sequence[int], contacts: Sequence[Contact],
                      f_degree: int | None = None) -> MeridianQuotient:
    """Quotient of H_1(P^2 - B) by the meridian classes of the points of F∩B.

    With ``f_degree`` the contact data is checked against Bezout first.
    """
    r = len(b_degrees)
    for c in contacts:
        if len(c.multiplicities) != r:
            raise ValueError("each contact needs one multiplicity per component of B")
    if f_degree is not None:
        for k in range(r):
            total = sum(c.multiplicities[k] * c.count for c in contacts)
            if total != f_degree * b_degrees[k]:
                raise IncompleteIntersections(
                    f"component {k}: contacts sum to {total}, Bezout requires {f_degree * b_degrees[k]}"
                )
    rows = [list(b_degrees)] + [list(c.multiplicities) for c in contacts]
    pres = AbelianGroupPresentation.build(r, rows)
    if pres.free_rank:
        raise NotCyclic("quotient is infinite")
    if len(pres.torsion) > 1:
        raise NotCyclic(f"quotient {pres.describe()} is not cyclic")
    m = pres.order
    # image of e_k: the generator of Z_m is the image of the basis vector
    # where V^{-1} sends it; read off from V's inverse row for the last factor.
    images = _meridian_images(pres, m)
    g = 0
    for c in contacts:
        for x in c.multiplicities:
            g = gcd(g, x)
    return MeridianQuotient(m, images, pres, g)


def _meridian_images(pres: AbelianGroupPresentation, m: int) -> tuple[int, ...]:
    if m == 1:
        return tuple(0 for _ in range(pres.rank))
    # Z^r / rows ~ (+) Z/d_i via x -> V^{-1} x; the cyclic factor is the one with d_i = m.
    V = pres.smith.V
    inv = _unimodular_inverse(V)
    idx = pres.invariant_factors.index(m)
    return tuple(inv[idx][k] % m for k in range(pres.rank))


def _unimodular_inverse(V: Matrix) -> Matrix:
    from fractions import Fraction

    n = len(V)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [[int(x) for x in row[n:]] for row in a]


@dataclass(frozen=True)
class SubgroupOfZm:
    """The subgroup <generator> of Z_modulus, generator a divisor of modulus."""

    modulus: int
    generator: int

    @property
    def index(self) -> int:
        return gcd(self.modulus, self.generator)

    @property
    def order(self) -> int:
        return self.modulus // self.index

    def elements(self) -> list[int]:
        return sorted({(k * self.generator) % self.modulus for k in range(self.modulus)})

    def as_dict(self) -> dict:
        return {"modulus": self.modulus, "generator": self.generator % self.modulus,
                "index": self.index, "order": self.order}


def linking_set(mq: MeridianQuotient | int, mu: int) -> SubgroupOfZm:
    """The linking set of F: the subgroup of Z_m of index m/mu, namely <m/mu>."""
    m = mq.order if isinstance(mq, MeridianQuotient) else int(mq)
    if mu < 1 or m % mu:
        raise NotADivisor(f"mu = {mu} does not divide m = {m}")
    return SubgroupOfZm(m, m // mu)
