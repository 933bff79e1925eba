"""Random smooth cubics with known rational points, shared by the test modules."""
import random
from fractions import Fraction

from zariski.core import parse_poly
from zariski.core.homog import HomogPoly, monomials
from zariski.core.linalg import nullspace
from zariski.geometry import apply_matrix, inverse_matrix, make_point, random_unimodular
from zariski.picard import CubicWithOrigin, add, neg, scalar_mul


def random_cubic(rng: random.Random):
    """A smooth cubic in a random frame with two rational points G1, G2.

    Start from y^2 = x^3 + a x + b through two chosen affine points, then move
    everything by a random unimodular change of coordinates.
    """
    while True:
        x1, x2 = rng.sample(range(-4, 5), 2)
        y1, y2 = rng.randint(-5, 5), rng.randint(-5, 5)
        # a x + b = y^2 - x^3 at both points
        r1, r2 = y1 * y1 - x1 ** 3, y2 * y2 - x2 ** 3
        a = Fraction(r1 - r2, x1 - x2)
        b = r1 - a * x1
        if 4 * a ** 3 + 27 * b ** 2 == 0:
            continue
        W = parse_poly(f"y^2*z - x^3 - ({a})*x*z^2 - ({b})*z^3")
        M = random_unimodular(rng, steps=4, bound=1)
        Mi = inverse_matrix(M)
        F = W.transform(M)

        def move(c):
            return make_point(apply_matrix(Mi, c))

        return CubicWithOrigin(F, move([0, 1, 0])), [move([x1, y1, 1]), move([x2, y2, 1])]


def small_points(E, gens, k=2):
    pts = []
    for g in gens:
        for j in range(1, k + 1):
            q = scalar_mul(E, j, g)
            pts.append(q)
            pts.append(neg(E, q))
    pts.append(add(E, gens[0], gens[1]))
    return pts


def conic_through(points):
    """The unique conic through five points, or None if it is not unique."""
    rows = []
    for p in points:
        x, y, z = p.coords
        rows.append([x ** e[0] * y ** e[1] * z ** e[2] for e in monomials(2)])
    basis = nullspace(rows, 6)
    if len(basis) != 1:
        return None
    return HomogPoly.from_coeff_vector(2, basis[0])
