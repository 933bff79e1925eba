from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.core import (
    HomogPoly,
    UniPoly,
    gcd,
    parse_poly,
    partial_derivative,
    read_poly,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from zariski.core.homog import format_poly, monomials
from zariski.core.linalg import nullspace, rank
from zariski.core.roots import rational_roots
from zariski.core.upoly import det, sylvester_matrix
from zariski.errors import BothZero, NotHomogeneous, PolySyntaxError, ZeroPolynomial

small = st.integers(-6, 6)


def upolys(max_deg=4, nonzero=False):
    s = st.lists(small, min_size=1, max_size=max_deg + 1).map(UniPoly)
    return s.filter(bool) if nonzero else s


def forms(d):
    return st.lists(small, min_size=len(monomials(d)), max_size=len(monomials(d))).map(
        lambda v: HomogPoly.from_coeff_vector(d, v)
    )


# -- parsing ---------------------------------------------------------------

def test_parse_four_terms():
    p = parse_poly("x^3 + y^3 + z^3 - 3*x*y*z")
    assert p.degree == 3 and len(p) == 4
    assert p.coeff((1, 1, 1)) == -3


def test_parse_weierstrass():
    p = parse_poly("y^2*z - x^3 - z^3")
    assert p.degree == 3 and len(p) == 3


def test_not_homogeneous_names_monomials():
    with pytest.raises(NotHomogeneous) as info:
        parse_poly("x^2 + y")
    msg = str(info.value)
    assert "x^2" in msg and "y" in msg


@pytest.mark.parametrize("text", ["3x", "x^", "(x + y", "x + * y", "w^2", "x^-1", "x ^ 1/2"])
def test_syntax_errors(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text)


def test_rationals_and_parentheses():
    p = parse_poly("3/7*(x - 2*y)^2 + z^2")
    assert p.coeff((1, 1, 0)) == Fraction(-12, 7)
    assert p.coeff((0, 0, 2)) == 1


def test_format_roundtrip():
    p = parse_poly("y^2*z - x^3 - z^3 + 1/2*x*y*z")
    assert parse_poly(format_poly(p)) == p


def test_read_poly_file(tmp_path):
    f = tmp_path / "F.txt"
    f.write_text("# a cubic\ny^2*z - x^3\n - z^3\n")
    assert read_poly(str(f)) == parse_poly("y^2*z - x^3 - z^3")


def test_primitive_normalization():
    p = parse_poly("-2/3*x^2 + 4/3*y*z").primitive()
    assert p == parse_poly("x^2 - 2*y*z")


# -- derivatives ---------------------------------------------------------------

def test_partials():
    assert partial_derivative(parse_poly("x^3"), "x") == parse_poly("3*x^2")
    assert partial_derivative(parse_poly("x^2*y"), "z").is_zero()
    assert partial_derivative(parse_poly("y^2*z - x^3 - z^3"), "y") == parse_poly("2*y*z")


@given(forms(3))
def test_euler_identity(f):
    # x f_x + y f_y + z f_z = deg f * f
    x, y, z = (HomogPoly.var(v) for v in "xyz")
    lhs = x * f.partial("x") + y * f.partial("y") + z * f.partial("z")
    assert lhs == f * 3


# -- ring axioms ----------------------------------------------------------------

@given(forms(2), forms(2), forms(1))
def test_distributive(p, q, r):
    assert (p + q) * r == p * r + q * r


@given(forms(2), forms(3))
def test_degree_additive(p, q):
    if p and q:
        assert (p * q).degree == 5


@given(upolys(), upolys(), upolys())
def test_unipoly_ring(p, q, r):
    assert (p + q) * r == p * r + q * r
    if p and q:
        assert (p * q).degree == p.degree + q.degree


# -- resultants -------------------------------------------------------------------

def test_resultant_linear():
    a, b = Fraction(3), Fraction(-5)
    p, q = UniPoly([-a, 1]), UniPoly([-b, 1])
    assert resultant(p, q) == det(sylvester_matrix(p, q)) == a - b


def test_resultant_examples():
    assert resultant(UniPoly([1, 0, 1]), UniPoly([-1, 1])) == 2
    p = UniPoly([1, -3, 0, 2])
    assert resultant(p, p) == 0
    with pytest.raises(BothZero):
        resultant(UniPoly([]), UniPoly([]))


@settings(max_examples=150)
@given(upolys(4, True), upolys(4, True))
def test_resultant_matches_sylvester(p, q):
    if p.degree + q.degree == 0:
        return
    assert resultant(p, q) == det(sylvester_matrix(p, q))


@given(upolys(3, True), upolys(3, True), upolys(3, True))
def test_resultant_multiplicative(p, q, r):
    assert resultant(p * q, r) == resultant(p, r) * resultant(q, r)


@given(upolys(3, True), upolys(3, True), st.lists(small, min_size=2, max_size=3))
def test_resultant_vanishes_on_common_factor(p, q, common):
    c = UniPoly(common)
    if c.degree < 1:
        return
    assert resultant(p * c, q * c) == 0
    assert (resultant(p, q) == 0) == (gcd(p, q).degree > 0)


# -- squarefree decomposition ---------------------------------------------------------

def test_squarefree_examples():
    y = UniPoly([0, 1])
    p = (y - 1) ** 2 * (y + 2)
    assert squarefree_decomposition(p) == [(y + 2, 1), (y - 1, 2)]
    assert squarefree_decomposition(y ** 2 + 1) == [(y ** 2 + 1, 1)]
    assert squarefree_decomposition(y ** 4) == [(y, 4)]
    with pytest.raises(ZeroPolynomial):
        squarefree_decomposition(UniPoly([]))


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(1, 3)), min_size=1, max_size=4))
def test_squarefree_reassembles(roots):
    p = UniPoly([1])
    for r, k in roots:
        p = p * UniPoly([-r, 1]) ** k
    out = UniPoly([1])
    for f, k in squarefree_decomposition(p):
        out = out * f ** k
    assert out == p.monic()
    assert squarefree_part(p).degree == len({r for r, _ in roots})


# -- rational roots and linear algebra --------------------------------------------------------

@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=6),
       st.lists(small, min_size=0, max_size=3))
def test_rational_roots_planted(roots, noise):
    p = UniPoly.from_roots(roots) * (UniPoly([1, 0, 1]) if noise else UniPoly([1]))
    assert rational_roots(p) == sorted(set(roots))


def test_nullspace_and_rank():
    rows = [[1, 2, 3], [2, 4, 6]]
    assert rank(rows, 3) == 1
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for v in basis:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0
