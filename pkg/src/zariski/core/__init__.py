"""Exact rational arithmetic, forms in x, y, z and univariate elimination."""
from zariski.core.homog import HomogPoly, hessian, monomials
from zariski.core.parse import parse_poly, read_poly
from zariski.core.upoly import (
    UniPoly,
    discriminant,
    gcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)


def partial_derivative(p: HomogPoly, var: str) -> HomogPoly:
    return p.partial(var)


__all__ = [
    "HomogPoly",
    "UniPoly",
    "discriminant",
    "gcd",
    "hessian",
    "monomials",
    "parse_poly",
    "partial_derivative",
    "read_poly",
    "resultant",
    "squarefree_decomposition",
    "squarefree_part",
]
