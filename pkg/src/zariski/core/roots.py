"""Rational roots of univariate polynomials over Q.

Candidates come from high-precision numeric roots; each is snapped to the
nearest fraction whose denominator divides the leading coefficient of the
primitive integer polynomial and kept only if it is an exact root.  A
missed candidate is never wrong, only slower: the root stays inside a
squarefree tower factor.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from zariski.core.upoly import UniPoly, rational_primitive, squarefree_part


def rational_roots(p: UniPoly) -> list[Fraction]:
    if p.degree < 1:
        return []
    # multiple roots ruin the numerics; the root set is that of the squarefree part
    q = rational_primitive(squarefree_part(p))
    coeffs = [int(c) for c in q.coeffs]
    roots: list[Fraction] = []
    # exact linear factors first: t | p and degree one
    while coeffs and coeffs[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) == 2:
        roots.append(Fraction(-coeffs[0], coeffs[1]))
        return sorted(set(roots))
    if len(coeffs) < 2:
        return sorted(set(roots))
    lc = abs(coeffs[-1])
    digits = max(len(str(abs(c))) for c in coeffs)
    poly = UniPoly(coeffs)
    for dps in (2 * digits + 40, 4 * digits + 80):
        try:
            with mpmath.workdps(dps):
                approx = mpmath.polyroots(coeffs[::-1], maxsteps=200 + 20 * len(coeffs), extraprec=2 * dps)
        except mpmath.libmp.libhyper.NoConvergence:
            continue
        found = []
        for r in approx:
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-dps // 4) * (1 + abs(r)):
                continue
            with mpmath.workdps(dps):
                guess = Fraction(mpmath.nstr(mpmath.re(r), dps, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
            cand = guess.limit_denominator(lc)
            if not poly(cand) and cand not in found:
                found.append(cand)
        roots.extend(found)
        break
    return sorted(set(roots))
