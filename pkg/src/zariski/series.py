"""Truncated power series in one variable and local branches of smooth curves.

A series is a plain list ``[c0, c1, ..., c_{N-1}]`` over any exact
coefficient ring; operations truncate to the requested length.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from zariski.algebraic import decide_zero
from zariski.core.homog import HomogPoly
from zariski.errors import FNotSmoothAtP


def mul(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        for j in range(min(len(b), n - i)):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def inverse(a: Sequence, n: int) -> list:
    """1/a mod u^n by Newton iteration; a[0] must be a unit."""
    inv0 = Fraction(1, a[0]) if isinstance(a[0], int) else 1 / a[0]
    x = [inv0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ax = mul(a, x, prec)
        corr = [-c for c in ax]
        corr[0] = corr[0] + 2
        x = mul(x, corr, prec)
    return x[:n] + [0] * (n - len(x))


def valuation(a: Sequence) -> int | None:
    """Index of the first nonzero coefficient; splits towers on zero divisors."""
    for i, c in enumerate(a):
        if not decide_zero(c):
            return i
    return None


def evaluate(poly: HomogPoly, X: Sequence[Sequence], n: int) -> list:
    """poly(X0(u), X1(u), X2(u)) mod u^n."""
    d = poly.degree
    pw = []
    for s in X:
        row = [[1] + [0] * (n - 1)]
        for _ in range(d):
            row.append(mul(row[-1], s, n))
        pw.append(row)
    out = [0] * n
    for (i, j, k), c in poly.terms.items():
        term = mul(mul(pw[0][i], pw[1][j], n), pw[2][k], n)
        for t in range(n):
            if term[t]:
                out[t] = out[t] + c * term[t]
    return out


def local_branch(F: HomogPoly, point: Sequence, chart: int, n: int) -> list[list]:
    """Analytic branch of F through ``point`` as three series mod u^n.

    ``point[chart]`` must be 1.  One affine coordinate is the parameter
    u; the other is solved from F = 0 by formal Newton iteration, which
    needs the corresponding partial derivative to be a unit at the point.
    """
    others = [v for v in range(3) if v != chart]
    grad = [F.partial(v)(*point) for v in range(3)]
    solve_for = None
    for v in reversed(others):
        if not decide_zero(grad[v]):
            solve_for = v
            break
    if solve_for is None:
        raise FNotSmoothAtP(f"F is singular at {list(map(str, point))}")
    param = others[0] if solve_for == others[1] else others[1]
    dF = F.partial(solve_for)

    X: list[list] = [None, None, None]
    X[chart] = [1] + [0] * (n - 1)
    X[param] = [point[param], 1] + [0] * (n - 2) if n > 1 else [point[param]]
    phi = [point[solve_for]] + [0] * (n - 1)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        X[solve_for] = phi[:prec]
        Xp = [s[:prec] + [0] * (prec - len(s[:prec])) for s in X]
        g = evaluate(F, Xp, prec)
        dg = evaluate(dF, Xp, prec)
        step = mul(g, inverse(dg, prec), prec)
        phi = [phi[i] - step[i] if i < prec else 0 for i in range(n)]
    X[solve_for] = phi
    return [s[:n] + [0] * (n - len(s)) for s in X]
