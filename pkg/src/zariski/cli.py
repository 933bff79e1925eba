"""Command-line interface: ``zariski analyze | compare | generate | oracle``.

Exit codes: 0 success, 2 usage (bad arguments, unparsable input, invalid
family spec), 3 pipeline error, 4 factory error.
"""
from __future__ import annotations

import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import click

from zariski import __version__
from zariski.core.parse import read_poly
from zariski.errors import CoreError, FactoryError, InvalidFamilySpec, ZariskiError

EXIT_USAGE, EXIT_PIPELINE, EXIT_FACTORY = 2, 3, 4
TEST_MODE_ENV = "ZARISKI_TEST_MODE"


class _Fail(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _error(exc: ZariskiError) -> _Fail:
    step = getattr(exc, "pipeline_step", None)
    where = f"stage {exc.stage}" + (f", step {step}" if step else "")
    if isinstance(exc, InvalidFamilySpec):
        return _Fail(f"{exc}", EXIT_USAGE)
    if isinstance(exc, FactoryError):
        return _Fail(f"{exc} at {where}", EXIT_FACTORY)
    return _Fail(f"{exc} at {where}", EXIT_PIPELINE)


def _poly(source: str, label: str):
    try:
        return read_poly(source)
    except CoreError as exc:
        raise click.BadParameter(str(exc), param_hint=label) from exc


def _seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    if os.environ.get(TEST_MODE_ENV):
        raise click.UsageError(f"--seed is required when {TEST_MODE_ENV} is set")
    return random.SystemRandom().randrange(2**31)


def _point(text: str):
    from zariski.geometry import make_point

    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise click.BadParameter(f"expected three coordinates, got {text!r}")
    try:
        return make_point([Fraction(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"bad point {text!r}") from exc


@click.group()
@click.version_option(__version__, prog_name="zariski")
def main():
    """Linking invariants of plane-curve pairs C = F + B."""


@main.command()
@click.option("-F", "f_src", required=True, help="Cubic F: file or inline expression.")
@click.option("-B", "b_src", required=True, help="Curve B: file or inline expression.")
@click.option("--seed", type=int, default=None, help="Seed for generic projections.")
@click.option("--json/--text", "as_json", default=False, help="Output format.")
@click.option("--no-timings", is_flag=True, help="Omit per-stage timings (byte-stable output).")
def analyze(f_src, b_src, seed, as_json, no_timings):
    """Compute m, mu, the splitting number and the linking set of F with B."""
    from zariski.report import analyze_document

    F, B = _poly(f_src, "-F"), _poly(b_src, "-B")
    try:
        doc = analyze_document(F, B, _seed(seed), timings=not no_timings)
    except ZariskiError as exc:
        raise _error(exc) from exc
    click.echo(doc.to_json() if as_json else doc.to_text())


@main.command()
@click.option("--pair1", nargs=2, required=True, metavar="F1 B1")
@click.option("--pair2", nargs=2, required=True, metavar="F2 B2")
@click.option("--seed", type=int, default=None)
@click.option("--no-timings", is_flag=True)
def compare(pair1, pair2, seed, no_timings):
    """Decide whether two pairs form a Zariski pair detected by the linking index."""
    from zariski.report import analyze_document, compare_documents

    seed = _seed(seed)
    polys = [(_poly(p[0], "--pair"), _poly(p[1], "--pair")) for p in (pair1, pair2)]
    try:
        docs = [analyze_document(F, B, seed, timings=not no_timings) for F, B in polys]
    except ZariskiError as exc:
        raise _error(exc) from exc
    click.echo(json.dumps(compare_documents(*docs), indent=2, sort_keys=True))


@main.command()
@click.argument("b", type=int)
@click.argument("m", type=int)
@click.argument("n", type=int)
@click.argument("mu", type=int)
@click.option("--catalog", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=".", help="Directory for F.txt, B.txt, report.json.")
@click.option("--no-timings", is_flag=True)
def generate(b, m, n, mu, catalog, seed, out, no_timings):
    """Generate a member of the family of type (b, m) with class order mu."""
    from zariski.factory import FamilySpec, generate as make, load_catalog
    from zariski.report import analyze_document, normalized

    seed = _seed(seed)
    try:
        spec = FamilySpec(b, m, n, mu)
        pair = make(spec, load_catalog(catalog), seed, verify=False)
        doc = analyze_document(pair.F, pair.B, seed, timings=not no_timings)
    except InvalidFamilySpec as exc:
        raise click.UsageError(str(exc)) from exc
    except ZariskiError as exc:
        raise _error(exc) from exc
    if doc.report["splitting_number"] != spec.nu or doc.report["family"] != list(spec.as_tuple()):
        raise _Fail("generated pair failed the round-trip analysis", EXIT_FACTORY)
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    header = f"# {pair.entry}, family (b, m, n, mu) = {spec.as_tuple()}, seed {seed}\n"
    (outdir / "F.txt").write_text(header + normalized(pair.F) + "\n")
    (outdir / "B.txt").write_text(header + normalized(pair.B) + "\n")
    (outdir / "report.json").write_text(doc.to_json() + "\n")
    click.echo(doc.to_json())


@main.group()
def oracle():
    """Brute-force oracles used to cross-check the pipeline."""


@oracle.command("point-order")
@click.option("--curve", "f_src", required=True)
@click.option("--point", "pt", required=True, help='Coordinates "x y z".')
@click.option("--origin", default=None, help="Inflection origin; default: found automatically.")
@click.option("--bound", type=int, default=12, show_default=True)
def point_order_cmd(f_src, pt, origin, bound):
    """Order of a point by repeated addition (prints 'inf' beyond the bound)."""
    from zariski.picard import CubicWithOrigin, find_inflection, point_order

    F = _poly(f_src, "--curve")
    try:
        E = CubicWithOrigin(F, _point(origin) if origin else find_inflection(F))
        k = point_order(E, _point(pt), bound)
    except ZariskiError as exc:
        raise _error(exc) from exc
    click.echo("inf" if k is None else str(k))


@oracle.command("local-mult")
@click.option("-F", "f_src", required=True)
@click.option("-B", "b_src", required=True)
@click.option("--point", "pt", required=True)
def local_mult_cmd(f_src, b_src, pt):
    """Intersection multiplicity at a rational point via power series."""
    from zariski.geometry import local_mult

    try:
        click.echo(str(local_mult(_poly(f_src, "-F"), _poly(b_src, "-B"), _point(pt))))
    except ZariskiError as exc:
        raise _error(exc) from exc


@oracle.command("collinear-sum")
@click.option("--curve", "f_src", required=True)
@click.option("--line", "l_src", default=None, help="Linear form; default: random line from --seed.")
@click.option("--seed", type=int, default=None)
def collinear_sum_cmd(f_src, l_src, seed):
    """Group sum of the three points cut by a line; always O."""
    from zariski.core.homog import HomogPoly
    from zariski.picard import add, cubic_with_inflection, is_origin, line_section

    F = _poly(f_src, "--curve")
    if l_src is None:
        rng = random.Random(_seed(seed))
        L = HomogPoly.linear(*(rng.randint(-9, 9) or 1 for _ in range(3)))
    else:
        L = _poly(l_src, "--line")
        if L.degree != 1:
            raise click.BadParameter("not a linear form", param_hint="--line")
    try:
        E = cubic_with_inflection(F)
        results = []
        for pts in line_section(F, L):
            s = E.O
            for P in pts:
                s = add(E, s, P)
            results.append(is_origin(E, s))
    except ZariskiError as exc:
        raise _error(exc) from exc
    click.echo(f"line {L}: " + ("O" if all(results) else "NOT O"))
    if not all(results):
        sys.exit(EXIT_PIPELINE)


@oracle.command("snf")
@click.argument("matrix")
def snf_cmd(matrix):
    """Smith normal form of an integer matrix given as JSON, e.g. '[[4],[2]]'."""
    from zariski.homology import smith_normal_form

    try:
        rows = json.loads(matrix)
        if not rows or not all(isinstance(r, list) and r and all(isinstance(x, int) for x in r) for r in rows):
            raise ValueError
        if len({len(r) for r in rows}) != 1:
            raise ValueError
    except ValueError as exc:
        raise click.BadParameter("expected a JSON list of equal-length integer rows", param_hint="MATRIX") from exc
    snf = smith_normal_form(rows)
    factors = snf.diagonal
    click.echo("invariant factors: " + " ".join(map(str, factors)))
    click.echo("D = " + json.dumps(snf.D))


if __name__ == "__main__":
    main()
