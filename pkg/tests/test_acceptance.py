"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
under output capture).
"""
import json
import random
import time
from functools import reduce
from math import gcd

import pytest
from click.testing import CliRunner

from cubics import conic_through, random_cubic, small_points
from zariski.algebraic import on_branches
from zariski.cli import main
from zariski.core.homog import HomogPoly, monomials
from zariski.data import example_names, example_pair
from zariski.errors import CommonComponent
from zariski.factory import FamilySpec, generate, load_catalog
from zariski.geometry import intersect, local_mult, random_unimodular, same_point
from zariski.homology import Contact, meridian_quotient
from zariski.picard import (
    add,
    analyze,
    cubic_with_inflection,
    divisors,
    is_origin,
    line_section,
    neg,
    scalar_mul,
)

FAMILIES = [(4, 2, 2), (6, 2, 3), (6, 3, 2), (6, 6, 1)]
SEEDS = (0, 1)


class _Verdict:
    def __init__(self, capsys):
        self.capsys = capsys
        self.printed = False

    def __call__(self, n: int, ok: bool, detail: str, elapsed: float | None = None):
        took = "" if elapsed is None else f" [{elapsed:.1f} s]"
        with self.capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}{took}")
        self.printed = True
        assert ok, detail


@pytest.fixture
def verdict(request, capsys):
    """Prints the criterion line; an exception before that prints FAIL."""
    v = _Verdict(capsys)
    yield v
    rep = getattr(request.node, "rep_call", None)
    if not v.printed and rep is not None and rep.failed:
        n = request.node.name.split("_")[2]
        with capsys.disabled():
            print(f"\ncriterion {n}: FAIL - {rep.longrepr.reprcrash.message if rep.longrepr else 'error'}")


@pytest.fixture(scope="module")
def generated():
    """Every family member used by criteria 3, 4, 5 and 8, keyed by (spec, seed)."""
    catalog = load_catalog()
    out = {}
    for b, m, n in FAMILIES:
        for mu in divisors(m):
            spec = FamilySpec(b, m, n, mu)
            for seed in SEEDS:
                out[spec, seed] = generate(spec, catalog, seed)
    return out


def test_criterion_1_zariski_pair(verdict, tmp_path):
    t0 = time.perf_counter()
    runner = CliRunner()
    dirs = []
    for mu in (1, 2):
        d = tmp_path / f"mu{mu}"
        res = runner.invoke(main, ["generate", "4", "2", "2", str(mu), "--seed", "0", "--out", str(d), "--no-timings"])
        assert res.exit_code == 0, res.output
        dirs.append(d)
    res = runner.invoke(main, ["compare", "--pair1", str(dirs[0] / "F.txt"), str(dirs[0] / "B.txt"),
                               "--pair2", str(dirs[1] / "F.txt"), str(dirs[1] / "B.txt"),
                               "--seed", "0", "--no-timings"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    r1, r2 = doc["pair1"], doc["pair2"]
    elapsed = time.perf_counter() - t0
    ok = (
        doc["verdict"] == "ZARISKI_PAIR_DETECTED"
        and r1["signature_text"] == r2["signature_text"] == "(3, 4, {2x6})"
        and r1["h1_total_text"] == r2["h1_total_text"] == "Z"
        and (r1["linking_index"], r2["linking_index"]) == (2, 1)
        and elapsed < 60
    )
    verdict(1, ok, f"verdict {doc['verdict']}, signature {r1['signature_text']}, "
                   f"H1 {r1['h1_total_text']}, linking indices {r1['linking_index']} and {r2['linking_index']}",
            elapsed)


def test_criterion_2_divisor_count(verdict):
    t0 = time.perf_counter()
    catalog = load_catalog()
    indices = {}
    for mu in (1, 2, 3, 6):
        pair = generate(FamilySpec(6, 6, 1, mu), catalog, seed=0)
        indices[mu] = pair.report.linking_index
    elapsed = time.perf_counter() - t0
    ok = indices == {1: 6, 2: 3, 3: 2, 6: 1} and len(set(indices.values())) == 4 and elapsed < 300
    verdict(2, ok, f"(6, 6): mu -> linking index {indices}", elapsed)


def test_criterion_3_nu_formula(verdict, generated):
    bad = [(s.as_tuple(), seed, p.report.splitting_number) for (s, seed), p in generated.items()
           if p.report.splitting_number != s.m // s.mu or p.report.family != s.as_tuple()]
    verdict(3, not bad, f"{len(generated)} instances over {len(FAMILIES)} families, nu = m/mu in all"
            if not bad else f"mismatches: {bad}")


def test_criterion_4_h1(verdict, generated):
    bad = []
    for (spec, seed), pair in generated.items():
        want = (3, 0) if spec.b % 3 == 0 else (1, 0)
        if pair.report.h1_total != want:
            bad.append((spec.as_tuple(), pair.report.h1_total_text))
    verdict(4, not bad, "b = 6 gives Z + Z/3, b = 4 gives Z" if not bad else f"wrong H1: {bad}")


def test_criterion_5_projective_invariance(verdict, generated):
    t0 = time.perf_counter()
    pairs = [(name, *example_pair(name)) for name in example_names()]
    pairs += [(str(s.as_tuple()), p.F, p.B) for (s, seed), p in generated.items() if seed == 0]
    rng = random.Random(2024)
    checked, bad = 0, []
    base = {name: analyze(F, B, 0) for name, F, B in pairs}
    for i in range(60):
        name, F, B = pairs[i % len(pairs)]
        M = random_unimodular(rng)
        r = analyze(F.transform(M), B.transform(M), seed=i)
        r0 = base[name]
        if (r.signature, r.m, r.mu, r.splitting_number) != (r0.signature, r0.m, r0.mu, r0.splitting_number):
            bad.append(name)
        checked += 1
    elapsed = time.perf_counter() - t0
    verdict(5, not bad and checked >= 50 and elapsed < 600,
            f"{checked} unimodular changes over {len(pairs)} pairs, (signature, m, mu, nu) unchanged"
            if not bad else f"changed for {bad}", elapsed)


def test_criterion_6_group_law(verdict):
    rng = random.Random(6)
    triples = cubics = 0
    while cubics < 6:
        E, gens = random_cubic(rng)
        pts = small_points(E, gens, 2)
        for _ in range(40):
            a, b, c = (rng.choice(pts) for _ in range(3))
            assert same_point(add(E, add(E, a, b), c), add(E, a, add(E, b, c)))
            triples += 1
        cubics += 1

    lines = 0
    for _ in range(5):
        E, _ = random_cubic(rng)
        E = cubic_with_inflection(E.F)
        for _ in range(20):
            L = HomogPoly.linear(*(rng.randint(-6, 6) or 1 for _ in range(3)))
            for sect in line_section(E.F, L):
                s = E.O
                for P in sect:
                    s = add(E, s, P)
                assert is_origin(E, s)
            lines += 1

    conics = 0
    while conics < 50:
        E, gens = random_cubic(rng)
        pool = small_points(E, gens, 2)
        for _ in range(10):
            five = []
            for q in rng.sample(pool, len(pool)):
                if not any(same_point(q, r) for r in five):
                    five.append(q)
                if len(five) == 5:
                    break
            C = conic_through(five) if len(five) == 5 else None
            if C is None:
                continue
            try:
                recs = intersect(E.F, C)
            except CommonComponent:
                continue
            total = E.O
            for r in recs:
                for _ in range(r.multiplicity):
                    total = add(E, total, r.point)
            assert is_origin(E, total)
            conics += 1

    torsion_checks = 0
    for entry in load_catalog():
        E = entry.cubic
        gen = max(entry.torsion, key=lambda pk: pk[1])[0]
        n = max(k for _, k in entry.torsion)
        group = [scalar_mul(E, k, gen) for k in range(n)]
        assert all(any(same_point(P, g) for g in group) for P, _ in entry.torsion)
        for i, a in enumerate(group):
            assert same_point(add(E, a, E.O), a) and same_point(add(E, E.O, a), a)
            assert is_origin(E, add(E, a, neg(E, a)))
            for j, b in enumerate(group):
                assert same_point(add(E, a, b), group[(i + j) % n])
                torsion_checks += 1
    ok = triples >= 200 and cubics >= 5 and lines >= 100 and conics >= 50
    verdict(6, ok, f"{triples} associative triples on {cubics} cubics, {lines} lines, {conics} conics, "
                   f"{torsion_checks} torsion sums checked")


def _oracle_check(F, B, seed=0):
    recs = intersect(F, B, seed=seed, verify=False)
    assert sum(r.multiplicity * r.count for r in recs) == F.degree * B.degree
    points = 0
    for r in recs:
        for _, mult in on_branches(lambda t, p: local_mult(F, B, p), r.point.tower, r.point):
            assert mult == r.multiplicity
            points += 1
    return points


def test_criterion_7_oracle_equivalence(verdict, generated):
    pairs = [example_pair(name) for name in example_names()]
    pairs += [(p.F, p.B) for (s, seed), p in generated.items() if seed == 0]
    rng = random.Random(7)
    while len(pairs) < 30:
        F = example_pair("transversal")[0].transform(random_unimodular(rng))
        d = rng.randint(1, 3)
        B = HomogPoly.from_coeff_vector(d, [rng.randint(-3, 3) for _ in monomials(d)])
        if not B.is_zero():
            pairs.append((F, B))
    calls = branches = 0
    for i, (F, B) in enumerate(pairs):
        try:
            branches += _oracle_check(F, B, seed=i)
        except CommonComponent:
            continue
        calls += 1
    verdict(7, calls >= 25, f"{calls} intersect calls satisfy Bezout; local_mult agrees on {branches} point records")


def test_criterion_8_meridian_quotient(verdict, generated):
    rng = random.Random(8)
    synthetic = 0
    for _ in range(500):
        b = rng.randint(1, 24)
        contacts = [rng.randint(1, 12) for _ in range(rng.randint(1, 8))]
        mq = meridian_quotient([b], [Contact((c,)) for c in contacts])
        expected = b
        for c in contacts:
            expected = gcd(expected, c)
        assert mq.order == expected == reduce(gcd, contacts, b)
        synthetic += 1
    family = 0
    for (spec, seed), pair in generated.items():
        recs = intersect(pair.F, pair.B, seed)
        mq = meridian_quotient([spec.b], [Contact((r.multiplicity,), r.count) for r in recs], 3)
        assert mq.order == spec.m == pair.report.m
        family += 1
    verdict(8, True, f"{synthetic} synthetic cases match gcd(b, I_P); {family} family instances give order m")


def test_criterion_9_scope(verdict):
    # Not certifiable here: the non-abelian fundamental group, connectivity of
    # the moduli of each family, and homeomorphism classification. The
    # reachable stand-ins are criteria 4 (H1 agreement) and 5 (invariance
    # under projective changes), which must hold for this scope statement.
    import zariski

    exposes_pi1 = any("fundamental" in name or "pi1" in name for name in dir(zariski))
    verdict(9, not exposes_pi1,
            "out of scope by declaration: fundamental group, moduli connectivity and homeomorphism "
            "type are not certified; covered at the H1 and projective-invariance level by criteria 4 and 5")
