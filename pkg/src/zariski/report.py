"""Report documents: the JSON surface of an analysis."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import jsonschema

from zariski import __version__
from zariski.algebraic import split_count
from zariski.core.homog import HomogPoly, format_poly
from zariski.picard import InvariantReport, analyze

VERDICTS = ("ZARISKI_PAIR_DETECTED", "SAME_INVARIANTS", "DIFFERENT_COMBINATORICS")


@lru_cache(maxsize=1)
def report_schema() -> dict:
    return json.loads(resources.files("zariski.data").joinpath("report.schema.json").read_text())


@dataclass
class ReportDocument:
    F: str
    B: str
    seed: int
    report: dict
    branch_count: int = 0
    timings: dict | None = None
    version: str = __version__

    def to_dict(self) -> dict:
        out = {
            "tool": "zariski",
            "version": self.version,
            "seed": self.seed,
            "input": {"F": self.F, "B": self.B},
            "branch_count": self.branch_count,
            **self.report,
        }
        if self.timings is not None:
            out["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        jsonschema.validate(d, report_schema())
        skip = {"tool", "version", "seed", "input", "branch_count", "timings"}
        return cls(
            F=d["input"]["F"], B=d["input"]["B"], seed=d["seed"],
            report={k: v for k, v in d.items() if k not in skip},
            branch_count=d["branch_count"], timings=d.get("timings"), version=d["version"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def validate(self) -> None:
        jsonschema.validate(self.to_dict(), report_schema())

    def to_text(self) -> str:
        r = self.report
        fam = r["family"]
        ls = r["linking_set"]
        rows = [
            ("F", self.F),
            ("B", self.B),
            ("signature", r["signature_text"]),
            ("m", r["m"]),
            ("mu", r["mu"]),
            ("splitting number", r["splitting_number"]),
            ("linking index", r["linking_index"]),
            ("linking set", f"<{ls['generator']}> in Z/{ls['modulus']} (index {ls['index']})"),
            ("H1 total", r["h1_total_text"]),
            ("family", "-" if fam is None else "(b, m, n, mu) = ({}, {}, {}, {})".format(*fam)),
            ("method", r["method"]),
            ("seed", self.seed),
        ]
        if r["gcd_discrepancy"]:
            rows.append(("note", "gcd of contacts differs from the quotient order"))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def normalized(p: HomogPoly) -> str:
    return format_poly(p.primitive())


def analyze_document(F: HomogPoly, B: HomogPoly, seed: int = 0, timings: bool = True,
                     method: str = "auto") -> ReportDocument:
    times: dict | None = {} if timings else None
    token = split_count.set(0)
    try:
        rep: InvariantReport = analyze(F, B, seed, method=method, timings=times)
        branches = split_count.get()
    finally:
        split_count.reset(token)
    doc = ReportDocument(normalized(F), normalized(B), seed, rep.as_dict(), branches, times)
    doc.validate()
    return doc


def compare_documents(d1: ReportDocument, d2: ReportDocument) -> dict:
    r1, r2 = d1.report, d2.report
    if r1["signature"] != r2["signature"]:
        verdict = "DIFFERENT_COMBINATORICS"
    elif r1["h1_total"] == r2["h1_total"] and r1["linking_index"] != r2["linking_index"]:
        verdict = "ZARISKI_PAIR_DETECTED"
    else:
        # equal signatures force equal degrees, hence equal H1
        verdict = "SAME_INVARIANTS"
    return {"verdict": verdict, "pair1": d1.to_dict(), "pair2": d2.to_dict()}
