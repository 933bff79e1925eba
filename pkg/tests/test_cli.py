import json

import jsonschema
import pytest
from click.testing import CliRunner

from zariski.cli import main
from zariski.report import ReportDocument, report_schema

F = "y^2*z - x^3 - z^3"
B_TRANSVERSAL = "x^2 + 3*y^2 - 2*x*z + 5*z^2"


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args, env=None):
        return runner.invoke(main, list(map(str, args)), env=env)

    return _run


def test_version(run):
    res = run("--version")
    assert res.exit_code == 0 and "zariski" in res.output


def test_analyze_json_schema_and_roundtrip(run):
    res = run("analyze", "-F", F, "-B", B_TRANSVERSAL, "--seed", 1, "--json")
    assert res.exit_code == 0, res.output
    d = json.loads(res.output)
    jsonschema.validate(d, report_schema())
    assert d["m"] == 1 and d["splitting_number"] == 1
    assert "timings" in d
    assert ReportDocument.from_json(res.output).to_dict() == d


def test_no_timings_is_byte_stable(run):
    args = ("analyze", "-F", F, "-B", B_TRANSVERSAL, "--seed", 7, "--json", "--no-timings")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0 and a.output == b.output
    assert "timings" not in json.loads(a.output)


def test_text_output(run):
    res = run("analyze", "-F", F, "-B", B_TRANSVERSAL, "--seed", 1, "--text")
    assert res.exit_code == 0
    assert "splitting number" in res.output and "H1 total" in res.output


def test_input_from_file(run, tmp_path):
    fp = tmp_path / "F.txt"
    fp.write_text("# cubic\n" + F + "\n")
    res = run("analyze", "-F", fp, "-B", B_TRANSVERSAL, "--seed", 1, "--json")
    assert res.exit_code == 0


def test_usage_errors(run):
    assert run("analyze", "-F", "x^2 + y", "-B", B_TRANSVERSAL, "--seed", 1).exit_code == 2
    assert run("analyze", "-F", "3x", "-B", B_TRANSVERSAL, "--seed", 1).exit_code == 2
    assert run("generate", 4, 2, 2, 3, "--seed", 0).exit_code == 2
    assert run("oracle", "snf", "[[1, 2], [3]]").exit_code == 2


def test_seed_required_in_test_mode(run):
    res = run("analyze", "-F", F, "-B", B_TRANSVERSAL, env={"ZARISKI_TEST_MODE": "1"})
    assert res.exit_code == 2 and "--seed" in res.output


def test_pipeline_error_names_stage(run):
    res = run("analyze", "-F", F, "-B", "x*y", "--seed", 0)
    assert res.exit_code == 3
    assert "B fails" in res.output and "step smoothness" in res.output
    res = run("analyze", "-F", F, "-B", "x^3 + y^3 + 2*z^3", "--seed", 0)
    assert res.exit_code == 3 and "step degrees" in res.output


def test_generate_and_compare(run, tmp_path):
    outs = []
    for mu in (1, 2):
        out = tmp_path / f"mu{mu}"
        res = run("generate", 4, 2, 2, mu, "--seed", 0, "--out", out, "--no-timings")
        assert res.exit_code == 0, res.output
        for name in ("F.txt", "B.txt", "report.json"):
            assert (out / name).exists()
        rep = json.loads((out / "report.json").read_text())
        assert rep["family"] == [4, 2, 2, mu] and rep["splitting_number"] == 2 // mu
        outs.append(out)
    res = run("compare", "--pair1", outs[0] / "F.txt", outs[0] / "B.txt",
              "--pair2", outs[1] / "F.txt", outs[1] / "B.txt", "--seed", 0, "--no-timings")
    assert res.exit_code == 0, res.output
    d = json.loads(res.output)
    assert d["verdict"] == "ZARISKI_PAIR_DETECTED"
    assert d["pair1"]["linking_index"] == 2 and d["pair2"]["linking_index"] == 1


def test_compare_different_combinatorics(run, tmp_path):
    out = tmp_path / "g"
    assert run("generate", 4, 2, 2, 1, "--seed", 0, "--out", out).exit_code == 0
    res = run("compare", "--pair1", out / "F.txt", out / "B.txt",
              "--pair2", F, "x^4 + y^4 + z^4 + x*y*z^2", "--seed", 0)
    assert json.loads(res.output)["verdict"] == "DIFFERENT_COMBINATORICS"


def test_oracles(run):
    assert run("oracle", "point-order", "--curve", F, "--point", "2 3 1", "--origin", "0 1 0").output.strip() == "6"
    assert run("oracle", "point-order", "--curve", F, "--point", "-1 0 1").output.strip() == "2"
    res = run("oracle", "local-mult", "-F", F, "-B", "z", "--point", "0 1 0")
    assert res.output.strip() == "3"
    res = run("oracle", "collinear-sum", "--curve", F, "--line", "x - y + 3*z")
    assert res.exit_code == 0 and res.output.strip().endswith(": O")
    res = run("oracle", "collinear-sum", "--curve", F, "--seed", 4)
    assert res.exit_code == 0
    res = run("oracle", "snf", "[[4], [2]]")
    assert res.output.splitlines()[0] == "invariant factors: 2"
    res = run("oracle", "local-mult", "-F", F, "-B", "z", "--point", "1 1 1")
    assert res.exit_code == 3


def test_shipped_example(run):
    from importlib import resources

    root = resources.files("zariski.data").joinpath("pairs", "family-4-2-2-2")
    res = run("analyze", "-F", root / "F.txt", "-B", root / "B.txt", "--seed", 0, "--json")
    d = json.loads(res.output)
    assert (d["splitting_number"], d["linking_index"], d["m"], d["mu"]) == (1, 1, 2, 2)


def test_compare_with_itself(run):
    res = run("compare", "--pair1", F, B_TRANSVERSAL, "--pair2", F, B_TRANSVERSAL, "--seed", 0)
    assert json.loads(res.output)["verdict"] == "SAME_INVARIANTS"
