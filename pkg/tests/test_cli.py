import io
import json
import subprocess
import sys

import pytest

from superpoisson.cli import EXIT_DEGREE, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

from corpus import FIXTURES


def run(*argv, stdin_text=None):
    out, err = io.StringIO(), io.StringIO()
    stdin = io.StringIO(stdin_text) if stdin_text is not None else None
    code = main(list(argv), stdin=stdin, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return str(FIXTURES / name)


FAST = ("--samples", "8")


# -- check ---------------------------------------------------------------------------


def test_check_metric_passes():
    code, out, _ = run("check", fx("metric_diag.json"), *FAST)
    assert code == EXIT_OK
    assert "FAIL " not in out


def test_check_broken_reports_witness():
    code, out, _ = run("check", fx("broken.json"), *FAST)
    assert code == EXIT_FAIL
    assert "FAIL    poisson:jacobi" in out
    assert "inputs=(x1,x2,x3)" in out


def test_check_bivector_skips_superalgebroid():
    code, out, _ = run("check", fx("bivector.json"), *FAST)
    assert code == EXIT_OK
    assert "SKIPPED superalgebroid (odd degree)" in out
    assert "SKIPPED gerstenhaber (odd degree)" in out


def test_check_corrupted_algebroid():
    code, out, _ = run("check", fx("algebroid_corrupted.json"), *FAST, "--format", "structured")
    assert code == EXIT_FAIL
    report = json.loads(out)["report"]
    failed = {c["name"] for c in report["checks"] if c["status"] == "fail"}
    assert "superalgebroid:jacobi" in failed


def test_max_degree_floor():
    code, _, err = run("check", fx("metric.json"), "--max-degree", "1")
    assert code == EXIT_INPUT and "max-degree" in err


# -- bracket -------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "kind, a, b, expected",
    [
        ("poisson", "th1", "th1*th2", "th2"),
        ("algebroid", "th1*dth2", "dth1", "-dth2"),
        ("gerstenhaber", "x1", "x2", "0"),
        ("gerstenhaber", "th1", "dth1", "1"),
    ],
)
def test_bracket_examples(kind, a, b, expected):
    code, out, _ = run("bracket", fx("metric_diag.json"), "--kind", kind, a, b)
    assert (code, out) == (EXIT_OK, expected + "\n")


def test_bracket_on_algebroid_document():
    code, out, _ = run("bracket", fx("algebroid_so3.json"), "x1", "x2")
    assert (code, out) == (EXIT_OK, "x3\n")
    code, out, _ = run("bracket", fx("algebroid_so3.json"), "--kind", "algebroid", "dx1", "dx2")
    assert (code, out) == (EXIT_OK, "dx3\n")


@pytest.mark.parametrize(
    "kind, a, b",
    [("poisson", "dth1", "th1"), ("algebroid", "th1", "dth1"), ("algebroid", "dth1*dth2", "dth1")],
)
def test_bracket_degree_violation(kind, a, b):
    code, _, err = run("bracket", fx("metric_diag.json"), "--kind", kind, a, b)
    assert code == EXIT_DEGREE and err.startswith("error:")


def test_bracket_parse_error():
    code, _, err = run("bracket", fx("metric_diag.json"), "th1", "th9")
    assert code == EXIT_INPUT
    assert "index out of range" in err


# -- verify-theorems ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["metric_diag.json", "trivial.json", "broken.json"])
def test_verify_theorems_pass(name):
    code, out, _ = run("verify-theorems", fx(name), *FAST, "--format", "structured")
    assert code == EXIT_OK
    checks = json.loads(out)["report"]["checks"]
    assert len(checks) == 9
    assert all(c["status"] == "pass" for c in checks)


def test_broken_theorem_lines_report_both_conditions():
    code, out, _ = run("verify-theorems", fx("broken.json"), *FAST)
    assert code == EXIT_OK
    line = next(l for l in out.splitlines() if "jacobi-iff-anchor-morphism" in l)
    assert "PASS" in line


# -- input handling -------------------------------------------------------------------------------


def test_stdin_document():
    text = (FIXTURES / "so3.json").read_text()
    code, out, _ = run("bracket", "-", "x1", "x2", stdin_text=text)
    assert (code, out) == (EXIT_OK, "x3\n")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{not json", "line 1, column 2"),
        ('{"schema_version": 2, "signature": {"m": 1, "n": 0}, "kind": "poisson"}', "schema error"),
        ('{"schema_version": 1, "signature": {"m": 1, "n": 0}, "kind": "poisson", "degree": 0, "table": {"x1,x9": "1"}}', "x9"),
    ],
)
def test_bad_documents(text, fragment):
    code, _, err = run("check", "-", stdin_text=text)
    assert code == EXIT_INPUT
    assert fragment in err


def test_missing_file():
    code, _, err = run("check", fx("nope.json"))
    assert code == EXIT_INPUT and "cannot read" in err


# -- eval --------------------------------------------------------------------------------------------


def test_eval():
    assert run("eval", "th2*th1", "-n", "2") == (EXIT_OK, "-th1*th2\n", "")
    assert run("eval", "x1 - x1", "-m", "1") == (EXIT_OK, "0\n", "")
    code, _, err = run("eval", "x2", "-m", "1")
    assert code == EXIT_INPUT and "index out of range" in err


# -- determinism and the installed entry point -----------------------------------------------------


def test_structured_reports_are_deterministic():
    args = ("verify-theorems", fx("so3.json"), "--seed", "5", *FAST, "--format", "structured")
    first, second = run(*args), run(*args)
    assert first == second
    doc = json.loads(first[1])
    assert doc["schema_version"] == 1 and doc["samples"] == 8
    assert "wall_time" not in json.dumps(doc)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superpoisson", "eval", "th2*th1", "-n", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "-th1*th2\n"
