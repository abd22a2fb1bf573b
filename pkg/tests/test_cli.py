import io
import subprocess
import sys

import pytest

from tensorchain.cli import EXIT_CAP, EXIT_KEY, EXIT_KIND, EXIT_PARSE, run

from golden_cases import CASES, FIXTURES, golden_path, invoke


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, _ = invoke(CASES[name])
    assert code == 0
    assert out.encode("utf-8") == golden_path(name).read_bytes()


def test_output_is_deterministic():
    first = invoke(CASES["laws_ex1"])
    second = invoke(CASES["laws_ex1"])
    assert first == second


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_error_exit(tmp_path):
    code, out, err = cli("validate", str(FIXTURES / "malformed.net"))
    assert code == EXIT_PARSE
    assert err.startswith("error: line ")
    assert out == ""


def test_missing_file():
    code, _, err = cli("validate", str(FIXTURES / "nope.net"))
    assert code == EXIT_PARSE
    assert "cannot read" in err


def test_empty_file():
    code, _, err = cli("validate", str(FIXTURES / "empty.net"))
    assert code == EXIT_PARSE
    assert "missing network header" in err


def test_unknown_vertex_file():
    code, _, err = cli("validate", str(FIXTURES / "unknown_vertex.net"))
    assert code == EXIT_PARSE
    assert "unknown vertex" in err


def test_cap_exit():
    code, _, err = cli("laws", str(FIXTURES / "ex1.net"), "--max-tensors", "3")
    assert code == EXIT_CAP
    assert "too large" in err


def test_bad_key_exit():
    code, _, _ = cli("class", str(FIXTURES / "ex1.net"), "--tensors", "t1,t3")
    assert code == EXIT_KEY
    code, _, _ = cli("class", str(FIXTURES / "ex1.net"), "--tensors", "t9")
    assert code == EXIT_KEY


def test_kind_exit():
    code, _, _ = cli("gis", str(FIXTURES / "ex1.net"), "t1")
    assert code == EXIT_KIND
    code, _, _ = cli("relations", str(FIXTURES / "ex1.net"))
    assert code == EXIT_KIND


def test_bad_word_exit():
    code, _, err = cli("gis", str(FIXTURES / "two_cycle.net"), "e g")
    assert code == EXIT_PARSE
    assert "unknown edge" in err
    code, _, _ = cli("gis", str(FIXTURES / "two_cycle.net"), "e", "f", "e")
    assert code == EXIT_PARSE


def test_human_readable_laws():
    code, out, _ = cli("laws", str(FIXTURES / "ex1.net"))
    assert code == 0
    assert "associative: false" in out
    assert "counterexample: (l1 * l2) * l3 = empty" in out


def test_quotient_command():
    code, out, _ = cli("quotient", str(FIXTURES / "ex1.net"), "--kv")
    assert code == 0
    fields = dict(line.split("=", 1) for line in out.splitlines())
    assert fields["classes"] == "12"
    assert fields["class.empty"] == "1"
    assert fields["class.t1,t2,t3,t4"] == "1"
    assert fields["chi_epimorphism"] == "true"
    assert fields["associative"] == "false"


def test_class_human_readable():
    code, out, _ = cli("class", str(FIXTURES / "triangle.net"), "--tensors", "t1, t2, t3")
    assert code == 0
    assert "minima (matrix-tree determinant): 3" in out
    assert "counts agree: true" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tensorchain", "validate", str(FIXTURES / "single_edge.net")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("valid, 2 vertices, 1 tensors\n")
