"""
Unit tests for the command-line interface.

:return : Test suite.
:return: Unit tests for sub-commands, exit codes and output determinism.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from gkk_tau.cli import main


def _write_matrix(path: Path, rows: list) -> str:
    path.write_text(json.dumps({"n": len(rows), "rows": rows}))
    return str(path)


@pytest.fixture
def sym(tmp_path: Path) -> str:
    return _write_matrix(tmp_path / "sym.json", [[2, 1], [1, 2]])


@pytest.fixture
def rot(tmp_path: Path) -> str:
    return _write_matrix(tmp_path / "rot.json", [[1, -2], [2, 1]])


def test_classify_exit_code(sym: str, tmp_path: Path) -> None:
    """
    Test that classify succeeds and reports the labels.

    :return : None.
    :return: Test assertion.
    """
    out = tmp_path / "report.json"
    assert main(["classify", sym, "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["manifest"]["command"] == "classify"
    assert data["manifest"]["inputs"] == [sym]
    assert data["labels"]["GKK"] and data["labels"]["tau"] and not data["labels"]["M"]


def test_check_gkk_failure(rot: str, tmp_path: Path) -> None:
    """
    Test that a failing certifier exits 1 with its witness.

    :return : None.
    :return: Test assertion.
    """
    out = tmp_path / "gkk.json"
    assert main(["check", "gkk", rot, "--out", str(out)]) == 1
    witness = json.loads(out.read_text())["witness"]
    assert (witness["alpha"], witness["beta"]) == ([1], [2])


def test_check_undefined_exit_code(rot: str, tmp_path: Path) -> None:
    """
    Test that an undefined verdict exits 2.

    :return : None.
    :return: Test assertion.
    """
    assert main(["check", "varga", rot, "--out", str(tmp_path / "v.json")]) == 2


def test_minors_cap_exit_code(tmp_path: Path) -> None:
    """
    Test that an order-21 table exits 4.

    :return : None.
    :return: Test assertion.
    """
    path = tmp_path / "big.txt"
    path.write_text("21\n" + "\n".join(" ".join("1" if i == j else "0" for j in range(21)) for i in range(21)))
    assert main(["minors", str(path), "--out", str(tmp_path / "t.json")]) == 4


def test_usage_errors_exit_3(sym: str, tmp_path: Path) -> None:
    """
    Test that bad usage and bad input exit 3.

    :return : None.
    :return: Test assertion.
    """
    assert main(["check", "nope", sym]) == 3
    assert main(["classify"]) == 3
    assert main([]) == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 2 3\n")
    assert main(["classify", str(bad)]) == 3
    assert main(["search", "--class", "Q", "--objective", "minVargaMargin", "--n", "3"]) == 3


def test_jobs_do_not_change_output(sym: str, tmp_path: Path) -> None:
    """
    Test byte-identical reports for different worker counts.

    :return : None.
    :return: Test assertion.
    """
    one, three = tmp_path / "one.json", tmp_path / "three.json"
    assert main(["classify", sym, "--jobs", "1", "--out", str(one)]) == 0
    assert main(["classify", sym, "--jobs", "3", "--out", str(three)]) == 0
    assert one.read_bytes() == three.read_bytes()


def test_minors_and_text_format(tmp_path: Path) -> None:
    """
    Test the minors command in exact mode and the text format.

    :return : None.
    :return: Test assertion.
    """
    path = tmp_path / "id.txt"
    path.write_text("2\n1 0\n0 1\n")
    out = tmp_path / "t.json"
    assert main(["minors", str(path), "--exact", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["minors"] == {"0": 1.0, "1": 1.0, "2": 1.0, "3": 1.0}
    assert data["c"] == [1.0, 1.0, 1.0]

    text = tmp_path / "t.txt"
    assert main(["check", "p", str(path), "--format", "text", "--out", str(text)]) == 0
    assert any(line.split()[:2] == ["verdict", "pass"] for line in text.read_text().splitlines())


def test_dispersal_command(rot: str, tmp_path: Path) -> None:
    """
    Test the dispersal command for one d and for the profile with CSV.

    :return : None.
    :return: Test assertion.
    """
    assert main(["dispersal", rot, "--d", "1", "--out", str(tmp_path / "d.json")]) == 1
    csv = tmp_path / "profile.csv"
    assert main(["dispersal", rot, "--csv", str(csv), "--out", str(tmp_path / "p.json")]) == 0
    assert csv.read_text().splitlines()[0] == "d,verdict,margin,checked_count"


def test_search_command(tmp_path: Path) -> None:
    """
    Test that the search command echoes its seed and is reproducible.

    :return : None.
    :return: Test assertion.
    """
    args = ["search", "--class", "Mmatrix", "--objective", "minStabilityMargin", "--n", "3", "--seed", "5", "--iters", "50"]
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second), "--jobs", "2"]) == 0
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text())
    assert data["manifest"]["seed"] == 5
    assert data["seed"] == 5


def test_approx_strict_command(sym: str, rot: str, tmp_path: Path) -> None:
    """
    Test exit codes of the strict-GKK approximation command.

    :return : None.
    :return: Test assertion.
    """
    assert main(["approx-strict", sym, "--eps", "0.1", "--out", str(tmp_path / "a.json")]) == 0
    assert main(["approx-strict", rot, "--eps", "0.01", "--iters", "50", "--out", str(tmp_path / "b.json")]) == 1


def test_assign_command(tmp_path: Path) -> None:
    """
    Test the assignment command on a feasible target table.

    :return : None.
    :return: Test assertion.
    """
    targets = tmp_path / "targets.json"
    targets.write_text(json.dumps({"n": 2, "minors": {"1": 1, "2": 1, "3": 4}}))
    out = tmp_path / "fit.json"
    assert main(["assign", "--targets", str(targets), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["hf_feasibility"]["verdict"] == "fail"
    assert data["fit"]["converged"]
    assert data["verified_residual"] < 1e-6


def test_interlace_command(tmp_path: Path) -> None:
    """
    Test the interlace command with every method.

    :return : None.
    :return: Test assertion.
    """
    p, q, r = tmp_path / "p.json", tmp_path / "q.json", tmp_path / "r.json"
    p.write_text(json.dumps({"coeffs": list(np.poly([1.0, 3.0]))}))
    q.write_text(json.dumps({"coeffs": [1.0, -2.0]}))
    r.write_text(json.dumps({"coeffs": [1.0, -5.0]}))
    for method in ("roots-direct", "hermite-biehler", "hurwitz"):
        out = str(tmp_path / f"{method}.json")
        assert main(["interlace", "--p", str(p), "--q", str(q), "--method", method, "--out", out]) == 0
        assert main(["interlace", "--p", str(p), "--q", str(r), "--method", method, "--out", out]) == 1

    double = tmp_path / "double.json"
    double.write_text(json.dumps({"coeffs": [1.0, -2.0, 1.0]}))
    one = tmp_path / "one.json"
    one.write_text(json.dumps({"coeffs": [1.0, -1.0]}))
    args = ["interlace", "--p", str(double), "--q", str(one), "--out", str(tmp_path / "d.json")]
    assert main(args + ["--method", "hurwitz"]) == 2
    assert main(args + ["--method", "roots-direct"]) == 2


def test_survey_command(tmp_path: Path) -> None:
    """
    Test the survey command with CSV output.

    :return : None.
    :return: Test assertion.
    """
    csv = tmp_path / "survey.csv"
    out = tmp_path / "survey.json"
    args = ["survey", "--class", "HPD", "--orders", "2", "3", "--samples", "3", "--csv", str(csv), "--out", str(out)]
    assert main(args) == 0
    assert len(csv.read_text().splitlines()) == 3
    assert [row["order"] for row in json.loads(out.read_text())["rows"]] == [2, 3]
