import json
import subprocess
import sys
from pathlib import Path

import pytest

import src.moments.closed as closed
from src.main import cli_dispatch
from src.models import FunctionSpec, OperatorParams
from src.operators import apply_operator

REPO_ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_durrmeyer(self, capsys):
        code, out, _ = run(capsys, "eval", "--fn", "sqrt", "--n", "20", "--alpha", "0.1", "--rho", "0.5", "--x", "1")
        assert code == 0
        payload = json.loads(out)
        expected = apply_operator(OperatorParams(n=20, alpha=0.1, rho=0.5), FunctionSpec.named("sqrt"), 1.0)
        assert payload["variant"] == "durrmeyer"
        assert payload["value"] == pytest.approx(expected, rel=1e-12)
        assert payload["abs_err"] == pytest.approx(abs(expected - 1.0), rel=1e-9)

    def test_pointwise(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--fn", "e1", "--n", "10", "--alpha", "0.4", "--rho", "1",
            "--x", "1.5", "--variant", "pointwise", "--series-eps", "1e-13",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.5 - 2 * 0.6 * 1.5 / 10, rel=1e-11)


class TestCurve:
    def test_stdout(self, capsys):
        code, out, _ = run(
            capsys, "curve", "--fn", "poly:2,5,1", "--n", "20", "--alpha", "0.7", "--rho", "1",
            "--lo", "0", "--hi", "1", "--points", "5",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "rho,x,f,approx,abs_err"
        assert len(lines) == 6

    def test_file(self, capsys, tmp_path):
        target = tmp_path / "curves" / "expneg.csv"
        code, out, _ = run(
            capsys, "curve", "--fn", "expneg", "--n", "20", "--alpha", "1", "--rho", "2",
            "--points", "4", "--out", str(target),
        )
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("rho,x,f,approx,abs_err\n")


class TestMoments:
    def test_classical_second_central_moment(self, capsys):
        code, out, _ = run(capsys, "moments", "--n", "20", "--alpha", "1", "--rho", "1", "--x", "1", "--order", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["closed_form"] == pytest.approx(0.2573099, abs=1e-7)
        assert payload["rel_gap"] <= 1e-8
        assert payload["mismatch"] is False

    def test_strict_mismatch_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(closed, "raw_moment_closed", lambda params, x, i: 1.25)
        code, _, err = run(
            capsys, "moments", "--n", "20", "--alpha", "1", "--rho", "1", "--x", "1",
            "--order", "1", "--kind", "raw", "--strict",
        )
        assert code == 5
        assert "abd: error code=5 kind=FormulaMismatchError" in err

    def test_fourth_moment(self, capsys):
        code, out, _ = run(
            capsys, "fourth-moment", "--alpha", "1", "--rho", "1", "--x", "1", "--n-list", "100,200",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["printed_coefficient"] == pytest.approx(40.0)
        assert len(payload["successive_ratios"]) == 1


class TestAnalysis:
    def test_voronovskaja(self, capsys):
        code, out, _ = run(
            capsys, "voronovskaja", "--fn", "e2", "--alpha", "1", "--rho", "1", "--x", "1",
            "--n-list", "50,100",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["limit"] == pytest.approx(8.0)
        assert payload["sequence"] == pytest.approx([8 * 50 / 48, 8 * 100 / 98], abs=1e-8)

    @pytest.mark.parametrize("fn, alpha, x", [("e2", "0.3", "3"), ("e3", "1", "2")])
    def test_voronovskaja_default_n_list(self, capsys, fn, alpha, x):
        code, out, err = run(capsys, "voronovskaja", "--fn", fn, "--alpha", alpha, "--rho", "1", "--x", x)
        assert code == 0, err
        assert len(json.loads(out)["sequence"]) == 5

    def test_bounds_bounded_function(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--fn", "ratio", "--n", "50", "--alpha", "0.5", "--rho", "2",
            "--x", "1", "--lip-m", "1",
        )
        assert code == 0
        payload = json.loads(out)
        for key in ("modulus", "c2", "lipschitz"):
            assert payload[key]["satisfied"] is True
        assert payload["kfunctional"]["argument"] > 0.0

    def test_bounds_unbounded_function(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--fn", "sqrt", "--n", "20", "--alpha", "1", "--rho", "1",
            "--x", "1", "--lip-m", "1", "--lip-gamma", "0.5",
        )
        assert code == 0
        payload = json.loads(out)
        assert "modulus" not in payload
        assert payload["lipschitz"]["rhs"] == pytest.approx((44 / 171) ** 0.25)


class TestFigures:
    def test_fig56(self, capsys, tmp_path):
        code, out, _ = run(capsys, "figures", "fig56", "--out", str(tmp_path))
        assert code == 0
        assert json.loads(out)["argmin_rho"] == 5.0
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "curve_rho_0.3.csv",
            "curve_rho_1.csv",
            "curve_rho_5.csv",
            "summary.json",
        ]


class TestFailures:
    def test_moment_existence(self, capsys):
        code, out, err = run(capsys, "eval", "--fn", "e2", "--n", "20", "--alpha", "1", "--rho", "0.05", "--x", "1")
        assert code == 3
        assert out == ""
        assert "abd: error code=3 kind=MomentExistenceError" in err

    def test_invalid_parameters(self, capsys):
        code, _, err = run(capsys, "eval", "--fn", "e1", "--n", "20", "--alpha", "2", "--rho", "1", "--x", "1")
        assert code == 3
        assert "kind=ValidationError" in err
        assert "alpha" in err

    def test_unknown_function(self, capsys):
        code, _, err = run(capsys, "eval", "--fn", "cosh", "--n", "20", "--alpha", "1", "--rho", "1", "--x", "1")
        assert code == 3
        assert "kind=DomainError" in err

    def test_non_convergence(self, capsys):
        code, _, err = run(
            capsys, "eval", "--fn", "e1", "--n", "20", "--alpha", "1", "--rho", "1", "--x", "3", "--k-max", "5",
        )
        assert code == 4
        assert "kind=TruncationCapError" in err

    def test_usage(self, capsys):
        code, _, err = run(capsys, "integrate")
        assert code == 2
        assert "abd: error code=2 kind=UsageError" in err

    def test_empty_n_list(self, capsys):
        code, out, err = run(
            capsys, "voronovskaja", "--fn", "e2", "--alpha", "1", "--rho", "1", "--x", "1", "--n-list", "",
        )
        assert code == 3
        assert out == ""
        assert "abd: error code=3 kind=DomainError" in err

    @pytest.mark.parametrize("points", ["-1", "0", "1"])
    def test_curve_needs_two_points(self, capsys, points):
        code, out, err = run(
            capsys, "curve", "--fn", "e1", "--n", "20", "--alpha", "1", "--rho", "1", "--points", points,
        )
        assert code == 3
        assert out == ""
        assert "abd: error code=3 kind=DomainError" in err

    def test_bad_integer_list(self, capsys):
        code, _, _ = run(capsys, "voronovskaja", "--fn", "e2", "--alpha", "1", "--rho", "1", "--x", "1", "--n-list", "a,b")
        assert code == 2


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "src.main", "moments", "--n", "20", "--alpha", "1", "--rho", "1", "--x", "1", "--order", "1"],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0, result.stderr
    assert json.loads(result.stdout)["closed_form"] == pytest.approx(1 / 19 * 2)
