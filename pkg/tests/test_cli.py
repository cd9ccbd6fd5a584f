"""End-to-end CLI runs, in process, with frozen output and exit codes."""

import json

import pytest

from plmonoid.cli import main
from plmonoid.formats import dumps_report

A_DENSE = "3\n0 0 0\n1 0 0\n0 1 1\n"
IDENTITY_COLMAP = "plm 3: 1 2 3\n"
B_STOCHASTIC = "3\n1/10 0 1/5\n9/10 1/2 4/5\n0 1/2 0\n"
BAD_SUMS = "2\n1/2 0\n0 1\n"
NOT_A_PLM = "2\n1 0\n1 0\n"

B_DECOMPOSITION = {
    "dim": 3,
    "terms": [
        {"lambda": "1/10", "colmap": [1, 2, 1]},
        {"lambda": "1/10", "colmap": [2, 2, 1]},
        {"lambda": "3/10", "colmap": [2, 2, 2]},
        {"lambda": "1/2", "colmap": [2, 3, 2]},
    ],
}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "a.txt": A_DENSE,
        "i.txt": IDENTITY_COLMAP,
        "b.txt": B_STOCHASTIC,
        "bad.txt": BAD_SUMS,
        "notplm.txt": NOT_A_PLM,
        "small.txt": "2\n1 0\n0 1\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


class TestMul:
    def test_default_output_is_text_plus_json(self, run, files):
        code, out, err = run("mul", files["a.txt"], files["a.txt"])
        assert code == 0
        assert out == (
            "3\n0 0 0\n0 0 0\n1 1 1\n"
            '{"classification": {"class": "rowplm", "m": 3}, "colmap": [3, 3, 3], "dim": 3}\n'
        )

    def test_json_only(self, run, files):
        code, out, _ = run("mul", files["a.txt"], files["i.txt"], "--json")
        assert code == 0
        assert json.loads(out) == {
            "dim": 3,
            "colmap": [2, 3, 3],
            "classification": {"class": "cplm", "leading": False},
        }

    def test_text_only(self, run, files):
        code, out, _ = run("mul", files["i.txt"], files["a.txt"], "--text")
        assert code == 0
        assert out == A_DENSE

    def test_json_and_text_conflict(self, run, files):
        code, _, _ = run("mul", files["a.txt"], files["a.txt"], "--json", "--text")
        assert code == 2

    def test_dimension_mismatch_exit_3(self, run, files):
        code, _, err = run("mul", files["a.txt"], files["small.txt"])
        assert code == 3
        assert "dimension mismatch" in err

    def test_missing_file_exit_2(self, run, tmp_path):
        code, _, err = run("mul", str(tmp_path / "nope.txt"), str(tmp_path / "nope.txt"))
        assert code == 2
        assert "nope.txt" in err

    def test_non_plm_input_exit_2(self, run, files):
        code, _, err = run("mul", files["notplm.txt"], files["notplm.txt"])
        assert code == 2
        assert "column 1" in err


class TestClassifyPeriodEigen:
    def test_classify(self, run, files):
        code, out, _ = run("classify", files["a.txt"])
        assert code == 0
        assert out == '{"class": "cplm", "leading": false}\n'

    def test_classify_identity_from_colmap_file(self, run, files):
        code, out, _ = run("classify", files["i.txt"])
        assert code == 0
        assert out == '{"class": "cplm", "leading": true}\n'

    def test_period(self, run, files):
        code, out, _ = run("period", files["a.txt"])
        assert code == 0
        assert out == '{"e": 2, "is_prerow": true, "m": 3, "periodicity": "prerow"}\n'

    def test_eigen(self, run, files):
        code, out, _ = run("eigen", files["i.txt"])
        assert code == 0
        report = json.loads(out)
        assert report["has_zero"] is False
        assert report["roots_of_unity_ok"] is True
        assert report["period"] == 1
        assert report["spectral_radius_numeric"] == pytest.approx(1.0, abs=1e-9)
        assert len(report["numeric_eigenvalues"]) == 3

    def test_eigen_rejects_nonpositive_tol(self, run, files):
        code, _, err = run("eigen", files["i.txt"], "--tol", "-1e-9")
        assert code == 2
        assert "--tol" in err


class TestDecompose:
    def test_golden_output(self, run, files):
        code, out, _ = run("decompose", files["b.txt"])
        assert code == 0
        assert out == dumps_report(B_DECOMPOSITION)

    def test_check_flag_passes(self, run, files):
        code, out, _ = run("decompose", files["b.txt"], "--check")
        assert code == 0
        assert json.loads(out) == B_DECOMPOSITION

    def test_bad_column_sums_exit_4(self, run, files):
        code, _, err = run("decompose", files["bad.txt"])
        assert code == 4
        assert "not left stochastic" in err
        assert "1/2" in err

    def test_negative_entry_exit_4(self, run, tmp_path):
        p = tmp_path / "neg.txt"
        p.write_text("2\n-1/2 0\n3/2 1\n")
        code, _, err = run("decompose", str(p))
        assert code == 4

    def test_decimal_entries_parse_exactly(self, run, tmp_path):
        p = tmp_path / "dec.txt"
        p.write_text("2\n0.3 0.7\n0.7 0.3\n")
        code, out, _ = run("decompose", str(p))
        assert code == 0
        terms = json.loads(out)["terms"]
        assert terms == [
            {"lambda": "3/10", "colmap": [1, 1]},
            {"lambda": "2/5", "colmap": [2, 1]},
            {"lambda": "3/10", "colmap": [2, 2]},
        ]


class TestEnumerate:
    def test_d2_golden(self, run):
        code, out, _ = run("enumerate", "2")
        assert code == 0
        assert out == "plm 2: 1 1\nplm 2: 1 2\nplm 2: 2 1\nplm 2: 2 2\n"

    def test_force_flag_is_accepted(self, run):
        code, out, _ = run("enumerate", "2", "--force")
        assert code == 0
        assert out.count("\n") == 4

    def test_large_d_refused_without_force(self, run):
        code, _, err = run("enumerate", "9")
        assert code == 2
        assert "--force" in err

    def test_nonpositive_d_refused(self, run):
        code, _, _ = run("enumerate", "0")
        assert code == 2


class TestVerify:
    def test_period_sweep_golden_report(self, run):
        code, out, err = run("verify", "period", "3")
        assert code == 0
        assert out == dumps_report(
            {
                "sweep": "period",
                "d": 3,
                "cases": 27,
                "pass": True,
                "failures": [],
                "findings": {"verdicts": {"periodic": 21, "prerow": 6}, "asserted": True},
                "elapsed_ms": 0,
            }
        )
        assert "period:" in err and "ms" in err

    def test_report_bytes_stable_across_runs(self, run):
        _, first, _ = run("verify", "eigen", "3")
        _, second, _ = run("verify", "eigen", "3")
        assert first == second

    def test_all_bundles_five_reports(self, run):
        code, out, err = run("verify", "all", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["d"] == 2
        assert set(payload["reports"]) == {"mul", "period", "eigen", "prerow", "decompose"}
        assert all(r["pass"] for r in payload["reports"].values())
        assert all(r["elapsed_ms"] == 0 for r in payload["reports"].values())

    def test_decompose_sweep_options(self, run):
        code, out, _ = run("verify", "decompose", "3", "--cases", "5", "--seed", "11")
        assert code == 0
        payload = json.loads(out)
        assert payload["cases"] == 5
        assert payload["findings"]["seed"] == 11

    def test_unknown_sweep_exit_2(self, run):
        code, _, _ = run("verify", "bogus", "3")
        assert code == 2

    def test_rejects_nonpositive_tol(self, run):
        code, _, _ = run("verify", "eigen", "2", "--tol", "0")
        assert code == 2


class TestOutFlag:
    def test_writes_file_and_keeps_stdout_quiet(self, run, files, tmp_path):
        target = tmp_path / "result.json"
        code, out, _ = run("classify", files["a.txt"], "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text() == '{"class": "cplm", "leading": false}\n'

    def test_verify_out(self, run, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run("verify", "period", "2", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["pass"] is True


def test_unknown_command_exit_2(run):
    code, _, _ = run("frobnicate", "x")
    assert code == 2


def test_missing_arguments_exit_2(run):
    code, _, _ = run("mul")
    assert code == 2
