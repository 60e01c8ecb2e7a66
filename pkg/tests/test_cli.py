"""Command-line surface: exit codes, output lines, artifact side effects."""

import math

import numpy as np
import pytest

from eulerriesz.cli import main

TWOPI = 2.0 * math.pi

RUN_CFG = f"""
dimension = 1
points_per_axis = 32
box_length = {TWOPI!r}
alpha = 0.5
gamma = 0.5
dt = 0.01
t_end = 0.1
scenario = single_mode
ic_amplitude = 0.02
output_every = 5
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _series_csv(tmp_path, rate=2.0):
    from eulerriesz.seriesio import CSV_COLUMNS

    t = np.linspace(0.0, 5.0, 101)
    y = 3.0 * np.exp(-rate * t)
    lines = [",".join(CSV_COLUMNS)]
    for i in range(len(t)):
        row = {name: 1.0 for name in CSV_COLUMNS}
        row["t"] = t[i]
        row["E_mod"] = y[i]
        lines.append(",".join("%.17g" % row[name] for name in CSV_COLUMNS))
    return _write(tmp_path, "series.csv", "\n".join(lines) + "\n")


class TestRunCommand:
    def test_run_writes_artifacts(self, tmp_path, capsys):
        cfg = _write(tmp_path, "run.cfg", RUN_CFG)
        prefix = str(tmp_path / "out" / "case")
        assert main(["run", cfg, "--output", prefix]) == 0
        out = capsys.readouterr().out
        assert "status=completed" in out
        assert f"series={prefix}.csv" in out
        assert (tmp_path / "out" / "case.csv").exists()
        assert (tmp_path / "out" / "case.manifest.json").exists()
        assert (tmp_path / "out" / "case.ckpt").exists()

    def test_blow_up_exits_zero_with_report(self, tmp_path, capsys):
        cfg = _write(
            tmp_path,
            "boom.cfg",
            RUN_CFG.replace("ic_amplitude = 0.02", "ic_amplitude = 0.19")
            + "density_floor = 0.9\n",
        )
        assert main(["run", cfg, "--output", str(tmp_path / "boom")]) == 0
        out = capsys.readouterr().out
        assert "status=blow-up" in out
        assert "blow_up_time=0" in out

    def test_missing_config_is_error(self, tmp_path, capsys):
        code = main(["run", str(tmp_path / "absent.cfg")])
        assert code == 2
        err = capsys.readouterr().err
        assert err.startswith("error[config]:")

    def test_invalid_config_reports_kind(self, tmp_path, capsys):
        cfg = _write(tmp_path, "bad.cfg", RUN_CFG + "viscosity = 1\n")
        assert main(["run", cfg]) == 2
        assert "error[config]: unknown key" in capsys.readouterr().err


class TestRatesCommand:
    def test_fit_line_format(self, tmp_path, capsys):
        series = _series_csv(tmp_path)
        assert main(["rates", series, "--column", "E_mod"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("column=E_mod kind=exp method=direct rate=")
        rate = float(out.split("rate=")[1].split()[0])
        assert rate == pytest.approx(2.0, rel=1e-10)

    def test_explicit_window(self, tmp_path, capsys):
        series = _series_csv(tmp_path)
        assert main(["rates", series, "--window", "2,5"]) == 0
        out = capsys.readouterr().out
        assert "window=2," in out

    def test_figure_written(self, tmp_path, capsys):
        series = _series_csv(tmp_path)
        fig = str(tmp_path / "fit.png")
        assert main(["rates", series, "--figure", fig]) == 0
        assert f"figure={fig}" in capsys.readouterr().out
        assert (tmp_path / "fit.png").stat().st_size > 0

    def test_unknown_column(self, tmp_path, capsys):
        series = _series_csv(tmp_path)
        assert main(["rates", series, "--column", "nope"]) == 2
        assert "no column" in capsys.readouterr().err

    def test_bad_window_spec(self, tmp_path, capsys):
        series = _series_csv(tmp_path)
        assert main(["rates", series, "--window", "2"]) == 2
        assert "error[error]:" in capsys.readouterr().err

    def test_fit_failure_is_reported(self, tmp_path, capsys):
        from eulerriesz.seriesio import CSV_COLUMNS

        lines = [",".join(CSV_COLUMNS)]
        lines.append(",".join(["1.0"] * len(CSV_COLUMNS)))
        series = _write(tmp_path, "tiny.csv", "\n".join(lines) + "\n")
        assert main(["rates", series]) == 2
        assert "error[fit]:" in capsys.readouterr().err


class TestPredictCommand:
    def test_reference_point(self, capsys):
        assert main(["predict", "-d", "2", "--alpha", "1", "--s", "0.5"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "weak_rate=0.33333333333333331"
        assert lines[1] == "sharp_rate=1"
        assert lines[2] == "spectral_gap=0.5"
        assert lines[3] == "case_a=true"
        assert lines[4] == "case_b=false"

    def test_sharp_rate_can_be_none(self, capsys):
        assert main(["predict", "-d", "2", "--alpha", "1", "--s", "0.3"]) == 0
        assert "sharp_rate=none" in capsys.readouterr().out

    def test_domain_error_exit_code(self, capsys):
        assert main(["predict", "-d", "2", "--alpha", "3", "--s", "0.5"]) == 2
        assert "error[domain]:" in capsys.readouterr().err

    def test_lambda_long_flag(self, capsys):
        assert (
            main(["predict", "-d", "2", "--alpha", "1", "--s", "0.5", "--lambda", "4"])
            == 0
        )
        # 4 c lam kappa^2 = 16 > gamma^2 = 1: oscillatory, gap = gamma/2
        assert "spectral_gap=0.5" in capsys.readouterr().out


class TestInequalitiesCommand:
    def test_single_suite_with_outputs(self, tmp_path, capsys):
        out_csv = str(tmp_path / "ratios.csv")
        fig = str(tmp_path / "ratios.png")
        code = main(
            [
                "inequalities",
                "--suite",
                "gn",
                "--trials",
                "10",
                "--seed",
                "1",
                "--out",
                out_csv,
                "--figure",
                fig,
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "suite=gn trials=10 max_ratio=" in out
        with open(out_csv, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        assert lines[0] == "trial,ratio"
        assert len(lines) == 11
        assert (tmp_path / "ratios.png").stat().st_size > 0

    def test_all_suites_suffix_outputs(self, tmp_path, capsys):
        out_csv = str(tmp_path / "r.csv")
        assert main(["inequalities", "--trials", "3", "--out", out_csv]) == 0
        out = capsys.readouterr().out
        assert out.count("suite=") == 6
        assert (tmp_path / "r_gn.csv").exists()
        assert (tmp_path / "r_adjoint.csv").exists()

    def test_unknown_suite_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["inequalities", "--suite", "bogus"])
        assert info.value.code == 2


class TestOracleCommand:
    def test_passes_at_default_tolerance(self, capsys):
        assert main(["oracle", "--n", "8"]) == 0
        out = capsys.readouterr().out
        assert "ok=true" in out
        assert out.count("check=") >= 10

    def test_fails_at_impossible_tolerance(self, capsys):
        assert main(["oracle", "--n", "8", "--tol", "1e-30"]) == 1
        assert "ok=false" in capsys.readouterr().out


class TestArgparseBehavior:
    def test_no_command_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
