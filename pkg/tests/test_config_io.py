"""Config grammar, CSV schema, checkpoint bytes, and run manifests."""

import math
import struct

import numpy as np
import pytest

import eulerriesz as er
from eulerriesz.checkpoint import MAGIC
from eulerriesz.config import normalized_scheme, validate_config
from eulerriesz.seriesio import CSV_COLUMNS, SeriesWriter, format_value, record_row

MINIMAL = """
dimension = 2
points_per_axis = 32
box_length = 6.283185307179586
alpha = 1.0
dt = 0.01
t_end = 1.0
scenario = torus_decay
"""


class TestConfigParsing:
    def test_defaults_applied(self):
        cfg = er.parse_config_text(MINIMAL)
        assert cfg.gamma == 1.0
        assert cfg.lam == 1.0
        assert cfg.background == 1.0
        assert cfg.scheme == "ifrk4"
        assert cfg.dealias is True
        assert cfg.density_floor == 1e-8
        assert cfg.m_index == 4
        assert cfg.s_neg is None
        assert cfg.s_neg_value == 0.5
        assert cfg.output_every == 10
        assert cfg.checkpoint_every == 0
        assert cfg.output_path == "./out"

    def test_comments_and_blanks_ignored(self):
        text = MINIMAL + "\n# full-line comment\n\ngamma = 0.5  # trailing comment\n"
        assert er.parse_config_text(text).gamma == 0.5

    def test_lambda_key_sets_interaction_strength(self):
        cfg = er.parse_config_text(MINIMAL + "lambda = 2.5\n")
        assert cfg.lam == 2.5

    def test_tuple_values(self):
        cfg = er.parse_config_text(
            MINIMAL + "ic_mode = 2,1\nic_mean_velocity = 0.1,-0.2\n"
        )
        assert cfg.ic_mode == (2, 1)
        assert cfg.ic_mean_velocity == (0.1, -0.2)

    def test_single_entry_vectors_pad(self):
        cfg = er.parse_config_text(MINIMAL + "ic_mode = 3\nic_mean_velocity = 0.4\n")
        assert cfg.mode_vector() == (3, 0)
        assert cfg.mean_velocity_vector() == (0.4, 0.0)

    def test_missing_required_key(self):
        text = "\n".join(
            line for line in MINIMAL.splitlines() if not line.startswith("alpha")
        )
        with pytest.raises(er.ConfigError, match="missing required key 'alpha'"):
            er.parse_config_text(text)

    def test_unknown_key(self):
        with pytest.raises(er.ConfigError, match="unknown key"):
            er.parse_config_text(MINIMAL + "viscosity = 1\n")

    def test_duplicate_key(self):
        with pytest.raises(er.ConfigError, match="duplicate key"):
            er.parse_config_text(MINIMAL + "gamma = 1\ngamma = 2\n")

    def test_malformed_line(self):
        with pytest.raises(er.ConfigError, match="key = value"):
            er.parse_config_text(MINIMAL + "gamma\n")

    def test_type_errors(self):
        with pytest.raises(er.ConfigError, match="expected an integer"):
            er.parse_config_text(MINIMAL + "m_index = two\n")
        with pytest.raises(er.ConfigError, match="expected a boolean"):
            er.parse_config_text(MINIMAL + "dealias = maybe\n")
        with pytest.raises(er.ConfigError, match="nan"):
            er.parse_config_text(MINIMAL + "gamma = nan\n")

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(er.ConfigError, match="cannot read"):
            er.load_config(str(tmp_path / "absent.cfg"))


class TestConfigValidation:
    def _cfg(self, **over):
        cfg = er.parse_config_text(MINIMAL)
        from dataclasses import replace

        return replace(cfg, **over)

    def test_alpha_window_enforced(self):
        with pytest.raises(er.ConfigError, match="alpha"):
            validate_config(self._cfg(alpha=2.0))
        with pytest.raises(er.ConfigError, match="alpha"):
            validate_config(self._cfg(dimension=3, alpha=0.5))

    def test_grid_shape_enforced(self):
        with pytest.raises(er.ConfigError, match="points_per_axis"):
            validate_config(self._cfg(points_per_axis=33))
        with pytest.raises(er.ConfigError, match="box_length"):
            validate_config(self._cfg(box_length=0.0))

    def test_s_neg_window(self):
        with pytest.raises(er.ConfigError, match="s_neg"):
            validate_config(self._cfg(s_neg=0.51))
        with pytest.raises(er.ConfigError, match="s_neg"):
            validate_config(self._cfg(s_neg=0.0))
        assert validate_config(self._cfg(s_neg=0.5)).s_neg_value == 0.5

    def test_scenario_and_scheme_tags(self):
        with pytest.raises(er.ConfigError, match="scenario"):
            validate_config(self._cfg(scenario="vortex"))
        with pytest.raises(er.ConfigError, match="scheme"):
            validate_config(self._cfg(scheme="leapfrog"))

    def test_scheme_aliases(self):
        assert normalized_scheme(self._cfg(scheme="explicit")) == "rk4"
        assert normalized_scheme(self._cfg(scheme="integrating-factor")) == "ifrk4"
        assert normalized_scheme(self._cfg(scheme="rk4")) == "rk4"

    def test_zero_mode_rejected(self):
        with pytest.raises(er.ConfigError, match="zero mode"):
            validate_config(self._cfg(ic_mode=(0, 0)))

    def test_vector_length_mismatch(self):
        with pytest.raises(er.ConfigError, match="ic_mean_velocity"):
            validate_config(self._cfg(ic_mean_velocity=(0.1, 0.2, 0.3)))


class TestConfigRoundTrip:
    def test_dump_then_parse_is_stable(self):
        cfg = er.parse_config_text(
            MINIMAL + "gamma = 0.25\nlambda = 1.5\nic_mode = 2,1\nscheme = explicit\n"
        )
        once = er.parse_config_text(er.dump_config(cfg))
        twice = er.parse_config_text(er.dump_config(once))
        assert once == twice
        assert er.dump_config(once) == er.dump_config(twice)

    def test_round_trip_preserves_physics(self):
        cfg = er.parse_config_text(MINIMAL + "gamma = 0.3\ns_neg = 0.4\n")
        back = er.parse_config_text(er.dump_config(cfg))
        assert back.gamma == cfg.gamma
        assert back.lam == cfg.lam
        assert back.s_neg_value == cfg.s_neg_value
        assert back.mode_vector() == cfg.mode_vector()
        assert normalized_scheme(back) == normalized_scheme(cfg)


def _record(base):
    values = {name: base + 0.001 * i for i, name in enumerate(CSV_COLUMNS)}
    return er.DiagnosticsRecord(**values)


class TestSeriesIO:
    def test_column_schema_is_frozen(self):
        assert CSV_COLUMNS == (
            "t",
            "E_total",
            "D_diss",
            "X_m",
            "tildeH_m",
            "Y_m",
            "Ybar_m",
            "F_m",
            "Z_m",
            "E_mod",
            "E_sigma",
            "D_rate",
            "mc_norm",
            "min_density",
            "u_L2",
            "h_L2",
            "h_Hneg_half",
            "u_Hneg_s",
            "h_Hneg_s",
            "h_Hneg_caseA",
            "u_Hneg_caseA",
            "neg_cross",
            "caseA_cross",
            "dt_used",
        )

    def test_seventeen_digits_round_trip(self):
        for x in (0.1 + 0.2, 1.0 / 3.0, math.pi, 1e-300, -1.2345678901234567e17):
            assert float(format_value(x)) == x

    def test_nan_serialization(self):
        assert format_value(float("nan")) == "nan"

    def test_row_field_count(self):
        assert len(record_row(_record(1.0)).split(",")) == len(CSV_COLUMNS)

    def test_write_read_round_trip(self, tmp_path):
        path = str(tmp_path / "series.csv")
        recs = [_record(math.pi), _record(-1.0 / 7.0)]
        with SeriesWriter(path) as w:
            for rec in recs:
                w.write_record(rec)
            assert w.rows == 2
        data = er.read_series(path)
        for i, name in enumerate(CSV_COLUMNS):
            assert data[name][0] == recs[0].t + 0.001 * i
            assert data[name][1] == recs[1].t + 0.001 * i

    def test_rows_visible_before_close(self, tmp_path):
        path = str(tmp_path / "live.csv")
        w = SeriesWriter(path)
        w.write_record(_record(2.0))
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        w.close()
        assert len(lines) == 2
        assert lines[0].startswith("t,E_total")

    def test_header_mismatch(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("time,energy\n1,2\n")
        with pytest.raises(er.FormatError, match="header"):
            er.read_series(path)

    def test_short_row(self, tmp_path):
        path = str(tmp_path / "short.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            fh.write("1.0,2.0\n")
        with pytest.raises(er.FormatError, match="line 2"):
            er.read_series(path)

    def test_non_numeric_field(self, tmp_path):
        path = str(tmp_path / "junk.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            fh.write(",".join(["oops"] * len(CSV_COLUMNS)) + "\n")
        with pytest.raises(er.FormatError, match="non-numeric"):
            er.read_series(path)


class TestCheckpoint:
    def _state(self):
        g = er.make_grid(2, 8, 2.0 * math.pi)
        rng = np.random.default_rng(123)
        hv = 0.1 * rng.standard_normal(g.shape)
        hv -= hv.mean()
        h = er.field_from_values(g, hv)
        u = tuple(
            er.field_from_values(g, 0.1 * rng.standard_normal(g.shape)) for _ in range(2)
        )
        return er.make_state(h, u, t=1.75, alpha=1.25, gamma=0.5, lam=2.0, background=1.5)

    def test_round_trip_bit_exact(self, tmp_path):
        path = str(tmp_path / "state.ckpt")
        st = self._state()
        er.save_checkpoint(path, st)
        back = er.load_checkpoint(path)
        assert back.t == st.t
        assert back.alpha == st.alpha
        assert back.gamma == st.gamma
        assert back.lam == st.lam
        assert back.background == st.background
        assert np.array_equal(back.h.values, st.h.values)
        for j in range(2):
            assert np.array_equal(back.u[j].values, st.u[j].values)

    def test_layout_is_exactly_header_plus_samples(self, tmp_path):
        path = str(tmp_path / "state.ckpt")
        st = self._state()
        er.save_checkpoint(path, st)
        with open(path, "rb") as fh:
            blob = fh.read()
        assert blob[:8] == MAGIC
        dim, n = struct.unpack_from("<II", blob, 8)
        assert (dim, n) == (2, 8)
        assert len(blob) == 8 + struct.calcsize("<II6d") + 3 * 8 * 64

    def test_bad_magic(self, tmp_path):
        path = str(tmp_path / "bogus.ckpt")
        with open(path, "wb") as fh:
            fh.write(b"NOTACKPT" + b"\x00" * 64)
        with pytest.raises(er.FormatError, match="not a checkpoint"):
            er.load_checkpoint(path)

    def test_truncated_payload(self, tmp_path):
        path = str(tmp_path / "cut.ckpt")
        er.save_checkpoint(path, self._state())
        with open(path, "rb") as fh:
            blob = fh.read()
        with open(path, "wb") as fh:
            fh.write(blob[:-8])
        with pytest.raises(er.FormatError, match="bytes"):
            er.load_checkpoint(path)

    def test_empty_file(self, tmp_path):
        path = str(tmp_path / "empty.ckpt")
        open(path, "wb").close()
        with pytest.raises(er.FormatError):
            er.load_checkpoint(path)


class TestManifest:
    def test_round_trip_and_config_embedding(self, tmp_path):
        cfg = er.parse_config_text(MINIMAL + "gamma = 0.25\n")
        doc = er.build_manifest(
            cfg,
            status="completed",
            t_final=1.0,
            n_steps=100,
            n_records=11,
            wall_seconds=2.5,
            csv_path="out.csv",
            checkpoint_path="out.ckpt",
            extra={"scheme": "ifrk4"},
        )
        path = str(tmp_path / "run.manifest.json")
        er.write_manifest(path, doc)
        back = er.read_manifest(path)
        assert back["package"] == "eulerriesz"
        assert back["status"] == "completed"
        assert back["steps"] == 100
        assert back["records"] == 11
        assert back["scheme"] == "ifrk4"
        embedded = er.parse_config_text(back["config_text"])
        assert embedded.gamma == 0.25
        assert embedded.scenario == "torus_decay"

    def test_write_is_deterministic(self, tmp_path):
        cfg = er.parse_config_text(MINIMAL)
        doc = er.build_manifest(
            cfg,
            status="completed",
            t_final=0.0,
            n_steps=0,
            n_records=1,
            wall_seconds=0.0,
            csv_path="a.csv",
            checkpoint_path=None,
        )
        p1, p2 = str(tmp_path / "m1.json"), str(tmp_path / "m2.json")
        er.write_manifest(p1, doc)
        er.write_manifest(p2, doc)
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            assert f1.read() == f2.read()
