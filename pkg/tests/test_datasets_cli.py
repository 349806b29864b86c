import csv
import json

import numpy as np
import pytest

import isofamily as iso
from isofamily import datasets
from isofamily.cli import main
from isofamily.config import parse_config


def write_config(tmp_path, name="cfg.json", **overrides):
    doc = {
        "problem": "harmonic_oscillator",
        "x_min": -10.0,
        "x_max": 10.0,
        "n": 4001,
        "lambdas": [0.2],
    }
    doc.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(v) for v in row] for row in rows[1:]]


class TestRunFamily:
    def test_large_lambda_columns_match(self, tmp_path):
        cfg = parse_config(write_config(tmp_path, lambdas=[1e8]).read_text())
        out = tmp_path / "family.csv"
        datasets.run_family(cfg, out)
        header, rows = read_csv(out)
        assert header == ["x", "V0", "V", "v", "lambda_eff"]
        data = np.array(rows)
        assert np.max(np.abs(data[:, 2] - data[:, 1])) < 1e-6

    def test_emitted_modes_are_normalized(self, tmp_path):
        cfg = parse_config(
            write_config(
                tmp_path, lambdas=[0.1, 0.2], sweep_param_index=0, sweep_values=[0.1, 1.0, 5.0]
            ).read_text()
        )
        out = tmp_path / "family.csv"
        datasets.run_family(cfg, out)
        _, rows = read_csv(out)
        data = np.array(rows)
        n = cfg.n
        assert len(rows) == 3 * n
        for block in range(3):
            x = data[block * n : (block + 1) * n, 0]
            v = data[block * n : (block + 1) * n, 3]
            assert abs(np.trapezoid(v * v, x) - 1.0) < 1e-6

    def test_json_format(self, tmp_path):
        cfg = parse_config(write_config(tmp_path, format="json").read_text())
        out = tmp_path / "family.json"
        written = datasets.run_family(cfg, out)
        assert written == [out]
        payload = json.loads(out.read_text())
        assert payload["header"] == ["x", "V0", "V", "v", "lambda_eff"]
        assert payload["metadata"]["problem"] == "harmonic_oscillator"
        assert len(payload["rows"]) == cfg.n

    def test_metadata_sidecar(self, tmp_path):
        cfg = parse_config(write_config(tmp_path).read_text())
        out = tmp_path / "family.csv"
        written = datasets.run_family(cfg, out)
        meta = json.loads(written[1].read_text())
        assert meta["grid"] == {"x_min": -10.0, "x_max": 10.0, "n": 4001}
        assert meta["tuples"][0]["lambda_eff"] == pytest.approx(0.2)

    def test_normalization_gate_aborts(self, tmp_path, monkeypatch):
        def broken_mode(bp, lambdas):
            return bp.ground_state.with_values(2.0 * bp.ground_state.values)

        monkeypatch.setattr(datasets.closed_form, "closed_mode", broken_mode)
        cfg = parse_config(write_config(tmp_path).read_text())
        out = tmp_path / "family.csv"
        with pytest.raises(datasets.VerificationError, match="normalization check"):
            datasets.run_family(cfg, out)
        assert not out.exists()


class TestRunSweep2D:
    @pytest.fixture()
    def sweep_cfg(self, tmp_path):
        doc = {
            "problem": "harmonic_oscillator",
            "x_min": -10.0,
            "x_max": 10.0,
            "n": 4001,
            "sweep2d_lambda1_start": 0.1,
            "sweep2d_lambda1_stop": 5.0,
            "sweep2d_lambda1_count": 5,
            "sweep2d_lambda2_start": 0.1,
            "sweep2d_lambda2_stop": 5.0,
            "sweep2d_lambda2_count": 5,
            "fixed_x": [-1.4],
        }
        path = tmp_path / "s2.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return parse_config(path.read_text())

    def test_symmetry_is_exact(self, sweep_cfg, tmp_path):
        out = tmp_path / "table.csv"
        datasets.run_sweep2d(sweep_cfg, out)
        header, rows = read_csv(out)
        assert header == ["lambda1", "lambda2", "v_at_x"]
        table = {(r[0], r[1]): r[2] for r in rows}
        for (a, b), value in table.items():
            assert abs(value - table[(b, a)]) <= 1e-12

    def test_large_corner_matches_ground_state(self, tmp_path):
        doc = {
            "problem": "harmonic_oscillator",
            "x_min": -10.0,
            "x_max": 10.0,
            "n": 4001,
            "sweep2d_lambda1_start": 1e4,
            "sweep2d_lambda1_stop": 1e4,
            "sweep2d_lambda1_count": 1,
            "sweep2d_lambda2_start": 1e4,
            "sweep2d_lambda2_stop": 1e4,
            "sweep2d_lambda2_count": 1,
            "fixed_x": [-1.4],
        }
        cfg = parse_config(json.dumps(doc))
        out = tmp_path / "corner.csv"
        datasets.run_sweep2d(cfg, out)
        _, rows = read_csv(out)
        expected = np.pi ** -0.25 * np.exp(-0.5 * 1.4 ** 2)
        assert rows[0][2] == pytest.approx(expected, abs=1e-3)

    def test_multiple_positions_make_multiple_files(self, tmp_path):
        doc = json.loads((write_config(tmp_path)).read_text())
        del doc["lambdas"]
        doc.update(
            sweep2d_lambda1_start=0.5,
            sweep2d_lambda1_stop=1.0,
            sweep2d_lambda1_count=2,
            sweep2d_lambda2_start=0.5,
            sweep2d_lambda2_stop=1.0,
            sweep2d_lambda2_count=2,
            fixed_x=[-1.4, -1.6],
        )
        cfg = parse_config(json.dumps(doc))
        written = datasets.run_sweep2d(cfg, tmp_path / "mesh.csv")
        names = sorted(p.name for p in written)
        assert "mesh_x-1.4.csv" in names and "mesh_x-1.6.csv" in names


class TestRunLimits:
    def test_tables_and_masks(self, tmp_path):
        cfg = parse_config(write_config(tmp_path).read_text())
        written = datasets.run_limits(cfg, tmp_path / "lim.csv")
        names = {p.name for p in written}
        assert "lim_pursey.csv" in names and "lim_abraham_moses.csv" in names
        header, rows = read_csv(tmp_path / "lim_pursey.csv")
        assert header == ["x", "V0", "V_limit", "mask"]
        data = np.array(rows)
        assert data[0, 3] == 0 and np.isnan(data[0, 2])
        assert data[-1, 3] == 1 and np.isfinite(data[-1, 2])
        am = np.array(read_csv(tmp_path / "lim_abraham_moses.csv")[1])
        assert am[0, 3] == 1 and am[-1, 3] == 0


class TestRunVerify:
    def test_report_written(self, tmp_path):
        cfg = parse_config(write_config(tmp_path, verify_k=6, verify_tol=1e-4).read_text())
        out = tmp_path / "report.json"
        report, written = datasets.run_verify(cfg, out)
        assert report.passed
        payload = json.loads(out.read_text())
        assert payload["passed"] is True
        assert payload["k"] == 6
        assert payload["zero_mode_residual"] <= 1e-3

    def test_requires_verify_block(self, tmp_path):
        cfg = parse_config(write_config(tmp_path).read_text())
        with pytest.raises(datasets.VerificationError, match="verify"):
            datasets.run_verify(cfg, tmp_path / "report.json")


class TestNumericProblemInput:
    def test_round_trip(self, tmp_path):
        grid = iso.make_grid(-10.0, 10.0, 2001)
        lines = ["x,V"] + [f"{float(x)!r},{float(0.5 * x * x)!r}" for x in grid.x]
        potential_path = tmp_path / "pot.csv"
        potential_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        cfg = parse_config(
            write_config(
                tmp_path,
                problem="numeric",
                potential_file=str(potential_path),
                kinetic_scale=0.5,
                n=2001,
            ).read_text()
        )
        bp = datasets.build_problem(cfg)
        assert bp.energy_shift == pytest.approx(0.5, abs=1e-4)

    def test_grid_mismatch_rejected(self, tmp_path):
        potential_path = tmp_path / "pot.csv"
        potential_path.write_text("x,V\n0.0,1.0\n0.5,1.0\n1.0,1.0\n", encoding="utf-8")
        cfg = parse_config(
            write_config(
                tmp_path,
                problem="numeric",
                potential_file=str(potential_path),
                kinetic_scale=0.5,
            ).read_text()
        )
        with pytest.raises(datasets.VerificationError, match="does not match"):
            datasets.build_problem(cfg)


class TestCli:
    def test_catalog(self, capsys):
        assert main(["catalog"]) == 0
        assert "harmonic_oscillator" in capsys.readouterr().out

    def test_family_run(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path)
        out = tmp_path / "family.csv"
        assert main(["family", "--config", str(cfg_path), "--out", str(out)]) == 0
        assert out.exists()

    def test_validation_error_exit_code(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path, lambdas=[-0.5])
        assert main(["family", "--config", str(cfg_path)]) == 1
        assert "deleted interval" in capsys.readouterr().err

    def test_missing_config_is_io_error(self, tmp_path):
        assert main(["family", "--config", str(tmp_path / "nope.json")]) == 3

    def test_verify_exit_codes(self, tmp_path):
        ok = write_config(tmp_path, name="ok.json", verify_k=6, verify_tol=1e-4)
        strict = write_config(tmp_path, name="strict.json", verify_k=6, verify_tol=1e-9)
        assert main(["verify", "--config", str(ok), "--out", str(tmp_path / "a.json")]) == 0
        assert main(["verify", "--config", str(strict), "--out", str(tmp_path / "b.json")]) == 2

    def test_format_override(self, tmp_path):
        cfg_path = write_config(tmp_path)
        out = tmp_path / "family.csv"
        assert main(
            ["family", "--config", str(cfg_path), "--out", str(out), "--format", "json"]
        ) == 0
        assert (tmp_path / "family.json").exists()

    def test_wrong_mode_for_subcommand(self, tmp_path):
        cfg_path = write_config(tmp_path)
        assert main(["sweep2d", "--config", str(cfg_path)]) == 1

    def test_preset_end_to_end(self, tmp_path):
        out = tmp_path / "fig3.csv"
        assert main(["sweep2d", "--preset", "fig3", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["lambda1", "lambda2", "v_at_x"]
        assert len(rows) == 41 * 41
        meta = json.loads((tmp_path / "fig3.csv.meta.json").read_text())
        assert meta["fixed_x"] == -1.4
