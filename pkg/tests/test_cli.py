import json
import math

import pytest

from degcorr.cli import main


def run_cli(args):
    return main(args)


class TestSimulate:
    def test_writes_normalized_grid(self, tmp_path):
        out = tmp_path / "run1"
        code = run_cli(
            [
                "simulate", "--m", "1", "--n0", "3", "--steps", "400", "--replicas", "4",
                "--seed", "7", "--mode", "undirected", "--out", str(out),
            ]
        )
        assert code == 0
        payload = json.loads((out / "grid.json").read_text())
        total = math.fsum(payload["entries"].values())
        assert total == pytest.approx(1.0, abs=1e-12)
        summary = json.loads((out / "summary.json").read_text())
        assert "pearson_r" in summary and "knn" in summary and "degree_histogram" in summary
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["seed"] == 7 and manifest["replicas"] == 4

    def test_repeat_run_byte_identical(self, tmp_path):
        args = [
            "simulate", "--m", "1", "--n0", "3", "--steps", "300", "--replicas", "3",
            "--seed", "11", "--mode", "directed",
        ]
        run_cli(args + ["--out", str(tmp_path / "a")])
        run_cli(args + ["--out", str(tmp_path / "b")])
        assert (tmp_path / "a/grid.json").read_bytes() == (tmp_path / "b/grid.json").read_bytes()
        assert (tmp_path / "a/summary.json").read_bytes() == (tmp_path / "b/summary.json").read_bytes()

    def test_jobs_do_not_change_results(self, tmp_path):
        base = [
            "simulate", "--m", "2", "--steps", "200", "--replicas", "6",
            "--seed", "3", "--mode", "undirected",
        ]
        run_cli(base + ["--jobs", "1", "--out", str(tmp_path / "j1")])
        run_cli(base + ["--jobs", "4", "--out", str(tmp_path / "j4")])
        assert (tmp_path / "j1/grid.json").read_bytes() == (tmp_path / "j4/grid.json").read_bytes()

    def test_env_jobs_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DEGCORR_JOBS", "2")
        out = tmp_path / "env"
        code = run_cli(
            [
                "simulate", "--m", "1", "--steps", "100", "--replicas", "2",
                "--seed", "1", "--mode", "directed", "--out", str(out),
            ]
        )
        assert code == 0
        assert (out / "grid.json").exists()

    def test_max_k_truncates_to_tail(self, tmp_path):
        out = tmp_path / "trunc"
        run_cli(
            [
                "simulate", "--m", "1", "--n0", "3", "--steps", "500", "--replicas", "2",
                "--seed", "5", "--mode", "undirected", "--max-k", "4", "--out", str(out),
            ]
        )
        payload = json.loads((out / "grid.json").read_text())
        assert payload["tail_mass"] > 0
        assert all(int(k.split(",")[1]) <= 4 for k in payload["entries"])
        total = math.fsum(payload["entries"].values()) + payload["tail_mass"]
        assert total == pytest.approx(1.0, abs=1e-12)


class TestTheory:
    def test_stationary_anchor(self, tmp_path):
        out = tmp_path / "th"
        code = run_cli(
            ["theory", "stationary", "--m", "1", "--mode", "directed", "--max-k", "60", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads((out / "grid.json").read_text())
        assert payload["entries"]["1,2"] == pytest.approx(1 / 6, abs=1e-12)

    def test_transient_first_step(self, tmp_path):
        out = tmp_path / "tr"
        run_cli(
            ["theory", "transient", "--m", "1", "--n0", "3", "--steps", "1",
             "--mode", "directed", "--out", str(out)]
        )
        payload = json.loads((out / "grid.json").read_text())
        assert payload["entries"] == {"1,3": 0.25, "2,2": 0.25, "2,3": 0.25, "3,2": 0.25}

    def test_transient_snapshots(self, tmp_path):
        out = tmp_path / "snap"
        run_cli(
            ["theory", "transient", "--m", "1", "--n0", "3", "--steps", "5",
             "--mode", "undirected", "--snapshots", "1,3", "--out", str(out)]
        )
        assert (out / "grid_t1.json").exists()
        assert (out / "grid_t3.json").exists()
        assert (out / "grid.json").exists()

    def test_csv_format_outputs(self, tmp_path):
        run_cli(["theory", "stationary", "--m", "1", "--mode", "undirected",
                 "--max-k", "30", "--format", "csv", "--out", str(tmp_path / "th")])
        text = (tmp_path / "th/grid.csv").read_text()
        assert text.splitlines()[0] == "# kind=stationary"
        run_cli(["theory", "gf", "--m", "1", "--rows", "3", "--mode", "directed",
                 "--max-k", "30", "--format", "csv", "--out", str(tmp_path / "gf")])
        gf_lines = (tmp_path / "gf/gf.csv").read_text().splitlines()
        assert gf_lines[2].startswith("row\\k,")
        run_cli(["simulate", "--m", "1", "--steps", "200", "--replicas", "2", "--seed", "4",
                 "--mode", "directed", "--format", "csv", "--out", str(tmp_path / "sim")])
        assert (tmp_path / "sim/grid.csv").exists()
        from degcorr import read_grid
        back = read_grid(tmp_path / "sim/grid.csv")
        assert back.kind == "empirical"
        assert abs(sum(back.entries.values()) - 1.0) < 1e-9

    def test_gf_matches_stationary(self, tmp_path):
        run_cli(["theory", "gf", "--m", "2", "--rows", "5", "--mode", "directed",
                 "--max-k", "40", "--out", str(tmp_path / "gf")])
        run_cli(["theory", "stationary", "--m", "2", "--mode", "directed",
                 "--max-k", "40", "--out", str(tmp_path / "st")])
        gf = json.loads((tmp_path / "gf/gf.json").read_text())
        grid = json.loads((tmp_path / "st/grid.json").read_text())
        worst = 0.0
        for row in gf["rows"]:
            r = row["row"]
            for k, c in row["coefficients"].items():
                worst = max(worst, abs(c - grid["entries"].get(f"{r},{k}", 0.0)))
        assert worst < 1e-10


class TestCompare:
    def test_identical_grids_zero(self, tmp_path):
        run_cli(["theory", "stationary", "--m", "1", "--mode", "undirected",
                 "--max-k", "40", "--out", str(tmp_path / "th")])
        code = run_cli(
            ["compare", "--sim", str(tmp_path / "th/grid.json"),
             "--theory", str(tmp_path / "th/grid.json"), "--out", str(tmp_path / "cmp")]
        )
        assert code == 0
        text = (tmp_path / "cmp/errors.csv").read_text()
        assert "# max_error=0.0" in text

    def test_window_flag(self, tmp_path):
        run_cli(["theory", "stationary", "--m", "1", "--mode", "directed",
                 "--max-k", "40", "--out", str(tmp_path / "th")])
        run_cli(
            ["compare", "--sim", str(tmp_path / "th/grid.json"),
             "--theory", str(tmp_path / "th/grid.json"), "--window", "2:4",
             "--out", str(tmp_path / "cmp")]
        )
        text = (tmp_path / "cmp/errors.csv").read_text()
        assert "# window=2:4" in text
        header = [l for l in text.splitlines() if l.startswith("k1")][0]
        assert header == "k1\\k2,2,3,4"

    def test_incompatible_inputs_fail(self, tmp_path, capsys):
        run_cli(["theory", "stationary", "--m", "1", "--mode", "directed",
                 "--max-k", "30", "--out", str(tmp_path / "a")])
        run_cli(["theory", "stationary", "--m", "1", "--mode", "undirected",
                 "--max-k", "30", "--out", str(tmp_path / "b")])
        code = run_cli(
            ["compare", "--sim", str(tmp_path / "a/grid.json"),
             "--theory", str(tmp_path / "b/grid.json"), "--out", str(tmp_path / "cmp")]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert err.count("\n") == 1  # single diagnostic line
        assert "kind=incompatible-inputs" in err

    def test_missing_file_io_error(self, tmp_path, capsys):
        code = run_cli(
            ["compare", "--sim", str(tmp_path / "missing.json"),
             "--theory", str(tmp_path / "missing.json"), "--out", str(tmp_path / "cmp")]
        )
        assert code == 1
        assert "kind=io-error" in capsys.readouterr().err


class TestSpr:
    def test_zero_generations_point_mass(self, tmp_path):
        out = tmp_path / "spr0"
        code = run_cli(
            ["spr", "--n0", "3", "--steps", "0", "--replicas", "50", "--seed", "2",
             "--mode", "undirected", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads((out / "gen0.json").read_text())
        assert payload["entries"] == {"2,2": 1.0}

    def test_one_generation_counts(self, tmp_path):
        out = tmp_path / "spr1"
        run_cli(
            ["spr", "--n0", "3", "--steps", "1", "--replicas", "40", "--seed", "2",
             "--mode", "undirected", "--out", str(out)]
        )
        report = json.loads((out / "spr_report.json").read_text())
        sizes = report["generations"][1]["bucket_sizes"]
        assert sizes == {"4": 30}  # 10 groups of 4 -> 30 survivors

    def test_m_not_one_rejected(self, tmp_path, capsys):
        code = run_cli(
            ["spr", "--m", "2", "--n0", "3", "--steps", "1", "--replicas", "40",
             "--seed", "2", "--mode", "directed", "--out", str(tmp_path / "x")]
        )
        assert code == 1
        assert "kind=unsupported-mode" in capsys.readouterr().err


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run_cli(["simulate", "--bogus", "1"])
        assert exc.value.code != 0

    def test_missing_required(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["simulate", "--m", "1"])
        assert exc.value.code != 0

    def test_bad_window_value(self, tmp_path, capsys):
        (tmp_path / "g.json").write_text(
            json.dumps({"kind": "stationary", "mode": "directed", "m": 1,
                        "tail_mass": 0.0, "entries": {"1,2": 0.5, "2,2": 0.5}})
        )
        code = run_cli(
            ["compare", "--sim", str(tmp_path / "g.json"),
             "--theory", str(tmp_path / "g.json"), "--window", "abc",
             "--out", str(tmp_path / "cmp")]
        )
        assert code == 1
