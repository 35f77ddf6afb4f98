"""Command-line interface: verbs, flag resolution, config files, outputs."""

import csv
import json
import subprocess
import sys

import pytest

from ietmix.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_table1_prints_reference_row(capsys):
    assert run_cli("table1") == 0
    out = capsys.readouterr().out
    assert "369" in out and "14057" in out
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 8  # header + seven default ratios


def test_table1_writes_csv(tmp_path):
    assert run_cli("table1", "--ratio", "5/4", "--out", str(tmp_path)) == 0
    with open(tmp_path / "table1.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[1] == ["5/4", "5", "64", "369", "50"]


def test_list_permutations(capsys):
    assert run_cli("list-permutations", "--n", "4") == 0
    lines = capsys.readouterr().out.split()
    assert len(lines) == 9
    assert lines[0] == "2413"


def test_list_permutations_rejected(capsys):
    assert run_cli("list-permutations", "--n", "4", "--rejected") == 0
    out = capsys.readouterr().out
    assert "2143 rejected: reducible" in out
    assert "2341 rejected: rotation" in out
    assert "4231 rejected: fixed-consecutive-block" in out


def test_simulate_writes_series_raster_metadata(tmp_path, capsys):
    code = run_cli(
        "simulate", "--n", "4", "--ratio", "3/2", "--perm", "3,1,4,2",
        "--tmax", "2", "--out", str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "series.csv").exists()
    assert (tmp_path / "spacetime.pgm").exists()
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["tmax"] == 2 and meta["d"] == 0.0
    with open(tmp_path / "series.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[3][1] == "6"  # cut count after two shuffles
    assert float(rows[3][2]) == pytest.approx(300.0 / 13)


def test_simulate_metrics_only_skips_raster(tmp_path):
    run_cli(
        "simulate", "--n", "4", "--ratio", "3/2", "--perm", "3,1,4,2",
        "--tmax", "3", "--metrics-only", "--out", str(tmp_path),
    )
    assert (tmp_path / "series.csv").exists()
    assert not (tmp_path / "spacetime.pgm").exists()


def test_simulate_resolves_peclet_to_diffusivity(tmp_path):
    run_cli(
        "simulate", "--n", "4", "--ratio", "6/5", "--perm", "2,4,1,3",
        "--tmax", "500", "--pe", "2000", "--metrics-only", "--out", str(tmp_path),
    )
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["d"] == pytest.approx(0.450241)
    assert meta["pe"] == pytest.approx(2000.0)


def test_simulate_tmax_from_reference(tmp_path):
    run_cli(
        "simulate", "--n", "4", "--ratio", "6/5", "--perm", "2,4,1,3",
        "--tmax-from", "369,50", "--metrics-only", "--out", str(tmp_path),
    )
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["tmax"] == 166


def test_conflicting_flags_exit_nonzero(tmp_path, capsys):
    code = run_cli(
        "simulate", "--n", "4", "--ratio", "3/2", "--perm", "3,1,4,2",
        "--tmax", "5", "--d", "0.3", "--pe", "100", "--out", str(tmp_path),
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_missing_tmax_exits_nonzero(capsys):
    code = run_cli("simulate", "--n", "4", "--ratio", "3/2", "--perm", "3,1,4,2")
    assert code == 1
    assert "tmax" in capsys.readouterr().err


def test_fit_verb_on_simulated_series(tmp_path, capsys):
    run_cli(
        "simulate", "--n", "4", "--ratio", "3/2", "--perm", "3,1,4,2",
        "--tmax", "150", "--d", "0.5", "--metrics-only", "--out", str(tmp_path),
    )
    capsys.readouterr()
    code = run_cli("fit", "--series", str(tmp_path / "series.csv"),
                   "--out", str(tmp_path))
    assert code == 0
    payload = json.loads((tmp_path / "fit.json").read_text())
    assert payload["converged"] is True
    assert 0.1 <= payload["alpha"] <= 2.0


def test_sweep_exports_bundles_and_scatter(tmp_path, capsys):
    code = run_cli(
        "sweep", "--n", "4", "--ratio", "3/2", "--ratio", "5/4",
        "--tmax-from", "65,100", "--d", "0.5", "--out", str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "r3_2" / "ensemble.json").exists()
    assert (tmp_path / "r5_4" / "average_curves.csv").exists()
    assert (tmp_path / "fits.csv").exists()
    assert (tmp_path / "config.json").exists()


def test_stopping_time_verb(tmp_path, capsys):
    code = run_cli(
        "stopping-time", "--n", "4", "--ratio", "3/2", "--tmax", "60",
        "--pe", "50", "--pe", "100", "--out", str(tmp_path),
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.count("T_stop=") == 2
    with open(tmp_path / "stopping_times.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3
    cfg = json.loads((tmp_path / "config.json").read_text())
    assert cfg["lm_mode"] == "count"


def test_stopping_time_length_mode_differs(tmp_path, capsys):
    run_cli("stopping-time", "--n", "4", "--ratio", "6/5", "--tmax", "500",
            "--pe", "8000", "--out", str(tmp_path))
    count_rows = list(csv.reader(open(tmp_path / "stopping_times.csv", newline="")))
    run_cli("stopping-time", "--n", "4", "--ratio", "6/5", "--tmax", "500",
            "--pe", "8000", "--lm-mode", "length", "--out", str(tmp_path))
    length_rows = list(csv.reader(open(tmp_path / "stopping_times.csv", newline="")))
    assert int(length_rows[1][3]) > int(count_rows[1][3])


def test_config_file_supplies_defaults(tmp_path):
    cfg = {"n": 4, "ratio": "3/2", "perm": "3,1,4,2", "tmax": 2,
           "metrics_only": None}
    cfg_path = tmp_path / "job.json"
    cfg_path.write_text(json.dumps(cfg))
    code = run_cli("simulate", "--config", str(cfg_path), "--metrics-only",
                   "--out", str(tmp_path))
    assert code == 0
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["n"] == 4 and meta["tmax"] == 2


def test_explicit_flag_beats_config(tmp_path):
    cfg_path = tmp_path / "job.json"
    cfg_path.write_text(json.dumps({"tmax": 9}))
    run_cli("simulate", "--config", str(cfg_path), "--n", "4", "--ratio", "3/2",
            "--perm", "3,1,4,2", "--tmax", "4", "--metrics-only",
            "--out", str(tmp_path))
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["tmax"] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ietmix", "list-permutations", "--n", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "321"
