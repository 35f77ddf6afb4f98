"""File export: CSV tables, P5 graymaps for space-time fields, JSON metadata."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .diffusion import peclet_number
from .lattice import Protocol, SpaceTimeRecord, total_length
from .metrics import MetricSeries
from .runner import CollapseResult, EnsembleResult

SERIES_HEADER = ["T", "cut_count", "percent_unmixed", "mixing_norm", "mean_subseg_len"]


def export_series(series: MetricSeries, path) -> Path:
    """Metric series as CSV with the documented column contract."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SERIES_HEADER)
        for i in range(len(series)):
            w.writerow(
                [
                    int(series.t[i]),
                    int(series.cut_count[i]),
                    float(series.percent_unmixed[i]),
                    float(series.mixing_norm[i]),
                    float(series.mean_subseg_len[i]),
                ]
            )
    return path


def export_spacetime(record: SpaceTimeRecord, path, format: str = "pgm") -> Path:
    """Space-time raster, one row per iteration with T = 0 first.

    pgm writes binary P5 with colors mapped [0, 1] -> 0..255; csv writes
    the raw float matrix.
    """
    if record.fields is None:
        raise ValueError("record holds no fields (metrics-only run)")
    path = Path(path)
    if format == "pgm":
        gray = np.clip(np.rint(record.fields * 255.0), 0, 255).astype(np.uint8)
        header = f"P5\n{gray.shape[1]} {gray.shape[0]}\n255\n".encode("ascii")
        path.write_bytes(header + gray.tobytes())
    elif format == "csv":
        np.savetxt(path, record.fields, delimiter=",", fmt="%.17g")
    else:
        raise ValueError(f"unknown space-time format {format!r}; use pgm or csv")
    return path


def protocol_metadata(protocol: Protocol, p: float = 2.0) -> dict:
    """Resolved-run description embedded beside every output."""
    pe = None
    if protocol.d > 0 and protocol.t_max > 0:
        pe = peclet_number(total_length(protocol.n, protocol.ratio), protocol.d, protocol.t_max)
    return {
        "n": protocol.n,
        "ratio": {"num": protocol.ratio.num, "den": protocol.ratio.den},
        "permutation": list(protocol.permutation),
        "d": protocol.d,
        "pe": pe,
        "tmax": protocol.t_max,
        "p": p,
        "seed_of_truth": "deterministic",
    }


def export_metadata(protocol: Protocol, path, p: float = 2.0) -> Path:
    path = Path(path)
    with open(path, "w") as fh:
        json.dump(protocol_metadata(protocol, p), fh, indent=2)
        fh.write("\n")
    return path


def _perm_label(perm) -> str:
    return "".join(str(v) for v in perm)


def export_ensemble(ens: EnsembleResult, out_dir) -> Path:
    """Averaged curves, per-order norm curves, and the fit, as a directory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "average_curves.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["T", "avg_mixing_norm", "avg_cut_count", "avg_mean_subseg_len"])
        for i in range(ens.t_max + 1):
            w.writerow(
                [i, float(ens.avg_norm[i]), float(ens.avg_cut[i]), float(ens.avg_subseg[i])]
            )
    with open(out / "permutation_norms.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["T"] + [_perm_label(q) for q in ens.permutations])
        for i in range(ens.t_max + 1):
            w.writerow([i] + [float(s.mixing_norm[i]) for s in ens.series])
    payload = {
        "n": ens.n,
        "ratio": {"num": ens.ratio.num, "den": ens.ratio.den},
        "d": ens.d,
        "tmax": ens.t_max,
        "p": ens.p,
        "m": ens.m,
        "permutations": [_perm_label(q) for q in ens.permutations],
        "fit": None
        if ens.fit is None
        else {
            "m": ens.fit.m,
            "tau": ens.fit.tau,
            "alpha": ens.fit.alpha,
            "sse": ens.fit.sse,
            "converged": ens.fit.converged,
        },
        "t_pe": ens.t_pe,
        "seed_of_truth": "deterministic",
    }
    with open(out / "ensemble.json", "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return out


def export_collapse(cr: CollapseResult, path) -> Path:
    """Rescaled-collapse table: grid, mean, spread band, then each curve."""
    path = Path(path)
    lo = np.maximum(cr.mean_curve - cr.std_curve, 0.0)
    hi = cr.mean_curve + cr.std_curve
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["t_over_tpe", "mean_norm", "std", "band_lo", "band_hi"]
            + [f"curve_{k}" for k in range(cr.curves.shape[0])]
        )
        for i in range(cr.grid.size):
            w.writerow(
                [
                    float(cr.grid[i]),
                    float(cr.mean_curve[i]),
                    float(cr.std_curve[i]),
                    float(lo[i]),
                    float(hi[i]),
                ]
                + [float(v) for v in cr.curves[:, i]]
            )
    return path


def export_steepening(rows, path) -> Path:
    """Stopping-time / steepening sweep as CSV, one row per Peclet value."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["pe", "d", "found", "t_stop", "t_stop_interp", "t_stop_normalized", "max_slope"]
        )
        for row in rows:
            sol = row.solution
            w.writerow(
                [
                    row.pe,
                    row.d,
                    sol.found,
                    "" if sol.iteration is None else sol.iteration,
                    "" if sol.interpolated is None else sol.interpolated,
                    "" if sol.normalized_time is None else sol.normalized_time,
                    "" if row.max_slope is None else row.max_slope,
                ]
            )
    return path


def export_table_one(rows, path) -> Path:
    """Lattice-size table as CSV."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "r_n", "xi", "L", "t_max"])
        for row in rows:
            w.writerow([str(row.ratio), row.r_n, row.xi, row.length, row.t_max])
    return path


def export_fit_scatter(entries, path) -> Path:
    """Fit-parameter scatter, one (ratio, d, fit) row per ensemble."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "D", "tau", "alpha"])
        for ratio, d, fit in entries:
            w.writerow([str(ratio), d, fit.tau, fit.alpha])
    return path


def export(obj, path, format: str | None = None) -> Path:
    """Type-dispatched export used by the command line."""
    if isinstance(obj, MetricSeries):
        return export_series(obj, path)
    if isinstance(obj, SpaceTimeRecord):
        return export_spacetime(obj, path, format or "pgm")
    if isinstance(obj, EnsembleResult):
        return export_ensemble(obj, path)
    if isinstance(obj, CollapseResult):
        return export_collapse(obj, path)
    raise TypeError(f"no exporter for {type(obj).__name__}")
