"""Command-line front end.

Verbs:
  simulate           one protocol -> metric series + space-time raster
  list-permutations  allowed shuffle orders (optionally the rejected ones)
  sweep              ensembles over one or more ratios -> curves + fits
  fit                stretched-exponential fit of a series CSV
  collapse           rescaled decay collapse across ratios + universal fit
  stopping-time      Batchelor stopping times over a Peclet sweep
  table1             lattice size and matched iteration budget per ratio

Any value flag can also come from a JSON config file (--config, keys
named like the flag destinations); explicit flags win. Every output
directory gets the resolved configuration written beside the data.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .diffusion import diffusivity_from_peclet, match_iterations, peclet_number
from .fitting import fit_stretched_exponential
from .io import (
    export_collapse,
    export_fit_scatter,
    export_metadata,
    export_series,
    export_spacetime,
    export_steepening,
    export_table_one,
    export_ensemble,
)
from .lattice import Protocol, Ratio, iterate, total_length
from .metrics import compute_series
from .permutations import enumerate_allowed, is_allowed, violations
from .runner import (
    SteepeningRow,
    collapse,
    run_ensemble,
    steepening_report,
    table_one,
)
from .stopping import solve_stopping_time
import itertools


def _add_common(sub):
    sub.add_argument("--config", help="JSON file supplying defaults for value flags")
    sub.add_argument("--out", help="output directory (default: current directory)")


def _add_protocol_flags(sub, ratio_repeats: bool):
    sub.add_argument("--n", type=int, help="number of pieces (2..9)")
    if ratio_repeats:
        sub.add_argument(
            "--ratio", action="append",
            help="length ratio as a fraction a/b; repeat for several ratios",
        )
    else:
        sub.add_argument("--ratio", help="length ratio as a fraction a/b")
    sub.add_argument("--d", type=float, help="diffusivity in [0, 1/2]")
    sub.add_argument("--pe", type=float, help="Peclet number (alternative to --d)")
    sub.add_argument("--tmax", type=int, help="iteration budget")
    sub.add_argument(
        "--tmax-from", dest="tmax_from",
        help="derive the budget from a reference run, as L_ref,T_ref",
    )
    sub.add_argument("--p", type=float, help="mixing-norm order (default 2)")


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = json.load(fh)
        for key, value in cfg.items():
            if getattr(args, key, None) is None:
                setattr(args, key, value)
    return args


def _out_dir(args) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _resolve_tmax(args, length: int) -> int:
    if args.tmax is not None and args.tmax_from is not None:
        raise ValueError("--tmax and --tmax-from are mutually exclusive")
    if args.tmax is not None:
        return args.tmax
    if args.tmax_from is not None:
        l_ref, t_ref = (int(v) for v in str(args.tmax_from).split(","))
        return match_iterations(l_ref, t_ref, length)
    raise ValueError("need --tmax or --tmax-from")


def _resolve_d(args, length: int, t_max: int) -> float:
    if args.d is not None and args.pe is not None:
        raise ValueError("--d and --pe are mutually exclusive")
    if args.pe is not None:
        return diffusivity_from_peclet(length, args.pe, t_max)
    return args.d if args.d is not None else 0.0


def _norm_order(args) -> float:
    return args.p if args.p is not None else 2.0


def _write_config(out: Path, resolved: dict) -> None:
    with open(out / "config.json", "w") as fh:
        json.dump({**resolved, "seed_of_truth": "deterministic"}, fh, indent=2)
        fh.write("\n")


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"need --{name} (flag or config)")


def _cmd_simulate(args) -> int:
    _require(args, "n", "ratio", "perm")
    ratio = Ratio.parse(args.ratio)
    length = total_length(args.n, ratio)
    t_max = _resolve_tmax(args, length)
    d = _resolve_d(args, length, t_max)
    perm = tuple(int(v) for v in str(args.perm).split(","))
    p = _norm_order(args)
    protocol = Protocol(n=args.n, ratio=ratio, permutation=perm, d=d, t_max=t_max)
    out = _out_dir(args)
    fmt = args.format or "pgm"
    if args.metrics_only or fmt == "json":
        record = iterate(protocol, record_metrics_only=True, p=p)
        series = record.series
    else:
        record = iterate(protocol, p=p)
        series = compute_series(record, p)
        export_spacetime(record, out / f"spacetime.{fmt}", fmt)
    export_series(series, out / "series.csv")
    export_metadata(protocol, out / "metadata.json", p)
    print(
        f"simulated n={args.n} r={ratio} perm={','.join(map(str, perm))} "
        f"d={d:g} tmax={t_max} (L={length}) -> {out}"
    )
    return 0


def _cmd_list_permutations(args) -> int:
    allowed = enumerate_allowed(args.n)
    for perm in allowed:
        print("".join(map(str, perm)))
    if args.rejected:
        print()
        for perm in itertools.permutations(range(1, args.n + 1)):
            if not is_allowed(perm):
                print("".join(map(str, perm)), "rejected:", ", ".join(violations(perm)))
    return 0


def _ratio_list(args) -> list[Ratio]:
    raw = args.ratio
    if not raw:
        raise ValueError("need at least one --ratio")
    if isinstance(raw, str):
        raw = [raw]
    return [Ratio.parse(r) for r in raw]


def _cmd_sweep(args) -> int:
    _require(args, "n")
    out = _out_dir(args)
    p = _norm_order(args)
    entries = []
    for ratio in _ratio_list(args):
        length = total_length(args.n, ratio)
        t_max = _resolve_tmax(args, length)
        d = _resolve_d(args, length, t_max)
        ens = run_ensemble(args.n, ratio, d, t_max, p=p)
        export_ensemble(ens, out / f"r{ratio.num}_{ratio.den}")
        if ens.fit is not None:
            entries.append((ratio, d, ens.fit))
        print(
            f"r={ratio}: L={length} tmax={t_max} d={d:g}"
            + (f" tau={ens.fit.tau:.4g} alpha={ens.fit.alpha:.4g}" if ens.fit else "")
        )
    if entries:
        export_fit_scatter(entries, out / "fits.csv")
    _write_config(out, {"verb": "sweep", "n": args.n, "p": p})
    return 0


def _cmd_fit(args) -> int:
    with open(args.series) as fh:
        reader = csv.DictReader(fh)
        col = args.column or "mixing_norm"
        t, y = [], []
        for row in reader:
            t.append(float(row["T"]))
            y.append(float(row[col]))
    m = args.m if args.m is not None else y[0]
    fit = fit_stretched_exponential(np.array(t), np.array(y), m)
    payload = {
        "m": fit.m, "tau": fit.tau, "alpha": fit.alpha,
        "sse": fit.sse, "converged": fit.converged,
    }
    print(json.dumps(payload, indent=2))
    if args.out:
        out = _out_dir(args)
        with open(out / "fit.json", "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_collapse(args) -> int:
    _require(args, "n")
    out = _out_dir(args)
    p = _norm_order(args)
    ensembles = []
    for ratio in _ratio_list(args):
        length = total_length(args.n, ratio)
        t_max = _resolve_tmax(args, length)
        d = _resolve_d(args, length, t_max)
        ensembles.append(run_ensemble(args.n, ratio, d, t_max, p=p))
        print(f"r={ratio}: L={length} tmax={t_max} d={d:g}")
    cr = collapse(ensembles, grid_points=args.grid_points, grid_max=args.grid_max)
    export_collapse(cr, out / "collapse.csv")
    payload = {
        "tau_universal": cr.fit.tau, "alpha_universal": cr.fit.alpha,
        "sse": cr.fit.sse, "converged": cr.fit.converged,
    }
    with open(out / "universal_fit.json", "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    print(json.dumps(payload, indent=2))
    _write_config(out, {"verb": "collapse", "n": args.n, "p": p,
                        "grid_points": args.grid_points, "grid_max": args.grid_max})
    return 0


def _cmd_stopping_time(args) -> int:
    _require(args, "n", "ratio")
    out = _out_dir(args)
    ratio = Ratio.parse(args.ratio)
    length = total_length(args.n, ratio)
    t_max = _resolve_tmax(args, length)
    pes = sorted(float(v) for v in args.pe)
    p = _norm_order(args)
    if args.steepening:
        rows = steepening_report(
            args.n, ratio, t_max, pes, p=p,
            use_mean_lengths=args.lm_mode == "length",
        )
    else:
        base = run_ensemble(args.n, ratio, 0.0, t_max, p=p)
        lengths_curve = base.avg_subseg if args.lm_mode == "length" else None
        rows = []
        for pe in pes:
            sol = solve_stopping_time(base.avg_cut, pe, t_max, mean_lengths=lengths_curve)
            rows.append(
                SteepeningRow(pe=pe, d=length * length / (pe * t_max), solution=sol,
                              max_slope=None)
            )
    export_steepening(rows, out / "stopping_times.csv")
    for row in rows:
        sol = row.solution
        if sol.found:
            extra = f" max_slope={row.max_slope:.4g}" if row.max_slope is not None else ""
            print(f"pe={row.pe:g}: T_stop={sol.iteration} (interp {sol.interpolated:.2f}){extra}")
        else:
            print(f"pe={row.pe:g}: no crossing within tmax={t_max}")
    _write_config(out, {"verb": "stopping-time", "n": args.n, "ratio": str(ratio),
                        "tmax": t_max, "pe": pes, "lm_mode": args.lm_mode,
                        "steepening": args.steepening})
    return 0


def _cmd_table1(args) -> int:
    ratios = [Ratio.parse(r) for r in (args.ratio or
              ["5/4", "6/5", "7/5", "8/5", "9/5", "11/10", "13/10"])]
    ref = (Ratio.parse(args.ref_ratio), args.ref_tmax)
    rows = table_one(ratios, n=args.n if args.n is not None else 4, reference=ref)
    print(f"{'r':>7} {'r_n':>4} {'xi':>6} {'L':>8} {'t_max':>8}")
    for row in rows:
        print(f"{str(row.ratio):>7} {row.r_n:>4} {row.xi:>6} {row.length:>8} {row.t_max:>8}")
    if args.out:
        export_table_one(rows, _out_dir(args) / "table1.csv")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietmix",
        description="Cut-and-shuffle mixing of a 1-D lattice with diffusion.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("simulate", help="run one protocol and export its records")
    _add_protocol_flags(s, ratio_repeats=False)
    s.add_argument("--perm", help="shuffle order, e.g. 3,1,4,2")
    s.add_argument("--format", choices=["pgm", "csv", "json"],
                   help="space-time output format (json skips the raster)")
    s.add_argument("--metrics-only", action="store_true",
                   help="do not keep fields in memory (no raster output)")
    _add_common(s)
    s.set_defaults(func=_cmd_simulate)

    s = sub.add_parser("list-permutations", help="allowed shuffle orders")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--rejected", action="store_true",
                   help="also list rejected orders with the rule they break")
    s.set_defaults(func=_cmd_list_permutations)

    s = sub.add_parser("sweep", help="ensembles over ratios, averaged curves + fits")
    _add_protocol_flags(s, ratio_repeats=True)
    _add_common(s)
    s.set_defaults(func=_cmd_sweep)

    s = sub.add_parser("fit", help="fit a stretched exponential to a series CSV")
    s.add_argument("--series", required=True, help="CSV produced by simulate/sweep")
    s.add_argument("--column", help="value column (default mixing_norm)")
    s.add_argument("--m", type=float, help="fixed initial value (default: first row)")
    _add_common(s)
    s.set_defaults(func=_cmd_fit)

    s = sub.add_parser("collapse", help="rescaled decay collapse across ratios")
    _add_protocol_flags(s, ratio_repeats=True)
    s.add_argument("--grid-points", type=int, default=200)
    s.add_argument("--grid-max", type=float, default=5.0)
    _add_common(s)
    s.set_defaults(func=_cmd_collapse)

    s = sub.add_parser("stopping-time", help="Batchelor stopping times over a Peclet sweep")
    s.add_argument("--n", type=int)
    s.add_argument("--ratio", help="length ratio as a fraction a/b")
    s.add_argument("--tmax", type=int)
    s.add_argument("--tmax-from", dest="tmax_from")
    s.add_argument("--p", type=float)
    s.add_argument("--pe", action="append", required=True, help="repeatable Peclet value")
    s.add_argument("--lm-mode", choices=["count", "length"], default="count",
                   help="striation length from averaged counts (count) or averaged lengths")
    s.add_argument("--steepening", action="store_true",
                   help="also run diffusive ensembles and report max slopes")
    _add_common(s)
    s.set_defaults(func=_cmd_stopping_time)

    s = sub.add_parser("table1", help="lattice sizes and matched iteration budgets")
    s.add_argument("--n", type=int)
    s.add_argument("--ratio", action="append")
    s.add_argument("--ref-ratio", default="5/4")
    s.add_argument("--ref-tmax", type=int, default=50)
    _add_common(s)
    s.set_defaults(func=_cmd_table1)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _merge_config(args)
    try:
        return args.func(args)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
