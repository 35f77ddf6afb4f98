"""Ensemble orchestration and parameter sweeps.

An ensemble runs one (N, r, D, T_max) protocol family over a set of
shuffle orders (all allowed ones by default, in lexicographic order so
averages are reproducible), averages the metric curves across orders,
fits the averaged norm decay, and derives the e-folding scale used for
rescaled-curve comparisons.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .diffusion import diffusivity_from_peclet, match_iterations
from .fitting import FitResult, efolding_time, fit_stretched_exponential
from .lattice import Protocol, Ratio, iterate, total_length
from .metrics import MetricSeries
from .permutations import Perm, enumerate_allowed
from .stopping import StoppingTimeSolution, solve_stopping_time


@dataclass(frozen=True)
class EnsembleResult:
    """Averaged mixing behavior of one protocol family across shuffle orders."""

    n: int
    ratio: Ratio
    d: float
    t_max: int
    p: float
    permutations: tuple[Perm, ...]
    series: tuple[MetricSeries, ...]
    avg_norm: np.ndarray
    avg_cut: np.ndarray
    avg_subseg: np.ndarray
    m: float
    fit: FitResult | None
    t_pe: float | None


def run_ensemble(
    n: int, ratio: Ratio, d: float, t_max: int, permutations=None, p: float = 2.0
) -> EnsembleResult:
    """Simulate every shuffle order and average the metric curves.

    Averages are arithmetic means at each iteration, accumulated in the
    listed order, so results are bit-reproducible. For diffusive runs
    the averaged norm is fitted and the e-folding scale attached;
    diffusion-free ensembles keep fit=None since their norm cannot
    decay.
    """
    if permutations is None:
        permutations = enumerate_allowed(n)
    perms = tuple(tuple(int(v) for v in q) for q in permutations)
    if not perms:
        raise ValueError("ensemble needs at least one permutation")
    all_series = []
    for perm in perms:
        proto = Protocol(n=n, ratio=ratio, permutation=perm, d=d, t_max=t_max)
        all_series.append(iterate(proto, record_metrics_only=True, p=p).series)
    avg_norm = np.mean([s.mixing_norm for s in all_series], axis=0)
    avg_cut = np.mean([s.cut_count for s in all_series], axis=0)
    avg_subseg = np.mean([s.mean_subseg_len for s in all_series], axis=0)
    m = float(avg_norm[0])
    fit = None
    t_pe = None
    if d > 0.0:
        fit = fit_stretched_exponential(np.arange(t_max + 1), avg_norm, m)
        if fit.converged:
            t_pe = efolding_time(fit)
    return EnsembleResult(
        n=n,
        ratio=ratio,
        d=float(d),
        t_max=int(t_max),
        p=float(p),
        permutations=perms,
        series=tuple(all_series),
        avg_norm=avg_norm,
        avg_cut=avg_cut,
        avg_subseg=avg_subseg,
        m=m,
        fit=fit,
        t_pe=t_pe,
    )


@dataclass(frozen=True)
class CollapseResult:
    """Ensemble decay curves brought onto shared (T/T_Pe, norm/M) axes."""

    grid: np.ndarray
    curves: np.ndarray
    mean_curve: np.ndarray
    std_curve: np.ndarray
    fit: FitResult


def collapse(
    ensembles, grid_points: int = 200, grid_max: float = 5.0
) -> CollapseResult:
    """Rescale averaged decay curves onto common axes and fit their mean.

    Each averaged curve maps to (T/T_Pe, norm/M) and is resampled onto a
    uniform grid by linear interpolation; the mean of the resampled
    curves is then fitted with the initial value pinned at 1. Ensembles
    without a converged fit are dropped with a warning. The per-point
    standard deviation is taken across every individual shuffle-order
    curve, rescaled the same way; it describes the spread and plays no
    role in the fit.
    """
    usable = []
    for ens in ensembles:
        if ens.fit is None or not ens.fit.converged or not ens.t_pe:
            warnings.warn(
                f"collapse: skipping ensemble r={ens.ratio}, D={ens.d}: no converged fit"
            )
            continue
        usable.append(ens)
    if not usable:
        raise ValueError("no ensemble with a converged fit to collapse")
    grid = np.linspace(0.0, grid_max, grid_points)
    curves = []
    members = []
    for ens in usable:
        x = np.arange(ens.t_max + 1, dtype=np.float64) / ens.t_pe
        curves.append(np.interp(grid, x, ens.avg_norm / ens.m))
        members.extend(np.interp(grid, x, s.mixing_norm / ens.m) for s in ens.series)
    curves = np.vstack(curves)
    return CollapseResult(
        grid=grid,
        curves=curves,
        mean_curve=curves.mean(axis=0),
        std_curve=np.vstack(members).std(axis=0),
        fit=fit_stretched_exponential(grid, curves.mean(axis=0), m=1.0),
    )


@dataclass(frozen=True)
class SteepeningRow:
    """One Peclet point of the cut-off sharpening sweep."""

    pe: float
    d: float
    solution: StoppingTimeSolution
    max_slope: float | None


def steepening_report(
    n: int, ratio: Ratio, t_max: int, pe_list, p: float = 2.0,
    use_mean_lengths: bool = False,
) -> list[SteepeningRow]:
    """Cut-off sharpening across an ascending Peclet sweep.

    For each Pe: derive the matching diffusivity, run the diffusive
    ensemble, predict the stopping time from the shared diffusion-free
    cut curve, and report the steepest descent of norm/M against
    T / stopping time. A Pe whose crossing never happens yields a
    flagged row rather than failing the sweep.
    """
    pe_seq = [float(pe) for pe in pe_list]
    if not pe_seq or pe_seq[0] <= 0:
        raise ValueError("pe_list must be nonempty and positive")
    if any(b <= a for a, b in zip(pe_seq, pe_seq[1:])):
        raise ValueError("pe_list must be strictly ascending")
    length = total_length(n, ratio)
    base = run_ensemble(n, ratio, 0.0, t_max, p=p)
    lengths_curve = base.avg_subseg if use_mean_lengths else None
    rows = []
    for pe in pe_seq:
        d = diffusivity_from_peclet(length, pe, t_max)
        ens = run_ensemble(n, ratio, d, t_max, p=p)
        sol = solve_stopping_time(base.avg_cut, pe, t_max, mean_lengths=lengths_curve)
        max_slope = None
        if sol.found:
            drop = np.abs(np.diff(ens.avg_norm / ens.m))
            max_slope = float(drop.max()) * sol.interpolated
        rows.append(SteepeningRow(pe=pe, d=d, solution=sol, max_slope=max_slope))
    return rows


@dataclass(frozen=True)
class TableRow:
    """Lattice geometry and matched iteration budget for one ratio."""

    ratio: Ratio
    r_n: int
    xi: int
    length: int
    t_max: int


def table_one(ratios, n: int = 4, reference: tuple[Ratio, int] = (Ratio(5, 4), 50)):
    """Lattice length and equal-diffusion iteration budget per ratio.

    The budget scales from the reference (ratio, t_max) pair by the
    squared length ratio, rounded up to a whole iteration.
    """
    ref_ratio, ref_t_max = reference
    l_ref = total_length(n, ref_ratio)
    rows = []
    for ratio in ratios:
        length = total_length(n, ratio)
        rows.append(
            TableRow(
                ratio=ratio,
                r_n=ratio.num,
                xi=ratio.den ** (n - 1),
                length=length,
                t_max=match_iterations(l_ref, ref_t_max, length),
            )
        )
    return rows
