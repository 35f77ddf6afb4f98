"""Scalar mixing diagnostics for one-dimensional color fields.

All functions are pure and operate on plain numpy arrays. Interface
detection uses exact inequality of neighboring values with no threshold:
any nonzero difference counts. That is the honest convention once
diffusion perturbs every site, and for diffusion-free runs it coincides
with counting true piece boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .lattice import SpaceTimeRecord


def _as_field(field) -> np.ndarray:
    c = np.asarray(field, dtype=np.float64)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("field must be a nonempty one-dimensional array")
    return c


def cut_count(field) -> int:
    """Number of interfaces: adjacent site pairs with unequal values.

    The pair across the periodic seam (last site, first site) is not
    counted; interfaces live strictly inside the segment, so the count
    ranges from 0 (uniform) to L-1.
    """
    c = _as_field(field)
    return int(np.count_nonzero(c[1:] != c[:-1]))


def percent_unmixed(field) -> float:
    """Longest run of one repeated value, as a percentage of the length."""
    c = _as_field(field)
    breaks = np.flatnonzero(c[1:] != c[:-1])
    edges = np.concatenate(([0], breaks + 1, [c.size]))
    return 100.0 * float(np.diff(edges).max()) / c.size


def average_color(field) -> float:
    """Mean color, conserved by shuffling and by periodic diffusion."""
    return float(_as_field(field).mean())


def mixing_norm(field, cbar: float | None = None, p: float = 2.0) -> float:
    """Length-weighted p-norm distance from the reference color cbar.

    Evaluates (sum_i |c_i - cbar|^p / L)^(1/p). For a time series pass
    the mean of the initial field and keep it frozen across iterations;
    when cbar is omitted the field's own mean is used. The deviations
    are summed in sorted order, which makes the result bitwise invariant
    under any permutation of the field.
    """
    c = _as_field(field)
    if p < 1:
        raise ValueError(f"norm order must satisfy p >= 1, got {p}")
    if cbar is None:
        cbar = average_color(c)
    dev = np.abs(c - cbar)
    powed = dev * dev if p == 2 else dev**p
    powed.sort()
    return float((powed.sum() / c.size) ** (1.0 / p))


def mean_subsegment_length(n_cuts: int) -> float:
    """Average run length on the unit-normalized segment: 1/(C+1)."""
    if n_cuts < 0:
        raise ValueError("cut count cannot be negative")
    return 1.0 / (n_cuts + 1.0)


def _snapshot(field, cbar: float, p: float) -> tuple[int, float, float, float]:
    """(cut count, percent unmixed, mixing norm, mean) for one field."""
    return (
        cut_count(field),
        percent_unmixed(field),
        mixing_norm(field, cbar, p),
        average_color(field),
    )


@dataclass(frozen=True)
class MetricSeries:
    """Per-iteration mixing diagnostics of one run.

    percent_unmixed and mean_subseg_len rely on exact-equality runs of
    values, so they are faithful striation diagnostics only for
    diffusion-free dynamics; runs_exact records that. cbar is the
    reference color frozen from T = 0 and reused at every iteration.
    """

    t: np.ndarray
    cut_count: np.ndarray
    percent_unmixed: np.ndarray
    mixing_norm: np.ndarray
    mean_subseg_len: np.ndarray
    mean_color: np.ndarray
    p: float
    cbar: float
    runs_exact: bool

    def __len__(self) -> int:
        return self.t.size


def _series_from_rows(rows, p: float, cbar: float, runs_exact: bool) -> MetricSeries:
    cuts = np.array([r[0] for r in rows], dtype=np.int64)
    return MetricSeries(
        t=np.arange(len(rows), dtype=np.int64),
        cut_count=cuts,
        percent_unmixed=np.array([r[1] for r in rows]),
        mixing_norm=np.array([r[2] for r in rows]),
        mean_subseg_len=1.0 / (cuts + 1.0),
        mean_color=np.array([r[3] for r in rows]),
        p=float(p),
        cbar=float(cbar),
        runs_exact=runs_exact,
    )


def compute_series(record: "SpaceTimeRecord", p: float = 2.0) -> MetricSeries:
    """Evaluate every diagnostic at every recorded iteration.

    The norm reference is frozen from the T = 0 field. Metrics-only
    records already carry their series; asking for a different p than
    they were collected with is an error rather than a silent recompute.
    """
    if record.fields is None:
        series = record.series
        if series is None:
            raise ValueError("record holds neither fields nor a metric series")
        if series.p != p:
            raise ValueError(
                f"record was collected at p={series.p}; cannot re-evaluate at p={p}"
            )
        return series
    cbar = average_color(record.fields[0])
    rows = [_snapshot(f, cbar, p) for f in record.fields]
    return _series_from_rows(rows, p, cbar, runs_exact=record.protocol.d == 0.0)
