"""Integer-lattice line segment and its cut-and-shuffle dynamics.

The segment is an array of L color values, one per lattice site. It is
cut at fixed positions into N pieces whose lengths grow by a constant
rational ratio r = r_n/r_d > 1 between neighbors. Scaling the first
piece to xi = r_d^(N-1) sites makes every piece length the exact integer
r_n^(j-1) * r_d^(N-j), so cuts always fall between sites and a shuffle
is an exact permutation of sites: no material is created or lost, ever.

One iteration of the dynamics is shuffle first, then one diffusion sweep
(skipped when D = 0); the state is recorded after the full iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diffusion import StabilityError, diffusion_step
from .metrics import MetricSeries, _series_from_rows, _snapshot, average_color
from .permutations import Perm, as_permutation

#: Piece lengths and the total length must stay indexable by 64-bit ints.
_MAX_LENGTH = 2**63 - 1


class CapacityError(OverflowError):
    """Lattice lengths exceeding the 64-bit budget (no silent wraparound)."""


@dataclass(frozen=True)
class Ratio:
    """Adjacent piece-length ratio r = num/den, stored reduced, with r > 1."""

    num: int
    den: int

    def __post_init__(self):
        num, den = int(self.num), int(self.den)
        if num <= 0 or den <= 0:
            raise ValueError(f"ratio terms must be positive, got {num}/{den}")
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)
        if self.num <= self.den:
            raise ValueError(f"ratio must exceed 1, got {num}/{den}")

    @classmethod
    def parse(cls, text: str) -> "Ratio":
        """Parse 'a/b'. Fractions only: a float literal would smuggle in an
        implicit, surprising rational reconstruction."""
        num, sep, den = text.partition("/")
        if not sep:
            raise ValueError(f"ratio must be written as a fraction a/b, got {text!r}")
        return cls(int(num), int(den))

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def _check_piece_count(n: int) -> None:
    if int(n) != n or not 2 <= n <= 9:
        raise ValueError(f"piece count must be an integer in 2..9, got {n}")


def subsegment_lengths(n: int, ratio: Ratio) -> np.ndarray:
    """Integer piece lengths xi * r^(j-1) for j = 1..N, xi = r_d^(N-1).

    Evaluated exactly as r_n^(j-1) * r_d^(N-j) in arbitrary-precision
    integers; the shared scale makes every entry integral and the entries
    coprime as a set. Totals beyond the 64-bit budget raise CapacityError
    instead of degrading to floats.
    """
    _check_piece_count(n)
    lengths = [ratio.num**j * ratio.den ** (n - 1 - j) for j in range(n)]
    if sum(lengths) > _MAX_LENGTH:
        raise CapacityError(
            f"total lattice length {sum(lengths)} exceeds 64-bit capacity "
            f"(n={n}, r={ratio})"
        )
    return np.array(lengths, dtype=np.int64)


def total_length(n: int, ratio: Ratio) -> int:
    """Total site count L, the sum of the N piece lengths."""
    return int(subsegment_lengths(n, ratio).sum())


def initial_field(n: int, ratio: Ratio) -> np.ndarray:
    """Piecewise-constant start state: piece j carries color (j-1)/(N-1)."""
    lengths = subsegment_lengths(n, ratio)
    colors = np.arange(n, dtype=np.float64) / (n - 1)
    return np.repeat(colors, lengths)


def cut_positions(n: int, ratio: Ratio) -> np.ndarray:
    """The N-1 interior cut sites: cumulative piece lengths short of L."""
    return np.cumsum(subsegment_lengths(n, ratio))[:-1]


def _piece_bounds(length: int, cuts) -> np.ndarray:
    cuts = np.asarray(cuts, dtype=np.int64)
    if cuts.ndim != 1:
        raise ValueError("cuts must be a one-dimensional integer array")
    if cuts.size and (
        cuts[0] <= 0 or cuts[-1] >= length or np.any(np.diff(cuts) <= 0)
    ):
        raise ValueError(
            f"cut positions must be strictly increasing inside (0, {length})"
        )
    return np.concatenate(([0], cuts, [length]))


def shuffle_step(field, cuts, permutation) -> np.ndarray:
    """Cut the field at the given positions and reassemble the pieces.

    Output slot k is filled by input piece permutation[k]: with pieces
    P_1..P_N delimited by the cuts, the result is the concatenation
    P_pi(1), P_pi(2), ..., P_pi(N). A pure rearrangement: the output
    holds the same multiset of values in a different order.
    """
    c = np.asarray(field)
    if c.ndim != 1:
        raise ValueError("field must be one-dimensional")
    bounds = _piece_bounds(c.size, cuts)
    perm = as_permutation(permutation)
    if len(perm) != bounds.size - 1:
        raise ValueError(
            f"permutation acts on {len(perm)} pieces but cuts define {bounds.size - 1}"
        )
    return np.concatenate([c[bounds[j - 1] : bounds[j]] for j in perm])


@dataclass(frozen=True)
class Protocol:
    """Complete recipe for one run: pieces, ratio, order, diffusivity, budget."""

    n: int
    ratio: Ratio
    permutation: Perm
    d: float = 0.0
    t_max: int = 0

    def __post_init__(self):
        _check_piece_count(self.n)
        perm = as_permutation(self.permutation)
        if len(perm) != self.n:
            raise ValueError(f"permutation {perm} does not act on {self.n} pieces")
        object.__setattr__(self, "permutation", perm)
        if not 0.0 <= self.d <= 0.5:
            raise StabilityError(
                f"diffusivity {self.d} outside the stable range [0, 1/2]"
            )
        object.__setattr__(self, "d", float(self.d))
        if int(self.t_max) != self.t_max or self.t_max < 0:
            raise ValueError(f"t_max must be a nonnegative integer, got {self.t_max}")
        object.__setattr__(self, "t_max", int(self.t_max))


@dataclass(frozen=True)
class SpaceTimeRecord:
    """Per-iteration history of one run.

    Either the full fields (t_max+1 rows of L sites) or, for long runs
    on big lattices, just the metric snapshots collected on the fly.
    """

    protocol: Protocol
    fields: np.ndarray | None
    series: MetricSeries | None = None

    def __len__(self) -> int:
        return self.protocol.t_max + 1

    def __getitem__(self, t: int) -> np.ndarray:
        if self.fields is None:
            raise ValueError("record holds metric snapshots only, not fields")
        return self.fields[t]


def _shuffle_indices(protocol: Protocol) -> np.ndarray:
    """Site-index gather map of one shuffle; cuts sit at fixed positions."""
    lengths = subsegment_lengths(protocol.n, protocol.ratio)
    bounds = np.concatenate(([0], np.cumsum(lengths)))
    return np.concatenate(
        [np.arange(bounds[j - 1], bounds[j], dtype=np.intp) for j in protocol.permutation]
    )


def iterate(
    protocol: Protocol, record_metrics_only: bool = False, p: float = 2.0
) -> SpaceTimeRecord:
    """Run the full shuffle/diffuse loop, recording every iteration.

    T = 0 is the initial field; iteration T applies the shuffle and then
    one diffusion sweep when D > 0, and records afterwards. The cuts sit
    at the same absolute sites every iteration, so the shuffle is a
    single fixed site permutation precomputed once. Equal protocols give
    bit-identical records.

    With record_metrics_only the fields are dropped on the fly and only
    the metric series (at norm order p) is kept, bounding memory for
    long runs.
    """
    sigma = _shuffle_indices(protocol)
    field = initial_field(protocol.n, protocol.ratio)

    if not record_metrics_only:
        out = np.empty((protocol.t_max + 1, field.size), dtype=np.float64)
        out[0] = field
        for t in range(1, protocol.t_max + 1):
            field = field[sigma]
            if protocol.d > 0.0:
                field = diffusion_step(field, protocol.d)
            out[t] = field
        return SpaceTimeRecord(protocol, out)

    cbar = average_color(field)
    rows = [_snapshot(field, cbar, p)]
    for _ in range(protocol.t_max):
        field = field[sigma]
        if protocol.d > 0.0:
            field = diffusion_step(field, protocol.d)
        rows.append(_snapshot(field, cbar, p))
    series = _series_from_rows(rows, p, cbar, runs_exact=protocol.d == 0.0)
    return SpaceTimeRecord(protocol, None, series)
