"""Discretization of real-valued series and empirical joint histograms.

Quantile binning is rank-based: a run of identical values (an atom) always
occupies the single bin that holds the midpoint of its rank range. For
atom-free data this reduces to an even split at the empirical quantiles, and
it degrades gracefully on heavily tied data (a fat atom lands where its mass
sits instead of emptying bins), which pure edge assignment cannot do. The
empirical quantile edges are still carried on the sequence for reporting.
Equal-width binning is edge-based and right-closed: interior-edge ties go to
the lower bin, the maximum goes to the top bin. Both rules are deterministic
across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeries, EmptyOverlap, LengthMismatch, TooFewSamples
from .kernels import joint_counts

STRATEGIES = ("quantile", "equal_width")


@dataclass(frozen=True, eq=False)
class SymbolSequence:
    """Integer symbols in [0, bins) plus the bin edges that produced them."""

    symbols: np.ndarray
    bins: int
    edges: np.ndarray

    def __post_init__(self):
        symbols = np.asarray(self.symbols, dtype=np.int64)
        edges = np.asarray(self.edges, dtype=np.float64)
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if len(edges) != self.bins + 1:
            raise ValueError("edges must have bins + 1 entries")
        if np.any(np.diff(edges) < 0):
            raise ValueError("edges must be non-decreasing")
        if symbols.size and (symbols.min() < 0 or symbols.max() >= self.bins):
            raise ValueError("symbols out of range")
        symbols.flags.writeable = False
        edges.flags.writeable = False
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Dense joint occurrence counts over one or more symbol axes."""

    dims: tuple[int, ...]
    counts: np.ndarray
    total: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != self.dims:
            raise ValueError(f"counts shape {counts.shape} != dims {self.dims}")
        if self.total <= 0:
            raise ValueError("total must be positive")
        if counts.sum() != self.total:
            raise ValueError("counts do not sum to total")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    def probabilities(self) -> np.ndarray:
        return self.counts / float(self.total)

    def marginal(self, keep_axes: tuple[int, ...]) -> "JointHistogram":
        """Sum out every axis not listed in keep_axes (order preserved)."""
        keep = tuple(keep_axes)
        drop = tuple(a for a in range(len(self.dims)) if a not in keep)
        counts = self.counts.sum(axis=drop) if drop else self.counts
        counts = np.transpose(counts, axes=[sorted(keep).index(a) for a in keep])
        return JointHistogram(
            dims=tuple(self.dims[a] for a in keep),
            counts=counts,
            total=self.total,
        )


def _assign_edges(values: np.ndarray, edges: np.ndarray, bins: int) -> np.ndarray:
    # right-closed bins: interior-edge ties fall into the lower bin
    symbols = np.searchsorted(edges[1:bins], values, side="left")
    return symbols.astype(np.int64)


def _assign_ranks(values: np.ndarray, bins: int) -> np.ndarray:
    # bin of value v = floor(mid_rank(v) * bins / n), ties share their bin;
    # integer arithmetic on doubled ranks keeps the floor exact
    n = values.size
    uniq, counts = np.unique(values, return_counts=True)
    start = np.concatenate([[0], np.cumsum(counts)[:-1]])
    mid2 = 2 * start + counts - 1
    uniq_bins = (mid2 * bins) // (2 * n)
    idx = np.searchsorted(uniq, values)
    return uniq_bins[idx].astype(np.int64)


def bin_series(column, bins: int, strategy: str = "quantile") -> SymbolSequence:
    """Discretize one real-valued column into ``bins`` symbols.

    quantile: rank-midpoint assignment (equal occupancy up to ties, every
    distinct value separable); the empirical k/bins quantiles travel along as
    the reported edges. equal_width: uniform edges over [min, max]; the
    maximum lands in the top bin.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    values = np.asarray(column, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("column must be one-dimensional")
    if not np.all(np.isfinite(values)):
        raise ValueError("column must be finite")
    if values.size < 2 or (strategy == "quantile" and values.size < bins):
        raise TooFewSamples(f"need at least {bins} samples for {strategy} binning, got {values.size}")
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        raise DegenerateSeries("all values equal")

    if strategy == "quantile":
        edges = np.quantile(values, np.arange(bins + 1) / bins)
        edges[0], edges[-1] = lo, hi
        symbols = _assign_ranks(values, bins)
    else:
        edges = np.linspace(lo, hi, bins + 1)
        symbols = _assign_edges(values, edges, bins)
    return SymbolSequence(symbols=symbols, bins=bins, edges=edges)


def joint_histogram(seqs: list[SymbolSequence], lags: list[int]) -> JointHistogram:
    """Joint counts of lagged symbols.

    Axis m takes seq[m] delayed by lags[m] steps relative to the leading
    edge: with max lag M, sample t contributes the tuple
    (seq_0[t + M - lags[0]], ..., seq_k[t + M - lags[k]]) for
    t = 0 .. T-1-M. lags [0, 1] over one sequence therefore count the pairs
    (x_{t+1}, x_t).
    """
    if len(seqs) != len(lags):
        raise ValueError("one lag per sequence required")
    if not seqs:
        raise ValueError("at least one sequence required")
    if any(lag < 0 for lag in lags):
        raise ValueError("lags must be >= 0")
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise LengthMismatch(f"sequence lengths differ: {[len(s) for s in seqs]}")
    max_lag = max(lags)
    eff = length - max_lag
    if eff < 1:
        raise EmptyOverlap(f"no samples left after lag alignment (length {length}, max lag {max_lag})")

    dims = tuple(s.bins for s in seqs)
    codes = np.zeros(eff, dtype=np.int64)
    for seq, lag in zip(seqs, lags):
        offset = max_lag - lag
        codes *= seq.bins
        codes += seq.symbols[offset : offset + eff]
    counts = joint_counts(codes, int(np.prod(dims)))
    return JointHistogram(dims=dims, counts=counts.reshape(dims), total=eff)
