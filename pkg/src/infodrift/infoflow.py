"""Plug-in estimators for entropy, mutual information, and transfer entropy.

All quantities are in bits and come straight from empirical histogram
frequencies; no bias correction is applied. Log ratios are computed from
integer count products, so structurally exact cancellations (a target that is
deterministic given its own past, a joint that factorizes exactly) yield an
exact 0.0. Tiny negative floating-point residue (> -1e-9) is clamped to zero;
anything more negative would be a bug and raises.

Transfer entropy uses single-step histories on both sides: the flow from
source j into target i is estimated from the triple distribution of
(i_{t+dt}, i_t, j_t). The matrix convention is values[i][j] = flow from
asset j into asset i; diagonals store the target's self conditional entropy
H(i_{t+dt} | i_t), which is flagged in the matrix metadata.
"""

from __future__ import annotations

import numpy as np

from .discretize import JointHistogram, SymbolSequence, joint_histogram
from .errors import LengthMismatch
from .matrices import ORIENTATION, InteractionMatrix

_NEG_TOL = -1e-9


def _clamp(value: float) -> float:
    if value < 0.0:
        if value < _NEG_TOL:
            raise AssertionError(f"plug-in estimate {value} below clamp tolerance")
        return 0.0
    return value


def _entropy_counts(counts: np.ndarray, total: int) -> float:
    c = counts[counts > 0].astype(np.float64)
    p = c / float(total)
    return _clamp(float(-(p * np.log2(p)).sum()))


def entropy(hist: JointHistogram) -> float:
    """Shannon entropy in bits of the histogram's empirical distribution."""
    return _entropy_counts(hist.counts, hist.total)


def mutual_information(x: SymbolSequence, y: SymbolSequence) -> float:
    """I(x; y) in bits from the empirical joint of the two sequences."""
    if len(x) != len(y):
        raise LengthMismatch(f"length {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise LengthMismatch("need at least 2 samples")
    hist = joint_histogram([x, y], lags=[0, 0])
    return mutual_information_from_joint(hist)


def mutual_information_from_joint(hist: JointHistogram) -> float:
    """Plug-in MI of a 2-axis histogram."""
    if len(hist.dims) != 2:
        raise ValueError("mutual information needs a 2-axis histogram")
    c = hist.counts
    rows = c.sum(axis=1)
    cols = c.sum(axis=0)
    nz = c > 0
    num = c[nz].astype(np.float64) * float(hist.total)
    den = np.outer(rows, cols)[nz].astype(np.float64)
    p = c[nz] / float(hist.total)
    return _clamp(float((p * np.log2(num / den)).sum()))


def transfer_entropy(source: SymbolSequence, target: SymbolSequence, dt: int = 1) -> float:
    """Transfer entropy source -> target in bits, histories one step deep.

    Estimated as sum over the empirical triple (target_{t+dt}, target_t,
    source_t) of p * log2[ p(target_future | both pasts) /
    p(target_future | own past) ].
    """
    if len(source) != len(target):
        raise LengthMismatch(f"length {len(source)} vs {len(target)}")
    if dt < 1:
        raise ValueError("dt must be >= 1")
    if len(target) < dt + 2:
        raise LengthMismatch(f"need at least dt + 2 = {dt + 2} samples, got {len(target)}")
    triple = joint_histogram([target, target, source], lags=[0, dt, dt])
    return transfer_entropy_from_joint(triple)


def transfer_entropy_from_joint(triple: JointHistogram) -> float:
    """Plug-in TE of a 3-axis (future, target-past, source-past) histogram."""
    if len(triple.dims) != 3:
        raise ValueError("transfer entropy needs a 3-axis histogram")
    c3 = triple.counts
    c_fp = c3.sum(axis=2)  # (future, target past)
    c_ps = c3.sum(axis=0)  # (target past, source past)
    c_p = c3.sum(axis=(0, 2))  # (target past,)
    nz = c3 > 0
    num = (c3 * c_p[np.newaxis, :, np.newaxis])[nz].astype(np.float64)
    den = (c_ps[np.newaxis, :, :] * c_fp[:, :, np.newaxis])[nz].astype(np.float64)
    p = c3[nz] / float(triple.total)
    return _clamp(float((p * np.log2(num / den)).sum()))


def self_conditional_entropy(target: SymbolSequence, dt: int = 1) -> float:
    """H(target_{t+dt} | target_t) in bits, the matrix-diagonal convention."""
    pair = joint_histogram([target, target], lags=[0, dt])
    past = pair.counts.sum(axis=0)
    return _clamp(_entropy_counts(pair.counts, pair.total) - _entropy_counts(past, pair.total))


def _default_ids(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(n))


def mi_matrix(seqs: list[SymbolSequence], asset_ids=None) -> InteractionMatrix:
    """Symmetric MI matrix; diagonals hold each sequence's own entropy."""
    n = len(seqs)
    ids = tuple(asset_ids) if asset_ids is not None else _default_ids(n)
    values = np.zeros((n, n))
    for i in range(n):
        values[i, i] = entropy(joint_histogram([seqs[i]], lags=[0]))
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = mutual_information(seqs[i], seqs[j])
    return InteractionMatrix(
        asset_ids=ids,
        values=values,
        measure="mutual_information",
        directed=False,
        units="bits",
        params={"diagonal": "self entropy H(x)"},
    )


def te_matrix(seqs: list[SymbolSequence], dt: int = 1, asset_ids=None) -> InteractionMatrix:
    """Directed TE matrix: values[i][j] = TE(j -> i).

    Diagonals store the self conditional entropy H(i_{t+dt} | i_t).
    """
    n = len(seqs)
    ids = tuple(asset_ids) if asset_ids is not None else _default_ids(n)
    values = np.zeros((n, n))
    for i in range(n):
        values[i, i] = self_conditional_entropy(seqs[i], dt=dt)
        for j in range(n):
            if i != j:
                values[i, j] = transfer_entropy(seqs[j], seqs[i], dt=dt)
    return InteractionMatrix(
        asset_ids=ids,
        values=values,
        measure="transfer_entropy",
        directed=True,
        units="bits",
        params={
            "orientation": ORIENTATION,
            "dt": dt,
            "history": {"target": 1, "source": 1},
            "diagonal": "self conditional entropy H(next|current)",
        },
    )


def surrogate_floor(
    source: SymbolSequence,
    target: SymbolSequence,
    dt: int = 1,
    shuffles: int = 20,
    seed: int | np.random.SeedSequence = 0,
) -> float:
    """Small-sample bias floor: mean TE after permuting the source sequence.

    Shuffling destroys the source's temporal alignment while preserving its
    marginal, so the residual TE estimates the plug-in bias.
    """
    if shuffles < 1:
        raise ValueError("shuffles must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    acc = 0.0
    for _ in range(shuffles):
        perm = rng.permutation(len(source))
        shuffled = SymbolSequence(
            symbols=source.symbols[perm], bins=source.bins, edges=source.edges
        )
        acc += transfer_entropy(shuffled, target, dt=dt)
    return acc / shuffles


def te_floor_matrix(
    seqs: list[SymbolSequence],
    dt: int = 1,
    shuffles: int = 20,
    seed: int = 0,
    asset_ids=None,
) -> InteractionMatrix:
    """Surrogate-shuffle floor for every ordered pair, same layout as te_matrix.

    Each pair gets an independent deterministic substream keyed by (i, j), so
    the result does not depend on evaluation order.
    """
    n = len(seqs)
    ids = tuple(asset_ids) if asset_ids is not None else _default_ids(n)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                ss = np.random.SeedSequence(entropy=seed, spawn_key=(i, j))
                values[i, j] = surrogate_floor(seqs[j], seqs[i], dt=dt, shuffles=shuffles, seed=ss)
    return InteractionMatrix(
        asset_ids=ids,
        values=values,
        measure="transfer_entropy",
        directed=True,
        units="bits",
        params={
            "orientation": ORIENTATION,
            "dt": dt,
            "kind": "surrogate_floor",
            "shuffles": shuffles,
            "seed": seed,
        },
    )
