import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infodrift import compute_matrix, evolve, gen_coupled_binary, gen_var1, make_windows
from infodrift.errors import DegenerateSeries, WindowTooLarge
from infodrift.stats import ReturnsMatrix
from infodrift.windows import WindowSpec


def returns_of(values, ids=None):
    values = np.asarray(values, dtype=float)
    ids = tuple(ids) if ids else tuple(f"A{i}" for i in range(values.shape[1]))
    return ReturnsMatrix(asset_ids=ids, values=values, kind="log")


def test_segmented_remainder_distribution():
    assert make_windows(10, WindowSpec(mode="segmented", segments=3)) == [(0, 4), (4, 7), (7, 10)]


def test_sliding_windows():
    spec = WindowSpec(mode="sliding", length=4, stride=3)
    assert make_windows(10, spec) == [(0, 4), (3, 7), (6, 10)]


def test_sliding_window_too_large():
    with pytest.raises(WindowTooLarge):
        make_windows(3, WindowSpec(mode="sliding", length=5, stride=1))


def test_segmented_more_segments_than_samples():
    with pytest.raises(WindowTooLarge):
        make_windows(3, WindowSpec(mode="segmented", segments=5))


@given(st.integers(1, 200), st.integers(1, 12))
@settings(max_examples=100, deadline=None)
def test_segmented_partition_exact(t, k):
    if t < k:
        return
    windows = make_windows(t, WindowSpec(mode="segmented", segments=k))
    assert len(windows) == k
    assert windows[0][0] == 0 and windows[-1][1] == t
    for (a, b), (c, d) in zip(windows, windows[1:]):
        assert b == c and a < b
    sizes = [b - a for a, b in windows]
    assert max(sizes) - min(sizes) <= 1
    assert sorted(sizes, reverse=True) == sizes


@given(st.integers(2, 60), st.integers(1, 20), st.integers(1, 10))
@settings(max_examples=100, deadline=None)
def test_sliding_windows_inside_range(t, length, stride):
    if length > t:
        with pytest.raises(WindowTooLarge):
            make_windows(t, WindowSpec(mode="sliding", length=length, stride=stride))
        return
    windows = make_windows(t, WindowSpec(mode="sliding", length=length, stride=stride))
    assert windows[0] == (0, length)
    for a, b in windows:
        assert 0 <= a < b <= t and b - a == length


def test_window_spec_parse():
    assert WindowSpec.parse("segmented:10").segments == 10
    spec = WindowSpec.parse("sliding:250:50")
    assert (spec.length, spec.stride) == (250, 50)
    with pytest.raises(ValueError):
        WindowSpec.parse("sliding:250")
    with pytest.raises(ValueError):
        WindowSpec.parse("weekly:3")


def test_single_segment_equals_full_sample_bitwise():
    panel = gen_var1(np.array([[0.4, 0.1], [0.0, 0.3]]), sigma=1.0, steps=500, seed=11)
    for measure in ("correlation", "mutual_information", "transfer_entropy", "km_drift"):
        full = compute_matrix(panel, measure, bins=4)
        windowed = evolve(panel, WindowSpec(mode="segmented", segments=1), measure, bins=4)
        assert len(windowed.entries) == 1
        assert np.array_equal(windowed.entries[0][4].values, full.values)


def test_window_labels_use_dates_when_present(csv_dir):
    import datetime as dt

    values = np.random.default_rng(0).normal(size=(10, 2))
    base = dt.date(2020, 1, 1).toordinal()
    dates = tuple(dt.date.fromordinal(base + i) for i in range(10))
    returns = ReturnsMatrix(asset_ids=("a", "b"), values=values, kind="log", dates=dates)
    result = evolve(returns, WindowSpec(mode="segmented", segments=2), "correlation")
    assert result.entries[0][0] == "2020-01-01"
    assert result.entries[1][1] == "2020-01-10"


def test_estimator_error_carries_window_index():
    rng = np.random.default_rng(1)
    values = np.vstack([rng.normal(size=(5, 2)), np.zeros((5, 2))])
    with pytest.raises(DegenerateSeries, match="window 1"):
        evolve(returns_of(values), WindowSpec(mode="segmented", segments=2), "correlation")


def _mean_offdiag_te_per_window(panel, k=10, bins=2):
    result = evolve(panel, WindowSpec(mode="segmented", segments=k), "transfer_entropy", bins=bins)
    mask = ~np.eye(panel.n_assets, dtype=bool)
    return np.array([e[4].values[mask].mean() for e in result.entries])


def test_constant_coupling_windowed_te_has_no_trend():
    # 50 independent panels with fixed coupling: the per-window mean TE may
    # fluctuate but must not drift with the window index
    slopes = []
    for run in range(50):
        x, y = gen_coupled_binary(0.35, 4000, seed=1000 + run)
        panel = returns_of(np.column_stack([x.symbols, y.symbols]).astype(float), ids=("x", "y"))
        means = _mean_offdiag_te_per_window(panel, k=10)
        idx = np.arange(len(means), dtype=float)
        slopes.append(np.polyfit(idx, means, 1)[0])
    slopes = np.array(slopes)
    t_stat = slopes.mean() / (slopes.std(ddof=1) / np.sqrt(len(slopes)))
    assert abs(t_stat) < 3.0


def test_regime_shift_raises_post_window_te():
    half = 3000
    x1, y1 = gen_coupled_binary(0.5, half, seed=77)   # decoupled
    x2, y2 = gen_coupled_binary(0.12, half, seed=78)  # strongly coupled
    x = np.concatenate([x1.symbols, x2.symbols]).astype(float)
    y = np.concatenate([y1.symbols, y2.symbols]).astype(float)
    panel = returns_of(np.column_stack([x, y]), ids=("x", "y"))
    means = _mean_offdiag_te_per_window(panel, k=10)
    assert means[5:].mean() > 2.0 * means[:5].mean()


def test_evolve_propagates_fixed_params_into_metadata():
    panel = gen_var1(np.array([[0.3]]), sigma=1.0, steps=200, seed=12)
    result = evolve(panel, WindowSpec(mode="segmented", segments=4), "te", bins=3)
    assert result.measure == "transfer_entropy"
    assert result.params["bins"] == 3
    assert result.params["bins_refit_per_window"] is True
    assert len(result.entries) == 4
