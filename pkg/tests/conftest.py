import datetime as dt

import numpy as np
import pytest

from infodrift.ingest import AlignedPanel, PriceSeries


def make_series(asset_id, start, prices):
    base = dt.date.fromisoformat(start).toordinal()
    dates = tuple(dt.date.fromordinal(base + i) for i in range(len(prices)))
    return PriceSeries(asset_id=asset_id, dates=dates, prices=np.asarray(prices, dtype=float))


def make_panel(prices, start="2020-01-01", asset_ids=None):
    prices = np.asarray(prices, dtype=float)
    n = prices.shape[1]
    ids = tuple(asset_ids) if asset_ids else tuple(f"A{i}" for i in range(n))
    base = dt.date.fromisoformat(start).toordinal()
    dates = tuple(dt.date.fromordinal(base + i) for i in range(prices.shape[0]))
    return AlignedPanel(asset_ids=ids, dates=dates, prices=prices)


@pytest.fixture
def csv_dir(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
