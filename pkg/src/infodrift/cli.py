"""Command-line front end: ingestion -> estimators -> serialized outputs.

Every run is driven by a RunConfig assembled from an optional JSON config
file plus flag overrides (flags win). The exact config is embedded in every
output file and written to ``<out>/config.json``, so a run can be reproduced
from its own artifacts. Exit codes: 0 success, 2 usage or validation
failure, 3 runtime estimator or fetch failure. Logs go to stderr, data only
to files.
"""

from __future__ import annotations

import dataclasses
import datetime as dt
import json
import logging
import os
import sys
from dataclasses import dataclass

import click
import numpy as np

from . import ingest, kmdrift, netout, synth
from .errors import DataValidationError, EstimatorError, InfodriftError, RemoteError
from .measures import canonical_measure, compute_matrix
from .stats import compute_returns, describe
from .windows import WindowSpec, evolve

log = logging.getLogger("infodrift")

CONFIG_VERSION = 1
DEFAULT_FORMATS = ("json", "csv", "dot", "svg_heatmap")
FORMAT_ALIASES = {"svg": "svg_heatmap"}


@dataclass
class RunConfig:
    inputs: list[str] = dataclasses.field(default_factory=list)
    return_kind: str = "log"
    bins: int = 8
    strategy: str = "quantile"
    dt: int = 1
    windows: str = "segmented:10"
    measures: list[str] = dataclasses.field(default_factory=lambda: ["correlation"])
    threshold: float = 0.0
    out_dir: str = "out"
    seed: int = 0
    formats: list[str] = dataclasses.field(default_factory=lambda: list(DEFAULT_FORMATS))
    surrogates: int = 0
    date_column: str = "Date"
    price_column: str = "Adj Close"

    def to_dict(self) -> dict:
        doc = {"config_version": CONFIG_VERSION}
        doc.update(dataclasses.asdict(self))
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        doc = dict(doc)
        doc.pop("config_version", None)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise DataValidationError(f"unknown config fields: {sorted(unknown)}")
        return cls(**doc)


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise DataValidationError(f"config {path}: {e}") from None
    return RunConfig.from_dict(doc)


def _parse_formats(text: str) -> list[str]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        token = FORMAT_ALIASES.get(token, token)
        if token not in netout.FORMATS:
            raise DataValidationError(f"format: unknown format {token!r}")
        out.append(token)
    return out


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config file.")
@click.option("--out", default=None, help="Output directory.")
@click.option("--format", "formats", default=None, help="Comma list of json,csv,dot,svg.")
@click.option("--seed", type=int, default=None, help="Seed for surrogates and simulation.")
@click.option("--bins", type=int, default=None, help="Histogram bin count B.")
@click.option("--strategy", type=click.Choice(["quantile", "equal_width"]), default=None)
@click.option("--return-kind", type=click.Choice(["log", "simple"]), default=None)
@click.option("--dt", type=int, default=None, help="Estimator lag in steps.")
@click.option("--windows", default=None, help="segmented:K or sliding:LENGTH:STRIDE.")
@click.option("--threshold", type=float, default=None, help="Graph edge threshold.")
@click.option("--surrogates", type=int, default=None, help="Surrogate shuffles for the TE floor.")
@click.option("-v", "--verbose", is_flag=True, default=False)
@click.pass_context
def main(ctx, config_path, out, formats, seed, bins, strategy, return_kind, dt,
         windows, threshold, surrogates, verbose):
    """Interaction-network estimation for multi-asset time series."""
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = _load_config(config_path)
        if out is not None:
            cfg.out_dir = out
        if formats is not None:
            cfg.formats = _parse_formats(formats)
        if seed is not None:
            cfg.seed = seed
        if bins is not None:
            cfg.bins = bins
        if strategy is not None:
            cfg.strategy = strategy
        if return_kind is not None:
            cfg.return_kind = return_kind
        if dt is not None:
            cfg.dt = dt
        if windows is not None:
            WindowSpec.parse(windows)
            cfg.windows = windows
        if threshold is not None:
            cfg.threshold = threshold
        if surrogates is not None:
            cfg.surrogates = surrogates
    except (DataValidationError, ValueError) as e:
        _fail(2, str(e))
    ctx.obj = cfg


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _prepare_out(cfg: RunConfig) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, "config.json"), "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2)
        fh.write("\n")
    return cfg.out_dir


def _load_panel(cfg: RunConfig):
    if not cfg.inputs:
        raise DataValidationError("inputs: no input series")
    schema = {"date": cfg.date_column, "price": cfg.price_column}
    series = [ingest.load_csv(path, schema=schema) for path in cfg.inputs]
    panel = ingest.align(series)
    return compute_returns(panel, kind=cfg.return_kind)


def _measure_names(cfg: RunConfig) -> list[str]:
    if not cfg.measures:
        raise DataValidationError("measures: at least one measure required")
    try:
        return [canonical_measure(name) for name in cfg.measures]
    except ValueError as e:
        raise DataValidationError(f"measures: {e}") from None


def _run(body, cfg: RunConfig):
    try:
        body()
    except (DataValidationError, ValueError) as e:
        _fail(2, str(e))
    except (EstimatorError, RemoteError) as e:
        _fail(3, str(e))
    except InfodriftError as e:
        _fail(3, str(e))


@main.command()
@click.argument("inputs", nargs=-1, type=click.Path())
@click.pass_obj
def stats(cfg: RunConfig, inputs):
    """Per-asset descriptive statistics of returns (CSV + JSON)."""
    if inputs:
        cfg.inputs = list(inputs)

    def body():
        returns = _load_panel(cfg)
        summary = describe(returns)
        out = _prepare_out(cfg)
        config = cfg.to_dict()
        lines = ["# infodrift-stats v1", f"# config: {json.dumps(config, sort_keys=True)}"]
        lines.append("asset,mean,std,skewness,excess_kurtosis")
        rows = []
        for asset, mean, std, skew, kurt in summary.rows():
            mean, std, skew, kurt = float(mean), float(std), float(skew), float(kurt)
            lines.append(f"{asset},{mean!r},{std!r},{skew!r},{kurt!r}")
            rows.append(
                {"asset": asset, "mean": mean, "std": std,
                 "skewness": skew, "excess_kurtosis": kurt}
            )
        with open(os.path.join(out, "stats.csv"), "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        doc = {
            "schema_version": netout.SCHEMA_VERSION,
            "kind": "stats_summary",
            "params": summary.params,
            "rows": rows,
            "config": config,
        }
        with open(os.path.join(out, "stats.json"), "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        log.info("wrote stats for %d assets to %s", len(rows), out)

    _run(body, cfg)


_EXTENSIONS = {"json": "json", "csv": "csv", "dot": "dot", "svg_heatmap": "svg"}


def _emit_all(obj, stem: str, cfg: RunConfig, formats=None, threshold: float = 0.0):
    written = []
    try:
        for fmt in formats if formats is not None else cfg.formats:
            path = os.path.join(cfg.out_dir, f"{stem}.{_EXTENSIONS[fmt]}")
            netout.emit(obj, fmt, path, config=cfg.to_dict(), threshold=threshold)
            written.append(path)
    except Exception:
        for path in written:
            if os.path.exists(path):
                os.unlink(path)
        raise
    return written


@main.command()
@click.argument("inputs", nargs=-1, type=click.Path())
@click.option("--measures", default=None, help="Comma list: corr,mi,te,km.")
@click.pass_obj
def analyze(cfg: RunConfig, inputs, measures):
    """Full-sample interaction matrices for the requested measures."""
    if inputs:
        cfg.inputs = list(inputs)
    if measures is not None:
        cfg.measures = [m.strip() for m in measures.split(",") if m.strip()]

    def body():
        names = _measure_names(cfg)
        returns = _load_panel(cfg)
        _prepare_out(cfg)
        failures = []
        for name in names:
            try:
                matrix = compute_matrix(
                    returns, name, bins=cfg.bins, strategy=cfg.strategy, dt=cfg.dt,
                )
                _emit_all(matrix, name, cfg, threshold=cfg.threshold)
                if name == "km_drift" and "json" in cfg.formats:
                    est = kmdrift.drift_estimate(returns, dt=cfg.dt)
                    netout.emit(
                        est, "json", os.path.join(cfg.out_dir, "km_drift_estimate.json"),
                        config=cfg.to_dict(),
                    )
                if name == "transfer_entropy" and cfg.surrogates > 0:
                    from .discretize import bin_series
                    from .infoflow import te_floor_matrix

                    seqs = [
                        bin_series(returns.values[:, k], cfg.bins, cfg.strategy)
                        for k in range(returns.n_assets)
                    ]
                    floor = te_floor_matrix(
                        seqs, dt=cfg.dt, shuffles=cfg.surrogates,
                        seed=cfg.seed, asset_ids=returns.asset_ids,
                    )
                    _emit_all(floor, "transfer_entropy_floor", cfg, formats=["json", "csv"])
                log.info("measure %s done", name)
            except EstimatorError as e:
                failures.append((name, e))
                log.error("measure %s failed: %s", name, e)
        if failures:
            raise EstimatorError(
                "; ".join(f"{name}: {err}" for name, err in failures)
            )

    _run(body, cfg)


@main.command("evolve")
@click.argument("inputs", nargs=-1, type=click.Path())
@click.option("--measures", default=None, help="Comma list: corr,mi,te,km.")
@click.pass_obj
def evolve_cmd(cfg: RunConfig, inputs, measures):
    """Windowed (time-resolved) matrices per measure."""
    if inputs:
        cfg.inputs = list(inputs)
    if measures is not None:
        cfg.measures = [m.strip() for m in measures.split(",") if m.strip()]

    def body():
        names = _measure_names(cfg)
        spec = WindowSpec.parse(cfg.windows)
        returns = _load_panel(cfg)
        _prepare_out(cfg)
        for name in names:
            result = evolve(
                returns, spec, name, bins=cfg.bins, strategy=cfg.strategy, dt=cfg.dt,
            )
            formats = [f for f in cfg.formats if f not in ("dot",)]
            _emit_all(result, f"evolve_{name}", cfg, formats=formats)
            log.info("evolve %s over %d windows done", name, len(result.entries))

    _run(body, cfg)


@main.command()
@click.option("--kind", type=click.Choice(["coupled_binary", "var1", "ou_euler"]), required=True)
@click.option("--steps", type=int, required=True)
@click.option("--eps", type=float, default=0.1, help="coupled_binary flip probability.")
@click.option("--matrix", "matrix_json", default=None,
              help="JSON N x N matrix: a_step for var1, a_true for ou_euler.")
@click.option("--sigma", type=float, default=0.1, help="Noise scale.")
@click.option("--dt-sim", type=float, default=0.01, help="ou_euler integration step.")
@click.option("--assets", default=None, help="Comma list of asset names.")
@click.option("--start-price", type=float, default=100.0)
@click.pass_obj
def simulate(cfg: RunConfig, kind, steps, eps, matrix_json, sigma, dt_sim, assets, start_price):
    """Generate a synthetic panel and write it as price CSVs.

    The process values are treated as log returns and integrated into
    positive prices (p_t = start_price * exp(cumsum x)), so the files feed
    straight back into stats/analyze/evolve. coupled_binary symbols are
    mapped to +/-1% returns before integration.
    """

    def body():
        names = [a.strip() for a in assets.split(",")] if assets else None
        if kind == "coupled_binary":
            x, y = synth.gen_coupled_binary(eps, steps, seed=cfg.seed)
            values = np.column_stack([x.symbols, y.symbols]).astype(np.float64)
            values = (values * 2.0 - 1.0) * 0.01
            ids = tuple(names) if names else ("X", "Y")
            if len(ids) != 2:
                raise DataValidationError("assets: coupled_binary emits exactly 2 series")
        else:
            if matrix_json is None:
                raise DataValidationError("matrix: --matrix is required for var1/ou_euler")
            try:
                a = np.array(json.loads(matrix_json), dtype=np.float64)
            except (json.JSONDecodeError, ValueError) as e:
                raise DataValidationError(f"matrix: {e}") from None
            if kind == "var1":
                panel = synth.gen_var1(a, sigma=sigma, steps=steps, seed=cfg.seed, asset_ids=names)
            else:
                panel = synth.gen_ou(a, sigma=sigma, dt_sim=dt_sim, steps=steps,
                                     seed=cfg.seed, asset_ids=names)
            values, ids = panel.values, panel.asset_ids

        out = _prepare_out(cfg)
        prices = start_price * np.exp(np.cumsum(values, axis=0))
        base = dt.date(2000, 1, 3).toordinal()
        dates = tuple(dt.date.fromordinal(base + t) for t in range(prices.shape[0]))
        comment = f"config: {json.dumps(cfg.to_dict(), sort_keys=True)}"
        for k, asset in enumerate(ids):
            series = ingest.PriceSeries(asset_id=asset, dates=dates, prices=prices[:, k])
            ingest.write_csv(series, os.path.join(out, f"{asset}.csv"), header_comment=comment)
        log.info("wrote %d synthetic series of length %d to %s", len(ids), prices.shape[0], out)

    _run(body, cfg)


@main.command()
@click.option("--endpoint", required=True, help="URL template with {asset} {start} {end}.")
@click.option("--assets", required=True, help="Comma list of asset ids.")
@click.option("--start", required=True, help="ISO start date.")
@click.option("--end", required=True, help="ISO end date.")
@click.option("--cache-dir", default=None, type=click.Path())
@click.pass_obj
def fetch(cfg: RunConfig, endpoint, assets, start, end, cache_dir):
    """Fetch remote series and store them as local CSVs."""

    def body():
        try:
            d0, d1 = dt.date.fromisoformat(start), dt.date.fromisoformat(end)
        except ValueError as e:
            raise DataValidationError(f"date: {e}") from None
        out = _prepare_out(cfg)
        schema = {"date": cfg.date_column, "price": cfg.price_column}
        comment = f"config: {json.dumps(cfg.to_dict(), sort_keys=True)}"
        for asset in (a.strip() for a in assets.split(",")):
            series = ingest.fetch_remote(
                endpoint, asset, (d0, d1), schema=schema, cache_dir=cache_dir,
            )
            ingest.write_csv(
                series, os.path.join(out, f"{asset}.csv"), schema=schema, header_comment=comment,
            )
            log.info("fetched %s (%d observations)", asset, len(series))

    _run(body, cfg)


if __name__ == "__main__":
    main()
