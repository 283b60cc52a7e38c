"""Serialization of matrices, graphs, and windowed results.

JSON and CSV writers print floats with repr, so parse(emit(x)) reproduces the
numbers exactly. SVG heatmaps are assembled from strings with fixed
formatting and carry no wall-clock state, making the bytes a pure function of
the input. The ``generated_at`` stamp honours SOURCE_DATE_EPOCH so archived
runs can be reproduced byte for byte.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import os
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .errors import UnsupportedFormatForShape
from .kmdrift import DriftEstimate
from .matrices import InteractionMatrix
from .windows import WindowedResult

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "dot", "svg_heatmap")


@dataclass(frozen=True, eq=False)
class InteractionGraph:
    nodes: tuple[str, ...]
    edges: tuple  # ((from, to, weight), ...)
    directed: bool
    threshold: float
    measure: str = ""

    def __post_init__(self):
        names = set(self.nodes)
        for src, dst, weight in self.edges:
            if src not in names or dst not in names:
                raise ValueError(f"edge ({src!r}, {dst!r}) references unknown node")
            if abs(weight) < self.threshold:
                raise ValueError(f"edge ({src!r}, {dst!r}) weight {weight} below threshold")


def matrix_to_graph(m: InteractionMatrix, threshold: float = 0.0, keep_self: bool = False) -> InteractionGraph:
    """Edges for every entry at or above ``threshold`` in absolute value.

    Directed matrices yield one edge per ordered pair (from j to i for
    values[i][j]); undirected matrices yield each unordered pair once.
    Self-loops are dropped unless ``keep_self``.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    ids, values, n = m.asset_ids, m.values, m.n
    edges = []
    if m.directed:
        for src in range(n):
            for dst in range(n):
                if src == dst and not keep_self:
                    continue
                w = float(values[dst, src])
                if abs(w) >= threshold:
                    edges.append((ids[src], ids[dst], w))
    else:
        for i in range(n):
            start = i if keep_self else i + 1
            for j in range(start, n):
                w = float(values[i, j])
                if abs(w) >= threshold:
                    edges.append((ids[i], ids[j], w))
    return InteractionGraph(
        nodes=ids, edges=tuple(edges), directed=m.directed,
        threshold=threshold, measure=m.measure,
    )


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        when = dt.datetime.fromtimestamp(int(epoch), tz=dt.timezone.utc)
    else:
        when = dt.datetime.now(tz=dt.timezone.utc)
    return when.replace(microsecond=0).isoformat()


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------- JSON

def matrix_to_dict(m: InteractionMatrix, config: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "interaction_matrix",
        "measure": m.measure,
        "directed": m.directed,
        "units": m.units,
        "asset_ids": list(m.asset_ids),
        "values": m.values.tolist(),
        "params": m.params,
        "generated_at": _timestamp(),
    }
    if config is not None:
        doc["config"] = config
    return doc


def windowed_to_dict(w: WindowedResult, config: dict | None = None) -> dict:
    first = w.entries[0][4]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "windowed_result",
        "measure": w.measure,
        "directed": first.directed,
        "units": first.units,
        "asset_ids": list(first.asset_ids),
        "window_spec": w.spec.describe(),
        "params": w.params,
        "windows": [
            {
                "start": lo,
                "end": hi,
                "start_index": si,
                "end_index": ei,
                "values": matrix.values.tolist(),
                **(
                    {"bin_edges": matrix.params["bin_edges"]}
                    if "bin_edges" in matrix.params
                    else {}
                ),
            }
            for lo, hi, si, ei, matrix in w.entries
        ],
        "generated_at": _timestamp(),
    }
    if config is not None:
        doc["config"] = config
    return doc


def graph_to_dict(g: InteractionGraph, config: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "interaction_graph",
        "measure": g.measure,
        "directed": g.directed,
        "threshold": g.threshold,
        "nodes": list(g.nodes),
        "edges": [{"from": a, "to": b, "weight": w} for a, b, w in g.edges],
        "generated_at": _timestamp(),
    }
    if config is not None:
        doc["config"] = config
    return doc


def load_matrix_json(path) -> InteractionMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("kind") != "interaction_matrix":
        raise ValueError(f"{path}: not an interaction_matrix document")
    return InteractionMatrix(
        asset_ids=tuple(doc["asset_ids"]),
        values=np.array(doc["values"], dtype=np.float64),
        measure=doc["measure"],
        directed=doc["directed"],
        units=doc["units"],
        params=doc.get("params", {}),
    )


# ---------------------------------------------------------------- CSV

def _matrix_csv(m: InteractionMatrix, config: dict | None) -> str:
    buf = io.StringIO()
    buf.write("# infodrift-matrix v1\n")
    buf.write(f"# measure: {m.measure}\n")
    buf.write(f"# directed: {str(m.directed).lower()}\n")
    buf.write(f"# units: {m.units}\n")
    if config is not None:
        buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    writer = csv.writer(buf)
    writer.writerow(["asset", *m.asset_ids])
    for i, asset in enumerate(m.asset_ids):
        writer.writerow([asset, *(repr(float(v)) for v in m.values[i])])
    return buf.getvalue()


def load_matrix_csv(path) -> InteractionMatrix:
    meta = {"measure": "correlation", "directed": "false", "units": "dimensionless"}
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, _, value = body.partition(":")
                    meta[key.strip()] = value.strip()
                continue
            if line.strip():
                rows.append(next(csv.reader([line])))
    if not rows:
        raise ValueError(f"{path}: empty matrix csv")
    ids = tuple(rows[0][1:])
    values = np.array([[float(v) for v in row[1:]] for row in rows[1:]], dtype=np.float64)
    return InteractionMatrix(
        asset_ids=ids,
        values=values,
        measure=meta["measure"],
        directed=meta["directed"] == "true",
        units=meta["units"],
    )


def _windowed_csv(w: WindowedResult, config: dict | None) -> str:
    first = w.entries[0][4]
    ids = first.asset_ids
    buf = io.StringIO()
    buf.write("# infodrift-windowed v1\n")
    buf.write(f"# measure: {w.measure}\n")
    if config is not None:
        buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    writer = csv.writer(buf)
    writer.writerow(["window_start", "window_end", "from_asset", "to_asset", "value"])
    for lo, hi, _, _, matrix in w.entries:
        for src in range(len(ids)):
            for dst in range(len(ids)):
                writer.writerow([lo, hi, ids[src], ids[dst], repr(float(matrix.values[dst, src]))])
    return buf.getvalue()


def _graph_csv(g: InteractionGraph, config: dict | None) -> str:
    buf = io.StringIO()
    buf.write("# infodrift-graph v1\n")
    if config is not None:
        buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    writer = csv.writer(buf)
    writer.writerow(["from", "to", "weight"])
    for a, b, w in g.edges:
        writer.writerow([a, b, repr(float(w))])
    return buf.getvalue()


# ---------------------------------------------------------------- DOT

def graph_to_dot(g: InteractionGraph, config: dict | None = None) -> str:
    arrow = "->" if g.directed else "--"
    lines = []
    if config is not None:
        lines.append(f"// config: {json.dumps(config, sort_keys=True)}")
    lines.append("digraph G {" if g.directed else "graph G {")
    for node in g.nodes:
        lines.append(f'  "{node}";')
    for a, b, w in g.edges:
        lines.append(f'  "{a}" {arrow} "{b}" [label="{w:.2f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- SVG

_DIVERGING = ((33, 102, 172), (247, 247, 247), (178, 24, 43))
_SEQUENTIAL = ((255, 255, 255), (8, 48, 107))


def _lerp(c0, c1, t: float) -> tuple[int, int, int]:
    return tuple(int(round(a + (b - a) * t)) for a, b in zip(c0, c1))


def _hex(c) -> str:
    return "#{:02x}{:02x}{:02x}".format(*c)


def _color(value: float, vmin: float, vmax: float, diverging: bool) -> str:
    if diverging:
        limit = max(abs(vmin), abs(vmax), 1e-300)
        t = max(-1.0, min(1.0, value / limit))
        if t < 0:
            return _hex(_lerp(_DIVERGING[1], _DIVERGING[0], -t))
        return _hex(_lerp(_DIVERGING[1], _DIVERGING[2], t))
    span = vmax - vmin
    t = 0.0 if span <= 0 else max(0.0, min(1.0, (value - vmin) / span))
    return _hex(_lerp(_SEQUENTIAL[0], _SEQUENTIAL[1], t))


def _svg_open(width: int, height: int, title: str, config: dict | None) -> list[str]:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace">',
        f"<title>{escape(title)}</title>",
    ]
    if config is not None:
        lines.append(f"<metadata>{escape(json.dumps(config, sort_keys=True))}</metadata>")
    lines.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')
    return lines


def _legend(lines: list[str], x: int, y: int, width: int, vmin: float, vmax: float, diverging: bool) -> None:
    steps = 32
    sw = max(1, width // steps)
    for k in range(steps):
        v = vmin + (vmax - vmin) * (k + 0.5) / steps
        lines.append(
            f'<rect x="{x + k * sw}" y="{y}" width="{sw}" height="10" '
            f'fill="{_color(v, vmin, vmax, diverging)}"/>'
        )
    lines.append(f'<text x="{x}" y="{y + 24}" font-size="11">{vmin:.4g}</text>')
    lines.append(
        f'<text x="{x + steps * sw}" y="{y + 24}" font-size="11" text-anchor="end">{vmax:.4g}</text>'
    )


def matrix_to_svg(m: InteractionMatrix, config: dict | None = None) -> str:
    """Self-contained N x N heatmap with value labels and a legend."""
    n = m.n
    cell, left, top = 64, 96, 56
    width = left + n * cell + 24
    height = top + n * cell + 56
    diverging = m.measure in ("correlation", "km_drift")
    vmin, vmax = float(m.values.min()), float(m.values.max())
    if diverging:
        limit = max(abs(vmin), abs(vmax))
        vmin, vmax = -limit, limit
    else:
        vmin = min(vmin, 0.0)

    lines = _svg_open(width, height, f"{m.measure} ({m.units})", config)
    lines.append(f'<text x="{left}" y="20" font-size="13">{escape(m.measure)} [{escape(m.units)}]</text>')
    for j, asset in enumerate(m.asset_ids):
        lines.append(
            f'<text x="{left + j * cell + cell // 2}" y="{top - 8}" font-size="11" '
            f'text-anchor="middle">{escape(asset[:9])}</text>'
        )
    for i, asset in enumerate(m.asset_ids):
        lines.append(
            f'<text x="{left - 6}" y="{top + i * cell + cell // 2 + 4}" font-size="11" '
            f'text-anchor="end">{escape(asset[:11])}</text>'
        )
        for j in range(n):
            v = float(m.values[i, j])
            x, y = left + j * cell, top + i * cell
            lines.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{_color(v, vmin, vmax, diverging)}" stroke="#808080" stroke-width="1"/>'
            )
            lines.append(
                f'<text x="{x + cell // 2}" y="{y + cell // 2 + 4}" font-size="11" '
                f'text-anchor="middle">{v:.3g}</text>'
            )
    _legend(lines, left, top + n * cell + 14, n * cell, vmin, vmax, diverging)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _pair_rows(m: InteractionMatrix) -> list[tuple[str, int, int]]:
    ids, n = m.asset_ids, m.n
    rows = []
    if m.directed:
        for src in range(n):
            for dst in range(n):
                if src != dst:
                    rows.append((f"{ids[src]}->{ids[dst]}", dst, src))
    else:
        for i in range(n):
            for j in range(i + 1, n):
                rows.append((f"{ids[i]}--{ids[j]}", i, j))
    return rows


def windowed_to_svg(w: WindowedResult, config: dict | None = None) -> str:
    """Pairs-by-windows heatmap: one row per ordered (or unordered) pair."""
    first = w.entries[0][4]
    pairs = _pair_rows(first)
    k = len(w.entries)
    cell, left, top = 40, 150, 46
    width = left + k * cell + 24
    height = top + len(pairs) * cell + 56
    stack = w.values_stack()
    diverging = w.measure in ("correlation", "km_drift")
    pair_vals = np.array([[stack[t][i, j] for t in range(k)] for _, i, j in pairs])
    vmin, vmax = float(pair_vals.min()), float(pair_vals.max())
    if diverging:
        limit = max(abs(vmin), abs(vmax))
        vmin, vmax = -limit, limit
    else:
        vmin = min(vmin, 0.0)

    lines = _svg_open(width, height, f"{w.measure} evolution", config)
    lines.append(f'<text x="{left}" y="20" font-size="13">{escape(w.measure)} evolution</text>')
    for t, (lo, _hi, _si, _ei, _m) in enumerate(w.entries):
        lines.append(
            f'<text x="{left + t * cell + cell // 2}" y="{top - 8}" font-size="10" '
            f'text-anchor="middle">w{t}</text>'
        )
    for r, (label, i, j) in enumerate(pairs):
        y = top + r * cell
        lines.append(
            f'<text x="{left - 6}" y="{y + cell // 2 + 4}" font-size="10" '
            f'text-anchor="end">{escape(label[:20])}</text>'
        )
        for t in range(k):
            v = float(pair_vals[r, t])
            x = left + t * cell
            lines.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{_color(v, vmin, vmax, diverging)}" stroke="#808080" stroke-width="1"/>'
            )
    first_lo = w.entries[0][0]
    last_hi = w.entries[-1][1]
    lines.append(
        f'<text x="{left}" y="{top + len(pairs) * cell + 16}" font-size="10">'
        f"windows {escape(first_lo)} .. {escape(last_hi)}</text>"
    )
    _legend(lines, left, top + len(pairs) * cell + 24, k * cell, vmin, vmax, diverging)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- emit

def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def emit(obj, fmt: str, path, config: dict | None = None, threshold: float = 0.0) -> None:
    """Write ``obj`` (matrix, graph, windowed result, or drift estimate) to
    ``path`` in ``fmt``. A matrix asked for as dot is thresholded first.
    """
    if fmt not in FORMATS:
        raise UnsupportedFormatForShape(f"unknown format {fmt!r}; choose from {FORMATS}")

    if isinstance(obj, InteractionMatrix):
        if fmt == "json":
            _write(path, _dumps(matrix_to_dict(obj, config)))
        elif fmt == "csv":
            _write(path, _matrix_csv(obj, config))
        elif fmt == "dot":
            _write(path, graph_to_dot(matrix_to_graph(obj, threshold=threshold), config))
        else:
            _write(path, matrix_to_svg(obj, config))
        return
    if isinstance(obj, InteractionGraph):
        if fmt == "json":
            _write(path, _dumps(graph_to_dict(obj, config)))
        elif fmt == "csv":
            _write(path, _graph_csv(obj, config))
        elif fmt == "dot":
            _write(path, graph_to_dot(obj, config))
        else:
            raise UnsupportedFormatForShape("graphs cannot be rendered as svg_heatmap")
        return
    if isinstance(obj, WindowedResult):
        if fmt == "json":
            _write(path, _dumps(windowed_to_dict(obj, config)))
        elif fmt == "csv":
            _write(path, _windowed_csv(obj, config))
        elif fmt == "svg_heatmap":
            _write(path, windowed_to_svg(obj, config))
        else:
            raise UnsupportedFormatForShape("windowed results cannot be rendered as dot")
        return
    if isinstance(obj, DriftEstimate):
        if fmt != "json":
            raise UnsupportedFormatForShape("drift estimates serialize as json only")
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "drift_estimate",
            **obj.to_dict(),
            "generated_at": _timestamp(),
        }
        if config is not None:
            doc["config"] = config
        _write(path, _dumps(doc))
        return
    raise UnsupportedFormatForShape(f"cannot emit object of type {type(obj).__name__}")
