"""File formats: JSON artifacts, CSV tables, MovieLens ingestion.

Artifact files (graphs, graphons, signals, coefficients) store floats with
``repr`` so save -> load is exact. Result tables and CLI output use
``fmt`` (12 significant digits).
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .graph import Graph, GraphSignal, RatingTable, new_graph
from .graphon import StepGraphon, StepSignal
from .homomorphism import Motif
from .sampling import SampleLabels
from .spectral import FourierCoefficients


class FormatError(ValueError):
    pass


def fmt(x) -> str:
    """Locale-independent 12-significant-digit rendering."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    v = float(x)
    if v == 0:
        return "0"
    return "%.12g" % v


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def _write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


# graphs and signals

def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[i, j, w] for i, j, w in g.edges]}


def graph_from_dict(d: dict) -> Graph:
    try:
        return new_graph(d["n"], [tuple(e) for e in d.get("edges", [])])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed graph document: {exc}") from exc


def save_graph(g: Graph, path):
    _write_text(path, _dumps(graph_to_dict(g)))


def load_graph(path) -> Graph:
    return graph_from_dict(_read_json(path))


def save_signal(x, path):
    values = x.values if hasattr(x, "values") else np.asarray(x)
    _write_text(path, _dumps([float(v) for v in values]))


def load_signal(path) -> GraphSignal:
    d = _read_json(path)
    if isinstance(d, dict):
        d = d.get("values")
    if not isinstance(d, list):
        raise FormatError(f"{path}: a signal is a JSON array of numbers")
    return GraphSignal(np.array(d, dtype=float))


def step_graphon_to_dict(w: StepGraphon) -> dict:
    return {"N": w.N, "range": list(w.range), "values": w.values.tolist()}


def step_graphon_from_dict(d: dict) -> StepGraphon:
    try:
        w = StepGraphon(np.array(d["values"], dtype=float), tuple(d.get("range", (0.0, 1.0))))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed step graphon document: {exc}") from exc
    if "N" in d and d["N"] != w.N:
        raise FormatError(f"declared N={d['N']} but values are {w.N}x{w.N}")
    return w


def save_step_graphon(w: StepGraphon, path):
    _write_text(path, _dumps(step_graphon_to_dict(w)))


def load_step_graphon(path) -> StepGraphon:
    return step_graphon_from_dict(_read_json(path))


def save_step_signal(x: StepSignal, path):
    _write_text(path, _dumps({"N": x.N, "values": x.values.tolist()}))


def load_step_signal(path) -> StepSignal:
    d = _read_json(path)
    values = d.get("values") if isinstance(d, dict) else d
    return StepSignal(np.array(values, dtype=float))


def load_motif(spec) -> Motif:
    """Named built-in (edge, triangle, C4, ...) or a JSON file ``{"n", "edges"}``."""
    p = Path(str(spec))
    if p.suffix == ".json" or p.exists():
        d = _read_json(p)
        return Motif(d["n"], tuple(tuple(e) for e in d["edges"]), d.get("name", p.stem))
    return Motif.named(str(spec))


def save_motif(f: Motif, path):
    _write_text(path, _dumps({"n": f.n, "edges": [list(e) for e in f.edges], "name": f.name}))


def sampled_graph_to_dict(g: Graph, labels: SampleLabels, signal=None) -> dict:
    d = graph_to_dict(g)
    d.update(labels=labels.u.tolist(), seed=labels.seed, stream=labels.stream)
    if signal is not None:
        d["signal"] = [float(v) for v in signal.values]
    return d


def sampled_graph_from_dict(d: dict):
    return graph_from_dict(d), SampleLabels(np.array(d["labels"]), int(d["seed"]), int(d["stream"]))


# coefficients

COEFF_COLUMNS = ("j", "sigma", "coeff")


def coefficients_to_csv(c: FourierCoefficients, exact: bool = True) -> str:
    render = repr if exact else fmt
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COEFF_COLUMNS)
    for j, s, v in c.rows():
        w.writerow([j, render(float(s)), render(float(v))])
    return buf.getvalue()


def coefficients_to_dict(c: FourierCoefficients) -> dict:
    return {"origin": c.origin, "size": c.size,
            "rows": [[j, s, v] for j, s, v in c.rows()]}


def coefficients_from_rows(rows, origin="GFT", size=0) -> FourierCoefficients:
    rows = list(rows)
    if not rows:
        return FourierCoefficients(np.zeros(0, dtype=np.int64), np.zeros(0), np.zeros(0), origin, size)
    j, s, v = zip(*rows)
    return FourierCoefficients(np.array(j, dtype=np.int64), np.array(s, dtype=float), np.array(v, dtype=float), origin, size)


def save_coefficients(c: FourierCoefficients, path, format: str = "json"):
    if format == "csv":
        _write_text(path, coefficients_to_csv(c))
    else:
        _write_text(path, _dumps(coefficients_to_dict(c)))


def load_coefficients(path, origin="GFT", size=0) -> FourierCoefficients:
    path = Path(path)
    if path.suffix == ".csv":
        with open(path, encoding="utf-8", newline="") as fh:
            r = csv.reader(fh)
            header = next(r)
            if tuple(header) != COEFF_COLUMNS:
                raise FormatError(f"{path}: expected header {','.join(COEFF_COLUMNS)}")
            return coefficients_from_rows(((int(a), float(b), float(c)) for a, b, c in r), origin, size)
    d = _read_json(path)
    return coefficients_from_rows(((int(a), float(b), float(c)) for a, b, c in d["rows"]), d.get("origin", origin), d.get("size", size))


# tables

def table_to_csv(columns, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def table_to_json(columns, rows) -> str:
    # numbers go through fmt so JSON output is as byte-stable as CSV
    body = ",\n".join(
        "  {" + ", ".join(f'"{c}": ' + (json.dumps(v) if isinstance(v, str) else fmt(v)) for c, v in zip(columns, row)) + "}"
        for row in rows
    )
    return "[\n" + body + "\n]\n" if rows else "[]\n"


# MovieLens

def parse_movielens(path) -> RatingTable:
    """Parse a MovieLens ``u.data`` file (user, item, rating, timestamp; 1-based ids)."""
    users, items, ratings = [], [], []
    seen = set()
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read ratings file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise FormatError(f"{path}:{lineno}: expected 4 tab-separated fields")
            try:
                u, i, r = int(parts[0]), int(parts[1]), float(parts[2])
                int(parts[3])
            except ValueError:
                raise FormatError(f"{path}:{lineno}: malformed record {line.rstrip()!r}") from None
            if u < 1 or i < 1:
                raise FormatError(f"{path}:{lineno}: ids are 1-based")
            if not 1 <= r <= 5:
                raise FormatError(f"{path}:{lineno}: rating {r} outside [1, 5]")
            if (u, i) in seen:
                raise FormatError(f"{path}:{lineno}: duplicate rating for user {u}, item {i}")
            seen.add((u, i))
            users.append(u - 1)
            items.append(i - 1)
            ratings.append(r)
    if not ratings:
        raise FormatError(f"{path}: no ratings")
    return RatingTable(max(users) + 1, max(items) + 1, np.array(users), np.array(items), np.array(ratings))


def save_movielens(r: RatingTable, path):
    lines = [f"{u + 1}\t{i + 1}\t{fmt(x)}\t0\n" for u, i, x in r.entries]
    _write_text(path, "".join(lines))
