"""Parsing and validation of system-spec JSON documents.

The schema is strict: unknown keys are rejected with their field path,
because the most likely user error is a transposed weight matrix and a
silently ignored key would hide it. Exactly one of "W" (dense matrix,
row = receiver) and "arcs" (list of {"from", "to", "w"}) describes the
graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import graph as graphmod
from .errors import SpecError

TOP_KEYS = {"n", "d", "A", "F", "W", "arcs", "x0", "sim", "notes"}
SIM_KEYS = {"dt", "t_end", "seed"}


@dataclass(frozen=True)
class SimParams:
    dt: float = 1e-3
    t_end: float = 5.0
    seed: int = 42


@dataclass(frozen=True)
class SystemSpec:
    n: int
    d: int
    a: np.ndarray
    f: np.ndarray
    graph: graphmod.WeightedDigraph
    x0: np.ndarray | None
    sim: SimParams
    notes: str = ""


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{path}: expected a number, got {value!r}")
    if not np.isfinite(value):
        raise SpecError(f"{path}: must be finite, got {value!r}")
    return float(value)


def _require_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{path}: expected an integer, got {value!r}")
    return value


def _require_matrix(value, rows: int, cols: int, path: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != rows:
        raise SpecError(f"{path}: expected {rows} rows")
    out = np.empty((rows, cols))
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise SpecError(f"{path}[{i}]: expected {cols} entries")
        for j, entry in enumerate(row):
            out[i, j] = _require_number(entry, f"{path}[{i}][{j}]")
    return out


def parse_spec(text: str) -> SystemSpec:
    """Parse and validate a system-spec JSON document.

    Defaults applied when the "sim" block or its fields are absent:
    dt = 1e-3, t_end = 5, seed = 42.

    Raises:
        SpecError: with the offending field path on any schema or
            dimension violation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object")
    unknown = sorted(set(doc) - TOP_KEYS)
    if unknown:
        raise SpecError(f"unknown keys {unknown}; allowed keys are {sorted(TOP_KEYS)}")
    for key in ("n", "d", "A", "F"):
        if key not in doc:
            raise SpecError(f"missing required key {key!r}")

    n = _require_int(doc["n"], "n")
    if n < 1:
        raise SpecError(f"n: must be at least 1, got {n}")
    d = _require_int(doc["d"], "d")
    if d < 1:
        raise SpecError(f"d: must be at least 1, got {d}")

    a = _require_matrix(doc["A"], d, d, "A")
    f = _require_matrix(doc["F"], d, d, "F")

    has_w = "W" in doc
    has_arcs = "arcs" in doc
    if has_w == has_arcs:
        raise SpecError('exactly one graph form is required: either "W" or "arcs"')
    if has_w:
        w = _require_matrix(doc["W"], n, n, "W")
        try:
            g = graphmod.from_weight_matrix(w)
        except SpecError as exc:
            raise SpecError(f"W: {exc}")
    else:
        arcs_doc = doc["arcs"]
        if not isinstance(arcs_doc, list):
            raise SpecError("arcs: expected a list of arc objects")
        triples = []
        for k, arc in enumerate(arcs_doc):
            if not isinstance(arc, dict):
                raise SpecError(f"arcs[{k}]: expected an object")
            extra = sorted(set(arc) - {"from", "to", "w"})
            if extra:
                raise SpecError(f"arcs[{k}]: unknown keys {extra}")
            for key in ("from", "to", "w"):
                if key not in arc:
                    raise SpecError(f"arcs[{k}]: missing key {key!r}")
            triples.append(
                (
                    _require_int(arc["from"], f"arcs[{k}].from"),
                    _require_int(arc["to"], f"arcs[{k}].to"),
                    _require_number(arc["w"], f"arcs[{k}].w"),
                )
            )
        g = graphmod.build_graph(n, triples)

    x0 = None
    if "x0" in doc:
        raw = doc["x0"]
        if not isinstance(raw, list) or len(raw) != n * d:
            raise SpecError(f"x0: expected a flat list of {n * d} numbers")
        x0 = np.array([_require_number(v, f"x0[{k}]") for k, v in enumerate(raw)])

    sim_doc = doc.get("sim", {})
    if not isinstance(sim_doc, dict):
        raise SpecError("sim: expected an object")
    unknown = sorted(set(sim_doc) - SIM_KEYS)
    if unknown:
        raise SpecError(f"sim: unknown keys {unknown}")
    defaults = SimParams()
    dt = _require_number(sim_doc.get("dt", defaults.dt), "sim.dt")
    if dt <= 0.0:
        raise SpecError(f"sim.dt: must be positive, got {dt}")
    t_end = _require_number(sim_doc.get("t_end", defaults.t_end), "sim.t_end")
    if t_end < 0.0:
        raise SpecError(f"sim.t_end: must be nonnegative, got {t_end}")
    seed = _require_int(sim_doc.get("seed", defaults.seed), "sim.seed")

    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise SpecError("notes: expected a string")

    return SystemSpec(
        n=n,
        d=d,
        a=a,
        f=f,
        graph=g,
        x0=x0,
        sim=SimParams(dt=dt, t_end=t_end, seed=seed),
        notes=notes,
    )


def load_spec(path) -> SystemSpec:
    """Read and parse a spec file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}")
    return parse_spec(text)
