"""Declarative experiment runner.

An experiment spec is a JSON-able dict:

.. code-block:: python

    {
      "id": "demo",
      "series": {
        "R1": {"system": "circle_rotation", "phi": 0.1414, "s": 1.0,
               "start": [0.0], "length": 2000},
        "R2": {"noisy": {"of": "R1", "eps": 0.05, "seed": 7}},
        "P3": {"embed": {"of": "R1", "coord": 1, "dim": 3, "lag": 5}},
      },
      "comparisons": [
        {"pair": ["R1", "R2"], "map": {"kind": "identity"}},
        {"pair": ["R1", "P3"], "map": {"kind": "embed_paired"}},
      ],
      "methods": [
        {"name": "fnn", "r": [2.0]},
        {"name": "conjtest", "k": [5], "t": [5]},
      ],
      "sweeps": [
        {"axis": "t", "values": [1, 5, 10], "methods": [{"name": "conjtest", "k": 5}]}
      ],
    }

Series are either generated (``system``) or derived from another series
(``project`` / ``embed`` / ``noisy`` / ``map_image``).  Every comparison is
run in both directions.  Connecting maps may be a single analytic
declaration (the reverse direction is derived automatically), explicit
``{"ab": ..., "ba": ...}`` declarations, plain ``paired`` index pairing, or
``embed_paired``: the pointwise table maps each source point to the window
built from the *domain's own* trajectory by the codomain's embedding
recipe, and each window back to its source point.

Outputs are deterministic: rows are emitted in a canonical sorted order and
runs with identical seeds produce byte-identical CSV.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path

import numpy as np

from .core import ConnectingMap, TimeSeries
from .embedding import observable_mean, project, takens_embed
from .generators import (
    add_noise,
    gen_circle,
    gen_interval_map,
    gen_klein,
    gen_lorenz,
    gen_torus,
)
from .maps import build_map, reverse_decl
from .measures import TestParams, compare_series, fnn_grid

SQRT2_10 = math.sqrt(2.0) / 10.0
SQRT3_10 = math.sqrt(3.0) / 10.0

METHOD_PARAMS = {
    "fnn": ("r",),
    "knn": ("k",),
    "conjtest": ("k", "t"),
    "conjtest+": ("k", "t"),
}

GENERATOR_FIELDS = {
    "circle_rotation": {"phi", "s", "start", "length"},
    "torus_rotation": {"phi1", "phi2", "start", "length"},
    "logistic": {"param", "start", "length"},
    "tent": {"param", "start", "length"},
    "lorenz": {"start", "length", "burn_in", "sample_time"},
    "klein_rotation": {"phi1", "phi2", "start", "length"},
}

DERIVE_KINDS = ("project", "embed", "noisy", "map_image")

OUTPUT_DIR_ENV = "CONJUGACY_OUTPUT_DIR"


class SpecValidationError(ValueError):
    """Raised with the full list of problems found in an experiment spec."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid experiment spec:\n" + "\n".join(f"  - {p}" for p in self.problems))


# ---------------------------------------------------------------------------
# validation


def validate_spec(spec):
    """All problems with a spec (empty list when valid)."""
    problems = []
    if not isinstance(spec, dict):
        return ["spec must be a JSON object"]
    series = spec.get("series", {})
    if not isinstance(series, dict) or not series:
        problems.append("spec needs a non-empty 'series' object")
        series = {}
    for name, decl in series.items():
        problems.extend(_validate_series_decl(series, name, decl))
    comparisons = spec.get("comparisons", [])
    for i, comp in enumerate(comparisons):
        tag = f"comparisons[{i}]"
        pair = comp.get("pair")
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            problems.append(f"{tag}: 'pair' must list two series names")
            continue
        for name in pair:
            if name not in series:
                problems.append(f"{tag}: unknown series {name!r}")
        if "map" in comp and isinstance(comp["map"], dict):
            kind = comp["map"].get("kind")
            if kind == "embed_paired" and all(n in series for n in pair):
                try:
                    _embed_paired_recipes(series, pair[0], pair[1])
                except ValueError as exc:
                    problems.append(f"{tag}: {exc}")
    methods = spec.get("methods", [])
    problems.extend(_validate_methods(methods, "methods"))
    for i, panel in enumerate(spec.get("sweeps", [])):
        tag = f"sweeps[{i}]"
        axis = panel.get("axis")
        if not axis:
            problems.append(f"{tag}: missing 'axis'")
        if not isinstance(panel.get("values"), (list, tuple)) or not panel.get("values"):
            problems.append(f"{tag}: missing 'values'")
        if axis not in ("r", "k", "t"):
            target = panel.get("series")
            if target is None:
                problems.append(f"{tag}: axis {axis!r} sweeps a series field and needs 'series'")
            elif target not in series:
                problems.append(f"{tag}: unknown swept series {target!r}")
        panel_methods = panel.get("methods")
        if panel_methods is not None:
            problems.extend(_validate_methods(panel_methods, f"{tag}.methods", sweep_axis=axis))
    return problems


def _validate_series_decl(series, name, decl):
    problems = []
    if not isinstance(decl, dict):
        return [f"series {name!r}: declaration must be an object"]
    kinds = [k for k in ("system", *DERIVE_KINDS) if k in decl]
    if len(kinds) != 1:
        return [f"series {name!r}: needs exactly one of 'system' or a derive kind {DERIVE_KINDS}"]
    kind = kinds[0]
    if kind == "system":
        system = decl["system"]
        if system not in GENERATOR_FIELDS:
            problems.append(f"series {name!r}: unknown system {system!r}")
        elif "length" not in decl:
            problems.append(f"series {name!r}: missing 'length'")
    else:
        body = decl[kind]
        if not isinstance(body, dict) or "of" not in body:
            problems.append(f"series {name!r}: {kind} needs an 'of' reference")
        elif body["of"] not in series:
            problems.append(f"series {name!r}: unknown source {body['of']!r}")
        if kind == "embed" and isinstance(body, dict):
            if "dim" not in body or "lag" not in body:
                problems.append(f"series {name!r}: embed needs 'dim' and 'lag'")
            if "coord" not in body and body.get("observable") != "mean":
                problems.append(f"series {name!r}: embed needs 'coord' or observable='mean'")
    return problems


def _validate_methods(methods, tag, sweep_axis=None):
    problems = []
    if not isinstance(methods, (list, tuple)):
        return [f"{tag}: must be a list"]
    for i, m in enumerate(methods):
        if not isinstance(m, dict) or "name" not in m:
            problems.append(f"{tag}[{i}]: method entries need a 'name'")
            continue
        if m["name"] not in METHOD_PARAMS:
            problems.append(f"{tag}[{i}]: unknown method {m['name']!r}")
            continue
        for p in METHOD_PARAMS[m["name"]]:
            if p == sweep_axis:
                continue
            if p not in m:
                problems.append(f"{tag}[{i}]: method {m['name']!r} needs parameter {p!r}")
    return problems


# ---------------------------------------------------------------------------
# series materialization


def _build_generated(decl):
    system = decl["system"]
    n = int(decl["length"])
    start = decl.get("start", [0.0])
    if system == "circle_rotation":
        return gen_circle(decl["phi"], decl.get("s", 1.0), start[0], n)
    if system == "torus_rotation":
        return gen_torus(decl["phi1"], decl["phi2"], start, n)
    if system in ("logistic", "tent"):
        return gen_interval_map(system, decl["param"], start[0], n)
    if system == "lorenz":
        return gen_lorenz(start, n, decl.get("burn_in", 0), decl.get("sample_time", 0.02))
    if system == "klein_rotation":
        return gen_klein(decl["phi1"], decl["phi2"], start, n)
    raise ValueError(f"unknown system {system!r}")


def _apply_derive(kind, body, base):
    if kind == "project":
        return project(base, int(body["coord"]))
    if kind == "embed":
        scalar = observable_mean(base) if body.get("observable") == "mean" else project(base, int(body["coord"]))
        return takens_embed(scalar, int(body["dim"]), int(body["lag"]))
    if kind == "noisy":
        return add_noise(base, float(body["eps"]), int(body["seed"]))
    if kind == "map_image":
        h = build_map(body["map"])
        img = h.image_of(base, np.arange(len(base)))
        return TimeSeries(img, space=body.get("space", base.space))
    raise ValueError(f"unknown derive kind {kind!r}")


def build_series(series_defs, prebuilt=None):
    """Materialize every declared series, resolving derivations.

    prebuilt seeds the cache with already-materialized series (used by
    sweeps to avoid regenerating the unswept ones).
    """
    built = dict(prebuilt or {})

    def build(name, stack=()):
        if name in built:
            return built[name]
        if name in stack:
            raise ValueError(f"series {name!r} derives from itself")
        decl = series_defs[name]
        if "system" in decl:
            out = _build_generated(decl)
        else:
            kind = next(k for k in DERIVE_KINDS if k in decl)
            body = decl[kind]
            out = _apply_derive(kind, body, build(body["of"], stack + (name,)))
        built[name] = out
        return out

    for name in series_defs:
        build(name)
    return built


def _dependents_of(series_defs, target):
    """The target series plus everything derived from it, transitively."""
    out = {target}
    grew = True
    while grew:
        grew = False
        for name, decl in series_defs.items():
            if name in out or "system" in decl:
                continue
            kind = next(k for k in DERIVE_KINDS if k in decl)
            if decl[kind]["of"] in out:
                out.add(name)
                grew = True
    return out


def _recipe_of(series_defs, name):
    """(source name, derivation steps) leading from a raw series to `name`."""
    steps = []
    cur = name
    seen = set()
    while True:
        if cur in seen:
            raise ValueError(f"series {cur!r} derives from itself")
        seen.add(cur)
        decl = series_defs[cur]
        if "system" in decl:
            return cur, list(reversed(steps))
        kind = next(k for k in DERIVE_KINDS if k in decl)
        steps.append((kind, decl[kind]))
        cur = decl[kind]["of"]


def _apply_recipe(steps, base):
    out = base
    for kind, body in steps:
        out = _apply_derive(kind, body, out)
    return out


def _embed_paired_recipes(series_defs, a_name, b_name):
    src_a, recipe_a = _recipe_of(series_defs, a_name)
    src_b, recipe_b = _recipe_of(series_defs, b_name)
    return src_a, recipe_a, src_b, recipe_b


# ---------------------------------------------------------------------------
# comparisons


def _resolve_maps(spec_series, built, comp):
    """(map_ab, map_ba) ConnectingMaps for one comparison, or (None, None)
    when the comparison only runs index-paired methods."""
    a_name, b_name = comp["pair"]
    A, B = built[a_name], built[b_name]
    decl = comp.get("map")
    if decl is None:
        return None, None
    if "ab" in decl or "ba" in decl:
        ab, ba = decl.get("ab"), decl.get("ba")
        if ab is None or ba is None:
            raise ValueError(f"comparison {a_name}/{b_name}: explicit maps need both 'ab' and 'ba'")
        return _build_direction(ab, built, a_name, b_name), _build_direction(ba, built, b_name, a_name)
    kind = decl.get("kind")
    if kind == "embed_paired":
        src_a, recipe_a, src_b, recipe_b = _embed_paired_recipes(spec_series, a_name, b_name)
        table_ab = _apply_recipe(recipe_b, built[src_a])
        table_ba = _apply_recipe(recipe_a, built[src_b])
        return (
            ConnectingMap.index_paired(table_ab, name=f"embed_paired[{a_name}->{b_name}]"),
            ConnectingMap.index_paired(table_ba, name=f"embed_paired[{b_name}->{a_name}]"),
        )
    if kind == "paired":
        return (
            ConnectingMap.index_paired(B, name="paired"),
            ConnectingMap.index_paired(A, name="paired"),
        )
    fwd = build_map(decl)
    rev = build_map(reverse_decl(decl, a_dim=A.dim))
    return fwd, rev


def _build_direction(decl, built, dom_name, cod_name):
    if decl.get("kind") == "paired":
        return ConnectingMap.index_paired(built[cod_name], name="paired")
    return build_map(decl)


def _clip_for_paired(series, cmap):
    if cmap is not None and cmap.kind == "paired":
        return series.truncated(min(len(series), len(cmap.table)))
    return series


def run_comparison(A, B, method_decl, map_ab=None, map_ba=None):
    """All (params, TestResult) combinations of one method grid on one pair."""
    name = method_decl["name"]
    grids = []
    for p in METHOD_PARAMS[name]:
        vals = method_decl[p]
        if not isinstance(vals, (list, tuple)):
            vals = [vals]
        grids.append([(p, v) for v in vals])
    combos = [[]]
    for grid in grids:
        combos = [c + [pv] for c in combos for pv in grid]
    results = []
    for combo in combos:
        params = TestParams(**dict(combo))
        if name in ("fnn", "knn"):
            q = min(len(A), len(B))
            result = compare_series(A.truncated(q), B.truncated(q), name, params)
        else:
            Ad = _clip_for_paired(A, map_ab)
            Bd = _clip_for_paired(B, map_ba)
            v_ab = _conjtest_directed(name, Ad, B, params, map_ab)
            v_ba = _conjtest_directed(name, Bd, A, params, map_ba)
            from .measures import TestResult

            result = TestResult(name, params, v_ab, v_ba, len(Ad) - params.t, len(Bd) - params.t)
        results.append(result)
    return results


def _conjtest_directed(name, dom, cod, params, cmap):
    from .measures import conjtest, conjtest_plus

    if cmap is None:
        raise ValueError(f"{name} needs a connecting map declaration")
    fn = conjtest if name == "conjtest" else conjtest_plus
    return fn(dom, cod, params.k, params.t, cmap)


# ---------------------------------------------------------------------------
# experiment running


def _format_value(v):
    return repr(float(v))


def _param_str(params, key):
    v = getattr(params, key)
    return "" if v is None else (f"{v:g}" if isinstance(v, float) else str(v))


def _rows_for(exp_id, pair_label, results):
    rows = []
    for res in results:
        for direction, value in (("ab", res.value_ab), ("ba", res.value_ba)):
            rows.append(
                {
                    "experiment": exp_id,
                    "pair": pair_label,
                    "method": res.method,
                    "r": _param_str(res.params, "r"),
                    "k": _param_str(res.params, "k"),
                    "t": _param_str(res.params, "t"),
                    "direction": direction,
                    "value": _format_value(value),
                }
            )
    return rows


RESULT_COLUMNS = ["experiment", "pair", "method", "r", "k", "t", "direction", "value"]
SWEEP_COLUMNS = ["experiment", "pair", "method", "r", "k", "t", "axis", "axis_value", "direction", "value"]


def _sort_rows(rows, columns):
    keys = [c for c in columns if c != "value"]
    rows.sort(key=lambda row: tuple(str(row.get(c, "")) for c in keys))
    return rows


def _write_csv(path, rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c, "") for c in columns})
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def output_dir(explicit=None):
    return Path(explicit or os.environ.get(OUTPUT_DIR_ENV) or "conjugacy_out")


def run_experiment(spec, out_dir=None):
    """Run every (comparison x method x param combo) of a spec, both
    directions, and return the result rows (also written to CSV when an
    output directory is given)."""
    problems = validate_spec(spec)
    if problems:
        raise SpecValidationError(problems)
    exp_id = spec.get("id", "experiment")
    built = build_series(spec["series"])
    rows = []
    for comp in spec.get("comparisons", []):
        a_name, b_name = comp["pair"]
        A, B = built[a_name], built[b_name]
        needs_maps = any(m["name"] in ("conjtest", "conjtest+") for m in spec.get("methods", []))
        map_ab = map_ba = None
        if needs_maps or comp.get("map"):
            map_ab, map_ba = _resolve_maps(spec["series"], built, comp)
        for method_decl in spec.get("methods", []):
            results = run_comparison(A, B, method_decl, map_ab, map_ba)
            rows.extend(_rows_for(exp_id, f"{a_name} vs {b_name}", results))
    _sort_rows(rows, RESULT_COLUMNS)
    if out_dir is not None:
        out = output_dir(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / f"experiment_{exp_id}.csv", rows, RESULT_COLUMNS)
    return rows


# ---------------------------------------------------------------------------
# sweeps


def _panel_tag(panel):
    names = "+".join(m["name"].replace("+", "plus") for m in panel["methods"])
    return f"{panel['axis']}_{names}"


def sweep(spec, axis=None, values=None, out_dir=None):
    """Run the sweep panel(s) of a spec along one axis.

    axis may be a method parameter (r/k/t) or a field of the swept series
    named by the panel (e.g. phi, param, eps via 'noise', dim).  Returns
    curve rows; writes one CSV and one SVG per panel when an output
    directory is given.
    """
    problems = validate_spec(spec)
    if problems:
        raise SpecValidationError(problems)
    panels = spec.get("sweeps", [])
    if axis is not None:
        panels = [p for p in panels if p["axis"] == axis]
        if not panels:
            available = sorted({p["axis"] for p in spec.get("sweeps", [])})
            raise ValueError(f"no sweep panel with axis {axis!r}; spec defines {available}")
    if not panels:
        raise ValueError("spec defines no sweep panels")
    exp_id = spec.get("id", "experiment")
    all_rows = []
    for panel in panels:
        panel = dict(panel)
        if values is not None:
            panel["values"] = list(values)
        if panel.get("methods") is None:
            panel["methods"] = spec.get("methods", [])
        rows = _run_panel(spec, panel, exp_id)
        all_rows.extend(rows)
        if out_dir is not None:
            out = output_dir(out_dir)
            out.mkdir(parents=True, exist_ok=True)
            tag = _panel_tag(panel)
            _sort_rows(rows, SWEEP_COLUMNS)
            _write_csv(out / f"experiment_{exp_id}_sweep_{tag}.csv", rows, SWEEP_COLUMNS)
            _write_sweep_svg(out / f"experiment_{exp_id}_sweep_{tag}.svg", rows, exp_id, panel["axis"])
    return all_rows


def _run_panel(spec, panel, exp_id):
    axis = panel["axis"]
    vals = panel["values"]
    if axis in ("r", "k", "t"):
        return _run_param_panel(spec, panel, exp_id, axis, vals)
    return _run_series_panel(spec, panel, exp_id, axis, vals)


def _run_param_panel(spec, panel, exp_id, axis, vals):
    built = build_series(spec["series"])
    rows = []
    for comp in spec.get("comparisons", []):
        a_name, b_name = comp["pair"]
        A, B = built[a_name], built[b_name]
        map_ab = map_ba = None
        if any(m["name"] in ("conjtest", "conjtest+") for m in panel["methods"]):
            map_ab, map_ba = _resolve_maps(spec["series"], built, comp)
        for method_decl in panel["methods"]:
            name = method_decl["name"]
            if axis not in METHOD_PARAMS[name]:
                continue
            if name == "fnn" and axis == "r":
                q = min(len(A), len(B))
                va = fnn_grid(A.truncated(q), B.truncated(q), vals)
                vb = fnn_grid(B.truncated(q), A.truncated(q), vals)
                for v, va_i, vb_i in zip(vals, va, vb):
                    params = TestParams(r=float(v))
                    rows.extend(
                        _sweep_rows(exp_id, f"{a_name} vs {b_name}", name, params, axis, v, va_i, vb_i)
                    )
                continue
            for v in vals:
                decl = dict(method_decl)
                decl[axis] = [v]
                for res in run_comparison(A, B, decl, map_ab, map_ba):
                    rows.extend(
                        _sweep_rows(
                            exp_id, f"{a_name} vs {b_name}", name, res.params, axis, v, res.value_ab, res.value_ba
                        )
                    )
    return rows


def _run_series_panel(spec, panel, exp_id, axis, vals):
    target = panel["series"]
    swept = _dependents_of(spec["series"], target)
    static = {
        name: series
        for name, series in build_series(spec["series"]).items()
        if name not in swept
    }
    rows = []
    for i, v in enumerate(vals):
        series_defs = json.loads(json.dumps(spec["series"]))
        decl = series_defs[target]
        if axis == "noise":
            if "noisy" not in decl:
                raise ValueError(f"series {target!r} is not a 'noisy' derivation; cannot sweep noise")
            decl["noisy"]["eps"] = float(v)
            decl["noisy"]["seed"] = int(decl["noisy"].get("seed", 0)) + i
        elif "system" in decl:
            if axis not in GENERATOR_FIELDS[decl["system"]]:
                raise ValueError(f"system {decl['system']!r} has no parameter {axis!r}")
            decl[axis] = float(v)
        else:
            kind = next(k for k in DERIVE_KINDS if k in decl)
            if axis not in decl[kind]:
                raise ValueError(f"series {target!r} has no swept field {axis!r}")
            decl[kind][axis] = type(decl[kind][axis])(v)
        built = build_series(series_defs, prebuilt=static)
        for comp in spec.get("comparisons", []):
            a_name, b_name = comp["pair"]
            if target not in comp["pair"]:
                continue
            A, B = built[a_name], built[b_name]
            map_ab = map_ba = None
            if any(m["name"] in ("conjtest", "conjtest+") for m in panel["methods"]):
                map_ab, map_ba = _resolve_maps(series_defs, built, comp)
            for method_decl in panel["methods"]:
                for res in run_comparison(A, B, method_decl, map_ab, map_ba):
                    rows.extend(
                        _sweep_rows(
                            exp_id, f"{a_name} vs {b_name}", res.method, res.params, axis, v,
                            res.value_ab, res.value_ba,
                        )
                    )
    return rows


def _sweep_rows(exp_id, pair_label, method, params, axis, axis_value, v_ab, v_ba):
    base = {
        "experiment": exp_id,
        "pair": pair_label,
        "method": method,
        "r": _param_str(params, "r"),
        "k": _param_str(params, "k"),
        "t": _param_str(params, "t"),
        "axis": axis,
        "axis_value": f"{float(axis_value):g}",
    }
    return [
        {**base, "direction": "ab", "value": _format_value(v_ab)},
        {**base, "direction": "ba", "value": _format_value(v_ba)},
    ]


# ---------------------------------------------------------------------------
# SVG emission (minimal polylines with axes; styling is out of scope)

_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def _write_sweep_svg(path, rows, exp_id, axis):
    curves = {}
    for row in rows:
        # the swept parameter is the x axis, not part of the curve identity
        fixed = ",".join(f"{p}={row[p]}" for p in ("r", "k", "t") if row[p] and p != axis)
        label = f"{row['pair']} {row['method']}" + (f" ({fixed})" if fixed else "") + f" [{row['direction']}]"
        curves.setdefault(label, []).append((float(row["axis_value"]), float(row["value"])))
    for pts in curves.values():
        pts.sort()
    write_svg(path, curves, title=f"experiment {exp_id}", xlabel=axis, ylabel="value")


def write_svg(path, curves, title="", xlabel="", ylabel="", width=720, height=480):
    """Plot labelled curves as SVG polylines with bare axes.

    curves: mapping label -> list of (x, y) pairs.
    """
    margin = 60
    xs = [x for pts in curves.values() for x, _ in pts]
    ys = [y for pts in curves.values() for _, y in pts]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{title}</text>',
        f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" font-size="11">{xlabel}</text>',
        f'<text x="14" y="{height / 2:.1f}" text-anchor="middle" font-size="11" '
        f'transform="rotate(-90 14 {height / 2:.1f})">{ylabel}</text>',
        f'<text x="{margin}" y="{height - margin + 16}" font-size="10" text-anchor="middle">{x0:g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 16}" font-size="10" text-anchor="middle">{x1:g}</text>',
        f'<text x="{margin - 6}" y="{height - margin}" font-size="10" text-anchor="end">{y0:g}</text>',
        f'<text x="{margin - 6}" y="{margin + 4}" font-size="10" text-anchor="end">{y1:g}</text>',
    ]
    max_legend = (height - 2 * margin) // 14
    for ci, (label, pts) in enumerate(sorted(curves.items())):
        color = _PALETTE[ci % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        if len(pts) == 1:
            parts.append(f'<circle cx="{sx(pts[0][0]):.2f}" cy="{sy(pts[0][1]):.2f}" r="2.5" fill="{color}"/>')
        if ci < max_legend:
            ly = margin + 14 * ci
            parts.append(f'<line x1="{width - margin - 150}" y1="{ly}" x2="{width - margin - 130}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
            parts.append(f'<text x="{width - margin - 125}" y="{ly + 4}" font-size="9">{label}</text>')
        elif ci == max_legend:
            ly = margin + 14 * ci
            parts.append(f'<text x="{width - margin - 125}" y="{ly + 4}" font-size="9">(+{len(curves) - max_legend} more)</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")


# ---------------------------------------------------------------------------
# built-in experiment specs

_T_GRID = [1, 5, 9, 13, 17, 21, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80]
_R_GRID = [2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0, 4.25, 4.5, 4.75, 5.0]

_STANDARD_METHODS = [
    {"name": "fnn", "r": [2.0]},
    {"name": "knn", "k": [5]},
    {"name": "conjtest", "k": [5], "t": [5]},
    {"name": "conjtest+", "k": [5], "t": [5]},
]


def _spec_1a():
    a = SQRT2_10
    return {
        "id": "1A",
        "description": "circle rotations: start/angle perturbations, nonlinearity, noise",
        "series": {
            "R1": {"system": "circle_rotation", "phi": a, "s": 1.0, "start": [0.0], "length": 2000},
            "R2": {"system": "circle_rotation", "phi": a, "s": 1.0, "start": [0.25], "length": 2000},
            "R3": {"system": "circle_rotation", "phi": a + 0.02, "s": 1.0, "start": [0.0], "length": 2000},
            "R4": {"system": "circle_rotation", "phi": 2 * a, "s": 1.0, "start": [0.0], "length": 2000},
            "R5": {"system": "circle_rotation", "phi": a, "s": 2.0, "start": [0.0], "length": 2000},
            "R6": {"noisy": {"of": "R5", "eps": 0.05, "seed": 1601}},
        },
        "comparisons": [
            {"pair": ["R1", "R2"], "map": {"kind": "identity"}},
            {"pair": ["R1", "R3"], "map": {"kind": "identity"}},
            {"pair": ["R1", "R4"], "map": {"kind": "identity"}},
            {"pair": ["R1", "R5"], "map": {"kind": "pow", "s": 0.5}},
            {"pair": ["R1", "R6"], "map": {"kind": "pow", "s": 0.5}},
        ],
        "methods": _STANDARD_METHODS,
    }


def _spec_1b():
    a = SQRT2_10
    return {
        "id": "1B",
        "description": "circle rotation: response to sweeping the rotation angle",
        "series": {
            "Ra": {"system": "circle_rotation", "phi": a, "s": 1.0, "start": [0.0], "length": 2000},
            "Rb": {"system": "circle_rotation", "phi": a, "s": 1.0, "start": [0.0], "length": 2000},
        },
        "comparisons": [{"pair": ["Ra", "Rb"], "map": {"kind": "identity"}}],
        "methods": [
            {"name": "fnn", "r": [2.0]},
            {"name": "knn", "k": [5]},
            {"name": "conjtest", "k": [5], "t": [5]},
        ],
        "sweeps": [
            {
                "axis": "phi",
                "series": "Rb",
                "values": [a + i * a / 100.0 for i in range(-50, 126)],
            }
        ],
    }


def _spec_1c():
    a = SQRT2_10
    return {
        "id": "1C",
        "description": "circle rotation: response to additive uniform noise",
        "series": {
            "R1": {"system": "circle_rotation", "phi": a, "s": 1.0, "start": [0.0], "length": 2000},
            "R5b": {"system": "circle_rotation", "phi": a, "s": 2.0, "start": [0.0], "length": 2000},
            "Rn": {"noisy": {"of": "R5b", "eps": 0.0, "seed": 1701}},
        },
        "comparisons": [{"pair": ["R1", "Rn"], "map": {"kind": "pow", "s": 0.5}}],
        "methods": _STANDARD_METHODS,
        "sweeps": [
            {
                "axis": "noise",
                "series": "Rn",
                "values": [round(0.01 * i, 2) for i in range(26)],
            }
        ],
    }


def _spec_2a():
    a, b = SQRT2_10, SQRT3_10
    return {
        "id": "2A",
        "description": "torus rotations and their circle projections (semi-conjugacy)",
        "series": {
            "T1": {"system": "torus_rotation", "phi1": a, "phi2": b, "start": [0.0, 0.0], "length": 2000},
            "T2": {"system": "torus_rotation", "phi1": 1.1 * a, "phi2": b, "start": [0.1, 0.0], "length": 2000},
            "T3": {"system": "torus_rotation", "phi1": b, "phi2": b, "start": [0.1, 0.0], "length": 2000},
            "S1": {"project": {"of": "T1", "coord": 1}},
            "S2": {"project": {"of": "T2", "coord": 1}},
            "S3": {"project": {"of": "T3", "coord": 1}},
        },
        "comparisons": [
            {"pair": ["T1", "S1"], "map": {"kind": "proj", "coord": 1}},
            {"pair": ["T1", "T2"], "map": {"kind": "identity"}},
            {"pair": ["T1", "S2"], "map": {"kind": "proj", "coord": 1}},
            {"pair": ["T1", "T3"], "map": {"kind": "identity"}},
            {"pair": ["T1", "S3"], "map": {"kind": "proj", "coord": 1}},
        ],
        "methods": _STANDARD_METHODS,
    }


def _spec_3a():
    return {
        "id": "3A",
        "description": "logistic vs tent: conjugate pair plus start/parameter perturbations",
        "series": {
            "A": {"system": "logistic", "param": 4.0, "start": [0.2], "length": 2000},
            # tent-side data is the pointwise image of A under the conjugating
            # homeomorphism: float tent orbits of binary-rational starts
            # collapse to 0, and an independently iterated chaotic orbit
            # decorrelates from A, which breaks the index pairing the
            # comparison relies on.
            "B1": {"map_image": {"of": "A", "map": {"kind": "arcsin"}}},
            "B2": {"system": "logistic", "param": 4.0, "start": [0.21], "length": 2000},
            "B3": {"system": "logistic", "param": 3.99, "start": [0.2], "length": 2000},
            "B4": {"system": "logistic", "param": 3.99, "start": [0.21], "length": 2000},
        },
        "comparisons": [
            {"pair": ["A", "B1"], "map": {"kind": "arcsin"}},
            {"pair": ["A", "B2"], "map": {"kind": "identity"}},
            {"pair": ["A", "B3"], "map": {"kind": "identity"}},
            {"pair": ["A", "B4"], "map": {"kind": "identity"}},
        ],
        "methods": _STANDARD_METHODS,
    }


def _spec_3b():
    return {
        "id": "3B",
        "description": "logistic map: response to sweeping the parameter",
        "series": {
            "Bref": {"system": "logistic", "param": 4.0, "start": [0.2], "length": 2000},
            "Bl": {"system": "logistic", "param": 4.0, "start": [0.2], "length": 2000},
        },
        "comparisons": [{"pair": ["Bref", "Bl"], "map": {"kind": "identity"}}],
        "methods": [
            {"name": "fnn", "r": [2.0]},
            {"name": "knn", "k": [5]},
            {"name": "conjtest", "k": [5], "t": [5]},
        ],
        "sweeps": [
            {
                "axis": "param",
                "series": "Bl",
                "values": [round(3.8 + 0.005 * i, 3) for i in range(41)],
            }
        ],
    }


def _lorenz_series(name, start, n=10000):
    return {name: {"system": "lorenz", "start": list(start), "length": n, "burn_in": 2000, "sample_time": 0.02}}


def _embed_of(src, coord, dim, lag=5):
    return {"embed": {"of": src, "coord": coord, "dim": dim, "lag": lag}}


def _spec_4a():
    series = {}
    series.update(_lorenz_series("L1", (1.0, 1.0, 1.0)))
    series.update(_lorenz_series("L2", (2.0, 1.0, 1.0)))
    for i in (1, 2):
        for d in (1, 2, 3):
            series[f"P{i}x{d}"] = _embed_of(f"L{i}", 1, d)
        series[f"P{i}z1"] = _embed_of(f"L{i}", 3, 1)
        series[f"P{i}z3"] = _embed_of(f"L{i}", 3, 3)
    comparisons = [{"pair": ["L1", "L2"], "map": {"kind": "identity"}}]
    for i in (1, 2):
        for tgt in (f"P{i}x1", f"P{i}x2", f"P{i}x3", f"P{i}z1", f"P{i}z3"):
            comparisons.append({"pair": ["L1", tgt], "map": {"kind": "embed_paired"}})
    return {
        "id": "4A",
        "description": "Lorenz trajectories vs delay embeddings of their coordinates",
        "series": series,
        "comparisons": comparisons,
        "methods": [
            {"name": "fnn", "r": [3.0]},
            {"name": "knn", "k": [5]},
            {"name": "conjtest", "k": [5], "t": [10]},
            {"name": "conjtest+", "k": [5], "t": [10]},
        ],
    }


def _spec_4b():
    series = _lorenz_series("L", (1.0, 1.0, 1.0))
    for d in range(1, 7):
        series[f"P{d}"] = _embed_of("L", 1, d)
    comparisons = [
        {"pair": [f"P{d}", f"P{d + 1}"], "map": {"kind": "embed_paired"}} for d in range(1, 6)
    ]
    return {
        "id": "4B",
        "description": "embedding-dimension scan for the Lorenz x-observable",
        "series": series,
        "comparisons": comparisons,
        "methods": [
            {"name": "fnn", "r": _R_GRID},
            {"name": "knn", "k": [5]},
            {"name": "conjtest+", "k": [5], "t": [10]},
        ],
        "sweeps": [
            {"axis": "r", "values": _R_GRID, "methods": [{"name": "fnn"}]},
            {"axis": "k", "values": [1, 2, 5, 10, 15, 20], "methods": [{"name": "knn"}]},
            {"axis": "k", "values": [1, 3, 5, 10, 15], "methods": [{"name": "conjtest+", "t": 10}]},
            {"axis": "t", "values": _T_GRID, "methods": [{"name": "conjtest+", "k": 5}]},
        ],
    }


def _spec_4c():
    starts = {1: (1.0, 1.0, 1.0), 2: (2.0, 1.0, 1.0), 3: (1.0, 2.0, 1.0), 4: (1.0, 1.0, 2.0)}
    series = {}
    for i, p in starts.items():
        series.update(_lorenz_series(f"L{i}", p))
    comparisons = []
    for i in (2, 3, 4):
        comparisons.append({"pair": ["L1", f"L{i}"], "map": {"kind": "identity"}})
        for d in range(1, 5):
            series[f"P{i}x{d}"] = _embed_of(f"L{i}", 1, d)
            series[f"P{i}y{d}"] = _embed_of(f"L{i}", 2, d)
            comparisons.append({"pair": ["L1", f"P{i}x{d}"], "map": {"kind": "embed_paired"}})
            comparisons.append({"pair": ["L1", f"P{i}y{d}"], "map": {"kind": "embed_paired"}})
    return {
        "id": "4C",
        "description": "Lorenz: time-horizon dependence of the enlarged conjugacy defect",
        "series": series,
        "comparisons": comparisons,
        "methods": [{"name": "conjtest+", "k": [5], "t": [10]}],
        "sweeps": [{"axis": "t", "values": _T_GRID, "methods": [{"name": "conjtest+", "k": 5}]}],
    }


def _spec_5a():
    series = {
        "K": {
            "system": "klein_rotation",
            "phi1": SQRT2_10,
            "phi2": SQRT3_10,
            "start": [0.0, 0.0],
            "length": 8000,
        }
    }
    for d in range(2, 6):
        series[f"P{d}"] = {"embed": {"of": "K", "observable": "mean", "dim": d, "lag": 8}}
    comparisons = [
        {"pair": [f"P{d}", f"P{d + 1}"], "map": {"kind": "embed_paired"}} for d in range(2, 5)
    ]
    return {
        "id": "5A",
        "description": "embedding-dimension scan for the Klein-bottle mean observable",
        "series": series,
        "comparisons": comparisons,
        "methods": [
            {"name": "fnn", "r": _R_GRID},
            {"name": "knn", "k": [5]},
            {"name": "conjtest+", "k": [5], "t": [10]},
        ],
        "sweeps": [
            {"axis": "r", "values": _R_GRID, "methods": [{"name": "fnn"}]},
            {"axis": "k", "values": [1, 2, 5, 10, 15, 20], "methods": [{"name": "knn"}]},
            {"axis": "k", "values": [1, 3, 5, 10, 15], "methods": [{"name": "conjtest+", "t": 10}]},
            {"axis": "t", "values": _T_GRID, "methods": [{"name": "conjtest+", "k": 5}]},
        ],
    }


_BUILTIN = {
    "1A": _spec_1a,
    "1B": _spec_1b,
    "1C": _spec_1c,
    "2A": _spec_2a,
    "3A": _spec_3a,
    "3B": _spec_3b,
    "4A": _spec_4a,
    "4B": _spec_4b,
    "4C": _spec_4c,
    "5A": _spec_5a,
}

BUILTIN_EXPERIMENTS = tuple(sorted(_BUILTIN))


def builtin_experiment(exp_id):
    """A fresh copy of one of the built-in benchmark specs."""
    key = str(exp_id).upper()
    if key not in _BUILTIN:
        raise KeyError(f"unknown experiment {exp_id!r}; built-ins: {', '.join(BUILTIN_EXPERIMENTS)}")
    return _BUILTIN[key]()


def load_spec(id_or_path):
    """Spec from a built-in id or a JSON file path."""
    key = str(id_or_path).upper()
    if key in _BUILTIN:
        return _BUILTIN[key]()
    path = Path(id_or_path)
    if not path.exists():
        raise FileNotFoundError(
            f"{id_or_path!r} is neither a built-in experiment ({', '.join(BUILTIN_EXPERIMENTS)}) nor a spec file"
        )
    return json.loads(path.read_text(encoding="utf-8"))
