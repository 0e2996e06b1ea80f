"""Command-line interface.

Subcommands:

* ``generate``   -- write a benchmark trajectory to CSV
* ``embed``      -- delay-embed a scalar observable of a CSV series
* ``compare``    -- run conjugacy tests on two CSV series (both directions)
* ``experiment`` -- run or sweep a built-in or JSON experiment spec

Exit codes: 0 on success, 2 on spec validation failure.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .core import ConnectingMap, read_series_csv, write_series_csv
from .embedding import observable_mean, project, takens_embed
from .generators import add_noise, gen_circle, gen_interval_map, gen_klein, gen_lorenz, gen_torus
from .harness import (
    BUILTIN_EXPERIMENTS,
    SpecValidationError,
    load_spec,
    output_dir,
    run_experiment,
    sweep,
)
from .maps import build_map, parse_map_token, reverse_decl
from .measures import TestParams, compare_series


def _parse_floats(text):
    return [float(tok) for tok in text.replace(",", " ").split()]


_START_DIMS = {"circle_rotation": 1, "torus_rotation": 2, "logistic": 1, "tent": 1,
               "lorenz": 3, "klein_rotation": 2}


def _cmd_generate(args):
    want = _START_DIMS[args.system]
    start = _parse_floats(args.start) if args.start else [0.0] * want
    if len(start) != want:
        raise SystemExit(f"--start for {args.system} needs {want} coordinate(s), got {len(start)}")
    n = args.length + args.burn_in if args.system != "lorenz" else args.length
    if args.system == "circle_rotation":
        series = gen_circle(args.phi, args.s, start[0], n)
    elif args.system == "torus_rotation":
        series = gen_torus(args.phi1, args.phi2, start, n)
    elif args.system in ("logistic", "tent"):
        series = gen_interval_map(args.system, args.param, start[0], n)
    elif args.system == "lorenz":
        series = gen_lorenz(start, args.length, args.burn_in, args.sample_time)
    else:
        series = gen_klein(args.phi1, args.phi2, start, n)
    if args.system != "lorenz" and args.burn_in:
        from .core import TimeSeries

        series = TimeSeries(series.points[args.burn_in :], series.space)
    if args.noise > 0:
        series = add_noise(series, args.noise, args.seed)
    write_series_csv(series, args.out)
    print(f"wrote {len(series)} points ({series.space}) to {args.out}")
    return 0


def _cmd_embed(args):
    series = read_series_csv(args.input)
    if args.mean_observable:
        scalar = observable_mean(series)
    else:
        scalar = project(series, args.coord)
    out = takens_embed(scalar, args.dim, args.lag)
    write_series_csv(out, args.out)
    print(f"wrote {len(out)} embedded points (dim={args.dim}, lag={args.lag}) to {args.out}")
    return 0


def _paired_maps(A, B):
    q = min(len(A), len(B))
    return (
        ConnectingMap.index_paired(B.points[:q], name="paired"),
        ConnectingMap.index_paired(A.points[:q], name="paired"),
        q,
    )


def _cmd_compare(args):
    A = read_series_csv(args.series_a)
    B = read_series_csv(args.series_b)
    methods = args.method or ["fnn", "knn", "conjtest", "conjtest+"]
    rows = []
    for method in methods:
        needs_map = method in ("conjtest", "conjtest+")
        map_ab = map_ba = None
        Ad, Bd = A, B
        if needs_map:
            decl = parse_map_token(args.map)
            if decl["kind"] == "paired":
                map_ab, map_ba, q = _paired_maps(A, B)
                Ad, Bd = A.truncated(q), B.truncated(q)
            else:
                map_ab = build_map(decl)
                if args.map_reverse:
                    map_ba = build_map(parse_map_token(args.map_reverse))
                else:
                    map_ba = build_map(reverse_decl(decl, a_dim=A.dim))
        if method == "fnn":
            grids = [TestParams(r=r) for r in args.r]
        elif method == "knn":
            grids = [TestParams(k=k) for k in args.k]
        else:
            grids = [TestParams(k=k, t=t) for k in args.k for t in args.t]
        for params in grids:
            if method in ("fnn", "knn"):
                q = min(len(A), len(B))
                res = compare_series(A.truncated(q), B.truncated(q), method, params)
            else:
                res = compare_series(Ad, Bd, method, params, map_ab=map_ab, map_ba=map_ba)
            rows.append(
                {
                    "method": method,
                    "r": "" if params.r is None else f"{params.r:g}",
                    "k": "" if params.k is None else str(params.k),
                    "t": "" if params.t is None else str(params.t),
                    "value_ab": repr(res.value_ab),
                    "value_ba": repr(res.value_ba),
                }
            )
    columns = ["method", "r", "k", "t", "value_ab", "value_ba"]
    writer = csv.DictWriter(args.out, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return 0


def _cmd_experiment(args):
    try:
        spec = load_spec(args.spec)
        if args.action == "run":
            rows = run_experiment(spec, out_dir=output_dir(args.out_dir))
            print(f"experiment {spec.get('id')}: {len(rows)} result rows -> {output_dir(args.out_dir)}")
        else:
            values = _parse_floats(args.values) if args.values else None
            rows = sweep(spec, axis=args.axis, values=values, out_dir=output_dir(args.out_dir))
            print(f"experiment {spec.get('id')} sweep: {len(rows)} curve rows -> {output_dir(args.out_dir)}")
    except SpecValidationError as exc:
        print(exc, file=sys.stderr)
        return 2
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conjugacy",
        description="Quantify topological conjugacy of finitely sampled dynamical systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a benchmark trajectory as CSV")
    g.add_argument("--system", required=True,
                   choices=["circle_rotation", "torus_rotation", "logistic", "tent", "lorenz", "klein_rotation"])
    g.add_argument("--phi", type=float, default=0.0, help="rotation angle (circle)")
    g.add_argument("--s", type=float, default=1.0, help="circle conjugation exponent")
    g.add_argument("--phi1", type=float, default=0.0)
    g.add_argument("--phi2", type=float, default=0.0)
    g.add_argument("--param", type=float, default=4.0, help="logistic/tent parameter")
    g.add_argument("--sample-time", type=float, default=0.02)
    g.add_argument("--start", type=str, default="", help="comma-separated start point")
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--burn-in", type=int, default=0)
    g.add_argument("--noise", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=_cmd_generate)

    e = sub.add_parser("embed", help="delay-embed a scalar observable of a CSV series")
    e.add_argument("--input", required=True)
    e.add_argument("--dim", type=int, required=True)
    e.add_argument("--lag", type=int, required=True)
    obs = e.add_mutually_exclusive_group()
    obs.add_argument("--coord", type=int, default=1, help="1-based coordinate to observe")
    obs.add_argument("--mean-observable", action="store_true", help="use the coordinate mean")
    e.add_argument("--out", required=True)
    e.set_defaults(fn=_cmd_embed)

    c = sub.add_parser("compare", help="run conjugacy tests on two CSV series")
    c.add_argument("series_a")
    c.add_argument("series_b")
    c.add_argument("--method", action="append",
                   choices=["fnn", "knn", "conjtest", "conjtest+"],
                   help="repeatable; default: all four")
    c.add_argument("--r", type=float, action="append", default=None, help="fnn threshold (repeatable)")
    c.add_argument("--k", type=int, action="append", default=None, help="neighborhood size (repeatable)")
    c.add_argument("--t", type=int, action="append", default=None, help="time horizon (repeatable)")
    c.add_argument("--map", default="identity",
                   help="connecting map: identity | pow:s | arcsin | proj:j | paired")
    c.add_argument("--map-reverse", default=None,
                   help="override the derived reverse-direction map")
    c.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    c.set_defaults(fn=_cmd_compare)

    x = sub.add_parser("experiment", help="run or sweep an experiment spec")
    xsub = x.add_subparsers(dest="action", required=True)
    xr = xsub.add_parser("run", help="run every comparison of a spec")
    xr.add_argument("spec", help=f"built-in id ({', '.join(BUILTIN_EXPERIMENTS)}) or JSON path")
    xr.add_argument("--out-dir", default=None)
    xr.set_defaults(fn=_cmd_experiment)
    xs = xsub.add_parser("sweep", help="run the sweep panels of a spec")
    xs.add_argument("spec")
    xs.add_argument("--axis", default=None)
    xs.add_argument("--values", default=None, help="comma-separated axis values")
    xs.add_argument("--out-dir", default=None)
    xs.set_defaults(fn=_cmd_experiment)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "r", None) is None and hasattr(args, "r"):
        args.r = [2.0]
    if getattr(args, "k", None) is None and hasattr(args, "k"):
        args.k = [5]
    if getattr(args, "t", None) is None and hasattr(args, "t"):
        args.t = [5]
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
