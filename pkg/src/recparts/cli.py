"""Command-line front end.

Subcommands map one-to-one onto the experiment and oracle operations:
sample, exact, theorem, ranges, smallparts, shape, density, uniformity,
constants.  Every randomized run either takes --seed or records the
auto-chosen seed in its output.  Exit codes: 0 pass, 1 experiment fail,
2 usage error, 3 sampler budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import json
import secrets
import sys
from typing import Optional

import numpy as np

from . import asymptotics, harmonic
from .experiments import (
    ExperimentReport,
    limit_shape_experiment,
    range_experiment,
    sampler_uniformity_experiment,
    small_parts_experiment,
    theorem_experiment,
)
from .oracle import exact_statistic_distribution
from .partition import centered_statistic, reciprocal_sum
from .sampler import BudgetExhaustedError, SamplerConfig, sample_batch

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(32)
    print(f"auto-chosen seed: {seed}", file=sys.stderr)
    return seed


def _write_report(report: ExperimentReport, path: Optional[str]) -> None:
    text = report.to_json()
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _delta(value: str) -> float:
    d = float(value)
    if not (0.0 < d < 0.25):
        raise argparse.ArgumentTypeError("delta must lie in (0, 1/4)")
    return d


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recparts",
        description="Reciprocal-sum statistics of random distinct-parts partitions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--json", help="write the JSON report here")
        p.add_argument("--csv", help="write a CSV dump here")
        if seeded:
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("sample", help="draw partitions, dump per-sample statistics")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--mode", choices=["free", "exact"], default="free")
    common(p)

    p = sub.add_parser("exact", help="exact statistic distribution for small n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--distribution", action="store_true")
    common(p, seeded=False)

    p = sub.add_parser("theorem", help="distributional check against H")
    p.add_argument("--n", type=_positive, default=2000)
    p.add_argument("--count", type=_positive, default=10000)
    p.add_argument("--mode", choices=["free", "exact"], default="free")
    p.add_argument("--figure", help="histogram + H density figure path")
    common(p)

    p = sub.add_parser("ranges", help="medium/large range concentration")
    p.add_argument("--n", type=_positive, default=100000)
    p.add_argument("--count", type=_positive, default=1000)
    common(p)

    p = sub.add_parser("smallparts", help="small-range law vs exact sign sums")
    p.add_argument("--n", type=_positive, default=4000)
    p.add_argument("--count", type=_positive, default=100000)
    common(p)

    p = sub.add_parser("shape", help="limit-shape deviation check")
    p.add_argument("--n", type=_positive, default=1000)
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--delta", type=_delta, default=0.1)
    p.add_argument("--figure", help="profile + limit-shape band figure path")
    common(p)

    p = sub.add_parser("density", help="harmonic-sum density/CDF curves")
    p.add_argument("--terms", type=_positive, default=200)
    p.add_argument("--with-cdf", action="store_true")
    p.add_argument("--figure", help="curve figure path")
    common(p, seeded=False)

    p = sub.add_parser("uniformity", help="exact-mode sampler uniformity")
    p.add_argument("--n", type=_positive, default=20)
    p.add_argument("--count", type=_positive, default=64000)
    common(p)

    p = sub.add_parser("constants", help="closed-form constants and deltas")
    common(p, seeded=False)

    return parser


def _cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    cfg = SamplerConfig(n=args.n, mode=args.mode, seed=seed)
    batch = sample_batch(cfg, args.count, workers=args.workers)
    rows = []
    for p in batch.partitions:
        center = p.weight if (args.mode == "free" and p.weight > 0) else args.n
        rows.append(
            (p.weight, len(p), f"{reciprocal_sum(p):.12g}",
             f"{centered_statistic(p, center):.12g}")
        )
    if args.csv:
        _write_csv(args.csv, ["weight", "num_parts", "S", "centered_statistic"], rows)
    else:
        print("weight,num_parts,S,centered_statistic")
        for row in rows:
            print(",".join(str(c) for c in row))
    return EXIT_PASS


def _cmd_exact(args) -> int:
    dist = exact_statistic_distribution(args.n)
    rows = [
        (f"{v:.12g}", pr.numerator, pr.denominator) for v, pr in dist.atoms
    ]
    if args.csv:
        _write_csv(args.csv, ["value", "probability_numerator", "probability_denominator"], rows)
    payload = {
        "n": args.n,
        "atoms": [
            {"value": v, "numerator": pr.numerator, "denominator": pr.denominator}
            for v, pr in dist.atoms
        ],
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_PASS


def _cmd_theorem(args) -> int:
    seed = _resolve_seed(args)
    report = theorem_experiment(args.n, args.count, seed, mode=args.mode, workers=args.workers)
    _write_report(report, args.json)
    if args.figure or args.csv:
        cfg = SamplerConfig(n=args.n, mode=args.mode, seed=seed)
        batch = sample_batch(cfg, args.count, workers=args.workers)
        vals = np.array(
            [
                centered_statistic(p, p.weight if (args.mode == "free" and p.weight > 0) else args.n)
                for p in batch.partitions
            ]
        )
        if args.csv:
            _write_csv(args.csv, ["centered_statistic"], [(f"{v:.12g}",) for v in vals])
        if args.figure:
            from .figures import histogram_figure

            histogram_figure(
                vals, harmonic.density(), args.figure,
                title=f"n={args.n}, M={args.count}, {args.mode} mode",
            )
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_ranges(args) -> int:
    seed = _resolve_seed(args)
    report = range_experiment(args.n, args.count, seed, workers=args.workers)
    _write_report(report, args.json)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_smallparts(args) -> int:
    seed = _resolve_seed(args)
    report = small_parts_experiment(args.n, args.count, seed)
    _write_report(report, args.json)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_shape(args) -> int:
    seed = _resolve_seed(args)
    report = limit_shape_experiment(
        args.n, args.count, seed, args.delta, workers=args.workers
    )
    _write_report(report, args.json)
    if args.figure:
        from .figures import shape_figure

        cfg = SamplerConfig(n=args.n, seed=seed)
        batch = sample_batch(cfg, min(args.count, 6), workers=1)
        shape_figure(batch.partitions, args.n, args.figure,
                     title=f"n={args.n}, delta={args.delta}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_density(args) -> int:
    cfg = harmonic.HModelConfig(cf_terms=args.terms)
    g = harmonic.density(cfg)
    curves = [g]
    header = ["x", "density"]
    cols = [g.grid, g.values]
    if args.with_cdf:
        F = harmonic.cdf(cfg)
        curves.append(F)
        header.append("cdf")
        cols.append(F.values)
    if args.csv:
        rows = zip(*(np.round(c, 12) for c in cols))
        _write_csv(args.csv, header, rows)
    if args.figure:
        from .figures import curve_figure

        curve_figure(curves, args.figure, title=f"harmonic-sum model, K={args.terms}")
    if not args.csv and not args.figure:
        print(json.dumps({
            "terms": args.terms,
            "integral": float(np.trapezoid(g.values, g.grid)),
            "max_density": float(g.values.max()),
        }, indent=2, sort_keys=True))
    return EXIT_PASS


def _cmd_uniformity(args) -> int:
    seed = _resolve_seed(args)
    report = sampler_uniformity_experiment(args.n, args.count, seed, workers=args.workers)
    _write_report(report, args.json)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_constants(args) -> int:
    fq0 = asymptotics.f_quadrature(0.0)
    points = [0.1, 0.5, 1.0, 1.5]
    payload = {
        "A": asymptotics.A,
        "A_log2": asymptotics.L_INFINITY,
        "mellin_constant": asymptotics.MELLIN_CONSTANT,
        "f0_quadrature": fq0,
        "f0_delta": fq0 - asymptotics.MELLIN_CONSTANT,
        "f_points": {
            str(s): {
                "closed": asymptotics.f_closed(s),
                "quadrature": asymptotics.f_quadrature(s),
                "delta": asymptotics.f_closed(s) - asymptotics.f_quadrature(s),
            }
            for s in points
        },
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_PASS


_HANDLERS = {
    "sample": _cmd_sample,
    "exact": _cmd_exact,
    "theorem": _cmd_theorem,
    "ranges": _cmd_ranges,
    "smallparts": _cmd_smallparts,
    "shape": _cmd_shape,
    "density": _cmd_density,
    "uniformity": _cmd_uniformity,
    "constants": _cmd_constants,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
