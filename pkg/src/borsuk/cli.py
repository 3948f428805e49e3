"""Command-line entry point: every operation behind one executable.

Each subcommand prints a single JSON document to stdout (big integers as
decimal strings, keys sorted, byte-identical across runs for identical
inputs) and writes any heavier artifacts to --out.  Exit codes: 0 success,
2 invalid arguments, 3 enumeration-cap refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bounds, construction, geometry, oracle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: one subcommand plus its parameters."""

    command: str
    k: int | None = None
    n: int | None = None
    d_lo: int | None = None
    d_hi: int | None = None
    limit: int | None = None
    out: str | None = None
    format: str = "json"
    cap: int | None = None
    threads: int = 1
    strategy: str = "natural-order"
    unit: bool = False
    plot: str | None = None
    powers: int | None = None
    allow_large: bool = False

    def validate(self) -> None:
        if self.k is not None and self.k < 1:
            raise ValueError(f"--k must be >= 1, got {self.k}")
        if self.threads < 1:
            raise ValueError(f"--threads must be >= 1, got {self.threads}")
        if self.cap is not None and self.cap < 1:
            raise ValueError(f"--cap must be >= 1, got {self.cap}")
        if self.command == "scan" and not 1 <= self.d_lo <= self.d_hi:
            raise ValueError(f"need 1 <= --from <= --to, got {self.d_lo}, {self.d_hi}")
        if self.command == "construct" and self.format not in ("json", "binary"):
            raise ValueError(f"construct supports --format json|binary, got {self.format}")
        if self.command == "embed" and self.format not in ("json", "csv"):
            raise ValueError(f"embed supports --format json|csv, got {self.format}")
        if self.command == "rate" and self.k is not None and self.k < 2:
            raise ValueError(f"rate needs --k >= 2, got {self.k}")


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cmd_bound(cfg: RunConfig) -> dict:
    payload = bounds.bound_report_json(bounds.bound_report(cfg.k))
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")
    return payload


def _cmd_scan(cfg: RunConfig) -> dict:
    report = bounds.coverage_scan(cfg.d_lo, cfg.d_hi)
    witnesses = sorted({e.witness_k for e in report.entries if e.witness_k is not None})
    if cfg.out:
        rows = bounds.coverage_json(report)
        if cfg.format == "csv":
            with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["d", "covered", "witness_k", "parts_lower_bound"])
                for r in rows:
                    writer.writerow([r["d"], r["covered"], r["witness_k"],
                                     r["parts_lower_bound"]])
        else:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                json.dump(rows, fh, sort_keys=True)
                fh.write("\n")
        with open(cfg.out + ".txt", "w", encoding="utf-8") as fh:
            fh.write(report.summary_table() + "\n")
    if cfg.plot:
        from . import plots

        plots.plot_coverage(report, cfg.plot)
    return {
        "d_lo": report.d_lo,
        "d_hi": report.d_hi,
        "dimensions": len(report.entries),
        "covered": report.covered_count,
        "all_covered": report.all_covered,
        "uncovered_ranges": [list(r) for r in report.uncovered_ranges()],
        "witness_ks": witnesses,
        "out": cfg.out,
    }


def _cmd_min_k(cfg: RunConfig) -> dict:
    k = bounds.min_counterexample_k(cfg.limit)
    payload: dict = {"limit": cfg.limit, "k": k, "m": None, "d": None,
                     "parts_lower_bound": None}
    if k is not None:
        rep = bounds.bound_report(k)
        payload.update(m=rep.m, d=rep.dimension,
                       parts_lower_bound=str(rep.parts_lower_bound))
    return payload


def _cmd_construct(cfg: RunConfig) -> dict:
    if cfg.format == "binary":
        written = construction.export_family_binary(cfg.out, cfg.k, cap=cfg.cap)
    else:
        written = construction.export_family_json(cfg.out, cfg.k, cap=cfg.cap)
    return {
        "k": cfg.k,
        "m": 4 * cfg.k,
        "count": construction.family_size(cfg.k),
        "format": cfg.format,
        "out": cfg.out,
        "written": written,
    }


def _cmd_embed(cfg: RunConfig) -> dict:
    cloud = geometry.embed(cfg.k, unit_diameter=cfg.unit, cap=cfg.cap)
    if cfg.out:
        if cfg.format == "csv":
            geometry.export_cloud_csv(cloud, cfg.out)
        else:
            geometry.export_cloud_json(cloud, cfg.out)
    return {
        "k": cfg.k,
        "m": cloud.m,
        "points": cloud.n_points,
        "ambient_dim": cloud.ambient_dim,
        "weight": cloud.weight,
        "scale": _frac(cloud.scale),
        "unit_diameter": cfg.unit,
        "out": cfg.out,
    }


def _cmd_diameter(cfg: RunConfig) -> dict:
    cloud = geometry.embed(cfg.k, unit_diameter=cfg.unit, cap=cfg.cap)
    graph = geometry.diameter_graph(cloud)
    degrees = graph.degrees()
    if cfg.out:
        geometry.export_edges_csv(graph, cfg.out)
    return {
        "k": cfg.k,
        "vertices": graph.n_vertices,
        "edges": len(graph.edges),
        "diameter_sq": _frac(graph.diameter_sq),
        "degree_min": min(degrees),
        "degree_max": max(degrees),
        "out": cfg.out,
    }


def _cmd_profile(cfg: RunConfig) -> dict:
    profile = oracle.intersection_profile(cfg.k, threads=cfg.threads, cap=cfg.cap)
    if cfg.out:
        oracle.export_profile_csv(cfg.out, profile)
    if cfg.plot:
        from . import plots

        plots.plot_profile(profile, cfg.plot)
    return {
        "k": cfg.k,
        "pairs": profile.total_pairs,
        "histogram": [
            {"a": a, "intersection": value, "pairs": count}
            for a, value, count in profile.rows()
        ],
        "min_intersection": profile.min_intersection,
        "argmin_a": profile.argmin_a,
        "threads": cfg.threads,
        "out": cfg.out,
    }


def _cmd_clique(cfg: RunConfig) -> dict:
    size, family = oracle.max_family_brute(cfg.n, allow_large=cfg.allow_large)
    if cfg.out:
        oracle.export_witness_json(cfg.out, cfg.n, size, family)
    return {
        "n": cfg.n,
        "max": size,
        "fw_bound": str(bounds.fw_upper_bound(cfg.n)),
        "witness": [list(s) for s in family],
        "out": cfg.out,
    }


def _cmd_color(cfg: RunConfig) -> dict:
    result = oracle.greedy_color(cfg.k, strategy=cfg.strategy, cap=cfg.cap)
    if cfg.out:
        oracle.export_coloring_json(cfg.out, result)
    rep = bounds.bound_report(cfg.k)
    return {
        "k": cfg.k,
        "strategy": cfg.strategy,
        "color_count": result.color_count,
        "vertices": len(result.assignment),
        "parts_lower_bound": str(rep.parts_lower_bound),
        "proper": True,
        "out": cfg.out,
    }


def _cmd_rate(cfg: RunConfig) -> dict:
    payload: dict = {
        "k": cfg.k,
        "d": bounds.binomial(4 * cfg.k, 2) - 1,
        "rate": bounds.asymptotic_rate(cfg.k),
        "method": "exact" if cfg.k <= bounds.EXACT_RATE_K_MAX else "log-space",
    }
    if cfg.powers:
        points, threshold_k = bounds.rate_threshold_scan(cfg.powers)
        payload["scan"] = [{"k": k, "rate": rate} for k, rate in points]
        payload["threshold_k"] = threshold_k
        if cfg.plot:
            from . import plots

            plots.plot_rates(points, cfg.plot, threshold_k)
    return payload


_HANDLERS = {
    "bound": _cmd_bound,
    "scan": _cmd_scan,
    "min-k": _cmd_min_k,
    "construct": _cmd_construct,
    "embed": _cmd_embed,
    "diameter": _cmd_diameter,
    "profile": _cmd_profile,
    "clique": _cmd_clique,
    "color": _cmd_color,
    "rate": _cmd_rate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borsuk",
        description="Cut-set bipartition families, exact intersection bounds, "
                    "and brute-force oracles for the Borsuk partition problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, out: bool = True) -> None:
        if out:
            p.add_argument("--out", help="artifact output path")
        p.add_argument("--cap", type=int, help="enumeration cap override "
                       f"(also env {construction.ENUM_CAP_ENV})")

    p = sub.add_parser("bound", help="exact bound report for one k")
    p.add_argument("--k", type=int, required=True)
    add_common(p)

    p = sub.add_parser("scan", help="coverage verdict per dimension")
    p.add_argument("--from", dest="d_lo", type=int, required=True)
    p.add_argument("--to", dest="d_hi", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--plot", help="write a coverage figure (PNG) here")
    add_common(p)

    p = sub.add_parser("min-k", help="smallest counterexample k up to a limit")
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("construct", help="export the cut-set family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json", "binary"), default="json")
    p.add_argument("--cap", type=int)

    p = sub.add_parser("embed", help="export the point-cloud embedding")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--unit", action="store_true", help="scale to unit diameter")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_common(p)

    p = sub.add_parser("diameter", help="diameter graph of the embedding")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--unit", action="store_true")
    add_common(p)

    p = sub.add_parser("profile", help="full intersection histogram")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--plot", help="write a histogram figure (PNG) here")
    add_common(p)

    p = sub.add_parser("clique", help="exhaustive forbidden-intersection maximum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--allow-large", action="store_true",
                   help="permit the 924-vertex n=12 search")
    add_common(p)

    p = sub.add_parser("color", help="greedy coloring of the diameter graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=oracle.STRATEGIES, default="natural-order")
    add_common(p)

    p = sub.add_parser("rate", help="asymptotic growth rate of the bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--powers", type=int,
                   help="also scan k = 2^i for i up to this exponent")
    p.add_argument("--plot", help="write a rate-curve figure (PNG) here")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f: getattr(args, f) for f in RunConfig.__dataclass_fields__
              if hasattr(args, f)}
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = _config_from_args(args)
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload = _HANDLERS[cfg.command](cfg)
    except construction.EnumerationCapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
