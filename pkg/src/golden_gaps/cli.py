"""Command-line front end emitting plot-ready CSV/JSON artifacts.

Subcommands: enumerate, gaps, curve, compare, volume, hspacing, orbit.
Option precedence is flags > config file > defaults; the config file is a
flat "key = value" text format using the long flag names. Exit codes:
0 success, 2 invalid configuration, 3 internal invariant violation.
Figures are rendered next to the delimited output on the report paths
(curve, compare) unless --no-plot is given. GOLDEN_GAPS_THREADS caps
worker threads for Monte Carlo commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analytic, bcz, lattice, stats
from .bcz import InternalInvariantError
from .field import GoldenNumber

FLOAT_FMT = "%.17g"

ENUM_COST_CAP = 300  # direct enumeration above this is refused without --force-exact
EXACT_COST_CAP = 5000  # exact orbit mode above this is refused without --force-exact


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return FLOAT_FMT % x


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"bad config line (expected key = value): {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve(args: argparse.Namespace, key: str, default, cast):
    """flags > config file > default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if args.config:
        cfg = _read_config(args.config)
        if key in cfg:
            try:
                return cast(cfg[key])
            except ValueError as e:
                raise ConfigError(f"bad config value for {key}: {cfg[key]!r}") from e
    return default


def _default_mode(mode: str | None, radius: int) -> str:
    if mode is not None:
        return mode
    return "exact" if radius <= 100 else "float"


def _check_radius(radius: int, minimum: int) -> None:
    if radius < minimum:
        raise ConfigError(f"radius must be >= {minimum}, got {radius}")


def _check_cost(kind: str, radius: int, cap: int, force: bool) -> None:
    if radius > cap and not force:
        raise ConfigError(
            f"{kind} at radius {radius} exceeds the cost guard ({cap}); "
            f"pass --force-exact to run it anyway"
        )


def _parse_coord(text: str, mode: str):
    if mode == "exact":
        try:
            return GoldenNumber.parse(text)
        except ValueError:
            return GoldenNumber(Fraction(text))
    return float(text)


def _threads() -> int | None:
    raw = os.environ.get("GOLDEN_GAPS_THREADS")
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError as e:
        raise ConfigError(f"GOLDEN_GAPS_THREADS must be an integer, got {raw!r}") from e
    return max(1, n)


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    radius = _resolve(args, "radius", None, int)
    if radius is None:
        raise ConfigError("enumerate requires --radius")
    _check_radius(radius, 1)
    _check_cost("enumeration", radius, ENUM_COST_CAP, args.force_exact)
    vectors = lattice.enumerate_vectors(radius)
    out = Path(_resolve(args, "out", "enumerate.csv", str))
    with out.open("w") as fh:
        fh.write("re_exact,im_exact,re_float,im_float,slope_float\n")
        for v in vectors:
            fh.write(
                f"{v.re.exact_str()},{v.im.exact_str()},"
                f"{_fmt(float(v.re))},{_fmt(float(v.im))},{_fmt(float(v.slope()))}\n"
            )
    print(f"wrote {len(vectors)} vectors to {out}")
    return 0


def _gap_sample(radius: int, method: str, mode: str, force: bool) -> lattice.GapSample:
    if method == "direct":
        _check_cost("direct enumeration", radius, ENUM_COST_CAP, force)
        return lattice.gaps_direct(radius)
    if method == "bcz":
        if mode == "exact":
            _check_cost("exact orbit mode", radius, EXACT_COST_CAP, force)
        return bcz.gaps_via_bcz(radius, mode=mode)
    raise ConfigError(f"unknown method {method!r}; expected bcz or direct")


def cmd_gaps(args) -> int:
    radius = _resolve(args, "radius", None, int)
    if radius is None:
        raise ConfigError("gaps requires --radius")
    _check_radius(radius, 2)
    method = _resolve(args, "method", "bcz", str)
    mode = _default_mode(_resolve(args, "mode", None, str), radius)
    sample = _gap_sample(radius, method, mode, args.force_exact)
    out = Path(_resolve(args, "out", "gaps.csv", str))
    ordered = np.sort(sample.gaps)
    with out.open("w") as fh:
        fh.write("gap\n")
        for g in ordered:
            fh.write(_fmt(g) + "\n")
    summary = {
        "radius": radius,
        "method": method,
        "mode": mode if method == "bcz" else "exact",
        "count": sample.count,
        "min_gap": sample.min_gap(),
        "mean_gap": sample.mean_gap(),
        "gaps_csv": str(out),
    }
    spath = out.with_suffix(".summary.json")
    _write_json(spath, summary)
    print(f"wrote {len(ordered)} gaps to {out}; summary in {spath}")
    return 0


def _alpha_grid(args) -> np.ndarray:
    lo = _resolve(args, "alpha_min", 0.0, float)
    hi = _resolve(args, "alpha_max", 8.0, float)
    steps = _resolve(args, "alpha_steps", 400, int)
    if not (0 <= lo < hi) or steps < 2:
        raise ConfigError("need 0 <= alpha-min < alpha-max and alpha-steps >= 2")
    return np.linspace(lo, hi, steps)


def cmd_curve(args) -> int:
    alphas = _alpha_grid(args)
    pdf = analytic.gap_pdf(alphas)
    cdf = analytic.gap_cdf(alphas)
    out = Path(_resolve(args, "out", "curve.csv", str))
    with out.open("w") as fh:
        fh.write("alpha,pdf,cdf\n")
        for row in zip(alphas, pdf, cdf):
            fh.write(",".join(_fmt(x) for x in row) + "\n")
    print(f"wrote analytic curve ({len(alphas)} rows) to {out}")
    if not args.no_plot:
        from . import plotting

        fig = out.with_suffix(".png")
        plotting.render_curve(str(fig), alphas, pdf, cdf)
        print(f"rendered {fig}")
    return 0


def cmd_compare(args) -> int:
    radius = _resolve(args, "radius", None, int)
    if radius is None:
        raise ConfigError("compare requires --radius")
    _check_radius(radius, 2)
    method = _resolve(args, "method", "bcz", str)
    mode = _default_mode(_resolve(args, "mode", None, str), radius)
    bins = _resolve(args, "bins", 120, int)
    if bins < 1:
        raise ConfigError("bins must be >= 1")
    lo = _resolve(args, "alpha_min", 0.0, float)
    hi = _resolve(args, "alpha_max", 8.0, float)
    if not 0 <= lo < hi:
        raise ConfigError("need 0 <= alpha-min < alpha-max")

    sample = _gap_sample(radius, method, mode, args.force_exact)
    edges = np.linspace(lo, hi, bins + 1)
    hist = stats.Histogram.from_samples(sample.gaps, edges)
    density = hist.density()
    mids = 0.5 * (edges[:-1] + edges[1:])
    analytic_pdf = analytic.gap_pdf(mids)
    ks = stats.ks_distance(stats.empirical_cdf(sample), analytic.gap_cdf)

    out = Path(_resolve(args, "out", "compare.csv", str))
    with out.open("w") as fh:
        fh.write("bin_left,bin_right,count,density,analytic_pdf_at_midpoint\n")
        for left, right, c, d, ap in zip(edges[:-1], edges[1:], hist.counts, density, analytic_pdf):
            fh.write(f"{_fmt(left)},{_fmt(right)},{c},{_fmt(d)},{_fmt(ap)}\n")
    summary = {
        "radius": radius,
        "method": method,
        "mode": mode if method == "bcz" else "exact",
        "count": sample.count,
        "min_gap": sample.min_gap(),
        "mean_gap": sample.mean_gap(),
        "ks_distance": ks,
        "bins": bins,
        "compare_csv": str(out),
    }
    spath = out.with_suffix(".summary.json")
    _write_json(spath, summary)
    print(f"wrote comparison ({bins} bins) to {out}; KS = {ks:.3e}; summary in {spath}")
    if not args.no_plot:
        from . import plotting

        fig = out.with_suffix(".png")
        fine = np.linspace(lo, hi, 600)
        plotting.render_compare(
            str(fig), edges, density, fine, analytic.gap_pdf(fine), radius, ks
        )
        print(f"rendered {fig}")
    return 0


def cmd_volume(args) -> int:
    report = analytic.volumes().as_dict()
    fmt = _resolve(args, "format", "json", str)
    out = Path(_resolve(args, "out", f"volume.{fmt}", str))
    if fmt == "json":
        _write_json(out, report)
    elif fmt == "csv":
        with out.open("w") as fh:
            fh.write("key,value\n")
            for key in sorted(report):
                fh.write(f"{key},{_fmt(report[key])}\n")
    else:
        raise ConfigError(f"unknown format {fmt!r}; expected csv or json")
    print(f"wrote volume report to {out}")
    return 0


def cmd_hspacing(args) -> int:
    h = _resolve(args, "h", 1, int)
    raw = _resolve(args, "thresholds", None, str)
    if raw is None:
        raise ConfigError("hspacing requires --thresholds t1,t2,...")
    try:
        thresholds = tuple(float(t) for t in raw.split(","))
    except ValueError as e:
        raise ConfigError(f"bad thresholds {raw!r}") from e
    samples = _resolve(args, "samples", 100_000, int)
    seed = _resolve(args, "seed", 0, int)
    try:
        query = stats.HSpacingQuery(h=h, thresholds=thresholds, samples=samples, seed=seed)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    result = stats.h_spacing_mc(query, threads=_threads())
    payload = {"h": h, "thresholds": list(thresholds), **result.as_dict()}
    out = Path(_resolve(args, "out", "hspacing.json", str))
    _write_json(out, payload)
    print(
        f"h-spacing estimate {result.estimate:.6f} (se {result.std_error:.2e}) "
        f"written to {out}"
    )
    return 0


def cmd_orbit(args) -> int:
    mode = _resolve(args, "mode", "exact", str)
    a_raw = _resolve(args, "a", None, str)
    b_raw = _resolve(args, "b", None, str)
    steps = _resolve(args, "steps", None, int)
    if a_raw is None or b_raw is None or steps is None:
        raise ConfigError("orbit requires --a, --b and --steps")
    if steps < 0:
        raise ConfigError("steps must be >= 0")
    try:
        point = bcz.SectionPoint(_parse_coord(a_raw, mode), _parse_coord(b_raw, mode))
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad coordinates: {e}") from e
    if not bcz.in_omega(point.a, point.b):
        raise ConfigError(f"({a_raw}, {b_raw}) is not in the section")
    trace = bcz.orbit(point, steps)
    out = Path(_resolve(args, "out", "orbit.csv", str))
    exact = trace.points and trace.points[0].mode == "exact"
    with out.open("w") as fh:
        header = "step,a,b,zone,return_time"
        if exact:
            header += ",a_exact,b_exact"
        fh.write(header + "\n")
        for i, (p, z, rt) in enumerate(zip(trace.points, trace.zones, trace.return_times)):
            fa, fb = p.as_floats()
            row = f"{i},{_fmt(fa)},{_fmt(fb)},{z.value},{_fmt(rt)}"
            if exact:
                row += f",{p.a.exact_str()},{p.b.exact_str()}"
            fh.write(row + "\n")
    closed = " (orbit closed)" if trace.closed else ""
    print(f"wrote {len(trace.points)} orbit rows to {out}{closed}")
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="golden-gaps",
        description="Slope gap statistics of saddle connections on the golden L",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output path (defaults to <command>.csv/.json)")
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--force-exact", action="store_true",
                       help="override the cost guards on exact/direct computations")

    p = sub.add_parser("enumerate", help="emit sector vectors as CSV")
    common(p)
    p.add_argument("--radius", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gaps", help="emit the scaled gap multiset and a summary")
    common(p)
    p.add_argument("--radius", type=int)
    p.add_argument("--method", choices=["bcz", "direct"])
    p.add_argument("--mode", choices=["exact", "float"])
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("curve", help="emit the analytic pdf/cdf on a grid")
    common(p)
    p.add_argument("--alpha-min", type=float, dest="alpha_min")
    p.add_argument("--alpha-max", type=float, dest="alpha_max")
    p.add_argument("--alpha-steps", type=int, dest="alpha_steps")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("compare", help="histogram an empirical run against the analytic law")
    common(p)
    p.add_argument("--radius", type=int)
    p.add_argument("--method", choices=["bcz", "direct"])
    p.add_argument("--mode", choices=["exact", "float"])
    p.add_argument("--bins", type=int)
    p.add_argument("--alpha-min", type=float, dest="alpha_min")
    p.add_argument("--alpha-max", type=float, dest="alpha_max")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("volume", help="closed-form vs quadrature volume report")
    common(p)
    p.add_argument("--format", choices=["json", "csv"])
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("hspacing", help="Monte Carlo joint spacing estimate")
    common(p)
    p.add_argument("--h", type=int)
    p.add_argument("--thresholds", help="comma-separated positive thresholds")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_hspacing)

    p = sub.add_parser("orbit", help="trace a section orbit as CSV")
    common(p)
    p.add_argument("--a", help="starting a (float, or exact like 1/2+1/3*phi)")
    p.add_argument("--b", help="starting b")
    p.add_argument("--steps", type=int)
    p.add_argument("--mode", choices=["exact", "float"])
    p.set_defaults(func=cmd_orbit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InternalInvariantError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
