"""Command line front end: price, sweep, welfare, efficiency, check, plot."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .bands import BandFactory
from .distributions import ZeroDensityError, check_shrc, make_cdf
from .oracle import verify_policy
from .payoff import worst_case_payoff
from .quasiconcave import qc_grid_check
from .scenario import (
    ConfigError,
    Scenario,
    default_scenario,
    load_scenario,
    validate_scenario,
)
from .solver import price_rule
from .welfare import (
    UnsupportedUtilityError,
    compare_roles,
    efficiency_region,
    inefficiency_area,
)


def _fmt(v: float) -> str:
    s = format(float(v), ".12g")
    return "0" if s == "-0" else s


def _write_lines(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"Saved: {out_path}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shotgun",
        description="Robust buy-sell price announcements under distribution bands.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None,
                        help="scenario file of key = value lines")
    common.add_argument("--eps", type=float, default=None,
                        help="override the band half-width")
    common.add_argument("--grid", type=int, default=None,
                        help="override the number of grid values")
    common.add_argument("--delta", type=float, default=None,
                        help="override the supremum backoff")

    p = sub.add_parser("price", parents=[common],
                       help="optimal announcement for one value")
    p.add_argument("--x", type=float, required=True, help="announcer's value")

    p = sub.add_parser("sweep", parents=[common],
                       help="tabulate prices and regimes over the value grid")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--fig", default=None, help="also render an SVG figure here")

    p = sub.add_parser("welfare", parents=[common],
                       help="interim guarantees for both roles")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--fig", default=None, help="also render an SVG figure here")

    p = sub.add_parser("efficiency", parents=[common],
                       help="misallocation intervals and their total area")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--fig", default=None, help="also render an SVG figure here")

    p = sub.add_parser("check", parents=[common],
                       help="hazard slopes, payoff shape, and oracle verification")

    p = sub.add_parser("plot", help="render a previously written CSV to SVG")
    p.add_argument("csv", help="input CSV produced by sweep, welfare, or efficiency")
    p.add_argument("--out", required=True, help="output SVG path")

    return parser


def _scenario_from_args(args: argparse.Namespace) -> Scenario:
    scn = load_scenario(args.config) if args.config else default_scenario()
    overrides = {}
    if args.eps is not None:
        overrides["eps"] = args.eps
    if args.grid is not None:
        overrides["grid_n"] = args.grid
    if args.delta is not None:
        overrides["delta"] = args.delta
    if overrides:
        scn = replace(scn, **overrides)
        validate_scenario(scn)
    return scn


def _cmd_price(scn: Scenario, x: float) -> int:
    rule = price_rule(scn.make_uncertainty(), u=scn.make_utility(),
                      tol=scn.tol, delta=scn.delta)
    price, regime = rule(x)
    print(f"x={_fmt(x)} price={_fmt(price)} regime={regime}")
    return 0


def _cmd_sweep(scn: Scenario, out: str | None, fig: str | None) -> int:
    policy = scn.make_policy()
    lines = ["x,price,regime"]
    lines.extend(f"{_fmt(x)},{_fmt(p)},{r}"
                 for x, p, r in zip(policy.grid, policy.prices, policy.regimes))
    _write_lines(lines, out)
    if fig is not None:
        from .plotting import render_sweep

        render_sweep(policy.grid, policy.prices, policy.regimes, fig)
        print(f"Saved: {fig}")
    return 0


def _cmd_welfare(scn: Scenario, out: str | None, fig: str | None) -> int:
    if scn.mode == "correlated":
        raise ConfigError(
            "welfare needs one fixed band; use iid or interval mode"
        )
    policy = scn.make_policy()
    band = scn.make_uncertainty()
    curve = compare_roles(policy, band, grid_n=scn.grid_n, quad_tol=scn.quad_tol)
    lines = ["x,phi_d,phi_c"]
    lines.extend(f"{_fmt(x)},{_fmt(d)},{_fmt(c)}"
                 for x, d, c in zip(curve.grid, curve.phi_d, curve.phi_c))
    if curve.equality_band is not None:
        lo, hi = curve.equality_band
        lines.append(f"# equality_band={_fmt(lo)},{_fmt(hi)}")
    else:
        lines.append("# equality_band=none")
    _write_lines(lines, out)
    if fig is not None:
        from .plotting import render_welfare

        render_welfare(curve.grid, curve.phi_d, curve.phi_c,
                       curve.equality_band, fig)
        print(f"Saved: {fig}")
    return 0


def _cmd_efficiency(scn: Scenario, out: str | None, fig: str | None) -> int:
    policy = scn.make_policy()
    regions = [efficiency_region(float(x), policy) for x in policy.grid]
    area = inefficiency_area(policy)
    lines = ["x_d,bad_lo,bad_hi"]
    for r in regions:
        lo = _fmt(r.bad_lo) if r.bad_lo is not None else ""
        hi = _fmt(r.bad_hi) if r.bad_hi is not None else ""
        lines.append(f"{_fmt(r.x_d)},{lo},{hi}")
    lines.append(f"# area={_fmt(area)}")
    _write_lines(lines, out)
    if fig is not None:
        from .plotting import render_efficiency

        xs = [r.x_d for r in regions]
        lo = [r.bad_lo if r.bad_lo is not None else np.nan for r in regions]
        hi = [r.bad_hi if r.bad_hi is not None else np.nan for r in regions]
        render_efficiency(xs, lo, hi, area, fig)
        print(f"Saved: {fig}")
    return 0


def _cmd_check(scn: Scenario) -> int:
    failures = 0

    cdf = make_cdf(scn.dist)
    try:
        shrc = check_shrc(cdf)
    except ZeroDensityError as exc:
        print(f"shrc: skipped ({exc})")
    else:
        if shrc.holds:
            print(f"shrc: pass (min slopes {shrc.min_slope_up:.4g} "
                  f"and {shrc.min_slope_down:.4g})")
        else:
            print(f"shrc: advisory fail ({len(shrc.violations)} of {shrc.grid_n} "
                  f"grid points, first at x={shrc.violations[0]:.6g})")

    uncertainty = scn.make_uncertainty()
    u = scn.make_utility()
    policy = scn.make_policy()
    lo, hi = policy.support
    for x in np.linspace(lo, hi, 5):
        band = (uncertainty.band_for(float(x))
                if isinstance(uncertainty, BandFactory) else uncertainty)

        def payoff_at(p: float) -> float:
            return float(worst_case_payoff(p, float(x), band, u))

        bad = qc_grid_check(payoff_at, (0.5 * lo, 0.5 * hi), n=201)
        if bad is None:
            print(f"qc x={_fmt(x)}: ok")
        else:
            failures += 1
            print(f"qc x={_fmt(x)}: dip at p={bad[1]:.6g} "
                  f"(between p={bad[0]:.6g} and p={bad[2]:.6g})")

    report = verify_policy(policy, uncertainty, u=u, tol=1e-6, n=2001)
    verdict = "pass" if report.passed else "fail"
    print(f"oracle: {verdict} max_gap={report.max_abs_gap:.4g} "
          f"at x={_fmt(report.worst_input)} over {report.samples} values")
    if not report.passed:
        failures += 1

    return 1 if failures else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            from .plotting import render_csv

            render_csv(args.csv, args.out)
            print(f"Saved: {args.out}")
            return 0
        scn = _scenario_from_args(args)
        if args.command == "price":
            return _cmd_price(scn, args.x)
        if args.command == "sweep":
            return _cmd_sweep(scn, args.out, args.fig)
        if args.command == "welfare":
            return _cmd_welfare(scn, args.out, args.fig)
        if args.command == "efficiency":
            return _cmd_efficiency(scn, args.out, args.fig)
        return _cmd_check(scn)
    except (ConfigError, UnsupportedUtilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
