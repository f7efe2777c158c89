"""Command line interface.

Subcommands:
  coverage  analytic and/or Monte Carlo coverage curve for one configuration
  rate      analytic rate CDF and rate profile for one configuration
  simulate  raw Monte Carlo SINR sample dump
  scaling   cluster-radius scaling law for accuracy targets
  preset    canned experiment grids (fig3, fig4, fig5a, fig5b, table2,
            table3, scaling)

All thresholds cross this boundary in dB; the library below works in linear
units. Exit codes: 0 success, 2 configuration or usage error, 3 I/O error,
4 numeric or statistical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import ConfigurationError, NumericError, StatisticalError
from .curves import (ANALYTIC_FULL, ANALYTIC_PCSI, ANALYTIC_IDEAL,
                     ANALYTIC_NOCLOUD)
from .model import FULL_CSI
from .analytic import (CoverageQuery, coverage_full_csi, coverage_pcsi,
                       coverage_ideal, coverage_nocloud, rate_profile)
from .simulator import (MODE_NOCLOUD, MODE_PCSI, empirical_coverage,
                        dump_samples_csv)
from .scaling import ScalingQuery, optimal_radius, mean_cluster_size
from . import harness
from .harness import (ReportBundle, run_preset, write_bundle, emit_csv,
                      parse_config, PRESETS, THRESHOLDS_DB, RATE_GRID,
                      EPSILON_GRID, DELTA_GRID)


def _analytic_curve(config, thresholds_db):
    if config.csi_limit != FULL_CSI:
        return coverage_pcsi(CoverageQuery(config=config,
                                           thresholds_db=tuple(thresholds_db)))
    return coverage_full_csi(CoverageQuery(config=config,
                                           thresholds_db=tuple(thresholds_db)))


def _analytic_method(config, mode):
    if mode == MODE_NOCLOUD:
        return ANALYTIC_NOCLOUD
    if mode == MODE_PCSI or config.csi_limit != FULL_CSI:
        return ANALYTIC_PCSI
    return ANALYTIC_FULL


def _emit(bundle: ReportBundle, args) -> None:
    if args.out:
        formats = [f.strip() for f in args.format.split(",") if f.strip()]
        write_bundle(bundle, args.out, formats)
    else:
        emit_csv(bundle, sys.stdout)


def _cmd_coverage(args) -> int:
    config, plan = parse_config(args.config)
    if args.seed is not None:
        plan = dataclasses.replace(plan, seed=args.seed)
    thresholds = THRESHOLDS_DB
    bundle = ReportBundle(name="coverage",
                          metadata={"seed": plan.seed,
                                    "config_digest": config.digest(),
                                    "tool_version": harness.TOOL_VERSION})
    want_analytic = args.analytic or args.both or not args.mc
    want_mc = args.mc or args.both
    if want_analytic:
        if plan.precoder_mode == MODE_NOCLOUD:
            curve = coverage_nocloud(config, list(thresholds))
        elif _analytic_method(config, plan.precoder_mode) == ANALYTIC_PCSI:
            curve = coverage_pcsi(CoverageQuery(config=config,
                                                thresholds_db=thresholds))
        else:
            curve = _analytic_curve(config, thresholds)
        curve.meta["scenario"] = "analytic"
        bundle.curves.append(curve)
    if want_mc:
        mc = empirical_coverage(plan, list(thresholds))
        mc.meta["scenario"] = "monte-carlo"
        bundle.curves.append(mc)
    _emit(bundle, args)
    return 0


def _cmd_rate(args) -> int:
    config, plan = parse_config(args.config)
    method = _analytic_method(config, plan.precoder_mode)
    bundle = ReportBundle(name="rate",
                          metadata={"seed": plan.seed,
                                    "config_digest": config.digest(),
                                    "tool_version": harness.TOOL_VERSION})
    bundle.curves.append(harness._rate_cdf_curve(config, method, RATE_GRID,
                                                 "rate-cdf"))
    profile = rate_profile(config, method)
    bundle.profiles.append({"table": "rate", "scenario": method,
                            **profile.as_dict()})
    _emit(bundle, args)
    return 0


def _cmd_simulate(args) -> int:
    _, plan = parse_config(args.config)
    if args.seed is not None:
        plan = dataclasses.replace(plan, seed=args.seed)
    if not args.out:
        raise ConfigurationError("simulate requires --out for the sample dump")
    dump_samples_csv(plan, args.out)
    return 0


def _cmd_scaling(args) -> int:
    if args.config:
        config, _ = parse_config(args.config)
    else:
        config = harness.scenario_config(200.0, 1.0)
    eps_grid = [args.epsilon] if args.epsilon is not None else list(EPSILON_GRID)
    delta_grid = [args.delta] if args.delta is not None else list(DELTA_GRID)
    bundle = ReportBundle(name="scaling",
                          metadata={"seed": 0,
                                    "config_digest": config.digest(),
                                    "tool_version": harness.TOOL_VERSION})
    for eps in eps_grid:
        for delta in delta_grid:
            query = ScalingQuery(epsilon=eps, delta=delta,
                                 threshold=args.threshold, config=config)
            bundle.rows.append({
                "epsilon": eps, "delta": delta,
                "threshold_db": args.threshold_db,
                "r_star_m": optimal_radius(query),
                "mean_cluster_size": mean_cluster_size(query),
            })
    _emit(bundle, args)
    return 0


def _cmd_preset(args) -> int:
    include_mc = not args.analytic
    bundle = run_preset(args.name, seed=args.seed or 0,
                        mc_realizations=args.realizations,
                        include_mc=include_mc)
    formats = [f.strip() for f in args.format.split(",") if f.strip()]
    paths = write_bundle(bundle, args.out or ".", formats)
    for p in paths:
        print(p)
    return 0


def _add_io_flags(sub, default_format="csv"):
    sub.add_argument("--out", default=None, help="output file or directory")
    sub.add_argument("--format", default=default_format,
                     help="comma-separated list from csv,json,svg")
    sub.add_argument("--seed", type=int, default=None,
                     help="override the Monte Carlo seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crancov",
        description="Coverage and rate analysis for clustered cloud radio "
                    "networks.")
    subs = parser.add_subparsers(dest="command", required=True)

    cov = subs.add_parser("coverage", help="coverage probability curve")
    cov.add_argument("--config", required=True)
    cov.add_argument("--analytic", action="store_true",
                     help="analytic curve only (default)")
    cov.add_argument("--mc", action="store_true", help="Monte Carlo curve only")
    cov.add_argument("--both", action="store_true",
                     help="analytic and Monte Carlo curves")
    _add_io_flags(cov)
    cov.set_defaults(func=_cmd_coverage)

    rate = subs.add_parser("rate", help="rate CDF and profile")
    rate.add_argument("--config", required=True)
    _add_io_flags(rate)
    rate.set_defaults(func=_cmd_rate)

    sim = subs.add_parser("simulate", help="raw SINR sample dump")
    sim.add_argument("--config", required=True)
    _add_io_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    sca = subs.add_parser("scaling", help="cluster-radius scaling law")
    sca.add_argument("--config", default=None)
    sca.add_argument("--epsilon", type=float, default=None)
    sca.add_argument("--delta", type=float, default=None)
    sca.add_argument("--threshold-db", type=float, default=0.0,
                     dest="threshold_db")
    _add_io_flags(sca)
    sca.set_defaults(func=_cmd_scaling)

    pre = subs.add_parser("preset", help="canned experiment grids")
    pre.add_argument("name", choices=PRESETS)
    pre.add_argument("--analytic", action="store_true",
                     help="skip the Monte Carlo curves")
    pre.add_argument("--realizations", type=int, default=None,
                     help="override the Monte Carlo realization budget")
    _add_io_flags(pre, default_format="csv,json,svg")
    pre.set_defaults(func=_cmd_preset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threshold_db", None) is not None:
        args.threshold = 10.0 ** (args.threshold_db / 10.0)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"crancov: configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"crancov: I/O error: {exc}", file=sys.stderr)
        return 3
    except (NumericError, StatisticalError) as exc:
        print(f"crancov: numeric error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
