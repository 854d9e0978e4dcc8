#!/usr/bin/env python
"""Command-line interface for softsnake."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from softsnake import __version__
from softsnake.core.exceptions import ConfigError, InputDomainError, SoftSnakeError
from softsnake.core.state import N_DOF, SimState
from softsnake.gaits.rolling import GaitKind
from softsnake.harness.config import ExperimentConfig, dump_config, load_config
from softsnake.harness.digest import ConfigDigest, pretty_json
from softsnake.harness.experiments import CONFIG_FILE, export_gait_trajectory, run_drop_test, run_gait
from softsnake.harness.metrics import compare_to_reference, compute_metrics
from softsnake.harness.plots import BASE_POSE, read_series, render_plots
from softsnake.harness.store import DirectoryStore
from softsnake.harness.sweep import run_sweep
from softsnake.integrator.config import IntegrationMethod
from softsnake.integrator.simulate import Trajectory

logger = logging.getLogger(__name__)


class JsonErrorParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors on the JSON error channel."""

    def error(self, message: str):
        error = {"error": "UsageError", "message": message, "details": {"usage": self.format_usage().strip()}}
        print(json.dumps(error), file=sys.stderr)
        self.exit(2)


def _add_run_options(parser: argparse.ArgumentParser, gait: bool = False) -> None:
    parser.add_argument("config", nargs="?", help="experiment config (YAML or JSON); defaults when omitted")
    parser.add_argument("-o", "--output-dir", help="result directory")
    parser.add_argument("--seed", type=int, help="seed for randomized utilities")
    parser.add_argument("--method", choices=[m.value for m in IntegrationMethod], help="integration method")
    parser.add_argument("--duration", type=float, help="simulated time [s] (gait duration or settle time)")
    if gait:
        parser.add_argument("--gait", choices=[k.value for k in GaitKind], help="gait kind")
        parser.add_argument("--amplitude", type=float, help="peak PMA length change [m]")


def build_parser() -> argparse.ArgumentParser:
    parser = JsonErrorParser(
        prog="softsnake",
        description="softsnake - soft robotic snake dynamics simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"softsnake {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    drop_parser = subparsers.add_parser("drop", help="Drop the vented snake and report how it settles")
    _add_run_options(drop_parser)

    gait_parser = subparsers.add_parser("gait", help="Settle, then run a rolling gait")
    _add_run_options(gait_parser, gait=True)

    metrics_parser = subparsers.add_parser("metrics", help="Recompute gait metrics from a result directory")
    metrics_parser.add_argument("results", help="result directory of a gait run")

    plot_parser = subparsers.add_parser("plot", help="Re-render SVG plots from a result directory")
    plot_parser.add_argument("results", help="result directory")

    validate_parser = subparsers.add_parser("validate-config", help="Validate a config file")
    validate_parser.add_argument("config", help="experiment config (YAML or JSON)")
    validate_parser.add_argument("--dump", action="store_true", help="print the normalized config")

    traj_parser = subparsers.add_parser("trajectory", help="Export a gait's joint and pressure trajectory")
    _add_run_options(traj_parser, gait=True)
    traj_parser.add_argument("--rate", type=float, default=30.0, help="sampling rate [Hz]")

    sweep_parser = subparsers.add_parser("sweep", help="Run several configs in parallel")
    sweep_parser.add_argument("configs", nargs="+", help="experiment configs")
    sweep_parser.add_argument("-w", "--workers", type=int, default=4, help="worker processes")
    sweep_parser.add_argument("--serial", action="store_true", help="run one config after another")

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    updates = {
        "output_dir": args.output_dir,
        "seed": args.seed,
        "integrator.method": args.method,
    }
    gait_kind = getattr(args, "gait", None)
    amplitude = getattr(args, "amplitude", None)
    if gait_kind is not None:
        updates["gait.kind"] = gait_kind
    if amplitude is not None:
        updates["gait.amplitude"] = amplitude
    if args.duration is not None:
        updates["settle_time" if args.command == "drop" else "gait.duration"] = args.duration
    return cfg.with_overrides(**updates)


def _gait_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Gait commands run the default planar gait when the config has none."""
    if cfg.gait is None:
        return cfg.with_overrides(**{"gait.kind": GaitKind.PLANAR_ROLLING.value})
    return cfg


def _trajectory_from_base_pose(text: str) -> Trajectory:
    _, data = read_series(text)
    states = []
    for row in data:
        q = np.zeros(N_DOF)
        q[:6] = row[1:7]
        states.append(SimState(t=row[0], q=q))
    return Trajectory(states=states)


def _cmd_metrics(results_dir: str) -> dict:
    store = DirectoryStore(results_dir)
    cfg = load_config(Path(results_dir) / CONFIG_FILE)
    if cfg.gait is None:
        raise InputDomainError(f"{results_dir} holds no gait run", "results", results_dir)
    metrics = compute_metrics(_trajectory_from_base_pose(store.read_text(f"{BASE_POSE}.csv")), cfg.gait)
    return {"metrics": metrics.to_dict(), "reference": compare_to_reference(metrics, cfg.gait.kind)}


def _run(args: argparse.Namespace) -> int:
    if args.command == "drop":
        cfg = _experiment_config(args)
        if cfg.gait is not None:
            cfg = cfg.model_copy(update={"gait": None})
        results = run_drop_test(cfg)
        print(pretty_json(results.summary()), end="")
        return 0

    if args.command == "gait":
        cfg = _gait_config(_experiment_config(args))
        results = run_gait(cfg)
        print(pretty_json(results.summary()), end="")
        return 0

    if args.command == "metrics":
        print(pretty_json(_cmd_metrics(args.results)), end="")
        return 0

    if args.command == "plot":
        written = render_plots(DirectoryStore(args.results))
        print(f"Rendered {len(written)} plots in {args.results}")
        return 0

    if args.command == "validate-config":
        cfg = load_config(args.config)
        if args.dump:
            print(dump_config(cfg), end="")
        else:
            kind = "drop test" if cfg.is_drop_test else f"{cfg.gait.kind.value} gait"
            print(f"{args.config}: valid {kind} '{cfg.name}' (sha256 {ConfigDigest().calculate(cfg)})")
        return 0

    if args.command == "trajectory":
        cfg = _gait_config(_experiment_config(args))
        trajectory, files = export_gait_trajectory(cfg, rate=args.rate)
        print(f"Wrote {len(trajectory)} samples to {Path(cfg.output_dir) / files[0]}")
        return 0

    if args.command == "sweep":
        configs = [load_config(path) for path in args.configs]
        result = run_sweep(configs, parallel=not args.serial, num_workers=args.workers)
        print(pretty_json(result.to_dict()), end="")
        return 0 if result.failure_count == 0 else 1

    raise ValueError(f"Unknown command: {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    _configure_logging(args)
    try:
        return _run(args)
    except ConfigError as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return 2
    except SoftSnakeError as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return 1
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        print(json.dumps({"error": type(e).__name__, "message": str(e), "details": {}}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
