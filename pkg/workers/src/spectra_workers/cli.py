"""`spectra` command line.

Usage:
  spectra run --config exp.json --out results/ [--reps R] [--frames H] [--seed S]
              [--policies proposed-spsa,traditional] [--jobs N] [--temporal]
  spectra sweep --config exp.json --out results/ --devices 5,10,20,30 [--jobs N]
  spectra schema
  spectra worker <component>

Without --config the built-in defaults are used. Flags override the file.
Exit status is 0 on success, 1 when a run reports failure or the output
directory is unusable, 2 when the config or the arguments are invalid.

Temporal settings (TEMPORAL_ADDRESS, TEMPORAL_NAMESPACE, TEMPORAL_API_KEY,
TEMPORAL_REGIONAL_ENDPOINT) are read from the environment or a .env file.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError
from spectra_experiment_manager.local import prepare_out_dir, run_experiment, run_sweep
from spectra_metrics.export import summary_frame
from spectra_shared.config_models import ExperimentConfig, Policy
from spectra_shared.sim_models import ExperimentRequest, ExperimentResult

from spectra_workers.registry import COMPONENTS
from spectra_workers.runner import run_worker, submit_experiment

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


class ConfigError(Exception):
    """A config file that cannot be read or does not validate."""

    def __init__(self, lines: list[str]) -> None:
        super().__init__("\n".join(lines))
        self.lines = lines


def format_validation_error(exc: ValidationError) -> list[str]:
    """One `<dotted.field.path>: <message>` line per error."""
    lines = []
    for err in exc.errors():
        path = ".".join(str(part) for part in err["loc"]) or "<config>"
        lines.append(f"{path}: {err['msg']}")
    return lines


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict[str, Any] = {}
    if args.config:
        path = Path(args.config)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError as exc:
            raise ConfigError([f"config file not found: {path}"]) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError([f"{path}: invalid JSON ({exc})"]) from exc
        if not isinstance(data, dict):
            raise ConfigError([f"{path}: expected a JSON object"])

    overrides = {
        "replications": getattr(args, "reps", None),
        "horizon": getattr(args, "frames", None),
        "seed": getattr(args, "seed", None),
        "policies": getattr(args, "policies", None),
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(format_validation_error(exc)) from exc


def _csv_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def _int_list(raw: str) -> list[int]:
    try:
        return [int(item) for item in _csv_list(raw)]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Opportunistic spectrum access simulator for IoT cognitive-radio networks",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    verbosity = argparse.ArgumentParser(add_help=False)
    group = verbosity.add_mutually_exclusive_group()
    group.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    group.add_argument("-q", "--quiet", action="store_true", help="Warnings only")

    experiment = argparse.ArgumentParser(add_help=False, parents=[verbosity])
    experiment.add_argument("--config", help="Experiment config (JSON)")
    experiment.add_argument("--out", required=True, help="Output directory")
    experiment.add_argument("--reps", type=int, help="Override replications")
    experiment.add_argument("--frames", type=int, help="Override horizon (frames)")
    experiment.add_argument("--seed", type=int, help="Override master seed")
    experiment.add_argument(
        "--policies",
        type=_csv_list,
        help=f"Comma-separated subset of: {', '.join(p.value for p in Policy)}",
    )
    experiment.add_argument(
        "--jobs", type=int, default=1, help="Replications run in parallel (default: 1)"
    )

    # run
    run_p = subparsers.add_parser("run", parents=[experiment], help="Run one experiment")
    run_p.add_argument(
        "--temporal",
        action="store_true",
        help="Submit as a workflow to running workers instead of running locally",
    )

    # sweep
    sweep_p = subparsers.add_parser(
        "sweep", parents=[experiment], help="Rerun an experiment over device counts"
    )
    sweep_p.add_argument(
        "--devices", type=_int_list, required=True, help="Device counts, e.g. 5,10,20,30"
    )

    # schema
    subparsers.add_parser("schema", help="Print the config JSON schema")

    # worker
    worker_p = subparsers.add_parser("worker", parents=[verbosity], help="Start a worker")
    worker_p.add_argument("component", choices=sorted(COMPONENTS))

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _report(result: ExperimentResult) -> int:
    if result.summaries:
        print(summary_frame(result.summaries).to_string(index=False))
    if not result.success:
        print(f"error: {result.message}", file=sys.stderr)
        return EXIT_FAILED
    print(result.message)
    return EXIT_OK


def cmd_run(args: argparse.Namespace, config: ExperimentConfig) -> int:
    out = prepare_out_dir(Path(args.out)).resolve()
    if args.temporal:
        request = ExperimentRequest(config=config, out_dir=str(out))
        return _report(asyncio.run(submit_experiment(request)))
    return _report(run_experiment(config, out, args.jobs))


def cmd_sweep(args: argparse.Namespace, config: ExperimentConfig) -> int:
    results, path = run_sweep(config, Path(args.out), args.devices, args.jobs)
    failed = [r for r in results if not r.success]
    for result in failed:
        print(f"error: {result.message}", file=sys.stderr)
    print(f"Sweep summary written to {path}")
    return EXIT_FAILED if failed else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    load_dotenv()
    _configure_logging(args)

    if args.command == "schema":
        print(json.dumps(ExperimentConfig.model_json_schema(), indent=2))
        return EXIT_OK
    if args.command == "worker":
        asyncio.run(run_worker(args.component))
        return EXIT_OK

    try:
        config = load_config(args)
    except ConfigError as exc:
        for line in exc.lines:
            print(line, file=sys.stderr)
        return EXIT_INVALID

    try:
        if args.command == "run":
            return cmd_run(args, config)
        return cmd_sweep(args, config)
    except ValidationError as exc:
        for line in format_validation_error(exc):
            print(line, file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
