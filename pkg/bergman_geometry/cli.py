# cli.py

"""Command-line front end: one subcommand per tool."""

import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, Optional, Sequence

import numpy as np

from . import logger as package_logger
from .core import ExperimentConfig, Truncation
from .infra import DOMAIN_KIND_MAPPING, OUTPUT_FORMATS, load_config_file
from .tools import (
    check_grassmann,
    compute_representative_coordinates,
    estimate_distance,
    evaluate_kernel,
    evaluate_metric,
    locate_zeros,
    reproduce_table,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2

TRUNCATION_KEYS = ("tol_abs", "max_terms", "boundary_margin")


class UsageParser(argparse.ArgumentParser):
    """Reports usage errors with the hard-error exit code; 2 is reserved for partial results."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _orders(text: str):
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"Expected orders as 'a,b', got '{text}'")
    return tuple(parts)


def _domain(text: str) -> str:
    key = text.strip().lower()
    if key not in DOMAIN_KIND_MAPPING:
        raise argparse.ArgumentTypeError(
            f"Unknown domain '{text}'. Supported domains: {', '.join(sorted(DOMAIN_KIND_MAPPING))}"
        )
    return DOMAIN_KIND_MAPPING[key]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", type=_domain, default="annulus")
    common.add_argument("--r", type=float, default=None, help="annulus inner radius")
    common.add_argument("--factors", default=None, help="product factors, e.g. 'annulus:1e-8,disk'")
    common.add_argument("--z", action="append", default=[], help="complex 'a,b'; repeat per coordinate")
    common.add_argument("--zeta", action="append", default=[], help="complex 'a,b'; repeat per coordinate")
    common.add_argument("--tol", type=float, default=None)

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None)
    sweep.add_argument("--plot", action="store_true", default=None)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--config", default=None, help="KEY=VALUE file; command-line flags win")
    sweep.add_argument("--epsilon", type=float, default=None)
    sweep.add_argument("--r-grid", default=None, help="comma-separated radii")
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--no-optimize", dest="optimize", action="store_false", default=None)
    sweep.add_argument("--require-smallness", action="store_true", default=None)
    sweep.add_argument("--include-timing", action="store_true", default=None)
    sweep.add_argument("--tol", type=float, default=None)

    parser = UsageParser(prog="bergman-geometry", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    kernel = sub.add_parser("kernel", parents=[common], help="kernel jets and arccos bounds")
    kernel.add_argument("--orders", type=_orders, default=(0, 0))
    sub.add_parser("metric", parents=[common], help="Bergman, Ricci and tilde tensors")
    dist = sub.add_parser("dist", parents=[common], help="two-sided distance estimate")
    dist.add_argument("--metric", choices=("bergman", "tilde"), default="bergman")
    dist.add_argument("--nodes", type=int, default=None)
    zeros = sub.add_parser("zeros", help="kernel zero and defect roots of an annulus")
    zeros.add_argument("--r", type=float, required=True)
    zeros.add_argument("--epsilon", type=float, default=0.05)
    zeros.add_argument("--tol", type=float, default=None)
    sub.add_parser("repcoord", parents=[common], help="representative coordinates of --z with base --zeta")
    sub.add_parser("reproduce-thm4", parents=[sweep], help="kernel-zero distance sweep")
    sub.add_parser("reproduce-thm5", parents=[sweep], help="immersion-failure distance sweep")
    grassmann = sub.add_parser("check-grassmann", help="finite Grassmannian identities")
    grassmann.add_argument("--count", type=int, default=100)
    grassmann.add_argument("--seed", type=int, default=0)
    return parser


def build_experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    """Defaults, then the --config file, then explicit flags."""
    settings: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    flags = {
        "output_format": args.output_format,
        "plot": args.plot,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "workers": args.workers,
        "optimize": args.optimize,
        "require_smallness": args.require_smallness,
        "include_timing": args.include_timing,
        "tol_abs": args.tol,
    }
    if args.r_grid:
        flags["r_grid"] = tuple(float(v) for v in args.r_grid.split(","))
    settings.update({k: v for k, v in flags.items() if v is not None})

    trunc_settings = {k: settings.pop(k) for k in TRUNCATION_KEYS if k in settings}
    if trunc_settings:
        settings["trunc"] = Truncation(**trunc_settings)
    return ExperimentConfig(**settings)


def _clean(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _builtin(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Cannot serialise {type(value).__name__}")


def dispatch(args: argparse.Namespace) -> Dict[str, Any]:
    command = args.command
    if command == "kernel":
        return evaluate_kernel(args.domain, args.z, args.zeta, args.r, args.factors, args.orders, args.tol)
    if command == "metric":
        return evaluate_metric(args.domain, args.z, args.r, args.factors, args.tol)
    if command == "dist":
        extra = {"nodes": args.nodes} if args.nodes else {}
        return estimate_distance(args.domain, args.z, args.zeta, args.r, args.factors, args.metric, args.tol, **extra)
    if command == "zeros":
        return locate_zeros(args.r, args.epsilon, args.tol)
    if command == "repcoord":
        return compute_representative_coordinates(args.domain, args.zeta, args.z, args.r, args.factors, args.tol)
    if command in ("reproduce-thm4", "reproduce-thm5"):
        theorem = command.split("-", 1)[1]
        try:
            config = build_experiment_config(args)
        except (ValueError, OSError) as e:
            return {"success": False, "error": str(e), "error_type": type(e).__name__}
        return reproduce_table(theorem, config, args.out)
    if command == "check-grassmann":
        return check_grassmann(args.count, args.seed)
    raise ValueError(f"Unknown command: {command}")


def exit_code(result: Dict[str, Any]) -> int:
    if not result.get("success", False):
        return EXIT_ERROR
    if result.get("partial", False):
        return EXIT_PARTIAL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    package_logger.addHandler(handler)
    try:
        args = build_parser().parse_args(argv)
        result = dispatch(args)
        json.dump(_clean(result), sys.stdout, indent=2, default=_builtin)
        sys.stdout.write("\n")
        return exit_code(result)
    finally:
        package_logger.removeHandler(handler)
