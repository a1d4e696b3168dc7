"""
Command line entry point for the converse Fatou harness.

Exit codes: 0 expected verdicts, 2 unexpected verdict or failed check,
3 I/O failure, 4 configuration error.
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from mathtools import hyperbolic, kernels, mellin
from mathtools.errors import ConfigError, DomainError, IntegrationError, UnknownIdError
from mathtools.quadrature import QuadratureSettings
from mathtools.symbolic_math import SymbolicMathTool
from mathtools.tool_registry import describe, get_kernel
from memory.report_writer import ReportWriter, dumps_report
from orchestration.scenarios import list_scenarios
from orchestration.state import create_initial_state
from orchestration.workflow import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_UNEXPECTED_VERDICT,
    ScenarioWorkflow,
)
from utils.config_loader import get_config_loader
from utils.logger import setup_logger
from utils.validators import OUTPUT_FORMATS, load_config_file, validate_output_dir

EIGEN_POINTS = 20
EIGEN_THRESHOLD = 1e-5


def load_app_config(path: str = "config.yaml") -> Dict[str, Any]:
    return get_config_loader(path).get_app_config()


def _print(payload: Any):
    sys.stdout.write(dumps_report(payload))


# Commands

def cmd_run(args, config: Dict[str, Any]) -> int:
    raw: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    raw["scenario"] = args.scenario
    if args.out:
        raw["output_dir"] = args.out
    if args.format:
        raw["format"] = args.format
    if args.n is not None:
        raw["n"] = args.n
    return _run_one(raw, config)


def _run_one(raw: Dict[str, Any], config: Dict[str, Any]) -> int:
    workflow = ScenarioWorkflow(config)
    state = workflow.run(create_initial_state(raw, config.get('harness', {})))
    if state.get("exit_code") == EXIT_CONFIG:
        for message in state.get("errors", []):
            sys.stderr.write(message + "\n")
        return EXIT_CONFIG
    _print({
        "scenario": raw["scenario"],
        "verdict": state.get("verdict"),
        "expected_verdict": state.get("expected_verdict"),
        "files": state.get("written_files", []),
        "errors": state.get("errors", []),
    })
    return state.get("exit_code", EXIT_UNEXPECTED_VERDICT)


def cmd_suite(args, config: Dict[str, Any]) -> int:
    """Every registered scenario with its defaults; the growth report must pass too."""
    codes: List[int] = []
    for scenario in list_scenarios():
        raw: Dict[str, Any] = {"scenario": scenario["id"]}
        if args.out:
            raw["output_dir"] = args.out
        if args.format:
            raw["format"] = args.format
        workflow = ScenarioWorkflow(config)
        state = workflow.run(create_initial_state(raw, config.get('harness', {})))
        code = state.get("exit_code", EXIT_UNEXPECTED_VERDICT)
        growth = state.get("extras", {}).get("growth")
        if growth is not None and not growth.get("passed", False) and code == EXIT_OK:
            code = EXIT_UNEXPECTED_VERDICT
        codes.append(code)
        sys.stdout.write(f"{scenario['id']}: {state.get('verdict')} (expected {scenario['expected_verdict']})\n")
    return max(codes) if codes else EXIT_OK


def cmd_list(args, config: Dict[str, Any]) -> int:
    if args.registry == "scenarios":
        _print(list_scenarios())
    else:
        _print(describe(args.registry[:-1]))
    return EXIT_OK


def _tauberian(k, y_min: float, y_max: float, points: int, config: Dict[str, Any]) -> mellin.MellinSpectrum:
    mellin_config = config.get('mellin', {})
    return mellin.tauberian_check(
        k, y_min, y_max, points,
        threshold=float(mellin_config.get('zero_threshold', mellin.ZERO_THRESHOLD)),
        settings=QuadratureSettings.from_config(config.get('quadrature', {})),
        xatol=float(mellin_config.get('refine_xatol', mellin.REFINE_XATOL)),
    )


def cmd_mellin(args, config: Dict[str, Any]) -> int:
    k = get_kernel(args.kernel, args.n)
    spectrum = _tauberian(k, args.ymin, args.ymax, args.points, config)
    summary = spectrum.to_dict()
    if args.out:
        summary["csv"] = ReportWriter(args.out).write_spectrum(spectrum)
    _print(summary)
    return EXIT_OK


def cmd_check(args, config: Dict[str, Any]) -> int:
    if args.check == "eigen":
        return _check_eigen(args)

    k = get_kernel(args.kernel, args.n)
    kernel_config = config.get('kernels', {})
    if args.check == "tauberian":
        mellin_config = config.get('mellin', {})
        spectrum = _tauberian(
            k,
            float(mellin_config.get('y_min', -8.0)),
            float(mellin_config.get('y_max', 8.0)),
            int(mellin_config.get('points', 81)),
            config,
        )
        result, passed = spectrum.to_dict(), not spectrum.zeros
    elif args.check == "comparison":
        per_decade = int(kernel_config.get('points_per_decade', kernels.GRID_POINTS_PER_DECADE))
        t_range = kernel_config.get('t_range', kernels.DEFAULT_T_RANGE)
        r_range = kernel_config.get('r_range', kernels.DEFAULT_R_RANGE)
        report = kernels.comparison_sup(
            k,
            t_grid=kernels.geometric_grid(float(t_range[0]), float(t_range[1]), per_decade),
            r_grid=kernels.geometric_grid(float(r_range[0]), float(r_range[1]), per_decade),
        )
        result, passed = report.to_dict(), bool(np.isfinite(report.sup_estimate))
    else:
        threshold = float(kernel_config.get('decay_threshold', 1e-6))
        report = kernels.decay_check(k, relative_threshold=threshold)
        result, passed = report.to_dict(), report.passed

    _print({"check": args.check, "kernel": k.name, "n": args.n, "passed": passed, "result": result})
    return EXIT_OK if passed else EXIT_UNEXPECTED_VERDICT


def _check_eigen(args) -> int:
    ctx = hyperbolic.HyperbolicContext.create(args.n)
    lam = hyperbolic.parse_lambda(args.lam)
    spec = hyperbolic.HyperbolicEigenSpec(ctx, lam)
    rng = np.random.default_rng(args.seed)
    records = []
    for _ in range(EIGEN_POINTS):
        x = rng.uniform(-1.0, 1.0, ctx.boundary_dim)
        # away from the boundary, where the O(h^2) term is small
        y = float(rng.uniform(3.0, 5.0))
        residual = hyperbolic.eigen_residual(spec, (x, y), args.h)
        records.append({"point": [*x.tolist(), y], "h": args.h, "residual": residual})
    worst = max(r["residual"] for r in records)
    symbolic = SymbolicMathTool().generalized_poisson_check(args.n, lam)
    symbolic["matches_numeric"] = abs(symbolic["eigenvalue"] - spec.eigenvalue) <= 1e-12 * max(1.0, abs(spec.eigenvalue))
    passed = worst <= EIGEN_THRESHOLD and symbolic["verification"] and symbolic["matches_numeric"]
    _print({"check": "eigen", "n": args.n, "lambda": args.lam, "max_residual": worst,
            "passed": passed, "symbolic": symbolic, "records": records})
    return EXIT_OK if passed else EXIT_UNEXPECTED_VERDICT


def build_parser(config: Dict[str, Any]) -> argparse.ArgumentParser:
    harness = config.get('harness', {})
    classifier = config.get('classifier', {})
    mellin_config = config.get('mellin', {})
    defaults = (
        f"defaults: {harness.get('points', 48)} grid points, ratio {harness.get('ratio_to_zero', 0.75)} toward 0, "
        f"ratio {harness.get('ratio_to_infinity', 1.5)} toward infinity, trace tolerance "
        f"{classifier.get('tolerance', 1e-4)}, verdict tolerance {harness.get('verdict_tolerance', 5e-3)}; "
        f"output directory {harness.get('output_dir', './results')} "
        f"(override with ${harness.get('output_dir_env', 'CONVERSE_FATOU_OUTPUT_DIR')})"
    )
    parser = argparse.ArgumentParser(
        prog="converse-fatou",
        description="Numerical checks of converse Fatou theorems. " + defaults,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario", description=defaults)
    run.add_argument("scenario", help="scenario id (see `list`)")
    run.add_argument("--config", help="JSON scenario configuration")
    run.add_argument("--out", help="output directory")
    run.add_argument("--format", choices=OUTPUT_FORMATS, help="output format (default: both)")
    run.add_argument("--n", type=int, help="dimension override")
    run.set_defaults(handler=cmd_run)

    suite = sub.add_parser("suite", help="run every scenario with its defaults", description=defaults)
    suite.add_argument("--out", help="output directory")
    suite.add_argument("--format", choices=OUTPUT_FORMATS)
    suite.set_defaults(handler=cmd_suite)

    listing = sub.add_parser("list", help="list scenarios or registries")
    listing.add_argument("registry", nargs="?", default="scenarios",
                         choices=["scenarios", "kernels", "measures", "functions"])
    listing.set_defaults(handler=cmd_list)

    spectrum = sub.add_parser("mellin", help="sample a radial Mellin transform and locate zeros")
    spectrum.add_argument("--kernel", required=True, help="kernel id, e.g. gaussian, K:1:1, hyperbolic:psi:3:1i")
    spectrum.add_argument("--n", type=int, required=True, help="dimension")
    spectrum.add_argument("--ymin", type=float, default=float(mellin_config.get('y_min', -8.0)), help="(default: %(default)s)")
    spectrum.add_argument("--ymax", type=float, default=float(mellin_config.get('y_max', 8.0)), help="(default: %(default)s)")
    spectrum.add_argument("--points", type=int, default=int(mellin_config.get('points', 81)), help="(default: %(default)s)")
    spectrum.add_argument("--out", help="write spectrum.csv to this directory")
    spectrum.set_defaults(handler=cmd_mellin)

    check = sub.add_parser("check", help="kernel conditions and eigen-equation residuals")
    check.add_argument("check", choices=["tauberian", "comparison", "decay", "eigen"])
    check.add_argument("--kernel", default="poisson", help="kernel id (default: %(default)s)")
    check.add_argument("--n", type=int, required=True, help="dimension (of H^n for eigen)")
    check.add_argument("--lambda", dest="lam", default="1i", help="spectral parameter for eigen (default: %(default)s)")
    check.add_argument("--h", type=float, default=1e-3, help="finite-difference step (default: %(default)s)")
    check.add_argument("--seed", type=int, default=0, help="sample-point seed (default: %(default)s)")
    check.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    try:
        config = load_app_config(os.getenv("CONVERSE_FATOU_CONFIG", "config.yaml"))
    except ConfigError as e:
        sys.stderr.write(f"Configuration error: {e}\n")
        return EXIT_CONFIG

    logger = setup_logger("main", config.get('logging', {}))
    args = build_parser(config).parse_args(argv)

    out = getattr(args, "out", None)
    if out:
        ok, message = validate_output_dir(out)
        if not ok:
            sys.stderr.write(message + "\n")
            return EXIT_IO

    try:
        return args.handler(args, config)
    except (ConfigError, UnknownIdError) as e:
        logger.error(f"Configuration error: {e}")
        sys.stderr.write(f"Configuration error: {e}\n")
        return EXIT_CONFIG
    except OSError as e:
        logger.error(f"I/O error: {e}")
        sys.stderr.write(f"I/O error: {e}\n")
        return EXIT_IO
    except (DomainError, IntegrationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_UNEXPECTED_VERDICT


if __name__ == "__main__":
    sys.exit(main())
