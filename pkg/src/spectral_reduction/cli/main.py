"""Command-line entry point."""

import argparse
import cmath
import json
import random
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from spectral_reduction import __version__
from spectral_reduction.algebra.matrices import CMatrix
from spectral_reduction.algebra.rmatrix import (
    build_C12,
    build_U,
    build_V,
    build_Y_Z_K_Rtilde,
    classical_r,
    constant_R,
    permutation_matrix,
    spectral_R,
)
from spectral_reduction.classical.lax import sample_lax
from spectral_reduction.cli.suites import CHECK_SUITE, SUITE_CHECKS, exponential, run_suite
from spectral_reduction.config import get_settings
from spectral_reduction.exceptions import ConfigError, SpectralReductionError
from spectral_reduction.geometry.curve import (
    DivisorPoint,
    curve_from_lax,
    divisor_determinant,
    genus,
    index_map,
    read_points_file,
)
from spectral_reduction.geometry.operators import measure_kernel_apply
from spectral_reduction.logging import get_logger, setup_logging
from spectral_reduction.models import ReportDoc, RunConfig
from spectral_reduction.noncommutative.serialization import replay_certificate
from spectral_reduction.quantum.rtt import build_model

logger = get_logger(__name__)

MATRICES: dict[str, Callable[[int], CMatrix]] = {
    "R": lambda N: spectral_R(N, reading=get_settings().constant_r_reading),
    "Rq": lambda N: constant_R(N, get_settings().constant_r_reading),
    "r": lambda N: classical_r(N).numerator,
    "P": permutation_matrix,
    "U": build_U,
    "V": build_V,
    "C12": build_C12,
    "Y12": lambda N: build_Y_Z_K_Rtilde(N).Y12,
    "Y12inv": lambda N: build_Y_Z_K_Rtilde(N).Y12_inv,
    "Z12": lambda N: build_Y_Z_K_Rtilde(N).Z12,
    "K12": lambda N: build_Y_Z_K_Rtilde(N).K12,
    "Rtilde": lambda N: build_Y_Z_K_Rtilde(N).R_tilde,
}


def parse_range(text: str) -> list[int]:
    """``2..4`` -> [2, 3, 4]; ``2,3`` -> [2, 3]; ``2`` -> [2]."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return list(range(int(low), int(high) + 1))
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}") from None


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--N", type=parse_range, help="Matrix sizes, e.g. 2..4")
    parser.add_argument("--n", type=parse_range, help="Spectral degrees, e.g. 1,2")
    parser.add_argument("--degree-bound", type=int, help="Membership degree bound")
    parser.add_argument("--budget", "--max-monomials", dest="max_monomials", type=int)
    parser.add_argument("--max-wall-seconds", type=float)
    parser.add_argument("--backend", choices=["exact", "float"])
    parser.add_argument("--samples", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--constant-r-reading", choices=["interpreted", "literal"])
    parser.add_argument("--s-hat-reading", choices=["scalar", "exponent", "inverse"])
    parser.add_argument("--qdet-shift", choices=["fused", "printed"])
    parser.add_argument("--allow-inconclusive", action="store_true", default=None)
    parser.add_argument("--no-timings", dest="timings", action="store_false", default=None)
    parser.add_argument("--output", "-o", help="Write the JSON report here")
    parser.add_argument("--certificate-dir", help="Write member certificates here")
    parser.add_argument("--config", type=Path, help="JSON file with the same fields as the flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-reduction",
        description="Exact verification of the reduced quantum integrable model",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a verification suite")
    run.add_argument("suite", choices=[*SUITE_CHECKS, "all"])
    _add_run_options(run)

    verify = sub.add_parser("verify", help="Run one quantum check, or replay a certificate")
    verify.add_argument(
        "check",
        nargs="?",
        choices=[*SUITE_CHECKS["quantum-core"], *SUITE_CHECKS["reduction"], "closed"],
    )
    verify.add_argument("--replay", type=Path, help="Certificate file to replay")
    _add_run_options(verify)

    classical = sub.add_parser("classical", help="Run one classical check")
    classical.add_argument("check", choices=SUITE_CHECKS["classical"])
    _add_run_options(classical)

    geometry = sub.add_parser("geometry", help="Spectral-curve utilities")
    geometry.add_argument("op", choices=["genus", "index-map", "divisor-det", "kernel"])
    geometry.add_argument("--N", type=int, default=2)
    geometry.add_argument("--n", type=int, default=3)
    geometry.add_argument("--gamma", type=float, default=0.3)
    geometry.add_argument("--points-file", type=Path)
    geometry.add_argument("--seed", type=int, default=0)

    matrix = sub.add_parser("matrix", help="Dump a constructed matrix in canonical text")
    matrix.add_argument("action", choices=["dump"])
    matrix.add_argument("name", choices=sorted(MATRICES))
    matrix.add_argument("--N", type=int, default=2)

    model = sub.add_parser("model", help="Dump the alphabet and relation set")
    model.add_argument("action", choices=["dump"])
    model.add_argument("--N", type=int, default=2)
    model.add_argument("--n", type=int, default=1)

    replay = sub.add_parser("replay", help="Replay a certificate file exactly")
    replay.add_argument("path", type=Path)
    return parser


def config_from_args(args: argparse.Namespace, suite: str, checks: Sequence[str] = ()) -> RunConfig:
    """Merge the optional config file with explicit flags; flags win.

    Raises:
        ConfigError: If the file is unreadable or the merged values are invalid.
    """
    values: dict[str, Any] = {}
    if args.config is not None:
        try:
            values.update(json.loads(args.config.read_text()))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config {args.config}: {e}") from e
    fields = (
        "N",
        "n",
        "degree_bound",
        "max_monomials",
        "max_wall_seconds",
        "backend",
        "samples",
        "seed",
        "constant_r_reading",
        "s_hat_reading",
        "qdet_shift",
        "allow_inconclusive",
        "timings",
        "output",
        "certificate_dir",
    )
    for name in fields:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    values["suite"] = suite
    if checks:
        values["checks"] = list(checks)
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e


def emit_report(report: ReportDoc, output: str | None) -> None:
    text = report.to_json()
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text + "\n")
        logger.info(f"Report written to {output}")
    else:
        print(text)


def _run(args: argparse.Namespace, suite: str, checks: Sequence[str] = ()) -> int:
    config = config_from_args(args, suite, checks)
    report = run_suite(config)
    emit_report(report, config.output)
    return report.exit_code(config.allow_inconclusive)


def _replay(path: Path) -> int:
    ok = replay_certificate(path)
    print(json.dumps({"certificate": str(path), "status": "pass" if ok else "fail"}))
    return 0 if ok else 1


def _geometry(args: argparse.Namespace) -> int:
    N, n = args.N, args.n
    if args.op == "genus":
        print(json.dumps({"N": N, "n": n, "genus": genus(N, n)}))
        return 0
    if args.op == "index-map":
        table = index_map(N, n)
        print(json.dumps({"N": N, "n": n, "index_map": [list(entry) for entry in table]}))
        return 0
    if args.points_file is None:
        raise ConfigError(f"geometry {args.op} needs --points-file")
    curve = curve_from_lax(sample_lax(N, n, random.Random(args.seed)))
    points = [DivisorPoint.on(curve, p.z, p.w) for p in read_points_file(args.points_file)]
    if args.op == "divisor-det":
        det = complex(divisor_determinant(curve, points))
        print(
            json.dumps(
                {
                    "det": [det.real, det.imag],
                    "residuals": [p.residual for p in points],
                }
            )
        )
        return 0
    # zeta_j = log(z_j) / 2 for the g points of the file
    zeta = tuple(cmath.log(complex(p.z)) / 2 for p in points)
    G = exponential(tuple(0.1 * (j + 1) for j in range(len(zeta))))
    value = measure_kernel_apply(curve, args.gamma, G, [zeta])[0]
    print(json.dumps({"gamma": args.gamma, "zeta": [[x.real, x.imag] for x in zeta], "KG": [value.real, value.imag]}))
    return 0


def _model_dump(N: int, n: int) -> int:
    model = build_model(N, n)
    print(f"# model v1 N={N} n={n} reading={model.reading}")
    print("alphabet: " + " ".join(model.alphabet.names()))
    for k, (rel, origin) in enumerate(zip(model.rels.relations, model.rels.provenance, strict=True)):
        print(f"{model.rels.relation_id(k)} [{origin}]: {rel.to_text()}")
    return 0


def dispatch(args: argparse.Namespace) -> int:
    match args.command:
        case "run":
            return _run(args, args.suite)
        case "verify":
            if args.replay is not None:
                return _replay(args.replay)
            if args.check is None:
                raise ConfigError("verify needs a check name or --replay")
            return _run(args, CHECK_SUITE[args.check], [args.check])
        case "classical":
            return _run(args, "classical", [args.check])
        case "geometry":
            return _geometry(args)
        case "matrix":
            print(MATRICES[args.name](args.N).to_text())
            return 0
        case "model":
            return _model_dump(args.N, args.n)
        case "replay":
            return _replay(args.path)
    raise ConfigError(f"Unknown command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(level=args.log_level or get_settings().log_level)
    try:
        return dispatch(args)
    except SpectralReductionError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
