"""Command line interface for extreme-ball."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict

from .config import DEFAULT_CONFIG, ExtremalityConfig, apply_config_update
from .data.problem import ProblemFile, load_problem, merge_shortcuts
from .errors import ExtremalityError, ProblemFileError
from .finite.verdict import Verdict, VerdictKind
from .pipeline import classify_problem, document, oracle_problem, plot_frame, verify_document, witness_problem
from .utils.logging import configure_logging
from .utils.serialise import dumps


logger = configure_logging()

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDETERMINATE = 2


def load_config(path: Path | None) -> ExtremalityConfig:
    if path is None:
        return DEFAULT_CONFIG
    data = json.loads(path.read_text())
    return ExtremalityConfig.from_dict(data)


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Configuration update for the tolerance flags given on the command line."""

    return merge_shortcuts(
        {},
        tol_rank=args.tol_rank,
        tol_contact=args.tol_contact,
        grid_log2=args.grid_log2,
        slack=args.slack,
        seed=args.seed,
        trials=args.trials,
    )


def problem_config(problem: ProblemFile, base: ExtremalityConfig, overrides: Dict[str, Any]) -> ExtremalityConfig:
    """Defaults, then the problem's options, then the command-line flags."""

    return apply_config_update(problem.config(base), overrides)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    out.write_text(text)
    logger.info("wrote %s", out)


def _verdict_exit(verdict: Verdict) -> int:
    return EXIT_INDETERMINATE if verdict.kind is VerdictKind.INDETERMINATE else EXIT_OK


def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------
def cmd_classify(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    problem = load_problem(args.file)
    config = problem_config(problem, base, flag_overrides(args))
    verdict = classify_problem(problem, config)
    logger.info("%s: %s", args.file, verdict.kind.value)
    _emit(dumps(document(verdict.to_dict(), config)), args.out)
    return _verdict_exit(verdict)


def cmd_witness(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    problem = load_problem(args.file)
    config = problem_config(problem, base, flag_overrides(args))
    verdict = witness_problem(problem, config)
    _emit(dumps(document(verdict.to_dict(), config)), args.out)
    return _verdict_exit(verdict)


def cmd_verify(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    payload = _load_json(args.file)
    if not isinstance(payload, dict):
        raise ProblemFileError("expected a JSON object")
    # a stored certificate is re-checked with the tolerances it was issued under
    stored = payload.get("tolerances")
    if isinstance(stored, dict):
        try:
            base = ExtremalityConfig.from_dict(stored)
        except TypeError as exc:
            raise ProblemFileError(f"invalid tolerances: {exc}") from exc
    config = apply_config_update(base, flag_overrides(args))
    result = verify_document(payload, config)
    _emit(dumps(document(result, config)), args.out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    problem = load_problem(args.file)
    config = problem_config(problem, base, flag_overrides(args))
    payload, result = oracle_problem(problem, config)
    if args.transcript is not None:
        args.transcript.write_text(result.transcript_jsonl())
    _emit(dumps(document(payload, config)), args.out)
    return EXIT_OK if payload["agreement"] else EXIT_ERROR


def cmd_scan(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    from .batch.runner import BatchRunner

    runner = BatchRunner(base, overrides=flag_overrides(args), workers=args.workers)
    result = runner.run(args.directory, pattern=args.pattern)
    if args.out is not None:
        result.to_csv(args.out)
        logger.info("wrote %s", args.out)
    else:
        _emit(dumps(document({"files": result.records}, base)), None)
    if result.failed:
        return EXIT_ERROR
    return EXIT_INDETERMINATE if result.indeterminate else EXIT_OK


def cmd_plot(args: argparse.Namespace, base: ExtremalityConfig) -> int:
    problem = load_problem(args.file)
    config = problem_config(problem, base, flag_overrides(args))
    frame = plot_frame(problem, config, args.grid)
    if args.out is None:
        sys.stdout.write(frame.to_csv(index=False))
    else:
        frame.to_csv(args.out, index=False)
        logger.info("wrote %d rows to %s", len(frame), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="Path to JSON config file")
    common.add_argument("--out", type=Path, default=None, help="Write output here instead of stdout")
    common.add_argument("--tol-rank", type=float, default=None, help="Relative singular value threshold")
    common.add_argument("--tol-contact", type=float, default=None, help="Tolerance on 1 - |p|^2 at contacts")
    common.add_argument("--grid-log2", type=int, default=None, help="log2 of the cofinite sampling grid")
    common.add_argument("--slack", type=float, default=None, help="Acceptance slack of the midpoint check")
    common.add_argument("--seed", type=int, default=None, help="Seed of the perturbation search")
    common.add_argument("--trials", type=int, default=None, help="Number of perturbation search trials")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level of the stderr logger",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="extreme-ball",
        description="Decide extremality in unit balls of spectrally constrained polynomial spaces",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", parents=[common], help="Classify a problem file")
    classify.add_argument("file", type=Path)
    classify.set_defaults(handler=cmd_classify)

    witness = commands.add_parser("witness", parents=[common], help="Emit a non-extremality witness")
    witness.add_argument("file", type=Path)
    witness.set_defaults(handler=cmd_witness)

    verify = commands.add_parser("verify", parents=[common], help="Re-check a stored certificate")
    verify.add_argument("file", type=Path)
    verify.set_defaults(handler=cmd_verify)

    oracle = commands.add_parser("oracle", parents=[common], help="Cross-check with a perturbation search")
    oracle.add_argument("file", type=Path)
    oracle.add_argument("--transcript", type=Path, default=None, help="Write the trial transcript as JSONL")
    oracle.set_defaults(handler=cmd_oracle)

    scan = commands.add_parser("scan", parents=[common], help="Classify every problem file in a directory")
    scan.add_argument("directory", type=Path)
    scan.add_argument("--pattern", default="*.json")
    scan.add_argument("--workers", type=int, default=1)
    scan.set_defaults(handler=cmd_scan)

    plot = commands.add_parser("plot", parents=[common], help="Export t, |p|, tau samples as CSV")
    plot.add_argument("file", type=Path)
    plot.add_argument("--grid", type=int, default=None, help="Number of samples (default: circle grid)")
    plot.set_defaults(handler=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(logging, args.log_level))

    try:
        base = load_config(args.config)
        return args.handler(args, base)
    except ExtremalityError as exc:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except (OSError, TypeError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
