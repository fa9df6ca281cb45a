"""
lrcheck command line
Runs a check suite on a scenario file and emits a text or json report

    python -m src.lrcheck verify --scenario scenarios/s1.env --suite jacobiator
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse

from config.logging_config import setup_logging, log_error, log_success
from config.settings import validate_config

from src.scenarios import load_scenario
from src.suites import SUITES, run_suite
from src.reports import FORMATS, emit_report
from src.foliation import MUTATIONS

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lrcheck",
        description="Exact checks of the LR-infinity[1] structure of a foliation.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a check suite on a scenario")
    verify.add_argument("--scenario", required=True,
                        help="Scenario file, or a name looked up in LRCHECK_SCENARIO_DIR")
    verify.add_argument("--suite", required=True, choices=SUITES + ("all",))
    verify.add_argument("--max-arity", type=int, default=None,
                        help="Highest Jacobiator arity (default: scenario MAX_ARITY)")
    verify.add_argument("--seed", type=int, default=None, help="Random seed (default: scenario SEED)")
    verify.add_argument("--cases", type=int, default=None, help="Samples per check (default: scenario CASES)")
    verify.add_argument("--format", choices=FORMATS, default="text")
    verify.add_argument("--out", default=None, help="Write the report here instead of stdout")
    verify.add_argument("--mutation", choices=MUTATIONS, default=None, help=argparse.SUPPRESS)
    return parser


def _check_overrides(args):
    problems = []
    if args.seed is not None and args.seed < 0:
        problems.append(f"--seed {args.seed} (expected >= 0)")
    if args.cases is not None and args.cases < 1:
        problems.append(f"--cases {args.cases} (expected >= 1)")
    if args.max_arity is not None and args.max_arity < 1:
        problems.append(f"--max-arity {args.max_arity} (expected >= 1)")
    if problems:
        raise ValueError(f"Invalid options: {problems}")


def verify(args, logger):
    """Exit code for one verify run."""
    try:
        validate_config()
        _check_overrides(args)
        scenario = load_scenario(args.scenario).with_overrides(args.seed, args.cases, args.max_arity)
    except ValueError as e:
        log_error(logger, "Scenario loading", e)
        return EXIT_CONFIG

    try:
        report = run_suite(scenario, args.suite, mutation=args.mutation)
    except ValueError as e:
        log_error(logger, f"{args.suite} suite", e)
        return EXIT_CONFIG

    try:
        emit_report(report, args.format, args.out)
    except OSError as e:
        log_error(logger, "Report writing", e)
        return EXIT_CONFIG

    if report.passed:
        log_success(logger, f"{args.suite} suite on {scenario.name}", report.stats())
        return EXIT_PASS
    logger.error(f"❌ {len(report.failures)} of {len(report.cases)} cases failed")
    return EXIT_FAIL


def main(argv=None):
    args = build_parser().parse_args(argv)
    logger = setup_logging("lrcheck", stream=sys.stderr)
    if args.command == "verify":
        return verify(args, logger)
    return EXIT_CONFIG


if __name__ == "__main__":
    exit(main())
