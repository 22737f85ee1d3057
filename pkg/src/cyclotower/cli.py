"""
Command Line Interface for cyclotower.

Commands: tower, check, build, search, fingerprint and rerun. Reports go to
stdout (or --out FILE as JSON), logs and structured errors go to stderr.
Exit codes: 0 ok, 1 unexpected, 2 tower, 3 parse, 4 factorization,
5 criterion, 6 builder, 7 fingerprint refuted, 8 too few primes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from .adapters.parsing import parse_element, parse_polynomial
from .adapters.reports import (
    ElementModel,
    FingerprintModel,
    FingerprintReport,
    PolynomialModel,
    RunConfigModel,
    SearchReport,
    SelfTestCase,
    TowerReport,
    VerdictReport,
    candidate_model,
    epoly_report,
    poly_coefficients,
    render,
    to_json,
    tower_model,
)
from .config import Config
from .domain.models import Group, Support
from .domain.services import BuilderService, CriterionService, FingerprintService, TowerService
from .exceptions import CyclotowerError, ElementParseError, FingerprintRefuted
from .logging import get_logger, set_format, set_level

logger = get_logger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    parser = argparse.ArgumentParser(
        prog="cyclotower",
        description="Exact cyclotomic towers, the H27 / C9xC3 criterion and degree-9 polynomial builder",
    )

    # Flags shared by every command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed for randomized steps")
    common.add_argument("--format", choices=["json", "text"], default="json", help="Output format (default: json)")
    common.add_argument("--out", help="Write the JSON report to this file")
    common.add_argument("--env-file", help="Read configuration from this .env file")
    common.add_argument("--mc-trials", type=int, help="Primes sampled by the p-th power test")
    common.add_argument("--mc-prime-cap", type=int, help="Largest prime the p-th power test may use")
    common.add_argument("--factor-bound", type=int, help="Factorization effort limit (0 = unbounded)")
    common.add_argument("--fingerprint-start", type=int, help="First prime tried by fingerprints")
    common.add_argument("--min-clean", type=int, help="Clean samples needed for an exponent-3 verdict")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("-p", type=int, required=True, help="Odd prime, degree of F")
    pair.add_argument("-r", type=int, required=True, help="Prime r = 1 (mod p), conductor of F")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    tower_parser = subparsers.add_parser("tower", parents=[common, pair], help="Describe the tower for (p, r)")
    tower_parser.add_argument("-e", type=int, help="Primitive root mod p used by Phi")

    check_parser = subparsers.add_parser(
        "check", parents=[common, pair], help="Run the criterion on an element x"
    )
    check_parser.add_argument("-e", type=int, help="Primitive root mod p used by Phi")
    check_parser.add_argument("-x", required=True, help='Element expression, e.g. "d + zp"')

    build_parser = subparsers.add_parser(
        "build", parents=[common, pair], help="Build a degree-9 H27 or C9xC3 polynomial (p = 3)"
    )
    build_parser.add_argument("-x", required=True, help='Element expression, e.g. "d + zp"')
    build_parser.add_argument("--group", choices=[g.value for g in Group], default=Group.H27.value)
    build_parser.add_argument("--theta", help="Kummer generator of L/K for c9c3")
    build_parser.add_argument(
        "--override-ideal-test",
        action="store_true",
        help="Build even when the ideal criterion fails",
    )
    build_parser.add_argument("--fingerprint", type=int, default=0, help="Fingerprint over N primes")

    search_parser = subparsers.add_parser(
        "search", parents=[common, pair], help="Search x = u*d + v + w*zp passing the criterion"
    )
    search_parser.add_argument("-e", type=int, help="Primitive root mod p used by Phi")
    search_parser.add_argument("--box", type=int, help="Half-width of the coefficient box")
    search_parser.add_argument("--limit", type=int, help="Maximum number of candidates")

    fingerprint_parser = subparsers.add_parser(
        "fingerprint", parents=[common], help="Frobenius cycle types of a polynomial"
    )
    fingerprint_parser.add_argument("--poly", help="Polynomial text, JSON coefficient array, or a file holding either")
    fingerprint_parser.add_argument("--claimed", choices=[g.value for g in Group])
    fingerprint_parser.add_argument("--budget", type=int, help="Usable primes to sample")
    fingerprint_parser.add_argument(
        "--self-test", action="store_true", help="Check the factorization engine on cyclotomic polynomials"
    )

    rerun_parser = subparsers.add_parser("rerun", help="Re-run the configuration embedded in a report")
    rerun_parser.add_argument("report", help="JSON report written by an earlier run")

    return parser


def _pick(flag: Any, default: Any) -> Any:
    return default if flag is None else flag


def run_config(config: Config, args: argparse.Namespace, **fields: Any) -> RunConfigModel:
    """Effective inputs: flags first, then configuration defaults."""
    return RunConfigModel(
        command=args.command,
        p=getattr(args, "p", None),
        r=getattr(args, "r", None),
        e=getattr(args, "e", None),
        mc_trials=_pick(args.mc_trials, config.mc_trials),
        mc_prime_cap=_pick(args.mc_prime_cap, config.mc_prime_cap),
        factor_bound=_pick(args.factor_bound, config.factor_bound),
        fingerprint_start=_pick(args.fingerprint_start, config.fingerprint_start),
        min_clean=_pick(args.min_clean, config.fingerprint_min_clean),
        seed=_pick(args.seed, config.seed),
        format=args.format,
        **fields,
    )


def _apply(config: Config, run: RunConfigModel) -> Config:
    """Copy the effective budgets back onto the configuration used by the services."""
    config.mc_trials = run.mc_trials
    config.mc_prime_cap = run.mc_prime_cap
    config.factor_bound = run.factor_bound
    config.fingerprint_start = run.fingerprint_start
    config.fingerprint_min_clean = run.min_clean
    config.seed = run.seed
    return config


def tower_command(config: Config, args: argparse.Namespace) -> tuple[BaseModel, int]:
    """Describe the tower and the minimal polynomial of the period."""
    run = run_config(config, args)
    service = TowerService()
    t = service.get_tower(args.p, args.r, e=args.e)
    delta, period_poly = service.describe(t)
    report = TowerReport(
        config=run,
        tower=tower_model(t),
        delta=ElementModel.from_element(delta),
        period_polynomial=PolynomialModel.from_poly(period_poly),
    )
    return report, 0


def check_command(config: Config, args: argparse.Namespace) -> tuple[BaseModel, int]:
    """Run the criterion and the p-th power evidence on x."""
    run = run_config(config, args, x=args.x)
    t = TowerService().get_tower(args.p, args.r, e=args.e)
    x = parse_element(t, args.x)
    result = CriterionService(_apply(config, run)).check(t, x)
    report = VerdictReport.from_check(run, t, x, result.gamma, result.verdict, result.evidence)
    return report, 0


def build_command(config: Config, args: argparse.Namespace) -> tuple[BaseModel, int]:
    """Build the degree-9 polynomial; refuted fingerprints exit 7."""
    run = run_config(
        config,
        args,
        x=args.x,
        group=args.group,
        theta=args.theta,
        override_ideal_test=args.override_ideal_test,
        fingerprint=args.fingerprint,
    )
    t = TowerService().get_tower(args.p, args.r, builder_mode=True)
    x = parse_element(t, args.x)
    theta = parse_element(t, args.theta) if args.theta else None
    group = Group(args.group)
    result, support = BuilderService(_apply(config, run)).build(
        t,
        x,
        group,
        theta=theta,
        override=args.override_ideal_test,
        fingerprint_budget=args.fingerprint,
    )
    report = epoly_report(run, t, result, support)
    if support is Support.REFUTED:
        return report, FingerprintRefuted(group.value).exit_code
    return report, 0


def search_command(config: Config, args: argparse.Namespace) -> tuple[BaseModel, int]:
    """List the elements of the box that pass the criterion."""
    run = run_config(
        config,
        args,
        box=_pick(args.box, config.search_box),
        limit=_pick(args.limit, config.search_limit),
    )
    t = TowerService().get_tower(args.p, args.r, e=args.e)
    found = CriterionService(_apply(config, run)).search(t, run.box, run.limit)
    report = SearchReport(
        config=run,
        tower=tower_model(t),
        count=len(found),
        candidates=[candidate_model(c) for c in found],
    )
    return report, 0


def _read_poly_argument(value: str) -> str:
    path = Path(value)
    if len(value) < 256 and path.is_file():
        return path.read_text(encoding="utf-8")
    return value


def fingerprint_command(config: Config, args: argparse.Namespace) -> tuple[BaseModel, int]:
    """Fingerprint a polynomial, or run the factorization self-test."""
    if args.self_test:
        run = run_config(config, args, self_test=True)
        cases = [
            SelfTestCase(
                q=q,
                p=p,
                observed=list(observed) if observed is not None else None,
                expected=list(expected),
                ok=observed == expected,
            )
            for q, p, observed, expected in FingerprintService(_apply(config, run)).self_test()
        ]
        return FingerprintReport(config=run, self_test=cases), 0 if all(c.ok for c in cases) else 1

    if not args.poly:
        raise ElementParseError("", "fingerprint needs --poly or --self-test")
    f = parse_polynomial(_read_poly_argument(args.poly))
    run = run_config(
        config,
        args,
        poly=json.dumps(poly_coefficients(f)),
        claimed=args.claimed,
        budget=_pick(args.budget, config.fingerprint_budget),
    )
    service = FingerprintService(_apply(config, run))
    claimed = Group(args.claimed) if args.claimed else None
    result = service.fingerprint(f, claimed, run.budget)
    report = FingerprintReport(
        config=run,
        polynomial=PolynomialModel.from_poly(f),
        fingerprint=FingerprintModel.from_fingerprint(result.fingerprint, args.claimed, result.support),
    )
    if result.support is Support.REFUTED:
        return report, FingerprintRefuted(args.claimed).exit_code
    return report, 0


def rerun_command(args: argparse.Namespace) -> int:
    """Replay the RunConfig embedded in a report."""
    try:
        data = json.loads(Path(args.report).read_text(encoding="utf-8"))
        run = RunConfigModel.model_validate(data["config"])
    except (OSError, ValueError, KeyError, ValidationError) as exc:
        raise ElementParseError(args.report, f"not a cyclotower report: {exc}") from exc
    if run.command == "rerun":
        raise ElementParseError(args.report, "a rerun report cannot be replayed")
    return main(run.to_argv())


_COMMANDS = {
    "tower": tower_command,
    "check": check_command,
    "build": build_command,
    "search": search_command,
    "fingerprint": fingerprint_command,
}


def _emit(report: BaseModel, args: argparse.Namespace) -> None:
    if args.out:
        Path(args.out).write_text(to_json(report), encoding="utf-8")
    else:
        sys.stdout.write(render(report, args.format))


def _print_error(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(args: list[str] | None = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = create_parser()
    parsed_args = parser.parse_args(args)
    if not parsed_args.command:
        parser.print_help()
        return 1

    try:
        if parsed_args.command == "rerun":
            return rerun_command(parsed_args)

        config = Config(env_file=parsed_args.env_file)
        set_level(config.log_level)
        set_format(config.log_format)
        report, code = _COMMANDS[parsed_args.command](config, parsed_args)
        _emit(report, parsed_args)
        if code == FingerprintRefuted.exit_code:
            _print_error(FingerprintRefuted(getattr(parsed_args, "claimed", None) or parsed_args.group).to_dict())
        return code

    except CyclotowerError as e:
        logger.debug(f"{parsed_args.command} failed with {e.error_code}")
        _print_error(e.to_dict())
        return e.exit_code
    except Exception as e:
        logger.exception(f"Error executing command: {e}")
        _print_error({"error": str(e), "error_code": "INTERNAL_ERROR"})
        return 1


if __name__ == "__main__":
    sys.exit(main())
