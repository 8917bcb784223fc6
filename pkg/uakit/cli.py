"""Command-line interface: validate, eval, transform, verify, random, check-proof, countermodel."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

from .category import FHCategory, validate_category
from .const import (
    DEFAULT_DEPTH,
    DEFAULT_FAMILY_SIZE,
    DEFAULT_POOL_DEPTH,
    MODE_COPY,
    MODE_QUOTIENT,
    SEARCH_MAX_ATOMS,
    SEARCH_MAX_WORLDS,
    STRATEGY_DIRECT,
    STRATEGY_VIA_TRANSFORM,
    SUITE_ALL,
    SUITES,
    TARGETS,
)
from .exceptions import FormulaSyntaxError, UakitError
from .fh import FHModel, fh_sat, truth_set, validate_fh
from .harness import RandomCell, SuiteOptions, run_random, run_suites
from .hms import HMSModel, validate_model
from .lattice import validate_frame
from .logic import bounded_countermodel_search, check_proof
from .parser import parse_formula
from .report import PropertyReport, ValidationReport
from .semantics import HMSEvaluator
from .serialization import (
    dump_fh,
    dump_model,
    dump_trace,
    load_model,
    load_proof,
    read_json,
    write_json,
)
from .syntax import atoms_key, atoms_of, print_formula
from .transforms import transform_with_trace

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _emit(data: Any, pretty: bool) -> None:
    print(json.dumps(data, indent=2 if pretty else None, ensure_ascii=False))


def _render_validation(report: ValidationReport) -> list[str]:
    lines = [f"{report.subject}: {'valid' if report.ok else 'INVALID'}"]
    for kind, entries in (("error", report.violations), ("warning", report.warnings)):
        for v in entries:
            where = "".join(
                [
                    f" agent {v.agent + 1}" if v.agent is not None else "",
                    f" at {v.state}" if v.state is not None else "",
                ]
            )
            lines.append(f"  {kind} {v.clause}{where}: {v.detail}")
    return lines


def _render_properties(report: PropertyReport) -> list[str]:
    lines = [f"{report.subject}: {'ok' if report.ok else 'FAILED'}"]
    for validation in report.validations:
        if not validation.ok:
            lines.extend(f"  {line}" for line in _render_validation(validation))
    if report.results:
        width = max(len(r.name) for r in report.results)
        for result in report.results:
            status = "ok" if result.ok else f"{result.failure_count} failed"
            lines.append(f"  {result.name:<{width}}  {result.instances:>6}  {status}")
            for witness in result.failures:
                lines.append(f"    - {witness.detail or witness.subject}")
    return lines


def _show_validation(report: ValidationReport, pretty: bool) -> int:
    if pretty:
        print("\n".join(_render_validation(report)))
    else:
        _emit(report.as_dict(), False)
    return EXIT_OK if report.ok else EXIT_FAILED


def _show_properties(reports: Sequence[PropertyReport], pretty: bool) -> int:
    if pretty:
        for report in reports:
            print("\n".join(_render_properties(report)))
    elif len(reports) == 1:
        _emit(reports[0].as_dict(), False)
    else:
        _emit([r.as_dict() for r in reports], False)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _validate_any(model: FHModel | FHCategory | HMSModel) -> ValidationReport:
    if isinstance(model, FHModel):
        return validate_fh(model)
    if isinstance(model, FHCategory):
        return validate_category(model)
    frame = validate_frame(model.frame)
    if not frame.ok:
        return frame
    return validate_model(model)


def cmd_validate(args: argparse.Namespace) -> int:
    return _show_validation(_validate_any(load_model(read_json(args.model))), args.pretty)


def _eval_fh(model: FHModel, world: str, text: str, show_event: bool) -> list[str]:
    formula = parse_formula(text)
    model.check_world(world)
    missing = atoms_of(formula) - model.vocab
    if missing:
        return [f"undefined({atoms_key(missing)})"]
    lines = ["true" if fh_sat(model, world, formula) else "false"]
    if show_event:
        lines.append(json.dumps(sorted(truth_set(model, formula))))
    return lines


def _eval_hms(model: HMSModel, state: str, text: str, show_event: bool) -> list[str]:
    formula = parse_formula(text)
    if not model.frame.has_state(state):
        raise UakitError(f"unknown state {state!r}")
    evaluator = HMSEvaluator(model)
    missing = evaluator.undefined_atoms(state, formula)
    lines = [
        f"undefined({atoms_key(missing)})"
        if missing
        else ("true" if evaluator.sat(state, formula) else "false")
    ]
    if show_event and not atoms_of(formula) - frozenset(model.valuation):
        event = evaluator.extension(formula)
        lines.append(
            json.dumps({"space": atoms_key(event.base_space), "base": sorted(event.base)})
        )
    return lines


def cmd_eval(args: argparse.Namespace) -> int:
    model = load_model(read_json(args.model))
    if isinstance(model, HMSModel):
        lines = _eval_hms(model, args.state, args.formula, args.show_event)
    elif isinstance(model, FHModel):
        lines = _eval_fh(model, args.state, args.formula, args.show_event)
    else:
        owner = next(
            (m for m in model.models.values() if args.state in m.world_set), model.top
        )
        lines = _eval_fh(owner, args.state, args.formula, args.show_event)
    print("\n".join(lines))
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    source = load_model(read_json(args.model))
    if isinstance(source, FHCategory):
        raise UakitError("transform needs an FH or HMS model, not a category")
    trace = transform_with_trace(source, args.to, args.mode)
    target = dump_model(trace.target)
    if args.output:
        write_json(args.output, target, pretty=args.pretty)
    else:
        _emit(target, args.pretty)
    if args.trace:
        write_json(args.trace, dump_trace(trace), pretty=args.pretty)
    _LOGGER.info("Transformed %s to %s: %s", trace.source, args.to, "; ".join(trace.steps))
    return EXIT_OK


def _options(args: argparse.Namespace) -> SuiteOptions:
    return SuiteOptions(
        suite=args.suite,
        depth=args.depth,
        pool_depth=args.pool_depth,
        family_size=args.family_size,
        mode=args.mode,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    subjects = [load_model(read_json(path)) for path in args.models]
    reports = run_suites(subjects, _options(args), args.jobs)
    return _show_properties(reports, args.pretty)


def cmd_random(args: argparse.Namespace) -> int:
    options = _options(args)
    cells = [
        RandomCell(args.atoms, args.worlds, args.agents, seed, args.strategy, options)
        for seed in range(args.seed, args.seed + args.count)
    ]
    return _show_properties(run_random(cells, args.jobs), args.pretty)


def cmd_check_proof(args: argparse.Namespace) -> int:
    result = check_proof(load_proof(read_json(args.proof)))
    if args.pretty:
        print("proof ok" if result.ok else "proof REJECTED")
        for diagnostic in result.diagnostics:
            print(f"  line {diagnostic.line}: {diagnostic.message}")
    else:
        _emit(result.as_dict(), False)
    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_countermodel(args: argparse.Namespace) -> int:
    formula = parse_formula(args.formula)
    found = bounded_countermodel_search(formula, args.max_worlds, args.max_atoms, args.agents)
    if found is None:
        data: dict[str, Any] = {"formula": print_formula(formula), "found": False}
    else:
        model, world = found
        data = {
            "formula": print_formula(formula),
            "found": True,
            "world": world,
            "model": dump_fh(model),
        }
    _emit(data, args.pretty)
    return EXIT_OK if found is None else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_suite_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--suite", choices=(SUITE_ALL, *SUITES), default=SUITE_ALL, help="property suite"
    )
    parser.add_argument(
        "--depth", type=int, default=DEFAULT_DEPTH, help="formula depth for equivalence checks"
    )
    parser.add_argument(
        "--pool-depth",
        type=int,
        default=DEFAULT_POOL_DEPTH,
        help="formula depth of the axiom instance pool",
    )
    parser.add_argument(
        "--family-size",
        type=int,
        default=DEFAULT_FAMILY_SIZE,
        help="largest event family for conjunction laws",
    )
    parser.add_argument(
        "--mode", choices=(MODE_COPY, MODE_QUOTIENT), default=MODE_COPY, help="category mode"
    )
    parser.add_argument("--jobs", type=_positive, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uakit", description="Awareness and unawareness model toolkit."
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging"
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    validate = sub.add_parser("validate", help="validate a model file")
    validate.add_argument("model", help="fh, fh-category or hms JSON file")
    validate.set_defaults(handler=cmd_validate)

    evaluate = sub.add_parser("eval", help="evaluate a formula at a state or world")
    evaluate.add_argument("model")
    evaluate.add_argument("--state", required=True, help="state or world id")
    evaluate.add_argument("--formula", required=True, help='formula text, e.g. "K1 p"')
    evaluate.add_argument("--show-event", action="store_true", help="also print the extension")
    evaluate.set_defaults(handler=cmd_eval)

    transform = sub.add_parser("transform", help="transform between model classes")
    transform.add_argument("model")
    transform.add_argument("--to", required=True, choices=TARGETS, help="target class")
    transform.add_argument(
        "--mode", choices=(MODE_COPY, MODE_QUOTIENT), default=MODE_COPY, help="category mode"
    )
    transform.add_argument("--trace", metavar="PATH", help="write the trace JSON here")
    transform.add_argument("-o", "--output", metavar="PATH", help="write the result here")
    transform.set_defaults(handler=cmd_transform)

    verify = sub.add_parser("verify", help="run property suites on model files")
    verify.add_argument("models", nargs="+")
    _add_suite_options(verify)
    verify.set_defaults(handler=cmd_verify)

    rand = sub.add_parser("random", help="run property suites on generated models")
    rand.add_argument("--atoms", type=int, required=True)
    rand.add_argument("--worlds", type=int, required=True)
    rand.add_argument("--agents", type=int, required=True)
    rand.add_argument("--seed", type=int, default=0, help="first seed")
    rand.add_argument("--count", type=_positive, default=1, help="number of seeds")
    rand.add_argument(
        "--strategy",
        choices=(STRATEGY_VIA_TRANSFORM, STRATEGY_DIRECT),
        default=STRATEGY_VIA_TRANSFORM,
    )
    _add_suite_options(rand)
    rand.set_defaults(handler=cmd_random)

    proof = sub.add_parser("check-proof", help="check an axiomatic proof")
    proof.add_argument("proof", help="proof JSON file")
    proof.set_defaults(handler=cmd_check_proof)

    counter = sub.add_parser("countermodel", help="search small FH models for a countermodel")
    counter.add_argument("--formula", required=True)
    counter.add_argument("--max-worlds", type=int, default=SEARCH_MAX_WORLDS)
    counter.add_argument("--max-atoms", type=int, default=SEARCH_MAX_ATOMS)
    counter.add_argument("--agents", type=_positive, default=1)
    counter.set_defaults(handler=cmd_countermodel)
    return parser


def _configure_logging(verbosity: int) -> None:
    logging.basicConfig(
        level=_LOG_LEVELS[min(verbosity, len(_LOG_LEVELS) - 1)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_ERROR
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except FormulaSyntaxError as err:
        print(f"uakit: formula error: {err}", file=sys.stderr)
    except UakitError as err:
        print(f"uakit: {err}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
