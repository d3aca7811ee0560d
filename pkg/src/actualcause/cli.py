"""Command line interface.

Reports go to stdout as JSON; diagnostics and progress go to stderr.
Exit codes: 0 success, 1 a check failed or a sweep found a
counterexample, 2 unusable input, 3 resource guard tripped (override
with --force or ACTUAL_CAUSE_MAX_VARS).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .backends import backend_name
from .corpus import NAMES, load_entry, run_golden
from .dsl import parse_formula, parse_model
from .errors import CausalError, ResourceLimitError
from .harness import property_suite
from .meta import (
    check_empirical,
    check_presumption,
    check_similarity,
    find_empirical_fixed_points,
)
from .random_models import RandomModelParams
from .reports import (
    causes_payload,
    check_payload,
    classify_payload,
    eval_payload,
    fixedpoints_payload,
    report,
    solve_payload,
    sweep_payload,
)
from .theories import get_theory, table_theory


class _Failure(Exception):
    """Unusable input; the message is already on stderr."""


def _emit(envelope) -> None:
    print(json.dumps(envelope, indent=2))


def _complain(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _print_diagnostics(diagnostics, source) -> None:
    for diagnostic in diagnostics:
        print(diagnostic.render(source), file=sys.stderr)


def _load_model(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        _complain(f"cannot read {path}: {exc.strerror or exc}")
        raise _Failure from None
    result = parse_model(data)
    _print_diagnostics(result.diagnostics, result.source)
    if not result.ok:
        raise _Failure
    return result.model


def _parse_query(args, model, allow_intervention: bool = False):
    result = parse_formula(args.query, model.signature)
    _print_diagnostics(result.diagnostics, result.source)
    if not result.ok:
        raise _Failure
    formula = result.formula
    if formula.intervention and not allow_intervention:
        _complain("this command takes an intervention-free query")
        raise _Failure
    return formula


def _resolve_theory(args, model):
    if getattr(args, "table", None):
        try:
            spec = json.loads(Path(args.table).read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            _complain(f"cannot load table {args.table}: {exc}")
            raise _Failure from None
        try:
            entries = {
                (item["model"], item["formula"]): frozenset(item["causes"])
                for item in spec["entries"]
            }
            name = spec.get("name", Path(args.table).stem)
        except (KeyError, TypeError) as exc:
            _complain(f"malformed table {args.table}: missing {exc}")
            raise _Failure from None
        return table_theory(name, entries, {model.name: model})
    return get_theory(args.theory)


def _cmd_solve(args) -> int:
    model = _load_model(args.model)
    _emit(report(model.name, "solve", solve_payload(model)))
    return 0


def _cmd_eval(args) -> int:
    model = _load_model(args.model)
    formula = _parse_query(args, model, allow_intervention=True)
    _emit(report(model.name, "eval", eval_payload(model, formula)))
    return 0


def _cmd_causes(args) -> int:
    model = _load_model(args.model)
    formula = _parse_query(args, model)
    theory = _resolve_theory(args, model)
    payload = causes_payload(model, formula.matrix, theory, force=args.force)
    _emit(report(model.name, "causes", payload, theory.warnings))
    return 0


def _cmd_classify(args) -> int:
    model = _load_model(args.model)
    formula = _parse_query(args, model)
    theory = _resolve_theory(args, model)
    payload = classify_payload(model, formula.matrix, theory, force=args.force)
    _emit(report(model.name, "classify", payload, theory.warnings))
    return 0


def _cmd_check(args) -> int:
    model = _load_model(args.model)
    formula = _parse_query(args, model)
    if args.principle == "empirical":
        if not args.cause_set:
            _complain("--principle empirical needs --cause-set")
            raise _Failure
        causes = [name for name in args.cause_set.split(",") if name]
        result = check_empirical(
            model, formula.matrix, causes, force=args.force
        )
        payload = check_payload(formula.matrix, result, causes=causes)
        warnings = []
    else:
        if args.cause_set:
            _complain("--cause-set only applies to --principle empirical")
            raise _Failure
        theory = _resolve_theory(args, model)
        checker = (
            check_presumption
            if args.principle == "presumption"
            else check_similarity
        )
        result = checker(model, formula.matrix, theory, force=args.force)
        payload = check_payload(formula.matrix, result, theory=theory)
        warnings = theory.warnings
    _emit(report(model.name, "check", payload, warnings))
    return 0 if result.satisfied else 1


def _cmd_fixedpoints(args) -> int:
    model = _load_model(args.model)
    formula = _parse_query(args, model)
    found = find_empirical_fixed_points(
        model, formula.matrix, force=args.force
    )
    _emit(report(model.name, "fixedpoints", fixedpoints_payload(model, found)))
    return 0


def _cmd_random(args) -> int:
    params = RandomModelParams(
        n_endogenous=args.vars,
        max_range=args.max_range,
        max_parents=args.max_parents,
        exo_count=args.exo,
    )
    sweep = property_suite(
        args.count, params, args.seed, oracle=not args.no_oracle
    )
    print(sweep.describe(), file=sys.stderr)
    _emit(report(None, "random", sweep_payload(sweep)))
    return 0 if sweep.ok else 1


def _cmd_golden(args) -> int:
    names = args.names or list(NAMES)
    entries = []
    clean = True
    for name in names:
        entry = load_entry(name)
        differences = run_golden(entry)
        entries.append(
            {
                "name": name,
                "ok": not differences,
                "differences": differences,
            }
        )
        clean = clean and not differences
    _emit(report(None, "golden", {"entries": entries}))
    return 0 if clean else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actualcause",
        description="Exact causal analysis of finite structural models.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__} ({backend_name()} backend)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text):
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    def with_model(sub):
        sub.add_argument("model", help="path to a .scm model file")

    def with_query(sub):
        sub.add_argument("--query", required=True, help="formula text")

    def with_theory(sub):
        group = sub.add_mutually_exclusive_group()
        group.add_argument(
            "--theory",
            default="hp",
            help="registered theory name (default: hp)",
        )
        group.add_argument(
            "--table", help="path to a JSON cause-table theory"
        )

    def with_force(sub):
        sub.add_argument(
            "--force",
            action="store_true",
            help="ignore the enumeration size guard",
        )

    sub = command("solve", _cmd_solve, "print the unique solution")
    with_model(sub)

    sub = command("eval", _cmd_eval, "evaluate a formula, with optional intervention prefix")
    with_model(sub)
    with_query(sub)

    sub = command("causes", _cmd_causes, "list causes under a theory")
    with_model(sub)
    with_query(sub)
    with_theory(sub)
    with_force(sub)

    sub = command("classify", _cmd_classify, "classify every variable's causal status")
    with_model(sub)
    with_query(sub)
    with_theory(sub)
    with_force(sub)

    sub = command("check", _cmd_check, "check a meta-causal principle")
    with_model(sub)
    with_query(sub)
    sub.add_argument(
        "--principle",
        required=True,
        choices=("presumption", "similarity", "empirical"),
    )
    with_theory(sub)
    sub.add_argument(
        "--cause-set",
        help="comma-separated candidate causes (empirical only)",
    )
    with_force(sub)

    sub = command("fixedpoints", _cmd_fixedpoints, "enumerate empirical fixed points")
    with_model(sub)
    with_query(sub)
    with_force(sub)

    sub = command("random", _cmd_random, "run the random-model property sweep")
    sub.add_argument("--count", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--vars", type=int, default=4)
    sub.add_argument("--max-range", type=int, default=3)
    sub.add_argument("--max-parents", type=int, default=2)
    sub.add_argument("--exo", type=int, default=2)
    sub.add_argument(
        "--no-oracle",
        action="store_true",
        help="skip the brute-force comparison",
    )

    sub = command("golden", _cmd_golden, "re-derive the bundled corpus and compare")
    sub.add_argument("names", nargs="*", help="corpus entries (default: all)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _Failure:
        return 2
    except ResourceLimitError as exc:
        _complain(str(exc))
        return 3
    except CausalError as exc:
        _complain(str(exc))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
