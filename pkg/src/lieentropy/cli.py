"""Command-line front end.

Subcommands: validate, entropy, analyze, estimate, catalog.  Exit codes
distinguish what went wrong: 0 success, 1 input or validation failure,
2 pipeline abort (input outside the supported class or a violated internal
invariant).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as catalog_mod
from .errors import InputError, PipelineError, ValidationError
from .estimator import GridDynamics, _auto_resolution, spanning_entropy_estimate
from .formats import (
    build_group,
    estimate_to_csv,
    estimate_to_dict,
    parse_input,
    report_to_dict,
    validation_to_dict,
)
from .groups import analyze, topological_entropy, validate_endomorphism, validate_presentation
from .mahler import DEFAULT_TOL

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ABORT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems are input problems: report them on exit code 1
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="lieentropy",
                     description="topological entropy of Lie group endomorphisms")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p, need_input=True):
        p.add_argument("--input", metavar="PATH", help="input JSON document")
        p.add_argument("--catalog", metavar="NAME", help="built-in catalog entry name")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="entropy error tolerance (default 1e-9)")

    p = sub.add_parser("validate", help="validate a presentation and endomorphism")
    add_source(p)

    p = sub.add_parser("entropy", help="run the entropy pipeline, emit the report")
    add_source(p)

    p = sub.add_parser("analyze", help="entropy report plus Li-Yorke chain and "
                                       "induced toral order when applicable")
    add_source(p)

    p = sub.add_parser("estimate", help="spanning-set estimate of the central torus action")
    add_source(p)
    p.add_argument("--n-max", type=int, default=10, help="longest orbit segment (default 10)")
    p.add_argument("--epsilon", type=float, default=0.05, help="ball radius (default 0.05)")
    p.add_argument("--resolution", type=int, default=None,
                   help="grid points per axis (default: chosen from the exact entropy)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    p = sub.add_parser("catalog", help="list catalog entries or run them all")
    p.add_argument("--run-all", action="store_true", help="run every entry against its record")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def _load_document(args):
    if getattr(args, "input", None) and getattr(args, "catalog", None):
        raise InputError("pass either --input or --catalog, not both")
    if getattr(args, "input", None):
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}")
        return parse_input(text)
    if getattr(args, "catalog", None):
        try:
            entry = catalog_mod.get_entry(args.catalog)
        except KeyError as exc:
            raise InputError(str(exc.args[0]))
        return entry.input_document()
    raise InputError("one of --input or --catalog is required")


def _emit(payload, args=None):
    text = json.dumps(payload, indent=2) if not isinstance(payload, str) else payload
    output = getattr(args, "output", None) if args is not None else None
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_validate(args) -> int:
    document = _load_document(args)
    group, derivative = build_group(document)
    presentation = validate_presentation(group)
    endo_error = None
    if presentation.valid:
        try:
            validate_endomorphism(group, derivative)
        except (ValidationError, InputError) as exc:
            endo_error = str(exc)
    _emit(validation_to_dict(presentation, endo_error), args)
    return EXIT_OK if presentation.valid and endo_error is None else EXIT_INVALID


def _validated(document):
    group, derivative = build_group(document)
    presentation = validate_presentation(group)
    if not presentation.valid:
        raise ValidationError("invalid presentation: " + presentation.describe())
    return group, validate_endomorphism(group, derivative)


def _cmd_entropy(args) -> int:
    document = _load_document(args)
    group, endo = _validated(document)
    tol = document.options.get("tol", args.tol)
    report = topological_entropy(group, endo, tol)
    _emit(report_to_dict(report, document), args)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    document = _load_document(args)
    group, endo = _validated(document)
    tol = document.options.get("tol", args.tol)
    report = analyze(group, endo, tol)
    _emit(report_to_dict(report, document), args)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    document = _load_document(args)
    group, endo = _validated(document)
    report = topological_entropy(group, endo, args.tol)
    action = report.torus.action
    if action.dim == 0:
        raise ValidationError("the central torus is trivial; nothing to estimate")
    dynamics = GridDynamics.from_torus(action)
    resolution = args.resolution
    if resolution is None:
        resolution = _auto_resolution(dynamics, args.n_max, args.epsilon)
    estimate = spanning_entropy_estimate(dynamics, args.n_max, args.epsilon, resolution)
    if args.format == "csv":
        _emit(estimate_to_csv(estimate), args)
    else:
        payload = estimate_to_dict(estimate, matrix=action.matrix)
        payload["exact_entropy"] = report.entropy.value
        _emit(payload, args)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if not args.run_all:
        rows = [{"name": e.name, "note": e.note} for e in catalog_mod.builtin_catalog()]
        _emit(rows)
        return EXIT_OK
    results = catalog_mod.run_all(args.tol)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"{r.name:<{width}}  {status}"
        if not r.ok:
            line += "  (" + "; ".join(r.failures) + ")"
        print(line)
    ok = all(r.ok for r in results)
    print(f"{sum(r.ok for r in results)}/{len(results)} catalog entries passed")
    return EXIT_OK if ok else EXIT_INVALID


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "validate": _cmd_validate,
            "entropy": _cmd_entropy,
            "analyze": _cmd_analyze,
            "estimate": _cmd_estimate,
            "catalog": _cmd_catalog,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:  # input, validation, parameter, and domain errors
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PipelineError, ArithmeticError) as exc:
        print(f"pipeline abort: {exc}", file=sys.stderr)
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
