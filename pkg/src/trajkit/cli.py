"""Command-line interface: problem files in, canonical reports out.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 enumeration or
search caps exceeded, 5 synthesis infeasible, 1 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import Behaviour
from .errors import (
    EnumerationCapExceeded,
    NotSynthesizable,
    ParseError,
    SearchSpaceTooLarge,
    TrajkitError,
    ValidationError,
)
from .hankel import free_rows_check, hankel, in_span, parse_trajectory
from .hankel import rank as matrix_rank
from .interconnect import compose, local_projection, reconstruct_from_projections, reconstruct_hybrid
from .problemdoc import parse_controllers, parse_problem
from .synthesis import multiplicity_set, pad_controllers, synthesize
from .verify import (
    OracleCaps,
    check_requirements,
    exhaustive_necessity_oracle,
    implement,
    run_property_suite,
)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CAPS = 4
EXIT_INFEASIBLE = 5


def _emit_behaviour(label: str, behaviour: Behaviour):
    print(f"{label}:")
    for line in behaviour.canonical_text().rstrip("\n").splitlines():
        print(f"  {line}")


def _row_text(space, row):
    return space.format_row(row) if row is not None else None


def cmd_compose(args) -> int:
    doc = parse_problem(args.file)
    composed = compose(doc.require_plant())
    if args.format == "json":
        print(json.dumps({"composed": composed.to_json_dict()}, indent=2))
    else:
        _emit_behaviour("composed behaviour", composed)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    doc = parse_problem(args.file)
    system = doc.require_plant()
    composed = compose(system)
    projections = [local_projection(system, i) for i in range(len(system.subsystems))]
    if args.mode == "projections":
        rebuilt = reconstruct_from_projections(projections, system.network)
        mode_desc = "projections"
    elif args.mode.startswith("hybrid:"):
        try:
            n = int(args.mode.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad --mode value {args.mode!r}")
        if not 0 <= n <= len(system.subsystems):
            raise ValidationError(
                f"hybrid split {n} out of range 0..{len(system.subsystems)}"
            )
        rebuilt = reconstruct_hybrid(
            list(system.subsystems[:n]), projections[n:], system.network
        )
        mode_desc = f"hybrid with {n} full behaviours"
    else:
        raise ParseError(f"bad --mode value {args.mode!r}")
    equal = rebuilt == composed
    if args.format == "json":
        print(
            json.dumps(
                {
                    "mode": mode_desc,
                    "reconstructed": rebuilt.to_json_dict(),
                    "matches_composition": equal,
                },
                indent=2,
            )
        )
    else:
        _emit_behaviour(f"reconstructed behaviour ({mode_desc})", rebuilt)
        print(f"equality check against composition: {'PASS' if equal else 'FAIL'}")
    return EXIT_OK if equal else EXIT_UNEXPECTED


def cmd_synthesize(args) -> int:
    doc = parse_problem(args.file)
    problem = doc.require_synthesis()
    result = synthesize(problem)
    controllers = result.controllers
    if args.pad_controllers and controllers:
        controllers = pad_controllers(controllers, problem.controller_network)
    multiplicities = multiplicity_set(problem, result.desired, result.plant_behaviour)
    if args.format == "json":
        payload = {
            "exists": result.exists,
            "free_vars_free": result.report.free_vars_free,
            "free_coverage": result.report.free_coverage,
            "missing_free_row": result.report.missing_free_row,
            "uncovered_free_row": result.report.uncovered_free_row,
            "fast_path": result.fast_path,
            "partition_exact": result.partition_exact,
            "construction_tight": result.construction_tight,
            "plant_behaviour": result.plant_behaviour.to_json_dict(),
            "desired": result.desired.to_json_dict(),
            "outside": result.aux.outside.to_json_dict(),
            "excluded": result.aux.excluded.to_json_dict(),
            "retained": result.aux.retained.to_json_dict(),
            "revived": result.aux.revived.to_json_dict(),
            "multiplicities": multiplicities.to_json_dict(),
            "controlled": result.controlled.to_json_dict() if result.controlled else None,
            "controllers": [c.to_json_dict() for c in controllers],
            "unused_safe_controllers": result.unused_safe_controllers.to_json_dict(),
        }
        print(json.dumps(payload, indent=2))
    else:
        _emit_behaviour("plant behaviour", result.plant_behaviour)
        _emit_behaviour("desired behaviour", result.desired)
        _emit_behaviour("outside", result.aux.outside)
        _emit_behaviour("excluded", result.aux.excluded)
        _emit_behaviour("retained", result.aux.retained)
        _emit_behaviour("revived", result.aux.revived)
        _emit_behaviour("multiplicities", multiplicities)
        report = result.report
        print(f"existence: {'OK' if result.exists else 'FAILED'}")
        print(f"  free variables free: {report.free_vars_free}")
        if report.missing_free_row is not None:
            space = result.plant_behaviour.space.subspace(problem.free_vars)
            print(f"    unreachable free value: {_row_text(space, report.missing_free_row)}")
        print(f"  free coverage: {report.free_coverage}")
        if report.uncovered_free_row is not None:
            space = result.plant_behaviour.space.subspace(problem.free_vars)
            print(f"    uncovered free value: {_row_text(space, report.uncovered_free_row)}")
            print(
                "    carried by plant row: "
                f"{_row_text(result.plant_behaviour.space, report.uncovered_plant_row)}"
            )
        if result.exists:
            _emit_behaviour("controlled behaviour", result.controlled)
            for i, block in enumerate(controllers, start=1):
                _emit_behaviour(f"controller {i} ({','.join(block.space.names)})", block)
            print(f"fast path: {result.fast_path or 'none'}")
            print(f"partition exact: {result.partition_exact}")
        print(f"construction tight: {result.construction_tight}")
        if not result.construction_tight:
            _emit_behaviour(
                "safe controller trajectories the construction did not use",
                result.unused_safe_controllers,
            )
    return EXIT_OK if result.exists else EXIT_INFEASIBLE


def cmd_verify(args) -> int:
    doc = parse_problem(args.file)
    problem = doc.require_synthesis()
    controllers = parse_controllers(args.controllers, doc)
    plant = compose(problem.plant)
    achieved = implement(
        plant, controllers, problem.controller_network, problem.coupling_network
    )
    report = check_requirements(achieved, problem, controllers, plant)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "achieved": achieved.to_json_dict(),
                    "within_requirement": report.within_requirement,
                    "free_vars_free": report.free_vars_free,
                    "restriction_respected": report.restriction_respected,
                    "ok": report.ok,
                },
                indent=2,
            )
        )
    else:
        _emit_behaviour("achieved controlled behaviour", achieved)
        print(f"within requirement: {report.within_requirement}")
        if report.requirement_witness is not None:
            print(f"  violating row: {_row_text(achieved.space, report.requirement_witness)}")
        print(f"free variables free: {report.free_vars_free}")
        print(f"restriction respected: {report.restriction_respected}")
        print(f"verdict: {'PASS' if report.ok else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_UNEXPECTED


def cmd_oracle(args) -> int:
    doc = parse_problem(args.file)
    problem = doc.require_synthesis()
    caps = OracleCaps(
        block_rows=args.block_rows,
        combinations=args.combinations,
        allow_empty=args.allow_empty,
    )
    solution = exhaustive_necessity_oracle(problem, caps)
    if args.format == "json":
        payload = {
            "found": solution is not None,
            "controllers": [c.to_json_dict() for c in solution.controllers]
            if solution
            else None,
            "achieved": solution.achieved.to_json_dict() if solution else None,
        }
        print(json.dumps(payload, indent=2))
    else:
        if solution is None:
            print("exhaustive search: no controller family satisfies the objectives")
        else:
            print("exhaustive search: found a satisfying controller family")
            for i, block in enumerate(solution.controllers, start=1):
                _emit_behaviour(f"controller {i} ({','.join(block.space.names)})", block)
            _emit_behaviour("achieved controlled behaviour", solution.achieved)
    return EXIT_OK


def cmd_suite(args) -> int:
    report = run_property_suite(
        seed=args.seed,
        cases=args.cases,
        synthesis_cases=args.synthesis_cases,
        out_dir=args.out_dir,
    )
    if args.format == "json":
        print(
            json.dumps(
                {
                    "seed": report.seed,
                    "cases": report.cases,
                    "synthesis_cases": report.synthesis_cases,
                    "failures": report.failures,
                    "checks": [
                        {
                            "name": r.name,
                            "passed": r.passed,
                            "failed": r.failed,
                            "counterexample": r.counterexample,
                            "path": r.path,
                        }
                        for r in report.results
                    ],
                },
                indent=2,
            )
        )
    else:
        print(report.render(), end="")
    return EXIT_OK if report.failures == 0 else EXIT_UNEXPECTED


def _parse_rational_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok) for tok in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational list {text!r}: {exc}") from exc


def cmd_hankel(args) -> int:
    with open(args.trajectory) as fh:
        trajectory = parse_trajectory(fh.read())
    matrix = hankel(trajectory, args.L)
    rank_value = matrix_rank(matrix)
    payload: dict = {
        "block_sizes": list(trajectory.block_sizes),
        "length": trajectory.length,
        "depth": args.L,
        "shape": [matrix.rows, matrix.cols],
        "rank": rank_value,
    }
    if args.free is not None:
        blocks = [int(tok) for tok in args.free.replace(",", " ").split()]
        payload["free_blocks"] = blocks
        payload["free_rows_full_rank"] = free_rows_check(trajectory, blocks, args.L)
    if args.query is not None:
        vector = _parse_rational_list(args.query)
        payload["query"] = [str(x) for x in vector]
        payload["query_in_span"] = in_span(matrix, vector)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"window matrix ({matrix.rows}x{matrix.cols}), depth {args.L}:")
        for line in matrix.render().splitlines():
            print(f"  {line}")
        print(f"rank: {rank_value}")
        if "free_rows_full_rank" in payload:
            print(
                f"free blocks {payload['free_blocks']} full row rank: "
                f"{payload['free_rows_full_rank']}"
            )
        if "query_in_span" in payload:
            print(f"query in column span: {payload['query_in_span']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajkit",
        description="Exact trajectory-set toolkit: composition, reconstruction, "
        "controller synthesis, verification oracles and rational data tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compose", help="compose an interconnected plant")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("reconstruct", help="rebuild the composition from projections")
    p.add_argument("file")
    p.add_argument(
        "--mode",
        default="projections",
        help="'projections' or 'hybrid:N' (first N subsystems fully known)",
    )
    add_format(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("synthesize", help="run the controller synthesis pipeline")
    p.add_argument("file")
    p.add_argument(
        "--pad-controllers",
        action="store_true",
        help="pad controller blocks with provably inadmissible rows",
    )
    add_format(p)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="check a controller family against the objectives")
    p.add_argument("file")
    p.add_argument("--controllers", required=True)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search for a controller family")
    p.add_argument("file")
    p.add_argument("--block-rows", type=int, default=12)
    p.add_argument("--combinations", type=int, default=2**20)
    p.add_argument("--allow-empty", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("suite", help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--synthesis-cases", type=int, default=None)
    p.add_argument("--out-dir", default=None)
    add_format(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("hankel", help="rational window-matrix tests on trajectory data")
    p.add_argument("trajectory")
    p.add_argument("--L", type=int, required=True, help="window depth (block rows)")
    p.add_argument("--free", default=None, help="comma-separated free block indices")
    p.add_argument("--query", default=None, help="comma-separated rational vector")
    add_format(p)
    p.set_defaults(func=cmd_hankel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EnumerationCapExceeded, SearchSpaceTooLarge) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except NotSynthesizable as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValidationError, TrajkitError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
