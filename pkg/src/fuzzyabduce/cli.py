"""Command-line front end.

Exit codes: 0 on success, 1 on any validation error, 2 when an abduction
instance is unsolvable and the best-candidate bound was not requested.
"""
from __future__ import annotations

import argparse
import json
import sys

from .abduction import UNSOLVABLE, abduce_certainty, abduce_variation
from .core import UniverseMismatchError
from .inference import CERTAINTY, build_relation, gmp
from .operators import RESIDUUM_FOR_TNORM, S_IMPLICATIONS, property_suite, residuum_oracle
from .oracle import QuantizedSearch, enumerate_solutions, greatest_enumerated, snap_to_levels
from .workbench import (
    CAUSAL_DIAGNOSIS,
    FAULT_COMPONENT,
    ProblemError,
    _fuzzyset_dict,
    emit_plot_data,
    format_degrees,
    load_problem,
    render_report,
    report_as_dict,
    result_as_dict,
    run_causal_scenario,
    run_fault_scenario,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; keep 2 reserved for
    # the unsolvable-instance outcome
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser, needs_problem: bool = True) -> None:
    if needs_problem:
        sub.add_argument("--problem", required=True, help="path to a problem JSON file")
        sub.add_argument(
            "--grid-points", type=int, default=None,
            help="override the resolution of universes declared with lo/hi/points",
        )
    sub.add_argument("--out", default=None, help="write a machine-readable copy here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzyabduce", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("infer", parents=[], help="forward inference through one rule")
    _add_common(p)
    p.add_argument("--rule", default=None, help="rule name (defaults to task.rule)")
    p.add_argument("--input", default=None, help="input set name (defaults to task.input)")
    p.set_defaults(func=cmd_infer)

    p = subs.add_parser("abduce", help="hypothesis for an observed conclusion")
    _add_common(p)
    p.add_argument("--rule", default=None)
    p.add_argument("--observation", default=None, help="observed set (defaults to task.input)")
    p.add_argument(
        "--bound", action="store_true",
        help="report the best-candidate bound even when the instance is unsolvable "
             "(otherwise unsolvable instances exit with code 2)",
    )
    p.set_defaults(func=cmd_abduce)

    p = subs.add_parser("enumerate", help="brute-force all quantized exact solutions")
    _add_common(p)
    p.add_argument("--rule", default=None)
    p.add_argument("--observation", default=None)
    p.add_argument("--levels", type=int, default=None, help="quantization levels (default 11)")
    p.add_argument("--max-points", type=int, default=5)
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("check-ops", help="run the operator property suite")
    _add_common(p, needs_problem=False)
    p.add_argument("--levels", type=int, default=21, help="property grid levels (default 21)")
    p.set_defaults(func=cmd_check_ops)

    p = subs.add_parser("scenario", help="run the scenario configured in the problem file")
    _add_common(p)
    p.set_defaults(func=cmd_scenario)

    p = subs.add_parser("plot", help="emit overlay curves as CSV")
    _add_common(p)
    p.add_argument("--sets", required=True, help="comma-separated set names")
    p.set_defaults(func=cmd_plot)

    return parser


def _pick(value, task_value, what: str):
    if value is not None:
        return value
    if task_value is not None:
        return task_value
    raise ProblemError(f"no {what} given on the command line or in the task section")


def _write_json(path: str | None, payload: dict) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def cmd_infer(args) -> int:
    problem = load_problem(args.problem, args.grid_points)
    task = problem.task
    rule_name = _pick(args.rule, task.rule if task else None, "rule")
    input_name = _pick(args.input, task.input if task else None, "input set")
    if rule_name not in problem.rules:
        raise ProblemError(f"unknown rule {rule_name!r}")
    rule = problem.rules[rule_name]
    a_prime = problem.resolve_set(input_name)
    image = gmp(build_relation(rule), a_prime, rule.tnorm)
    print(f"rule: {rule_name}")
    print(f"input on {a_prime.universe.name}: {format_degrees(a_prime.mu)}")
    print(f"image on {image.universe.name}: {format_degrees(image.mu)}")
    _write_json(args.out, {"rule": rule_name, "input": input_name,
                           "image": _fuzzyset_dict(image)})
    return 0


def _run_abduction(rule, observed):
    if rule.semantics == CERTAINTY:
        return abduce_certainty(rule, observed, rule.tnorm)
    return abduce_variation(rule, observed)


def cmd_abduce(args) -> int:
    problem = load_problem(args.problem, args.grid_points)
    task = problem.task
    rule_name = _pick(args.rule, task.rule if task else None, "rule")
    obs_name = _pick(args.observation, task.input if task else None, "observation")
    if rule_name not in problem.rules:
        raise ProblemError(f"unknown rule {rule_name!r}")
    rule = problem.rules[rule_name]
    observed = problem.resolve_set(obs_name)
    result = _run_abduction(rule, observed)

    print(f"rule: {rule_name}  scheme: {result.scheme}")
    print(f"observation on {observed.universe.name}: {format_degrees(observed.mu)}")
    solv = result.solvability
    if solv.witness is None:
        print(f"solvability: {solv.verdict}")
    else:
        w = solv.witness
        print(
            f"solvability: {solv.verdict} "
            f"(at v={w.point:g} required {w.required:.6f}, available {w.available:.6f})"
        )
    unsolvable = solv.verdict == UNSOLVABLE
    if unsolvable and not args.bound:
        print("no exact hypothesis exists; rerun with --bound for the best candidate")
        return 2
    rt = result.roundtrip
    print(f"hypothesis on {result.hypothesis.universe.name}: "
          f"{format_degrees(result.hypothesis.mu)}")
    print(
        f"roundtrip: max residual {rt.max_abs_residual:.6f}, "
        f"covers={'yes' if rt.covers_observation else 'no'}, "
        f"within={'yes' if rt.within_observation else 'no'}"
    )
    _write_json(args.out, {"rule": rule_name, "observation": obs_name,
                           "result": result_as_dict(result)})
    return 0


def cmd_enumerate(args) -> int:
    problem = load_problem(args.problem, args.grid_points)
    task = problem.task
    rule_name = _pick(args.rule, task.rule if task else None, "rule")
    obs_name = _pick(args.observation, task.input if task else None, "observation")
    if rule_name not in problem.rules:
        raise ProblemError(f"unknown rule {rule_name!r}")
    rule = problem.rules[rule_name]
    observed = problem.resolve_set(obs_name)
    levels = args.levels or (task.levels if task and task.levels else 11)
    search = QuantizedSearch(levels=levels, max_points=args.max_points)

    relation = build_relation(rule)
    _, snap_distance = snap_to_levels(observed.mu, levels)
    if snap_distance > 1e-9:
        print(f"observation snapped to the {levels}-level grid "
              f"(largest shift {snap_distance:.6f})")
    solutions = enumerate_solutions(relation, observed, rule.tnorm, search)
    print(f"exact solutions at {levels} levels: {len(solutions)}")
    shown = solutions[:20]
    for s in shown:
        print(f"  {format_degrees(s.mu)}")
    if len(solutions) > len(shown):
        print(f"  ... and {len(solutions) - len(shown)} more")
    top = greatest_enumerated(solutions)
    if top is not None:
        print(f"greatest solution: {format_degrees(top.mu)}")
    _write_json(args.out, {
        "rule": rule_name,
        "observation": obs_name,
        "levels": levels,
        "snap_distance": snap_distance,
        "solutions": [[float(x) for x in s.mu] for s in solutions],
        "greatest": [float(x) for x in top.mu] if top is not None else None,
    })
    return 0


_ORACLE_LEVELS = 1001
_ORACLE_GRID = 101


def cmd_check_ops(args) -> int:
    levels = args.levels
    payload: dict = {"grid_levels": levels, "suites": [], "residuum": []}
    print(f"property suite (grid levels: {levels})")
    for t_name, impl_name in sorted(RESIDUUM_FOR_TNORM.items()):
        report = property_suite(t_name, impl_name, levels)
        print(f"{t_name}/{impl_name}:")
        _print_suite(report, payload)
    print("s-implications (contrapositive symmetry):")
    for impl_name in sorted(S_IMPLICATIONS):
        report = property_suite(None, impl_name, levels)
        symmetry = [c for c in report.checks if c.name == "contrapositive_symmetry"]
        _print_suite(
            PropertyOnly(report, tuple(symmetry)), payload, prefix=impl_name
        )
    print(f"residuum agreement (closed form vs {_ORACLE_LEVELS}-level scan, "
          f"{_ORACLE_GRID}x{_ORACLE_GRID} grid):")
    step = 1.0 / (_ORACLE_LEVELS - 1)
    from .operators import implication  # closed forms, validated scalars

    for t_name, impl_name in sorted(RESIDUUM_FOR_TNORM.items()):
        gap = 0.0
        for i in range(_ORACLE_GRID):
            a = i / (_ORACLE_GRID - 1)
            for j in range(_ORACLE_GRID):
                b = j / (_ORACLE_GRID - 1)
                gap = max(gap, abs(implication(impl_name, a, b)
                                   - residuum_oracle(t_name, a, b, _ORACLE_LEVELS)))
        ok = gap <= step + 1e-9
        print(f"  {'PASS' if ok else 'FAIL'} {t_name}/{impl_name} "
              f"max gap {gap:.6f} (tolerance {step:.6f})")
        payload["residuum"].append(
            {"tnorm": t_name, "implication": impl_name, "max_gap": gap, "passed": ok}
        )
    _write_json(args.out, payload)
    return 0


class PropertyOnly:
    """Narrow view of a PropertyReport for printing a subset of its checks."""

    def __init__(self, report, checks):
        self.tnorm = report.tnorm
        self.implication = report.implication
        self.grid_levels = report.grid_levels
        self.checks = checks


def _print_suite(report, payload: dict, prefix: str | None = None) -> None:
    for check in report.checks:
        label = f"{prefix} " if prefix else ""
        if check.passed:
            print(f"  PASS {label}{check.name} ({check.cases} cases)")
        else:
            w = check.worst
            at = ", ".join(f"{v:.6f}" for v in w.args)
            print(f"  FAIL {label}{check.name} ({check.cases} cases) worst at ({at}): "
                  f"lhs={w.lhs:.6f} rhs={w.rhs:.6f} violation={w.violation:.6f}")
        payload["suites"].append({
            "tnorm": report.tnorm,
            "implication": report.implication,
            "property": check.name,
            "passed": check.passed,
            "cases": check.cases,
        })


def cmd_scenario(args) -> int:
    problem = load_problem(args.problem, args.grid_points)
    if problem.task is None or problem.task.scenario is None:
        raise ProblemError("the problem file has no task.scenario section")
    config = problem.task.scenario
    if config.kind == FAULT_COMPONENT:
        report = run_fault_scenario(problem, config)
    elif config.kind == CAUSAL_DIAGNOSIS:
        report = run_causal_scenario(problem, config)
    else:
        raise ProblemError(f"unknown scenario kind {config.kind!r}")
    sys.stdout.write(render_report(report))
    _write_json(args.out, report_as_dict(report))
    return 0


def cmd_plot(args) -> int:
    problem = load_problem(args.problem, args.grid_points)
    if args.out is None:
        raise ProblemError("plot needs --out for the CSV path")
    names = [n.strip() for n in args.sets.split(",") if n.strip()]
    if not names:
        raise ProblemError("plot needs at least one set name in --sets")
    named = []
    for name in names:
        named.append((name, problem.resolve_set(name)))
    emit_plot_data(named, args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, UniverseMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
