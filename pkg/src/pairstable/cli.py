"""Command-line interface.

Exit codes: 0 success, 1 no stable matching (or a failed check), 2 input or
class-gate error, 3 search limit exceeded.  JSON goes to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ClassGateViolation, PairstableError
from .gadgets import assignment_to_matching, build_gadget, extract_assignment
from .instance import (
    GeneratorParams,
    Instance,
    classify_sides,
    generate_instance,
    matching_to_dict,
    parse_instance,
    parse_matching,
    serialize_instance,
)
from .oracle import OracleLimits, Verdict, enumerate_stable
from .prefs import OrderClass
from .sat import parse_dimacs, sat_brute, validate_22e3
from .stability import StabilityNotion, find_blocking, is_stable
from .strong import solve_strong
from .superstable import solve_super
from .weak import solve_weak

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def route(notion: StabilityNotion, men: OrderClass, women: OrderClass) -> bool:
    """Which way round the polynomial solver applies.

    Returns ``False`` to run it as given and ``True`` to run it on the
    transposed instance.

    Raises:
        ClassGateViolation: when the class pair is an NP-complete cell.
    """
    if notion is StabilityNotion.WEAK:
        if men <= OrderClass.ACYCLIC and women <= OrderClass.ACYCLIC:
            return False
    elif notion is StabilityNotion.STRONG:
        if men <= OrderClass.TIES and women <= OrderClass.ASYMMETRIC:
            return False
        if women <= OrderClass.TIES and men <= OrderClass.ASYMMETRIC:
            return True
    else:
        if men <= OrderClass.POSET and women <= OrderClass.ASYMMETRIC:
            return False
        if women <= OrderClass.POSET and men <= OrderClass.ASYMMETRIC:
            return True
    raise ClassGateViolation(
        f"{notion.value} stability with ({men.label}, {women.label}) preferences is an "
        "NP-complete cell; run `oracle` for small instances"
    )


def solve(instance: Instance, notion: StabilityNotion):
    """Dispatch to the solver for ``notion``; returns ``(matching, trace)``."""
    men, women = classify_sides(instance)
    flip = route(notion, men, women)
    if notion is StabilityNotion.WEAK:
        return solve_weak(instance), None
    target = instance.transposed() if flip else instance
    solver = solve_strong if notion is StabilityNotion.STRONG else solve_super
    matching, trace = solver(target)
    if flip and matching is not None:
        matching = matching.transposed()
    return matching, trace


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")


def _limits(args) -> OracleLimits:
    return OracleLimits(max_edges=args.max_edges, max_nodes_expanded=args.max_nodes, time_budget=args.time_budget)


def cmd_classify(args) -> int:
    instance = parse_instance(_read(args.instance))
    men, women = classify_sides(instance)
    _emit({
        "men": men.label,
        "women": women.label,
        "agents": {a: instance.classes[a].label for a in instance.men + instance.women},
    })
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    notion = StabilityNotion.parse(args.notion)
    matching, trace = solve(instance, notion)
    if args.trace and trace is not None:
        with open(args.trace, "w", encoding="utf-8") as fh:
            trace.write_jsonl(fh)
    if matching is None:
        sys.stdout.write("NONE\n")
        return EXIT_NONE
    _emit(matching_to_dict(matching, instance))
    return EXIT_OK


def cmd_check(args) -> int:
    instance = parse_instance(_read(args.instance))
    matching = parse_matching(_read(args.matching), instance)
    witness = find_blocking(StabilityNotion.parse(args.notion), instance, matching)
    if witness is None:
        sys.stdout.write("STABLE\n")
        return EXIT_OK
    _emit(witness.to_dict())
    return EXIT_NONE


def cmd_oracle(args) -> int:
    instance = parse_instance(_read(args.instance))
    answer = enumerate_stable(instance, StabilityNotion.parse(args.notion), _limits(args),
                              first_only=args.first, jobs=args.jobs)
    _emit({
        "verdict": answer.verdict.value,
        "nodes_expanded": answer.nodes_expanded,
        "matchings": [matching_to_dict(m, instance)["pairs"] for m in answer.matchings],
    })
    return {Verdict.EXISTS: EXIT_OK, Verdict.NOT_EXISTS: EXIT_NONE}.get(answer.verdict, EXIT_LIMIT)


def cmd_generate(args) -> int:
    params = GeneratorParams(
        args.men, args.women, args.density,
        OrderClass.parse(args.men_class), OrderClass.parse(args.women_class), args.seed,
    )
    sys.stdout.write(serialize_instance(generate_instance(params)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    gadget = build_gadget(formula, StabilityNotion.parse(args.notion))
    if args.provenance:
        Path(args.provenance).write_text(gadget.provenance_json(), encoding="utf-8")
    sys.stdout.write(serialize_instance(gadget.instance))
    return EXIT_OK


def verify_reduction(formula, notion: StabilityNotion, limits: OracleLimits, jobs: int = 1) -> dict:
    """Compare brute-force SAT with the oracle on the formula's gadget."""
    gadget = build_gadget(formula, notion)
    assignment = sat_brute(formula)
    report = {"sat": assignment is not None}
    if assignment is not None:
        m = assignment_to_matching(formula, assignment, notion)
        report["forward_sound"] = is_stable(notion, gadget.instance, m)
    answer = enumerate_stable(gadget.instance, notion, limits, first_only=True, jobs=jobs)
    if answer.verdict is Verdict.LIMIT_EXCEEDED:
        report["stable_exists"] = "limit"
        report["agree"] = "unknown"
    else:
        exists = answer.verdict is Verdict.EXISTS
        report["stable_exists"] = exists
        report["agree"] = exists == report["sat"]
        if exists:
            report["extracted_satisfies"] = formula.evaluate(extract_assignment(gadget, answer.matchings[0]))
    report["nodes_expanded"] = answer.nodes_expanded
    return report


def cmd_verify_reduction(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    problems = validate_22e3(formula)
    if problems:
        raise ClassGateViolation("not a (2,2)-E3-SAT formula: " + "; ".join(problems))
    report = verify_reduction(formula, StabilityNotion.parse(args.notion), _limits(args), args.jobs)
    _emit(report)
    if report["agree"] == "unknown":
        return EXIT_LIMIT
    return EXIT_OK if report["agree"] and report.get("forward_sound", True) else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pairstable", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def notion_flag(p, choices=("weak", "strong", "super")):
        p.add_argument("--notion", choices=choices, required=True)

    def limit_flags(p):
        p.add_argument("--max-edges", type=int, default=200)
        p.add_argument("--max-nodes", type=int, default=50_000_000)
        p.add_argument("--time-budget", type=float, default=None, help="seconds")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("classify", help="orderedness class per agent and per side")
    p.add_argument("instance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="run the polynomial solver for a notion")
    notion_flag(p)
    p.add_argument("instance")
    p.add_argument("--trace", help="write solver events as JSON lines")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="test a matching for stability")
    notion_flag(p)
    p.add_argument("instance")
    p.add_argument("--matching", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="enumerate stable matchings exhaustively")
    notion_flag(p)
    p.add_argument("instance")
    p.add_argument("--first", action="store_true", help="stop at the first stable matching")
    limit_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="random instance")
    p.add_argument("--men", type=int, required=True)
    p.add_argument("--women", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--men-class", default="strict")
    p.add_argument("--women-class", default="strict")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="build the hardness gadget of a DIMACS formula")
    notion_flag(p, ("weak", "super"))
    p.add_argument("cnf")
    p.add_argument("--provenance", help="write the vertex/edge provenance sidecar here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-reduction", help="SAT verdict vs oracle verdict on the gadget")
    notion_flag(p, ("weak", "super"))
    p.add_argument("cnf")
    limit_flags(p)
    p.set_defaults(func=cmd_verify_reduction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PairstableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
