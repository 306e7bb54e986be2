"""Command-line interface: solve, check, oracle, gen, color-tree.

Exit codes: 0 success (all reported checks true), 1 failed check or no
allocation found, 2 inapplicable algorithm or invalid parameters, 3 parse
error, 4 no applicable algorithm for n >= 3, 5 enumeration budget exceeded,
6 reduction precondition failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .core import GOODS, Allocation, Instance, Negated, complete_to_maximal_is, evaluate, is_ef1, is_maximal, validate_allocation
from .chain import chain_ef1, cut_and_choose
from .swap import swap_ef1
from .graph_classes import IntervalSet, bipartite_ef1, interval_ef1, is_bipartite, round_robin_small
from .oracle import BudgetExceededError, EnumerationBudget, compute_gamma, count_maximal_allocations, exists_maximal_ef1
from .hardness import ISInstance, build_reduction, gen_counterexample
from .treecolor import RootedTree, equitable_tree_coloring
from . import serialization as ser

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_INAPPLICABLE = 2
EXIT_PARSE = 3
EXIT_NO_ALGORITHM = 4
EXIT_BUDGET = 5
EXIT_REDUCTION_PRECONDITION = 6


class NoAllocationFound(Exception):
    pass


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _fail(code: int, message: str) -> int:
    print(f"error:{message}", file=sys.stderr)
    return code


def _goods_twin(instance: Instance) -> Instance:
    """Negate chores models into an equivalent goods-mode instance."""
    if instance.mode == GOODS:
        return instance
    if instance.identical:
        return Instance(instance.graph, instance.n, Negated(instance.identical_model), GOODS)
    return Instance(instance.graph, instance.n, [Negated(v) for v in instance.models], GOODS)


def _chain_solve(instance: Instance) -> Allocation:
    """Single chain seeded by a maximal set containing the most valuable
    good; may fail, unlike the escalating solver."""
    model = instance.identical_model
    g_star = max(range(instance.m), key=lambda g: (evaluate(model, (g,)), -g))
    source = sorted(complete_to_maximal_is(instance.graph, (g_star,)))
    outcome = chain_ef1(instance, source)
    if not outcome.found:
        raise NoAllocationFound("chain produced no EF1 step; try the swap algorithm")
    return outcome.allocation


def _pick_algorithm(instance: Instance, intervals: Optional[IntervalSet]) -> Optional[str]:
    if instance.m <= instance.n + 1:
        return "roundrobin"
    if instance.n == 2:
        if intervals is not None:
            return "interval"
        if is_bipartite(instance.graph):
            return "bipartite"
        return "swap"
    return None


def _solve_with(algorithm: str, instance: Instance, intervals: Optional[IntervalSet]) -> Allocation:
    """Dispatch on an applicable algorithm; identical chores instances are
    negated into goods form, distinct two-agent valuations go through
    cut-and-choose on the original instance."""
    if algorithm == "roundrobin":
        return round_robin_small(_goods_twin(instance))
    inner = {
        "chain": _chain_solve,
        "swap": lambda inst: swap_ef1(inst)[0],
        "bipartite": bipartite_ef1,
        "interval": lambda inst: interval_ef1(inst, intervals),
    }[algorithm]
    if instance.identical:
        return inner(_goods_twin(instance))
    return cut_and_choose(instance, solve=inner)


def cmd_solve(args) -> int:
    try:
        instance, intervals = ser.instance_from_json(ser.load_json(args.instance))
    except ser.ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))

    algorithm = args.algorithm
    if algorithm == "auto":
        algorithm = _pick_algorithm(instance, intervals)
        if algorithm is None:
            return _fail(EXIT_NO_ALGORITHM, f"no algorithm applies to {instance.n} agents on {instance.m} goods")
    if algorithm in ("chain", "swap", "bipartite", "interval") and instance.n != 2:
        return _fail(EXIT_INAPPLICABLE, f"algorithm {algorithm} needs exactly 2 agents")
    if algorithm == "bipartite" and not is_bipartite(instance.graph):
        return _fail(EXIT_INAPPLICABLE, "graph is not bipartite")
    if algorithm == "interval" and intervals is None:
        return _fail(EXIT_INAPPLICABLE, "instance file has no intervals")
    if algorithm == "roundrobin" and instance.m > instance.n + 1:
        return _fail(EXIT_INAPPLICABLE, f"round robin needs m <= n+1, got m={instance.m}")

    print(f"algorithm:{algorithm}")
    try:
        allocation = _solve_with(algorithm, instance, intervals)
    except NoAllocationFound:
        print("found:false")
        return EXIT_FAILED_CHECK

    report = validate_allocation(instance, allocation)
    certificate = {
        "maximal": is_maximal(instance, allocation),
        "ef1": is_ef1(instance, allocation),
    }
    print("found:true")
    print(f"bundles:{[sorted(b) for b in allocation.bundles]}")
    print(f"maximal:{_bool(certificate['maximal'])}")
    print(f"ef1:{_bool(certificate['ef1'])}")
    if args.out:
        ser.dump_json(args.out, ser.allocation_to_json(allocation, certificate))
        print(f"out:{args.out}")
    ok = report.wellformed and certificate["maximal"] and certificate["ef1"]
    return EXIT_OK if ok else EXIT_FAILED_CHECK


def cmd_check(args) -> int:
    try:
        instance, _ = ser.instance_from_json(ser.load_json(args.instance))
        allocation, _ = ser.allocation_from_json(ser.load_json(args.allocation))
        report = validate_allocation(instance, allocation)
    except (ser.ParseError, ValueError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    maximal = is_maximal(instance, allocation)
    ef1 = is_ef1(instance, allocation)
    print(f"wellformed:{_bool(report.wellformed)}")
    print(f"maximal:{_bool(maximal)}")
    print(f"ef1:{_bool(ef1)}")
    return EXIT_OK if report.wellformed and maximal and ef1 else EXIT_FAILED_CHECK


def cmd_oracle(args) -> int:
    try:
        instance, _ = ser.instance_from_json(ser.load_json(args.instance))
    except ser.ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    budget = EnumerationBudget(
        max_assignments=args.max_assignments,
        wall_clock_seconds=args.wall_clock,
    )
    if args.gamma and not instance.identical:
        return _fail(EXIT_INAPPLICABLE, "gamma needs identical valuations")
    try:
        result = exists_maximal_ef1(instance, budget)
        print(f"exists:{_bool(result.exists)}")
        if args.witness:
            if result.exists:
                certificate = {
                    "maximal": is_maximal(instance, result.witness),
                    "ef1": is_ef1(instance, result.witness),
                }
                ser.dump_json(args.witness, ser.allocation_to_json(result.witness, certificate))
                print(f"witness:{args.witness}")
            else:
                print("witness:none")
        if args.count:
            print(f"count:{count_maximal_allocations(instance, budget)}")
        if args.gamma:
            print(f"gamma:{ser.rational_to_str(compute_gamma(instance, budget))}")
    except BudgetExceededError as exc:
        return _fail(EXIT_BUDGET, str(exc))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "counterexample":
        if args.n is None or args.n < 3:
            return _fail(EXIT_INAPPLICABLE, "counterexample needs --n >= 3")
        instance = gen_counterexample(args.n)
        ser.dump_json(args.out, ser.instance_to_json(instance))
        print(f"goods:{instance.m}")
        print(f"edges:{len(instance.graph.edges)}")
        print(f"out:{args.out}")
        return EXIT_OK

    if args.base is None or args.graph is None or args.t is None:
        return _fail(EXIT_INAPPLICABLE, "reduction needs --base, --graph and --t")
    try:
        base, _ = ser.instance_from_json(ser.load_json(args.base))
        h = ser.graph_from_json(ser.load_json(args.graph))
    except ser.ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    if not 1 <= args.t <= h.m:
        return _fail(EXIT_INAPPLICABLE, f"need 1 <= t <= |V_H| = {h.m}")
    try:
        instance, spec = build_reduction(base, ISInstance(h, args.t))
    except BudgetExceededError as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except ValueError as exc:
        return _fail(EXIT_REDUCTION_PRECONDITION, str(exc))
    ser.dump_json(args.out, ser.instance_to_json(instance))
    spec_path = args.spec or args.out + ".spec.json"
    ser.dump_json(
        spec_path,
        {
            "gamma": ser.rational_to_str(spec.gamma),
            "lambda": ser.rational_to_str(spec.lam),
            "t": spec.is_instance.t,
            "goods": instance.m,
            "goodMap": {
                "base": [spec.good_map.base.start, spec.good_map.base.stop],
                "x": [[r.start, r.stop] for r in spec.good_map.x],
                "y": [[r.start, r.stop] for r in spec.good_map.y],
            },
        },
    )
    print(f"goods:{instance.m}")
    print(f"edges:{len(instance.graph.edges)}")
    print(f"gamma:{ser.rational_to_str(spec.gamma)}")
    print(f"lambda:{ser.rational_to_str(spec.lam)}")
    print(f"out:{args.out}")
    print(f"spec:{spec_path}")
    return EXIT_OK


def cmd_color_tree(args) -> int:
    try:
        graph = ser.graph_from_json(ser.load_json(args.tree))
    except ser.ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        tree = RootedTree.from_edges(graph.m, sorted(graph.edges), root=0)
    except ValueError as exc:
        return _fail(EXIT_INAPPLICABLE, f"input graph is not a tree: {exc}")
    if args.n < 1:
        return _fail(EXIT_INAPPLICABLE, "need --n >= 1")
    coloring = equitable_tree_coloring(tree, args.n)
    colors = [c if c is not None else 0 for c in coloring.colors]
    print(f"colors:{colors}")
    print(f"classSizes:{list(coloring.class_sizes)}")
    if args.out:
        ser.dump_json(args.out, {"colors": colors, "classSizes": list(coloring.class_sizes)})
        print(f"out:{args.out}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(ser.to_dot(graph, coloring.classes(), name="tree"))
        print(f"dot:{args.dot}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflictfair",
        description="Maximal EF1 allocation under graph conflict constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="compute a maximal EF1 allocation")
    solve.add_argument("instance", help="instance JSON file")
    solve.add_argument(
        "--algorithm",
        choices=["auto", "chain", "swap", "bipartite", "interval", "roundrobin"],
        default="auto",
    )
    solve.add_argument("--out", help="write the allocation JSON here")
    solve.set_defaults(func=cmd_solve)

    check = sub.add_parser("check", help="validate an allocation against an instance")
    check.add_argument("instance")
    check.add_argument("allocation")
    check.set_defaults(func=cmd_check)

    oracle = sub.add_parser("oracle", help="brute-force existence of a maximal EF1 allocation")
    oracle.add_argument("instance")
    oracle.add_argument("--witness", help="write a witness allocation here if one exists")
    oracle.add_argument("--count", action="store_true", help="also count maximal allocations")
    oracle.add_argument("--gamma", action="store_true", help="also report the reduction parameter gamma")
    oracle.add_argument("--max-assignments", type=int, default=EnumerationBudget().max_assignments)
    oracle.add_argument("--wall-clock", type=float, default=None)
    oracle.set_defaults(func=cmd_oracle)

    gen = sub.add_parser("gen", help="generate counterexample or reduction instances")
    gen.add_argument("kind", choices=["counterexample", "reduction"])
    gen.add_argument("out", help="output instance JSON file")
    gen.add_argument("--n", type=int, help="agent count for the counterexample")
    gen.add_argument("--base", help="base instance file for the reduction")
    gen.add_argument("--graph", help="independent-set graph file for the reduction")
    gen.add_argument("--t", type=int, help="independent-set target size")
    gen.add_argument("--spec", help="reduction sidecar path (default: OUT.spec.json)")
    gen.set_defaults(func=cmd_gen)

    color = sub.add_parser("color-tree", help="maximal equitable n-coloring of a tree")
    color.add_argument("tree", help="graph JSON file that must be a tree")
    color.add_argument("--n", type=int, required=True)
    color.add_argument("--out", help="write the coloring JSON here")
    color.add_argument("--dot", help="write a Graphviz rendering here")
    color.set_defaults(func=cmd_color_tree)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
