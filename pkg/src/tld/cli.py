"""Command-line front end: solve, check, oracle, gen, reduce and bench."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .axioms import check_solution, is_confluent, is_time_conscious_path
from .errors import TLDError
from .gen import DELTA_MODES, GenParams, random_election, snapshot
from .graph import TLDGraph
from .io import (
    graph_to_doc,
    load_graph,
    profile_to_doc,
    read_json,
    restless_from_doc,
    solution_from_doc,
    solution_to_doc,
    steiner_to_doc,
    tmst_from_doc,
    write_json,
)
from .profile import compile_profile
from .reductions import from_restless_path, from_tmst, to_steiner
from .rules import (
    RuleResult,
    oracle_tc_confluent,
    oracle_tc_paths,
    solve_confluent,
    solve_exact_tc_confluent,
    solve_tc_retrospective,
    solve_tc_walks,
)

log = logging.getLogger("tld")

RULES = ("confluent", "tc-retro", "tc-walks", "exact", "oracle-tree", "oracle-paths")
EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2


def run_rule(g: TLDGraph, rule: str, delta: int | None = None) -> RuleResult:
    if rule == "confluent":
        return solve_confluent(g)
    if rule == "tc-retro":
        return solve_tc_retrospective(g, require_retrospective=False)
    if rule == "tc-walks":
        if delta is None:
            raise TLDError("rule tc-walks needs --delta")
        return solve_tc_walks(g, delta)
    if rule == "exact":
        return solve_exact_tc_confluent(g)
    if rule == "oracle-tree":
        return oracle_tc_confluent(g)
    if rule == "oracle-paths":
        return oracle_tc_paths(g, walks=delta is not None, max_wait=delta)
    raise TLDError(f"unknown rule {rule!r}")


def _emit(doc, out: str | None) -> None:
    text = write_json(doc, out)
    if out is None:
        print(text)


def _finish(res: RuleResult, out: str | None, **meta) -> int:
    _emit(solution_to_doc(res, **meta), out)
    if res.unresolved:
        log.warning("unresolved voters: %s", ", ".join(sorted(res.unresolved)))
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph(args.input)
    meta = {}
    if args.snapshot is not None:
        g = snapshot(g, args.snapshot)
        meta["snapshot"] = args.snapshot
    return _finish(run_rule(g, args.rule, args.delta), args.output, **meta)


def cmd_oracle(args) -> int:
    g = load_graph(args.input)
    if args.mode == "tree":
        res = oracle_tc_confluent(g)
    else:
        res = oracle_tc_paths(g, walks=args.mode == "walks", max_wait=args.delta)
    return _finish(res, args.output)


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    sol, unresolved = solution_from_doc(read_json(args.solution))
    report = check_solution(g, sol, unresolved)
    print(report)
    tc = all(is_time_conscious_path(g, j) for j in sol.journeys.values())
    confluent = is_confluent(g, sol, unresolved)
    verdict = [
        "valid" if report.ok else "invalid",
        "confluent" if confluent else "not confluent",
        "time-conscious" if tc else "not time-conscious",
    ]
    print(", ".join(verdict))
    return EXIT_OK if report.ok else EXIT_PARTIAL


def _params(args, seed: int) -> GenParams:
    return GenParams(
        n=args.n,
        L=args.L,
        p_cast=args.p_cast,
        p_abstain=args.p_abstain,
        density=args.density,
        delta_mode=args.delta_mode,
        delta=args.delta if args.delta is not None else 1,
        seed=seed,
    )


def cmd_gen(args) -> int:
    _emit(profile_to_doc(random_election(_params(args, args.seed))), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    doc = read_json(args.input)
    if args.source == "steiner":
        _emit(steiner_to_doc(to_steiner(load_graph(doc), general_horizons=True)), args.output)
    elif args.source == "tmst":
        inst, k_prime = tmst_from_doc(doc)
        g, k = from_tmst(inst, k_prime, paired=not args.unpaired)
        _emit({**graph_to_doc(g), "k": k, "reduced_from": "tmst"}, args.output)
    else:
        g, k = from_restless_path(restless_from_doc(doc))
        _emit({**graph_to_doc(g), "k": k, "reduced_from": "restless"}, args.output)
    return EXIT_OK


BENCH_FIELDS = ("instance", "n", "L", "D", "rule", "objective", "wall_time", "resolved", "snapshot_resolved")


def _bench_one(args, i: int) -> dict:
    g = compile_profile(random_election(_params(args, args.seed + i)))
    start = time.perf_counter()
    res = run_rule(g, args.rule, args.delta)
    wall = time.perf_counter() - start
    snap = run_rule(snapshot(g, g.lifespan), args.rule, args.delta)
    return {
        "instance": i,
        "n": args.n,
        "L": args.L,
        "D": len(g.partition.delegating),
        "rule": args.rule,
        "objective": res.objective,
        "wall_time": f"{wall:.6f}",
        "resolved": len(res.resolved),
        "snapshot_resolved": len(snap.resolved),
    }


def cmd_bench(args) -> int:
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        rows = list(pool.map(lambda i: _bench_one(args, i), range(args.count)))
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def _gen_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, default=6, help="number of voters")
    p.add_argument("-L", type=int, default=5, help="number of rounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-cast", type=float, default=0.15)
    p.add_argument("--p-abstain", type=float, default=0.1)
    p.add_argument("--density", type=float, default=0.35)
    p.add_argument("--delta-mode", choices=DELTA_MODES, default="retrospective")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tld", description="Temporal delegation resolution.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a delegation rule")
    p.add_argument("input")
    p.add_argument("--rule", choices=RULES, default="exact")
    p.add_argument("--delta", type=int, help="common horizon for tc-walks")
    p.add_argument("--snapshot", type=int, metavar="T", help="solve the single-instant view at T")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="validate a solution against a graph")
    p.add_argument("graph")
    p.add_argument("solution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="run a brute-force solver")
    p.add_argument("input")
    p.add_argument("--mode", choices=("tree", "paths", "walks"), default="tree")
    p.add_argument("--delta", type=int, help="override horizons with min(delta, t-1)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a random election")
    _gen_options(p)
    p.add_argument("--delta", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="emit a reduction instance")
    p.add_argument("input")
    p.add_argument("--from", dest="source", choices=("steiner", "tmst", "restless"), required=True)
    p.add_argument("--unpaired", action="store_true", help="accept t-MST arcs that are not paired copies")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="run a rule over a random family and write CSV")
    _gen_options(p)
    p.add_argument("--rule", choices=RULES, default="exact")
    p.add_argument("--delta", type=int)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (TLDError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
