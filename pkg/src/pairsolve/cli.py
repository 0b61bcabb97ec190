"""Command-line front end.

Exit codes: 0 solved / valid / feasible, 1 invalid / infeasible,
2 precondition or usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .core import Instance, Resolution, extract_resolution, new_session
from .errors import InternalError, PreconditionError
from .formats import format_instance, format_solution, parse_instance, parse_solution, to_dot
from .generators import FAMILIES, GenSpec
from .oracle import EXHAUSTED, FEASIBLE, SearchBudget, brute_force_resolve
from .regular import degree_bound, solve_regular
from .sparse import edge_budget, solve_sparse
from .verifier import verify

log = logging.getLogger("pairsolve")

ORACLE_AUTO_LIMIT = 8


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def fits_regular(inst: Instance) -> bool:
    return inst.m == 0 or inst.max_degree() <= degree_bound(inst.n)


def fits_sparse(inst: Instance) -> bool:
    return inst.m <= max(edge_budget(inst.n), 0) and inst.max_degree() <= inst.n - 1


def solve_instance(inst: Instance, mode: str = "auto", time_limit: float | None = None) -> Resolution | None:
    """Resolve ``inst``; returns ``None`` when the oracle proves it infeasible."""
    if mode == "auto":
        if fits_regular(inst):
            mode = "regular"
        elif fits_sparse(inst):
            mode = "sparse"
        elif inst.n <= ORACLE_AUTO_LIMIT:
            mode = "oracle"
        else:
            raise PreconditionError("instance meets neither solver's hypothesis and is too large for the oracle")
    log.info("mode %s", mode)
    if mode == "oracle":
        out = brute_force_resolve(inst, budget=SearchBudget(time_limit=time_limit))
        if out.status == EXHAUSTED:
            raise PreconditionError("oracle search budget exhausted")
        return out.resolution
    g, ledger = new_session(inst)
    if mode == "regular":
        solve_regular(g, ledger)
    elif mode == "sparse":
        solve_sparse(g, ledger)
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    return extract_resolution(ledger)


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    res = solve_instance(inst, args.mode, args.time_limit)
    if res is None:
        print("infeasible", file=sys.stderr)
        return 1
    problems = verify(inst, res)
    if problems:
        for p in problems:
            print(f"internal verification failed: {p}", file=sys.stderr)
        return 1
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(inst, res))
    sys.stdout.write(format_solution(res))
    return 0


def cmd_verify(args) -> int:
    if args.instance == "-" and args.solution == "-":
        raise PreconditionError("instance and solution cannot both be read from stdin")
    inst = parse_instance(_read(args.instance))
    res = parse_solution(_read(args.solution))
    problems = verify(inst, res)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        print("invalid")
        return 1
    print("ok")
    return 0


def cmd_gen(args) -> int:
    seed = int(os.environ.get("PAIRSOLVE_SEED", args.seed))
    q = args.r if args.family == "regular" else args.q
    spec = GenSpec(args.family, args.n, q, seed)
    sys.stdout.write(format_instance(spec.build(), comment=f"{args.family} n={args.n} seed={seed}"))
    return 0


def cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.instance))
    out = brute_force_resolve(inst, budget=SearchBudget(time_limit=args.time_limit))
    print(out.status)
    log.info("%d nodes, %.3fs", out.nodes, out.elapsed)
    if out.status == FEASIBLE:
        sys.stdout.write(format_solution(out.resolution))
        return 0
    return 1 if out.status != EXHAUSTED else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pairsolve", description="Edge-disjoint path resolution of demand multigraphs on K_n.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="resolve an instance and print one path per demand")
    s.add_argument("--mode", choices=("auto", "regular", "sparse", "oracle"), default="auto")
    s.add_argument("--dot", metavar="FILE", help="also write a DOT rendering of the solution")
    s.add_argument("--time-limit", type=float, default=None, help="oracle time limit in seconds")
    s.add_argument("instance", nargs="?", default="-")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("instance")
    v.add_argument("solution", nargs="?", default="-")
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--r", type=int, default=None, help="degree for 'regular'")
    gen.add_argument("--q", type=int, default=None, help="multiplicity for 'one-factor-bundles'")
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="decide feasibility by exhaustive search")
    o.add_argument("--time-limit", type=float, default=None)
    o.add_argument("instance", nargs="?", default="-")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
