"""One test per acceptance criterion; each records a PASS/FAIL line."""

import random
import subprocess
import sys
import time
from itertools import combinations, combinations_with_replacement, permutations

import pytest

from pairsolve.coloring import balanced_lifting_coloring, validate_coloring
from pairsolve.core import Instance, extract_resolution, new_session
from pairsolve.factorization import petersen_decompose
from pairsolve.generators import (
    delete_random_edges,
    gen_double_bundle,
    gen_regular,
    gen_sparse,
    two_bundles,
)
from pairsolve.oracle import INFEASIBLE, brute_force_resolve
from pairsolve.regular import degree_bound, solve_regular
from pairsolve.sparse import check_budget, solve_sparse
from pairsolve.verifier import verify

from .strategies import all_max_degree_two

pytestmark = pytest.mark.acceptance

TRIANGLE_TEXT = "6 7\n0 1\n0 1\n0 1\n0 2\n0 2\n1 2\n1 2\n"


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def run_solver(solver, inst, on_step=None):
    g, ledger = new_session(inst)
    if on_step is None:
        solver(g, ledger)
    else:
        solver(g, ledger, on_step)
    return verify(inst, extract_resolution(ledger))


def cli(*args, stdin=""):
    return subprocess.run(
        [sys.executable, "-m", "pairsolve", *args], input=stdin, capture_output=True, text=True
    )


def test_ac1_regular_suite(record):
    failures, worst, total = [], 0.0, 0
    for n in list(range(18, 31)) + [36]:
        r = degree_bound(n)
        for i in range(200):
            inst = gen_regular(n, r, i)
            if i % 2:
                rng = random.Random(i)
                inst = delete_random_edges(inst, rng.randrange(1, inst.m // 2 + 1), i)
            problems, dt = timed(lambda: run_solver(solve_regular, inst))
            worst = max(worst, dt)
            total += 1
            if problems:
                failures.append((n, i))
    ok = not failures and worst < 1.0
    record("AC1 regular suite", ok, f"{total} instances, {len(failures)} failures, max {worst:.3f}s")
    assert ok, failures[:5]


def test_ac2_sparse_suite(record):
    failures, worst, total = [], 0.0, 0
    for n in list(range(4, 21)) + list(range(24, 121, 4)):
        cases = [gen_sparse(n, i) for i in range(100)] + [two_bundles(n)]
        for i, inst in enumerate(cases):
            assert inst.m == 2 * n - 5 and inst.max_degree() <= n - 1
            problems, dt = timed(lambda: run_solver(solve_sparse, inst))
            worst = max(worst, dt)
            total += 1
            if problems:
                failures.append((n, i))
    ok = not failures and worst < 1.0
    record("AC2 sparse suite", ok, f"{total} instances, {len(failures)} failures, max {worst:.3f}s")
    assert ok, failures[:5]


def test_ac3_triangle_example(record, triangle, tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text(TRIANGLE_TEXT)
    t = time.perf_counter()
    solved = cli("solve", str(path))
    checked = cli("verify", str(path), stdin=solved.stdout)
    oracle = brute_force_resolve(triangle)
    dt = time.perf_counter() - t
    ok = solved.returncode == 0 and checked.returncode == 0 and oracle.feasible and dt < 1.0
    record("AC3 triangle example", ok, f"solve exit {solved.returncode}, oracle {oracle.status}, {dt:.3f}s")
    assert ok


def test_ac4_infeasibility(record):
    details, ok = [], True
    for n in (4, 5):
        out = brute_force_resolve(gen_double_bundle(n))
        ok = ok and out.status == INFEASIBLE and out.elapsed < 60
        details.append(f"n={n} {out.status} in {out.elapsed:.3f}s")
    record("AC4 infeasibility", ok, "; ".join(details))
    assert ok


def random_even_regular(rng, n, k, parallel):
    """Union of k Hamiltonian cycles; with ``parallel`` most cycles repeat the first."""
    cycles = []
    for i in range(k):
        if parallel and i:
            cycles.append(cycles[0])
            continue
        order = list(range(n))
        rng.shuffle(order)
        cycles.append([(order[j], order[(j + 1) % n]) for j in range(n)])
    return dict(enumerate(p for c in cycles for p in c))


def test_ac5_petersen(record):
    rng = random.Random(5)
    bad = 0
    for case in range(100):
        k = 1 + case % 4
        kind = case % 3  # 0 connected, 1 disconnected, 2 parallel-heavy
        if kind == 1:
            n1 = rng.randint(3, 20)
            n2 = rng.randint(3, 20)
            a = random_even_regular(rng, n1, k, False)
            b = random_even_regular(rng, n2, k, False)
            edges = dict(a)
            for eid, (u, v) in b.items():
                edges[len(a) + eid] = (u + n1, v + n1)
            n = n1 + n2
        else:
            n = rng.randint(3, 40)
            edges = random_even_regular(rng, n, k, kind == 2)
        factors = petersen_decompose(edges, range(n))
        seen = [e for f in factors for e in f.ids()]
        good = (
            len(factors) == k
            and sorted(seen) == sorted(edges)
            and all(f.is_two_factor(range(n)) for f in factors)
        )
        bad += not good
    record("AC5 petersen", bad == 0, f"100 cases, {bad} failures")
    assert bad == 0


def valid_pins(n, edges):
    adj = {frozenset(p) for p in edges.values()}
    for w in permutations(range(n), 3):
        if not any(frozenset(p) in adj for p in combinations(w, 2)):
            yield w


def test_ac6_lifting_coloring(record):
    exhaustive = bad = 0
    for n in range(3, 8):
        for edges in all_max_degree_two(n):
            for w in valid_pins(n, edges):
                c = balanced_lifting_coloring(range(n), edges, *w)
                bad += bool(validate_coloring(range(n), edges, w, c))
                exhaustive += 1
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randint(8, 60)
        deg = [0] * n
        edges = {}
        for _ in range(rng.randint(0, n)):
            u, v = rng.sample(range(n), 2)
            if deg[u] < 2 and deg[v] < 2:
                edges[len(edges)] = (u, v)
                deg[u] += 1
                deg[v] += 1
        adj = {frozenset(e) for e in edges.values()}
        while True:
            w = tuple(rng.sample(range(n), 3))
            if not any(frozenset(q) in adj for q in combinations(w, 2)):
                break
        c = balanced_lifting_coloring(range(n), edges, *w)
        bad += bool(validate_coloring(range(n), edges, w, c))
    record("AC6 lifting coloring", bad == 0, f"{exhaustive} exhaustive + 300 random, {bad} failures")
    assert bad == 0


def canonical(n, pairs):
    return min(
        tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in pairs))
        for p in permutations(range(n))
    )


def small_corpus():
    for n in range(2, 6):
        all_pairs = list(combinations(range(n), 2))
        seen = set()
        for m in range(0, max(2 * n - 5, 0) + 1):
            for pairs in combinations_with_replacement(all_pairs, m):
                inst = Instance.from_pairs(n, pairs)
                if m and inst.max_degree() > n - 1:
                    continue
                key = canonical(n, pairs)
                if key not in seen:
                    seen.add(key)
                    yield inst


def test_ac7_oracle_cross_check(record):
    total = infeasible = disagree = 0
    for inst in small_corpus():
        total += 1
        out = brute_force_resolve(inst)
        infeasible += not out.feasible
        if inst.n >= 4:
            disagree += bool(run_solver(solve_sparse, inst))
    ok = infeasible == 0 and disagree == 0
    record("AC7 oracle cross-check", ok, f"{total} instances, {infeasible} infeasible, {disagree} solver disagreements")
    assert ok


def test_ac8_budget_audit(record):
    violations, kinds, runs = 0, set(), 0
    rng = random.Random(8)

    def on_step(tag, g):
        nonlocal violations
        kinds.add(tag.kind)
        violations += len(check_budget(g))

    for i in range(1000):
        n = rng.randint(7, 60)
        inst = two_bundles(n) if i % 10 == 0 else gen_sparse(n, i)
        problems = run_solver(solve_sparse, inst, on_step)
        violations += len(problems)
        runs += 1
    ok = violations == 0 and "B2-bundle" in kinds
    record("AC8 budget audit", ok, f"{runs} runs, {violations} violations, cases {sorted(kinds)}")
    assert ok


def test_ac9_cli_round_trip(record, tmp_path):
    codes = {}
    for label, gen_args, mode in (
        ("regular", ("regular", "--n", "24", "--r", "4", "--seed", "7"), "regular"),
        ("sparse", ("sparse", "--n", "30", "--seed", "7"), "sparse"),
    ):
        gen = cli("gen", *gen_args)
        path = tmp_path / f"{label}.txt"
        path.write_text(gen.stdout)
        sol = cli("solve", "--mode", mode, str(path))
        ver = cli("verify", str(path), stdin=sol.stdout)
        codes[label] = (gen.returncode, sol.returncode, ver.returncode)
    bundle = cli("oracle", stdin=cli("gen", "double-bundle", "--n", "4").stdout)
    codes["double-bundle"] = bundle.returncode
    ok = codes["regular"] == (0, 0, 0) and codes["sparse"] == (0, 0, 0) and codes["double-bundle"] == 1
    record("AC9 cli round trip", ok, str(codes))
    assert ok
