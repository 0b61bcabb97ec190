"""Exhaustive backtracking search for edge-disjoint paths in a clique.

Used as an exact decision procedure on small instances: as the base case of
the sparse solver and to certify that the extremal constructions have no
resolution.  A result of ``infeasible`` is only reported after the search
space has been exhausted without hitting a limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import Instance, Pair, Resolution, norm
from .verifier import verify

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
EXHAUSTED = "budget-exhausted"


@dataclass
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None


@dataclass
class SearchOutcome:
    status: str
    resolution: Resolution | None = None
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


class _BudgetHit(Exception):
    pass


@dataclass
class _Search:
    vertices: list[int]
    free: dict[int, set[int]]
    demands: list[tuple[int, Pair]]  # (origin, (u, v)) in search order
    budget: SearchBudget
    pending: dict[int, int] = field(default_factory=dict)
    nodes: int = 0
    deadline: float | None = None

    def paths(self, u: int, v: int, min_key: tuple | None) -> Iterator[list[int]]:
        """Simple u-v paths over free edges, by length then lexicographically."""
        lo = 1 if min_key is None else min_key[0]
        for length in range(lo, len(self.vertices)):
            path, on = [u], {u}

            def extend(x: int, left: int) -> Iterator[list[int]]:
                if left == 1:
                    if v in self.free[x]:
                        yield path + [v]
                    return
                for y in sorted(self.free[x]):
                    if y in on or y == v:
                        continue
                    on.add(y)
                    path.append(y)
                    yield from extend(y, left - 1)
                    path.pop()
                    on.discard(y)

            for p in extend(u, length):
                if min_key is None or (len(p) - 1, tuple(p)) > min_key:
                    yield p

    def tick(self) -> None:
        self.nodes += 1
        lim = self.budget.node_limit
        if lim is not None and self.nodes > lim:
            raise _BudgetHit
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetHit

    def degree_ok(self, touched: Iterable[int]) -> bool:
        return all(self.pending[x] <= len(self.free[x]) for x in touched)

    def run(self, i: int, prev: tuple | None, out: list[list[int]]) -> bool:
        if i == len(self.demands):
            return True
        self.tick()
        _, (u, v) = self.demands[i]
        same = i > 0 and self.demands[i - 1][1] == (u, v)
        # parallel demands are interchangeable: force their paths into increasing order
        min_key = prev if same else None
        for p in self.paths(u, v, min_key):
            steps = list(zip(p, p[1:]))
            for a, b in steps:
                self.free[a].discard(b)
                self.free[b].discard(a)
            self.pending[u] -= 1
            self.pending[v] -= 1
            if self.degree_ok(p):
                out.append(p)
                if self.run(i + 1, (len(p) - 1, tuple(p)), out):
                    return True
                out.pop()
            self.pending[u] += 1
            self.pending[v] += 1
            for a, b in steps:
                self.free[a].add(b)
                self.free[b].add(a)
        return False


def brute_force_resolve(
    instance: Instance,
    reserved: Iterable[Pair] = (),
    budget: SearchBudget | None = None,
    vertices: Iterable[int] | None = None,
) -> SearchOutcome:
    """Decide whether ``instance`` has a resolution avoiding ``reserved`` clique edges.

    Paths may only pass through ``vertices`` (default: all of ``0..n-1``).
    """
    budget = budget or SearchBudget()
    start = time.monotonic()
    vs = sorted(range(instance.n) if vertices is None else set(vertices))
    vset = set(vs)
    for u, v in instance.pairs:
        if u not in vset or v not in vset:
            return SearchOutcome(INFEASIBLE, elapsed=time.monotonic() - start)
    blocked = {norm(*p) for p in reserved}
    free = {x: {y for y in vs if y != x and norm(x, y) not in blocked} for x in vs}

    size: dict[Pair, int] = {}
    for u, v in instance.pairs:
        size[norm(u, v)] = size.get(norm(u, v), 0) + 1
    order = sorted(
        range(instance.m),
        key=lambda i: (-size[norm(*instance.pairs[i])], norm(*instance.pairs[i]), i),
    )
    demands = [(i, norm(*instance.pairs[i])) for i in order]
    pending = {x: 0 for x in vs}
    for u, v in instance.pairs:
        pending[u] += 1
        pending[v] += 1

    search = _Search(vs, free, demands, budget, pending)
    if budget.time_limit is not None:
        search.deadline = start + budget.time_limit
    out: list[list[int]] = []
    try:
        ok = search.degree_ok(vs) and search.run(0, None, out)
    except _BudgetHit:
        return SearchOutcome(EXHAUSTED, nodes=search.nodes, elapsed=time.monotonic() - start)
    elapsed = time.monotonic() - start
    if not ok:
        return SearchOutcome(INFEASIBLE, nodes=search.nodes, elapsed=elapsed)

    res: Resolution = {}
    for (origin, _), p in zip(demands, out):
        u, _v = instance.pairs[origin]
        res[origin] = tuple(p if p[0] == u else reversed(p))
    problems = verify(instance, res)
    if problems:
        raise AssertionError(f"oracle produced an invalid resolution: {problems}")
    return SearchOutcome(FEASIBLE, res, search.nodes, elapsed)
