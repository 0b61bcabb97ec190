"""Euler circuits, 2-factorization of even-regular multigraphs, and <=2-factors.

All functions take the host multigraph as a mapping ``edge id -> (u, v)`` and
never mutate it.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InternalError, PreconditionError

EdgeMap = Mapping[int, tuple[int, int]]


@dataclass(frozen=True)
class SubFactor:
    """A set of host edges in which every vertex has degree at most 2."""

    edges: dict[int, tuple[int, int]]
    _deg: Counter = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        deg: Counter = Counter()
        for u, v in self.edges.values():
            deg[u] += 1
            deg[v] += 1
        over = sorted(v for v, d in deg.items() if d > 2)
        if over:
            raise PreconditionError(f"vertices {over} have degree > 2 in subfactor")
        object.__setattr__(self, "_deg", deg)

    def degree(self, v: int) -> int:
        return self._deg.get(v, 0)

    def ids(self) -> frozenset[int]:
        return frozenset(self.edges)

    def is_two_factor(self, vertices: Iterable[int]) -> bool:
        return all(self.degree(v) == 2 for v in vertices)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, eid: object) -> bool:
        return eid in self.edges


def _incidence(edges: EdgeMap) -> dict[int, list[int]]:
    inc: dict[int, list[int]] = defaultdict(list)
    for eid in sorted(edges):
        u, v = edges[eid]
        if u == v:
            raise PreconditionError(f"edge {eid} is a loop")
        inc[u].append(eid)
        inc[v].append(eid)
    return inc


def eulerian_circuits(edges: EdgeMap) -> list[list[tuple[int, int, int]]]:
    """One closed trail per non-trivial component (Hierholzer).

    Each circuit is a list of ``(edge id, tail, head)`` steps; consecutive
    steps chain head to tail and the last head is the first tail.
    """
    inc = _incidence(edges)
    odd = sorted(v for v, ids in inc.items() if len(ids) % 2)
    if odd:
        raise PreconditionError(f"odd-degree vertices {odd}")
    used: set[int] = set()
    ptr = {v: 0 for v in inc}
    circuits = []
    for start in sorted(inc):
        if ptr[start] == len(inc[start]) or all(e in used for e in inc[start]):
            continue
        # iterative Hierholzer: stack of (vertex, edge used to arrive)
        stack: list[tuple[int, int | None, int | None]] = [(start, None, None)]
        steps: list[tuple[int, int, int]] = []
        while stack:
            v, eid, tail = stack[-1]
            ids = inc[v]
            while ptr[v] < len(ids) and ids[ptr[v]] in used:
                ptr[v] += 1
            if ptr[v] < len(ids):
                nxt = ids[ptr[v]]
                used.add(nxt)
                a, b = edges[nxt]
                stack.append((b if a == v else a, nxt, v))
            else:
                stack.pop()
                if eid is not None:
                    steps.append((eid, tail, v))
        steps.reverse()
        circuits.append(steps)
    return circuits


def _perfect_matching(left: list[int], adj: dict[int, list[tuple[int, int]]]) -> dict[int, tuple[int, int]]:
    """Kuhn's augmenting-path matching; ``adj[l]`` lists ``(edge id, right)``.

    Returns ``left vertex -> (edge id, right vertex)``.
    """
    match_right: dict[int, tuple[int, int]] = {}  # right -> (edge id, left)

    def augment(l: int, seen: set[int]) -> bool:
        for eid, r in adj[l]:
            if r in seen:
                continue
            seen.add(r)
            if r not in match_right or augment(match_right[r][1], seen):
                match_right[r] = (eid, l)
                return True
        return False

    for l in left:
        if not augment(l, set()):
            raise InternalError(f"regular bipartite graph without perfect matching at {l}")
    return {l: (eid, r) for r, (eid, l) in match_right.items()}


def petersen_decompose(edges: EdgeMap, vertices: Iterable[int] | None = None) -> list[SubFactor]:
    """Split a 2k-regular multigraph into k edge-disjoint 2-factors.

    Orient every edge along an Euler circuit so each vertex has k outgoing
    and k incoming edges; the out/in split graph is k-regular bipartite and
    each of its perfect matchings pulls back to a 2-factor.
    """
    inc = _incidence(edges)
    vs = sorted(inc) if vertices is None else sorted(vertices)
    degs = {len(inc.get(v, ())) for v in vs}
    if set(inc) - set(vs):
        raise PreconditionError("edges touch vertices outside the given vertex set")
    if len(degs) != 1 or not vs:
        raise PreconditionError(f"graph is not regular (degrees {sorted(degs)})")
    d = degs.pop()
    if d == 0 or d % 2:
        raise PreconditionError(f"regular degree {d} is not a positive even number")
    k = d // 2

    oriented: dict[int, tuple[int, int]] = {}
    for circuit in eulerian_circuits(edges):
        for eid, tail, head in circuit:
            oriented[eid] = (tail, head)

    remaining = dict(oriented)
    factors = []
    for _ in range(k):
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vs}
        for eid in sorted(remaining):
            tail, head = remaining[eid]
            adj[tail].append((eid, head))
        matching = _perfect_matching(vs, adj)
        chosen = {eid: edges[eid] for eid, _ in matching.values()}
        for eid in chosen:
            del remaining[eid]
        factors.append(SubFactor(chosen))
    if remaining:
        raise InternalError(f"{len(remaining)} edges left after {k} matchings")
    return factors


def extend_to_maximal_le2_factor(edges: EdgeMap, seed: Iterable[int] = ()) -> SubFactor:
    """Greedily add host edges (ascending id) to ``seed`` while degrees stay <= 2."""
    chosen = {eid: edges[eid] for eid in seed}
    deg = Counter()
    for u, v in chosen.values():
        deg[u] += 1
        deg[v] += 1
    if any(d > 2 for d in deg.values()):
        raise PreconditionError("seed violates the degree bound")
    for eid in sorted(edges):
        if eid in chosen:
            continue
        u, v = edges[eid]
        if deg[u] < 2 and deg[v] < 2:
            chosen[eid] = (u, v)
            deg[u] += 1
            deg[v] += 1
    return SubFactor(chosen)


def is_maximal(edges: EdgeMap, factor: SubFactor) -> bool:
    return all(
        factor.degree(u) == 2 or factor.degree(v) == 2
        for eid, (u, v) in edges.items()
        if eid not in factor
    )
