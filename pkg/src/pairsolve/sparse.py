"""Resolution of demand graphs with at most ``2n-5`` edges and maximum degree ``<= n-1``.

One vertex (occasionally two) is removed per step.  The step is chosen by
the set ``B`` of vertices whose degree is at least ``n-2``: they are the
ones that must lose degree before the instance fits the smaller bound.
Instances on at most six vertices go to the exhaustive oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .core import (
    DemandGraph,
    Instance,
    RouteLedger,
    add_dummy_edge,
    finalize_vertex,
    lift,
    resolve_multiplicities_at,
    route_edge,
)
from .errors import InternalError, PreconditionError
from .oracle import brute_force_resolve

ORACLE_THRESHOLD = 6


def edge_budget(n: int) -> int:
    return 2 * n - 5


@dataclass(frozen=True)
class CaseTag:
    kind: str
    x: int | None = None
    z: tuple[int, ...] = ()
    f: int | None = None
    e: int | None = None
    helpers: tuple[int, ...] = ()


def check_budget(g: DemandGraph) -> list[str]:
    n = len(g.active)
    problems = []
    if g.num_edges() and g.num_edges() > edge_budget(n):
        problems.append(f"{g.num_edges()} edges > 2*{n}-5")
    if g.num_edges() and g.max_degree() > n - 1:
        problems.append(f"maximum degree {g.max_degree()} > {n}-1")
    return problems


def pad_to_exact(g: DemandGraph, ledger: RouteLedger) -> int:
    """Add dummy edges on the smallest non-adjacent pair of degree < n-1 until 2n-5 edges."""
    vs = sorted(g.active)
    n = len(vs)
    added = 0
    while g.num_edges() < edge_budget(n):
        pair = None
        for i, u in enumerate(vs):
            if g.degree(u) >= n - 1:
                continue
            nu = g.neighbors(u)
            pair = next(((u, v) for v in vs[i + 1:] if g.degree(v) < n - 1 and v not in nu), None)
            if pair:
                break
        if pair is None:
            break
        add_dummy_edge(g, ledger, *pair)
        added += 1
    return added


def compute_B(g: DemandGraph) -> list[int]:
    n = len(g.active)
    return [v for v in sorted(g.active) if g.degree(v) >= n - 2]


def _retire(g: DemandGraph, ledger: RouteLedger, x: int, avoid: list[int]) -> tuple[int, ...]:
    """Resolve the multiplicities at ``x`` into non-neighbours outside ``avoid``, then finalize ``x``."""
    nbrs = g.neighbors(x)
    targets = [v for v in sorted(g.active) if v != x and v not in nbrs and v not in avoid]
    lifts = resolve_multiplicities_at(g, ledger, x, targets)
    finalize_vertex(g, ledger, x)
    return tuple(l.target for l in lifts)


def resolve_by_oracle(g: DemandGraph, ledger: RouteLedger) -> None:
    """Route every pending edge exactly, using only active vertices and unused clique edges."""
    ids = sorted(g.edges)
    inst = Instance(g.n, tuple(g.endpoints(e) for e in ids))
    out = brute_force_resolve(inst, reserved=ledger.finalized, vertices=g.active)
    if not out.feasible:
        raise InternalError(f"oracle reports {out.status} on a base instance", g.dump())
    for i, eid in enumerate(ids):
        route_edge(g, ledger, eid, out.resolution[i])


def _bundle_split(g: DemandGraph, ledger: RouteLedger, u: int, v: int, helpers: list[int]) -> None:
    """Keep one ``uv`` edge, send the rest through ``helpers``, finalize ``u`` and ``v``."""
    ids = sorted(g.edges_between(u, v))
    if len(helpers) < len(ids) - 1:
        raise InternalError(f"not enough helpers for bundle ({u}, {v})", g.dump())
    for eid, w in zip(ids[1:], helpers):
        lift(g, ledger, eid, w)
    finalize_vertex(g, ledger, u)
    finalize_vertex(g, ledger, v)


def inductive_step(g: DemandGraph, ledger: RouteLedger) -> CaseTag:
    """Remove one or two vertices so the rest fits the bound for the smaller vertex count."""
    vs = sorted(g.active)
    n = len(vs)
    if n < 7:
        raise PreconditionError(f"inductive step needs n >= 7, got {n}")
    if check_budget(g):
        raise PreconditionError("; ".join(check_budget(g)))
    B = compute_B(g)

    if not B:
        x = max(vs, key=lambda v: (g.gamma(v), -v))
        if g.gamma(x) >= 2:
            return CaseTag("B0-pick", x=x, helpers=_retire(g, ledger, x, B))
        # disjoint bundles and isolated vertices
        bundles = {}
        for eid, e in sorted(g.edges.items()):
            key = (min(e.u, e.v), max(e.u, e.v))
            bundles[key] = bundles.get(key, 0) + 1
        if not bundles:
            return CaseTag("B0-trivial")
        (u, v), k = max(bundles.items(), key=lambda kv: (kv[1], -kv[0][0], -kv[0][1]))
        if k == 1:
            for w in vs:
                finalize_vertex(g, ledger, w)
            return CaseTag("B0-trivial")
        f = next((e for e in sorted(g.edges) if not {u, v} & set(g.endpoints(e))), None)
        if f is None:
            helpers = [w for w in vs if w not in (u, v)]
            _bundle_split(g, ledger, u, v, helpers)
            return CaseTag("B0-trivial", z=(u, v), helpers=tuple(helpers[: k - 1]))
        # one extra neighbour pair at u makes retiring u remove two pending edges
        lift(g, ledger, f, u)
        return CaseTag("B0-trivial", x=u, f=f, helpers=_retire(g, ledger, u, B))

    if len(B) == 1:
        z1 = B[0]
        if g.gamma(z1) < 2:
            raise InternalError(f"B = {{{z1}}} but {z1} has a single neighbour", g.dump())
        return CaseTag("B1", x=z1, z=(z1,), helpers=_retire(g, ledger, z1, B))

    if len(B) == 2:
        z1, z2 = B
        if not g.edges_between(z1, z2):
            raise InternalError(f"B vertices {z1}, {z2} are not adjacent", g.dump())
        outside = [z for z in B if g.neighbors(z) - set(B)]
        if outside:
            x = outside[0]
            return CaseTag("B2-outside", x=x, z=(z1, z2), helpers=_retire(g, ledger, x, B))
        k = len(g.edges_between(z1, z2))
        helpers = [w for w in vs if w not in B][: k - 1]
        _bundle_split(g, ledger, z1, z2, helpers)
        return CaseTag("B2-bundle", z=(z1, z2), helpers=tuple(helpers))

    if len(B) == 3:
        z1, z2, z3 = B
        for a, b in combinations(B, 2):
            if not g.edges_between(a, b):
                raise InternalError(f"B vertices {a}, {b} are not adjacent", g.dump())
        x = next((v for v in vs if v not in B and g.degree(v) == 0), None)
        if x is None:
            raise InternalError("no isolated vertex with |B| = 3", g.dump())
        bset = set(B)
        cross = [eid for eid in sorted(g.edges) if len(bset & set(g.endpoints(eid))) == 1]
        if not cross:
            if n <= 7:
                resolve_by_oracle(g, ledger)
                return CaseTag("B3-internal", z=tuple(B))
            f = next((eid for eid in sorted(g.edges) if not bset & set(g.endpoints(eid))), None)
            if f is None:
                raise InternalError("no edge outside B with |B| = 3", g.dump())
            a, b = g.endpoints(f)
            e1 = min(g.edges_between(z1, z2))
            e2 = min(g.edges_between(z1, z3))
            for eid in (e1, e2, f):
                lift(g, ledger, eid, x)
            # x now carries two edges to z1; move one to a fresh vertex
            w = next((v for v in vs if v not in bset and v not in (x, a, b)), None)
            if w is None:
                raise InternalError("no fresh vertex for the doubled edge at x", g.dump())
            resolve_multiplicities_at(g, ledger, x, [w])
            finalize_vertex(g, ledger, x)
            return CaseTag("B3-internal", x=x, z=tuple(B), f=f, e=e1, helpers=(w,))
        f = cross[0]
        zf = next(z for z in B if z in g.endpoints(f))
        p, q = [z for z in B if z != zf]
        e = min(g.edges_between(p, q))
        lift(g, ledger, f, x)
        lift(g, ledger, e, x)
        finalize_vertex(g, ledger, x)
        return CaseTag("B3-outside", x=x, z=tuple(B), f=f, e=e)

    raise InternalError(f"|B| = {len(B)} > 3 under the edge budget", g.dump())


def solve_sparse(
    g: DemandGraph,
    ledger: RouteLedger,
    on_step: Callable[[CaseTag, DemandGraph], None] | None = None,
) -> None:
    """Resolve every pending edge of ``g``; raises if the edge or degree budget fails."""
    if check_budget(g):
        raise PreconditionError("; ".join(check_budget(g)))
    while g.num_edges():
        n = len(g.active)
        if n <= ORACLE_THRESHOLD:
            resolve_by_oracle(g, ledger)
            break
        pad_to_exact(g, ledger)
        before = g.num_edges()
        B = compute_B(g)
        deg_b = {z: g.degree(z) for z in B}
        tag = inductive_step(g, ledger)
        problems = check_budget(g)
        if g.num_edges() and before - g.num_edges() < 2:
            problems.append(f"{tag.kind}: only {before - g.num_edges()} edges retired")
        for z in B:
            if z in g.active and g.degree(z) >= deg_b[z]:
                problems.append(f"{tag.kind}: B vertex {z} did not lose degree")
        if problems:
            raise InternalError(f"after {tag}: " + "; ".join(problems), g.dump())
        if on_step is not None:
            on_step(tag, g)
