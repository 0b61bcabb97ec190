"""Resolution of demand graphs with maximum degree at most ``2*floor(n/6) - 4``.

Each round regularizes the graph, picks an independent triple X, and removes
it with one application of the reduction lemma along a 2-factor A1; a second
application along a maximal <=2-factor F2 then removes a second triple B1.
The surviving graph has six fewer vertices and a degree bound lower by two,
which is exactly the bound for ``n - 6``.  Rounds repeat until ``n < 24``,
where the maximum degree is at most 2 and the graph is resolved directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .coloring import balanced_lifting_coloring
from .core import (
    DemandGraph,
    RouteLedger,
    add_dummy_edge,
    finalize_vertex,
    independent_triple,
    lift,
    norm,
    resolve_multiplicities_at,
)
from .errors import InsufficientTargets, InternalError, PreconditionError
from .factorization import SubFactor, extend_to_maximal_le2_factor, petersen_decompose


def degree_bound(n: int) -> int:
    return 2 * (n // 6) - 4


@dataclass(frozen=True)
class ReductionPlan:
    X: tuple[int, int, int]
    B1: tuple[int, int, int]
    B2: tuple[int, ...]
    A1: SubFactor
    A2: SubFactor
    F2: SubFactor


def regularize(g: DemandGraph, ledger: RouteLedger, r: int) -> None:
    """Make ``g`` ``r``-regular with dummy edges and, for a last odd one out, lifts."""
    if r % 2 or r < 0:
        raise PreconditionError(f"target degree {r} must be even and non-negative")
    if g.max_degree() > r:
        raise PreconditionError(f"maximum degree {g.max_degree()} exceeds {r}")
    vs = sorted(g.active)
    deficient = [v for v in vs if g.degree(v) < r]
    while len(deficient) >= 2:
        a, b = deficient[0], deficient[1]
        add_dummy_edge(g, ledger, a, b)
        deficient = [v for v in deficient if g.degree(v) < r]
    if deficient:
        v = deficient[0]
        while g.degree(v) < r:
            # parity makes the deficit even; each lift adds 2 at v
            eid = next((e for e in sorted(g.edges) if v not in g.endpoints(e)), None)
            if eid is None:
                raise InternalError(f"no edge available to lift onto {v}", g.dump())
            lift(g, ledger, eid, v)


def _path_components(factor: SubFactor, vertices: Iterable[int]) -> list[list[int]]:
    """Vertex sets of the components of ``factor`` that contain a vertex of degree <= 1."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in factor.edges.values():
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if any(factor.degree(x) < 2 for x in comp):
            comps.append(sorted(comp))
    return comps


def validate_plan(g: DemandGraph, plan: ReductionPlan) -> list[str]:
    problems = []
    vs = set(g.active)
    X, B1 = plan.X, plan.B1
    rest = vs - set(X)
    if len(set(X)) != 3 or not set(X) <= vs:
        problems.append("X is not three active vertices")
    for a, b in combinations(X, 2):
        if g.edges_between(a, b):
            problems.append(f"X vertices {a}, {b} are adjacent")
    if len(set(B1)) != 3 or not set(B1) <= rest:
        problems.append("B1 is not three vertices outside X")
    for a, b in combinations(B1, 2):
        if any(e not in plan.A1 for e in g.edges_between(a, b)):
            problems.append(f"B1 vertices {a}, {b} are adjacent outside A1")
    if any(plan.F2.degree(v) == 0 for v in rest - set(B1)):
        problems.append("an F2-isolated vertex is missing from B1")
    b2 = {v for v in rest if plan.F2.degree(v) == 1} - set(B1)
    if b2 != set(plan.B2):
        problems.append("B2 is not the set of F2 degree-1 vertices outside B1")
    if len(plan.B2) > 3:
        problems.append(f"|B2| = {len(plan.B2)} > 3")
    for eid, (u, v) in plan.F2.edges.items():
        if eid in plan.A1 or u in X or v in X:
            problems.append(f"F2 edge {eid} is in A1 or touches X")
    return problems


def choose_plan(g: DemandGraph) -> ReductionPlan:
    """Pick X, the two 2-factors, F2, and the avoid-sets B1 and B2 for one round."""
    vs = sorted(g.active)
    X = independent_triple(g)
    if X is None:
        raise InternalError("no independent triple", g.dump())
    edges = g.edge_map()
    factors = petersen_decompose(edges, vs)
    if len(factors) < 2:
        raise PreconditionError("round needs a regular degree of at least 4")
    A1, A2 = factors[0], factors[1]
    rest = [v for v in vs if v not in X]
    rset = set(rest)
    host = {e: uv for e, uv in edges.items() if e not in A1 and uv[0] in rset and uv[1] in rset}
    seed = [e for e, (u, v) in A2.edges.items() if u in rset and v in rset]
    F2 = extend_to_maximal_le2_factor(host, seed)

    adj = {v: set() for v in vs}
    for eid, (u, v) in host.items():
        adj[u].add(v)
        adj[v].add(u)

    def plan_for(b1: Iterable[int]) -> ReductionPlan:
        b1 = tuple(sorted(b1))
        b2 = tuple(v for v in rest if F2.degree(v) == 1 and v not in b1)
        return ReductionPlan(X, b1, b2, A1, A2, F2)

    chosen: list[int] = [v for v in rest if F2.degree(v) == 0]
    for comp in _path_components(F2, rest):
        ends = [v for v in comp if F2.degree(v) == 1]
        if ends:
            chosen.append(ends[0])
    if len(chosen) <= 3:
        for v in rest:
            if len(chosen) == 3:
                break
            if v not in chosen and not any(u in adj[v] for u in chosen):
                chosen.append(v)
    if len(chosen) == 3:
        plan = plan_for(chosen)
        if not validate_plan(g, plan):
            return plan
    for b1 in combinations(rest, 3):
        plan = plan_for(b1)
        if not validate_plan(g, plan):
            return plan
    raise InternalError("no valid B1 triple", g.dump())


def apply_main_lemma(
    g: DemandGraph, ledger: RouteLedger, X: tuple[int, int, int], B: Iterable[int], F: SubFactor
) -> set[int]:
    """Remove the independent triple ``X`` after lifting ``F`` onto it.

    Phase 1 colors ``F`` and lifts each color-i edge to ``x_i`` (unless it
    already touches ``x_i``).  Phase 2 clears the multiplicities at each
    ``x_i`` by lifting its original edges into distinct color-i vertices
    outside ``B``.  The stars at ``X`` are then simple and get finalized.
    Returns the surviving vertex set.
    """
    X = tuple(X)
    B = set(B)
    vs = sorted(g.active)
    if len(set(X)) != 3 or not set(X) <= g.active:
        raise PreconditionError(f"X = {X} is not three active vertices")
    for a, b in combinations(X, 2):
        if g.edges_between(a, b):
            raise PreconditionError(f"X vertices {a}, {b} are adjacent")
    if len(B) > 3 or B & set(X) or not B <= g.active:
        raise PreconditionError(f"bad avoid-set B = {sorted(B)}")
    for eid, (u, v) in F.edges.items():
        if g.edges.get(eid) is None or {g.edges[eid].u, g.edges[eid].v} != {u, v}:
            raise PreconditionError(f"factor edge {eid} is not a live edge of the graph")

    before = {v: g.degree(v) for v in vs}

    # Colors are pinned so that x_i gets color i+1 (mod 3).  An edge lifted
    # onto x_j from x_i has color j = i+2, so X-internal edges can only be
    # x_i x_{i+2}; a second copy would need i = j+2 as well, impossible mod 3.
    col = balanced_lifting_coloring(vs, F.edges, X[2], X[0], X[1])
    toward = {1: X[0], 2: X[1], 3: X[2]}

    lifted: set[int] = set()
    for f in sorted(F.edges):
        x = toward[col.edge_color[f]]
        if x in g.endpoints(f):
            continue
        lifted.update(lift(g, ledger, f, x))

    survivors = set(vs) - set(X)
    for i, x in enumerate(X, start=1):
        nbrs = g.neighbors(x)
        targets = [y for y in sorted(survivors - B) if col.vertex_color[y] == i and y not in nbrs]
        try:
            resolve_multiplicities_at(g, ledger, x, targets, keep=lifted.__contains__)
        except InsufficientTargets as exc:
            raise InternalError(f"colour class {i} too small: {exc}", g.dump()) from None

    for a, b in combinations(X, 2):
        if len(g.edges_between(a, b)) > 1:
            raise InternalError(f"parallel edges inside X between {a} and {b}", g.dump())
    for x in X:
        finalize_vertex(g, ledger, x)

    for v in survivors:
        limit = before[v] - F.degree(v) + (0 if v in B else 1)
        if g.degree(v) > limit:
            raise InternalError(f"vertex {v} ends with degree {g.degree(v)} > {limit}", g.dump())
    return survivors


def base_case_small(g: DemandGraph, ledger: RouteLedger) -> None:
    """Resolve a graph of maximum degree <= 2 and finalize every vertex.

    Each 2-bundle keeps one direct edge; the other goes through a helper that
    is adjacent to neither end and has not served as a helper before.
    """
    if g.max_degree() > 2:
        raise PreconditionError(f"maximum degree {g.max_degree()} > 2")
    bundles = sorted(
        norm(u, v) for u in g.active for v in g.neighbors(u)
        if u < v and len(g.edges_between(u, v)) == 2
    )
    used: set[int] = set()
    for u, v in bundles:
        blocked = {u, v} | g.neighbors(u) | g.neighbors(v) | used
        w = next((x for x in sorted(g.active) if x not in blocked), None)
        if w is None:
            raise InternalError(f"no helper for bundle ({u}, {v})", g.dump())
        lift(g, ledger, max(g.edges_between(u, v)), w)
        used.add(w)
    for v in sorted(g.active):
        finalize_vertex(g, ledger, v)


def solve_regular(
    g: DemandGraph,
    ledger: RouteLedger,
    on_round: Callable[[DemandGraph], None] | None = None,
) -> None:
    """Resolve every pending edge of ``g``; raises if the degree bound fails."""
    n = len(g.active)
    if g.num_edges() and g.max_degree() > degree_bound(n):
        raise PreconditionError(
            f"maximum degree {g.max_degree()} exceeds 2*floor({n}/6)-4 = {degree_bound(n)}"
        )
    while g.num_edges():
        n = len(g.active)
        if n < 24:
            base_case_small(g, ledger)
            break
        r = degree_bound(n)
        regularize(g, ledger, r)
        plan = choose_plan(g)
        apply_main_lemma(g, ledger, plan.X, plan.B1, plan.A1)
        apply_main_lemma(g, ledger, plan.B1, plan.B2, plan.F2)
        if g.max_degree() > degree_bound(len(g.active)):
            raise InternalError("degree bound not restored after a round", g.dump())
        if on_round is not None:
            on_round(g)
