"""Demand multigraphs, lifting, and the route ledger.

A solving session owns a :class:`DemandGraph` (the pending demand edges) and a
:class:`RouteLedger` (for every original demand, the walk its pieces currently
trace).  Every operation that rewrites the graph rewrites the ledger in the
same call, so at any moment each live edge occupies exactly one slot of one
walk.  When a vertex is finalized, its star is committed to the host clique
and its slots become fixed clique edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import InsufficientTargets, InternalError, PreconditionError

Pair = tuple[int, int]
Resolution = dict[int, tuple[int, ...]]


def norm(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Instance:
    """Immutable demand instance: ``pairs[i]`` is the demand with origin id ``i``."""

    n: int
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"negative vertex count {self.n}")
        for i, (u, v) in enumerate(self.pairs):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PreconditionError(f"demand {i} ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise PreconditionError(f"demand {i} is a loop at {u}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Instance":
        return cls(n, tuple((int(u), int(v)) for u, v in pairs))

    @property
    def m(self) -> int:
        return len(self.pairs)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.pairs:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)


@dataclass
class DemandEdge:
    u: int
    v: int
    origin: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class DemandGraph:
    """Loopless multigraph on vertex labels ``0..n-1``.

    Only vertices in :attr:`active` take part in solving; finalized vertices
    are deactivated and keep no pending edges.  Edge ids increase
    monotonically and are never reused.
    """

    def __init__(self, n: int):
        self.n = n
        self.active: set[int] = set(range(n))
        self.edges: dict[int, DemandEdge] = {}
        self._adj: list[dict[int, list[int]]] = [{} for _ in range(n)]
        self._deg = [0] * n
        self._next_id = 0

    def add_edge(self, u: int, v: int, origin: int) -> int:
        if u == v:
            raise PreconditionError(f"loop at vertex {u}")
        if u not in self.active or v not in self.active:
            raise PreconditionError(f"edge ({u}, {v}) touches an inactive vertex")
        eid = self._next_id
        self._next_id += 1
        self.edges[eid] = DemandEdge(u, v, origin)
        self._adj[u].setdefault(v, []).append(eid)
        self._adj[v].setdefault(u, []).append(eid)
        self._deg[u] += 1
        self._deg[v] += 1
        return eid

    def remove_edge(self, eid: int) -> DemandEdge:
        try:
            e = self.edges.pop(eid)
        except KeyError:
            raise PreconditionError(f"unknown edge id {eid}") from None
        for a, b in ((e.u, e.v), (e.v, e.u)):
            ids = self._adj[a][b]
            ids.remove(eid)
            if not ids:
                del self._adj[a][b]
            self._deg[a] -= 1
        return e

    def degree(self, v: int) -> int:
        return self._deg[v]

    def gamma(self, v: int) -> int:
        return len(self._adj[v])

    def multiplicity(self, v: int) -> int:
        return self._deg[v] - len(self._adj[v])

    def neighbors(self, v: int) -> set[int]:
        return set(self._adj[v])

    def edges_between(self, u: int, v: int) -> list[int]:
        return list(self._adj[u].get(v, ()))

    def incident(self, v: int) -> list[int]:
        return sorted(eid for ids in self._adj[v].values() for eid in ids)

    def endpoints(self, eid: int) -> Pair:
        e = self.edges[eid]
        return e.u, e.v

    def num_edges(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max((self._deg[v] for v in self.active), default=0)

    def edge_map(self) -> dict[int, Pair]:
        return {eid: (e.u, e.v) for eid, e in self.edges.items()}

    def is_simple(self) -> bool:
        return all(self.multiplicity(v) == 0 for v in self.active)

    def deactivate(self, v: int) -> None:
        if self._deg[v]:
            raise PreconditionError(f"vertex {v} still has {self._deg[v]} pending edges")
        self.active.discard(v)

    def dump(self) -> str:
        lines = [f"# active: {' '.join(map(str, sorted(self.active)))}",
                 f"{self.n} {len(self.edges)}"]
        lines += [f"{e.u} {e.v}" for _, e in sorted(self.edges.items())]
        return "\n".join(lines) + "\n"


@dataclass
class Route:
    """Walk of one demand.

    ``slots[i]`` joins ``vertices[i]`` and ``vertices[i + 1]``; it is a live
    edge id, or ``None`` once that step has been committed to the clique.
    """

    source: int
    target: int
    dummy: bool
    vertices: list[int]
    slots: list[int | None]


@dataclass
class RouteLedger:
    routes: dict[int, Route] = field(default_factory=dict)
    finalized: set[Pair] = field(default_factory=set)

    def commit(self, u: int, v: int) -> Pair:
        p = norm(u, v)
        if p in self.finalized:
            raise InternalError(f"clique edge {p} committed twice")
        self.finalized.add(p)
        return p

    def next_origin(self) -> int:
        # origins are always 0..k-1
        return len(self.routes)


@dataclass(frozen=True)
class Lift:
    edge: int
    target: int
    new_edges: tuple[int, int]


def new_session(instance: Instance) -> tuple[DemandGraph, RouteLedger]:
    """Working graph and ledger for ``instance``; origin ``i`` is ``pairs[i]``."""
    g = DemandGraph(instance.n)
    ledger = RouteLedger()
    for origin, (u, v) in enumerate(instance.pairs):
        eid = g.add_edge(u, v, origin)
        ledger.routes[origin] = Route(u, v, False, [u, v], [eid])
    return g, ledger


def add_dummy_edge(g: DemandGraph, ledger: RouteLedger, u: int, v: int) -> int:
    origin = ledger.next_origin()
    eid = g.add_edge(u, v, origin)
    ledger.routes[origin] = Route(u, v, True, [u, v], [eid])
    return eid


def multiplicity(g: DemandGraph, v: int) -> int:
    return g.multiplicity(v)


def _slot(ledger: RouteLedger, g: DemandGraph, eid: int) -> tuple[Route, int]:
    route = ledger.routes[g.edges[eid].origin]
    try:
        return route, route.slots.index(eid)
    except ValueError:
        raise InternalError(f"live edge {eid} missing from its walk") from None


def lift(g: DemandGraph, ledger: RouteLedger, e: int, w: int) -> tuple[int, int]:
    """Replace edge ``e = uv`` by the two edges ``uw`` and ``wv``.

    Returns the new ids in walk order.  Only the degree of ``w`` changes
    (by +2).
    """
    if e not in g.edges:
        raise PreconditionError(f"unknown edge id {e}")
    edge = g.edges[e]
    if w in (edge.u, edge.v):
        raise PreconditionError(f"cannot lift edge {e} to its own endpoint {w}")
    if w not in g.active:
        raise PreconditionError(f"lift target {w} is not active")
    route, i = _slot(ledger, g, e)
    a, b = route.vertices[i], route.vertices[i + 1]
    g.remove_edge(e)
    first = g.add_edge(a, w, edge.origin)
    second = g.add_edge(w, b, edge.origin)
    route.vertices.insert(i + 1, w)
    route.slots[i:i + 1] = [first, second]
    return first, second


def resolve_multiplicities_at(
    g: DemandGraph,
    ledger: RouteLedger,
    v: int,
    allowed_targets: Iterable[int],
    keep: Callable[[int], bool] | None = None,
) -> list[Lift]:
    """Lift surplus parallel edges at ``v`` to distinct targets until ``m(v) = 0``.

    In each bundle one edge stays: the smallest id accepted by ``keep`` if
    any, else the smallest id.  Lifted edges (ascending id) are paired with
    targets (ascending vertex).
    """
    targets = sorted(set(allowed_targets))
    nbrs = g.neighbors(v)
    bad = [t for t in targets if t == v or t in nbrs]
    if bad:
        raise PreconditionError(f"targets {bad} are {v} or its neighbours")
    surplus = []
    for u in sorted(nbrs):
        ids = sorted(g.edges_between(v, u))
        if len(ids) < 2:
            continue
        kept = next((i for i in ids if keep is not None and keep(i)), ids[0])
        surplus += [i for i in ids if i != kept]
    surplus.sort()
    if len(surplus) > len(targets):
        raise InsufficientTargets(v, len(surplus), len(targets))
    return [Lift(e, t, lift(g, ledger, e, t)) for e, t in zip(surplus, targets)]


def finalize_vertex(g: DemandGraph, ledger: RouteLedger, x: int) -> set[Pair]:
    """Commit the simple star at ``x`` to the clique and remove ``x``."""
    if g.multiplicity(x):
        raise PreconditionError(f"vertex {x} has multiplicity {g.multiplicity(x)}")
    done = set()
    for eid in g.incident(x):
        route, i = _slot(ledger, g, eid)
        u = g.edges[eid].other(x)
        g.remove_edge(eid)
        route.slots[i] = None
        done.add(ledger.commit(x, u))
    g.deactivate(x)
    return done


def route_edge(g: DemandGraph, ledger: RouteLedger, e: int, path: Sequence[int]) -> None:
    """Commit live edge ``e`` along an explicit clique path between its endpoints."""
    edge = g.edges[e]
    if {path[0], path[-1]} != {edge.u, edge.v}:
        raise PreconditionError(f"path {list(path)} does not join the ends of edge {e}")
    route, i = _slot(ledger, g, e)
    if route.vertices[i] != path[0]:
        path = list(reversed(path))
    for a, b in zip(path, path[1:]):
        ledger.commit(a, b)
    g.remove_edge(e)
    route.vertices[i:i + 2] = list(path)
    route.slots[i:i + 1] = [None] * (len(path) - 1)


def independent_triple(g: DemandGraph, vertices: Iterable[int] | None = None) -> tuple[int, int, int] | None:
    """Lexicographically smallest triple of pairwise non-adjacent vertices."""
    vs = sorted(g.active if vertices is None else vertices)
    for i, a in enumerate(vs):
        na = g.neighbors(a)
        for j in range(i + 1, len(vs)):
            b = vs[j]
            if b in na:
                continue
            nb = g.neighbors(b)
            for c in vs[j + 1:]:
                if c not in na and c not in nb:
                    return a, b, c
    return None


def shortcut(walk: Sequence[int]) -> list[int]:
    """Remove closed sub-walks: on meeting a vertex seen before, cut back to it."""
    path: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            for u in path[pos[v] + 1:]:
                del pos[u]
            del path[pos[v] + 1:]
        else:
            pos[v] = len(path)
            path.append(v)
    return path


def extract_resolution(ledger: RouteLedger) -> Resolution:
    res: Resolution = {}
    for origin, route in sorted(ledger.routes.items()):
        if route.dummy:
            continue
        if any(s is not None for s in route.slots):
            raise PreconditionError(f"walk of origin {origin} still has live edges")
        walk = route.vertices
        if walk[0] != route.source or walk[-1] != route.target:
            raise InternalError(f"walk of origin {origin} has wrong endpoints {walk}")
        if any(a == b for a, b in zip(walk, walk[1:])):
            raise InternalError(f"walk of origin {origin} is disconnected: {walk}")
        res[origin] = tuple(shortcut(walk))
    return res


def audit(g: DemandGraph, ledger: RouteLedger) -> list[str]:
    """Full consistency scan of a session; returns human-readable problems."""
    problems = []
    seen: dict[int, int] = {}
    for origin, r in ledger.routes.items():
        if r.vertices[0] != r.source or r.vertices[-1] != r.target:
            problems.append(f"origin {origin}: endpoints moved")
        if len(r.vertices) != len(r.slots) + 1:
            problems.append(f"origin {origin}: slot count mismatch")
        for i, s in enumerate(r.slots):
            a, b = r.vertices[i], r.vertices[i + 1]
            if s is None:
                if norm(a, b) not in ledger.finalized:
                    problems.append(f"origin {origin}: step {a}-{b} not committed")
                continue
            if s in seen:
                problems.append(f"edge {s} appears in origins {seen[s]} and {origin}")
            seen[s] = origin
            e = g.edges.get(s)
            if e is None:
                problems.append(f"origin {origin}: slot holds dead edge {s}")
            elif {e.u, e.v} != {a, b} or e.origin != origin:
                problems.append(f"origin {origin}: edge {s} does not match step {a}-{b}")
    for eid in g.edges:
        if eid not in seen:
            problems.append(f"live edge {eid} is in no walk")
    for v in range(g.n):
        if v not in g.active and g.degree(v):
            problems.append(f"inactive vertex {v} has pending edges")
    return problems
