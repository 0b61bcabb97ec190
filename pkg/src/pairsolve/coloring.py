"""Balanced lifting colorings of graphs with maximum degree 2.

A lifting coloring gives every edge and every vertex one of the colors
1, 2, 3 such that no edge shares a color with an endpoint or with an
adjacent edge.  It is balanced when the vertex color classes differ in size
by at most 2.  At a vertex of degree 2 the vertex color is forced to be the
color missing from its two edges, so a coloring is determined by the edge
colors plus free choices at vertices of degree 0 or 1.

The search walks the components one after another (paths, cycles including
2-cycles, isolated vertices) and keeps, for every reachable local state, one
witness per vector of class-size differences.  Differences are clamped to a
band around balance; if the banded search fails the band is widened to the
full range, which makes the search exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import InternalError, PreconditionError

COLORS = (1, 2, 3)
EdgeMap = Mapping[int, tuple[int, int]]


@dataclass(frozen=True)
class LiftingColoring:
    edge_color: dict[int, int]
    vertex_color: dict[int, int]

    def class_sizes(self) -> tuple[int, int, int]:
        vals = list(self.vertex_color.values())
        return vals.count(1), vals.count(2), vals.count(3)

    def permuted(self, perm: Mapping[int, int]) -> "LiftingColoring":
        return LiftingColoring(
            {e: perm[c] for e, c in self.edge_color.items()},
            {v: perm[c] for v, c in self.vertex_color.items()},
        )


def _components(vertices: list[int], edges: EdgeMap):
    """Yield ``(kind, vertex sequence, edge sequence)`` per component.

    For a path, edge ``i`` joins vertices ``i`` and ``i + 1``; for a cycle the
    last edge closes back to vertex 0.
    """
    inc: dict[int, list[int]] = {v: [] for v in vertices}
    for eid in sorted(edges):
        u, v = edges[eid]
        if u not in inc or v not in inc:
            raise PreconditionError(f"edge {eid} leaves the vertex set")
        if u == v:
            raise PreconditionError(f"edge {eid} is a loop")
        inc[u].append(eid)
        inc[v].append(eid)
    over = [v for v, ids in inc.items() if len(ids) > 2]
    if over:
        raise PreconditionError(f"vertices {over} have degree > 2")

    seen: set[int] = set()
    for s in vertices:
        if s in seen:
            continue
        # collect the component, then pick a traversal start
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for eid in inc[v]:
                a, b = edges[eid]
                w = b if a == v else a
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(comp) == 1 and not inc[s]:
            yield "isolated", [s], []
            continue
        ends = sorted(v for v in comp if len(inc[v]) < 2)
        kind = "path" if ends else "cycle"
        start = ends[0] if ends else min(comp)
        vseq, eseq, used = [start], [], set()
        v = start
        while True:
            nxt = [e for e in inc[v] if e not in used]
            if not nxt:
                break
            eid = nxt[0]
            used.add(eid)
            a, b = edges[eid]
            v = b if a == v else a
            eseq.append(eid)
            if kind == "cycle" and v == start:
                break
            vseq.append(v)
        yield kind, vseq, eseq


Choice = tuple  # assignments made by one step: ((kind, key, color), ...)
Step = Callable[[object], Iterator[tuple[object, int | None, Choice]]]


def _steps(kind: str, vseq: list[int], eseq: list[int], allowed: Callable[[int], Iterable[int]]) -> list[Step]:
    """Transition functions for one component.

    Each yields ``(new local state, counted vertex color or None, assignments)``.
    Local state ``None`` means "between components".
    """
    if kind == "isolated":
        v = vseq[0]

        def iso(_):
            for a in allowed(v):
                yield None, a, (("v", v, a),)
        return [iso]

    steps: list[Step] = []
    k = len(eseq)
    if kind == "path":
        def start(_):
            for c in COLORS:
                for a in allowed(vseq[0]):
                    if a != c:
                        yield (c,), a, (("e", eseq[0], c), ("v", vseq[0], a))
        steps.append(start)
        for i in range(1, k):
            def mid(state, i=i):
                (cp,) = state
                for cn in COLORS:
                    col = 6 - cp - cn
                    if cn != cp and col in allowed(vseq[i]):
                        yield (cn,), col, (("e", eseq[i], cn), ("v", vseq[i], col))
            steps.append(mid)

        def end(state):
            (cp,) = state
            for b in allowed(vseq[k]):
                if b != cp:
                    yield None, b, (("v", vseq[k], b),)
        steps.append(end)
        return steps

    def first(_):
        for c in COLORS:
            yield (c, c), None, (("e", eseq[0], c),)
    steps.append(first)
    for i in range(1, k):
        def mid(state, i=i):
            c0, cp = state
            for cn in COLORS:
                col = 6 - cp - cn
                if cn != cp and col in allowed(vseq[i]):
                    yield (c0, cn), col, (("e", eseq[i], cn), ("v", vseq[i], col))
        steps.append(mid)

    def close(state):
        c0, cp = state
        if cp != c0:
            col = 6 - cp - c0
            if col in allowed(vseq[0]):
                yield None, col, (("v", vseq[0], col),)
    steps.append(close)
    return steps


def _spread(d1: int, d2: int) -> int:
    # d1 = n1 - n2, d2 = n1 - n3
    return max(abs(d1), abs(d2), abs(d2 - d1))


_DELTA = {1: (1, 1), 2: (-1, 0), 3: (0, -1)}


def _search(steps: list[Step], band: int) -> list[Choice] | None:
    history: list[dict] = []
    layer: dict = {(None, 0, 0): None}
    for step in steps:
        new: dict = {}
        for key in layer:
            local, d1, d2 = key
            for nlocal, col, assign in step(local):
                nd1, nd2 = d1, d2
                if col is not None:
                    x, y = _DELTA[col]
                    nd1, nd2 = d1 + x, d2 + y
                    if _spread(nd1, nd2) > band:
                        continue
                nkey = (nlocal, nd1, nd2)
                if nkey not in new:
                    new[nkey] = (key, assign)
        if not new:
            return None
        history.append(new)
        layer = new
    finals = sorted(
        (k for k in layer if k[0] is None and _spread(k[1], k[2]) <= 2),
        key=lambda k: (_spread(k[1], k[2]), k[1], k[2]),
    )
    if not finals:
        return None
    key = finals[0]
    out = []
    for level in reversed(history):
        key, assign = level[key]
        out.append(assign)
    out.reverse()
    return out


def balanced_lifting_coloring(
    vertices: Iterable[int], edges: EdgeMap, w1: int, w2: int, w3: int, band: int = 4
) -> LiftingColoring:
    """Balanced lifting coloring of ``edges`` spanning ``vertices`` with ``w_i`` colored ``i``.

    Pins must be distinct and pairwise non-adjacent.
    """
    vs = sorted(set(vertices))
    pins = {w1: 1, w2: 2, w3: 3}
    if len(pins) != 3 or any(p not in vs for p in pins):
        raise PreconditionError("pins must be three distinct vertices of the graph")
    for eid, (u, v) in edges.items():
        if u in pins and v in pins:
            raise PreconditionError(f"pins {u} and {v} are adjacent via edge {eid}")

    def allowed(v: int) -> tuple[int, ...]:
        return (pins[v],) if v in pins else COLORS

    steps: list[Step] = []
    for kind, vseq, eseq in _components(vs, edges):
        steps += _steps(kind, vseq, eseq, allowed)

    for width in (band, len(vs) + 2):
        choices = _search(steps, width)
        if choices is not None:
            break
    else:
        raise InternalError(
            "no balanced lifting coloring found",
            dump=f"vertices={vs}\nedges={dict(edges)}\npins={pins}",
        )
    ec: dict[int, int] = {}
    vc: dict[int, int] = {}
    for assign in choices:
        for what, key, col in assign:
            (ec if what == "e" else vc)[key] = col
    return LiftingColoring(ec, vc)


def validate_coloring(
    vertices: Iterable[int], edges: EdgeMap, pins: Iterable[int], c: LiftingColoring
) -> list[str]:
    """Problems with ``c`` as a balanced lifting coloring; empty when valid.

    ``pins`` lists the vertices that must receive colors 1, 2, 3 in order.
    """
    vs = set(vertices)
    problems = []
    if set(c.vertex_color) != vs:
        problems.append("vertex colors do not cover exactly the vertex set")
    if set(c.edge_color) != set(edges):
        problems.append("edge colors do not cover exactly the edge set")
    for col in list(c.vertex_color.values()) + list(c.edge_color.values()):
        if col not in COLORS:
            problems.append(f"color {col} outside 1..3")
    at: dict[int, list[int]] = {}
    for eid, (u, v) in edges.items():
        ce = c.edge_color.get(eid)
        for x in (u, v):
            if c.vertex_color.get(x) == ce:
                problems.append(f"edge {eid} has the color of endpoint {x}")
            at.setdefault(x, []).append(ce)
    for x, cols in at.items():
        if len(set(cols)) != len(cols):
            problems.append(f"edges at vertex {x} repeat a color")
    sizes = [list(c.vertex_color.values()).count(k) for k in COLORS]
    if max(sizes) - min(sizes) > 2:
        problems.append(f"unbalanced class sizes {sizes}")
    for i, p in enumerate(pins, start=1):
        if c.vertex_color.get(p) != i:
            problems.append(f"pin {p} does not have color {i}")
    return problems
