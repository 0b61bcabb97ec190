import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairsolve.coloring import LiftingColoring, balanced_lifting_coloring, validate_coloring
from pairsolve.errors import PreconditionError

from .strategies import all_max_degree_two, max_degree_two


def all_colorings(vertices, edges):
    """Every lifting coloring (balanced or not) by brute force."""
    vs, es = sorted(vertices), sorted(edges)
    for cols in product((1, 2, 3), repeat=len(vs) + len(es)):
        vc = dict(zip(vs, cols))
        ec = dict(zip(es, cols[len(vs):]))
        ok = all(ec[e] != vc[u] and ec[e] != vc[v] for e, (u, v) in edges.items())
        for x in vs:
            at = [ec[e] for e, uv in edges.items() if x in uv]
            ok = ok and len(at) == len(set(at))
        if ok:
            yield LiftingColoring(ec, vc)


def pin_triples(n, edges):
    adj = {frozenset(p) for p in edges.values()}
    for w in permutations(range(n), 3):
        if not any(frozenset(p) in adj for p in ((w[0], w[1]), (w[0], w[2]), (w[1], w[2]))):
            yield w


def test_digon_forces_equal_endpoint_colors():
    # a, b = 3, 4 joined twice; pins 0, 1, 2 isolated
    edges = {0: (3, 4), 1: (3, 4)}
    valid = list(all_colorings(range(5), edges))
    assert valid
    for c in valid:
        assert c.vertex_color[3] == c.vertex_color[4]
        assert {c.edge_color[0], c.edge_color[1]} == {1, 2, 3} - {c.vertex_color[3]}
    c = balanced_lifting_coloring(range(5), edges, 0, 1, 2)
    assert c.vertex_color[3] == c.vertex_color[4]
    assert validate_coloring(range(5), edges, (0, 1, 2), c) == []


def test_mixed_cycles_and_digons():
    # 4-cycle through x1 = 0, 5-cycle through x2 = 4, digon through x3 = 9, digon 10-11
    edges = {}
    for cyc in ([0, 1, 2, 3], [4, 5, 6, 7, 8]):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            edges[len(edges)] = (a, b)
    for a, b in ((9, 12), (9, 12), (10, 11), (10, 11)):
        edges[len(edges)] = (a, b)
    c = balanced_lifting_coloring(range(13), edges, 0, 4, 9)
    assert validate_coloring(range(13), edges, (0, 4, 9), c) == []
    sizes = c.class_sizes()
    assert max(sizes) - min(sizes) <= 2 and sum(sizes) == 13
    # the same shape with a path through x3 instead of the first digon
    edges[10] = (12, 13)
    c = balanced_lifting_coloring(range(14), edges, 0, 4, 9)
    assert validate_coloring(range(14), edges, (0, 4, 9), c) == []


def test_odd_cycles_and_pins_on_isolated_vertices():
    edges = {0: (3, 4), 1: (4, 5), 2: (5, 3)}
    c = balanced_lifting_coloring(range(6), edges, 0, 1, 2)
    assert validate_coloring(range(6), edges, (0, 1, 2), c) == []


def test_rejects_bad_pins():
    edges = {0: (0, 1)}
    with pytest.raises(PreconditionError):
        balanced_lifting_coloring(range(4), edges, 0, 1, 2)
    with pytest.raises(PreconditionError):
        balanced_lifting_coloring(range(4), edges, 0, 0, 2)
    with pytest.raises(PreconditionError):
        balanced_lifting_coloring(range(4), {0: (0, 1), 1: (0, 2), 2: (0, 3)}, 1, 2, 3)


def test_validator_catches_each_condition():
    edges = {0: (0, 1)}
    good = LiftingColoring({0: 3}, {0: 1, 1: 2, 2: 3, 3: 1})
    assert validate_coloring(range(4), edges, (0, 1, 2), good) == []
    same = LiftingColoring({0: 1}, {0: 1, 1: 2, 2: 3, 3: 1})
    assert validate_coloring(range(4), edges, (0, 1, 2), same)
    clash = LiftingColoring({0: 3, 1: 3}, {0: 1, 1: 2, 2: 1})
    assert validate_coloring(range(3), {0: (0, 1), 1: (0, 2)}, (0, 1, 2), clash)
    lopsided = LiftingColoring({}, {v: 1 for v in range(6)})
    assert any("unbalanced" in p for p in validate_coloring(range(6), {}, (), lopsided))
    assert any("pin" in p for p in validate_coloring(range(4), edges, (1, 0, 2), good))


def test_permuted_keeps_validity():
    edges = {0: (3, 4), 1: (4, 5)}
    c = balanced_lifting_coloring(range(6), edges, 0, 1, 2)
    p = c.permuted({1: 2, 2: 3, 3: 1})
    assert validate_coloring(range(6), edges, (2, 0, 1), p) == []


@pytest.mark.parametrize("n", [3, 4, 5])
def test_brute_force_agrees_small(n):
    # every graph and pin triple that brute force says is colorable, the search colors
    for edges in all_max_degree_two(n):
        colorings = list(all_colorings(range(n), edges))
        for w in pin_triples(n, edges):
            exists = any(not validate_coloring(range(n), edges, w, c) for c in colorings)
            assert exists
            c = balanced_lifting_coloring(range(n), edges, *w)
            assert validate_coloring(range(n), edges, w, c) == []


@settings(max_examples=200, deadline=None)
@given(max_degree_two(min_n=3, max_n=30), st.randoms(use_true_random=False))
def test_random_graphs_get_valid_colorings(case, rnd):
    n, edges = case
    triples = list(pin_triples(n, edges)) if n <= 8 else None
    if triples is None:
        adj = {frozenset(p) for p in edges.values()}
        for _ in range(50):
            w = tuple(rnd.sample(range(n), 3))
            if not any(frozenset(p) in adj for p in ((w[0], w[1]), (w[0], w[2]), (w[1], w[2]))):
                triples = [w]
                break
    if not triples:
        return
    w = rnd.choice(triples)
    c = balanced_lifting_coloring(range(n), edges, *w)
    assert validate_coloring(range(n), edges, w, c) == []
