"""Seeded instance generators, including the two extremal constructions."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Instance, Pair
from .errors import PreconditionError

FAMILIES = ("regular", "sparse", "one-factor-bundles", "double-bundle")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    q: int | None = None  # degree for "regular", multiplicity for "one-factor-bundles"
    seed: int = 0

    def build(self) -> Instance:
        if self.family == "regular":
            return gen_regular(self.n, 0 if self.q is None else self.q, self.seed)
        if self.family == "sparse":
            return gen_sparse(self.n, self.seed)
        if self.family == "one-factor-bundles":
            return gen_one_factor_bundles(self.n, 1 if self.q is None else self.q)
        if self.family == "double-bundle":
            return gen_double_bundle(self.n)
        raise PreconditionError(f"unknown family {self.family!r}; choose from {FAMILIES}")


def gen_regular(n: int, r: int, seed: int) -> Instance:
    """Random ``r``-regular loopless multigraph.

    Even ``n``: union of ``r`` random perfect matchings.  Odd ``n`` (``r``
    must then be even): union of ``r/2`` random Hamiltonian cycles.
    """
    if r < 0 or n < 0:
        raise PreconditionError("n and r must be non-negative")
    if (n * r) % 2:
        raise PreconditionError(f"n*r = {n * r} is odd")
    if r and n < 2:
        raise PreconditionError("a regular graph of positive degree needs n >= 2")
    if r and n % 2 and n < 3:
        raise PreconditionError("odd n needs n >= 3")
    rng = random.Random(seed)
    pairs: list[Pair] = []
    if n % 2 == 0:
        for _ in range(r):
            perm = list(range(n))
            rng.shuffle(perm)
            pairs += [(perm[i], perm[i + 1]) for i in range(0, n, 2)]
    else:
        for _ in range(r // 2):
            perm = list(range(n))
            rng.shuffle(perm)
            pairs += [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    inst = Instance.from_pairs(n, pairs)
    assert all(d == r for d in inst.degrees())
    return inst


def gen_sparse(n: int, seed: int) -> Instance:
    """Random instance with exactly ``2n-5`` edges and maximum degree ``<= n-1``.

    Endpoints are drawn with skewed per-vertex weights and earlier pairs are
    repeated now and then, so hubs and bundles show up regularly.
    """
    if n < 4:
        raise PreconditionError("gen_sparse needs n >= 4")
    rng = random.Random(seed)
    target = 2 * n - 5
    weights = [rng.expovariate(1.0) ** 2 + 0.05 for _ in range(n)]
    deg = [0] * n
    pairs: list[Pair] = []
    while len(pairs) < target:
        if pairs and rng.random() < 0.3:
            u, v = rng.choice(pairs)
        else:
            u, v = rng.choices(range(n), weights=weights, k=2)
        if u == v or deg[u] >= n - 1 or deg[v] >= n - 1:
            continue
        pairs.append((u, v))
        deg[u] += 1
        deg[v] += 1
    inst = Instance.from_pairs(n, pairs)
    assert inst.m == target and inst.max_degree() <= n - 1
    return inst


def gen_one_factor_bundles(n: int, q: int) -> Instance:
    """Perfect matching ``(2i, 2i+1)`` with every edge repeated ``q`` times."""
    if n % 2:
        raise PreconditionError("one-factor-bundles needs even n")
    if q < 1:
        raise PreconditionError("q must be at least 1")
    return Instance.from_pairs(n, [(2 * i, 2 * i + 1) for i in range(n // 2) for _ in range(q)])


def gen_double_bundle(n: int) -> Instance:
    """Pairs (0, 1) and (2, 3), each joined by ``n-2`` parallel demands."""
    if n < 4:
        raise PreconditionError("double-bundle needs n >= 4")
    return Instance.from_pairs(n, [(0, 1)] * (n - 2) + [(2, 3)] * (n - 2))


def two_bundles(n: int) -> Instance:
    """An ``(n-2)``-bundle on (0, 1) plus an ``(n-3)``-bundle on (2, 3): exactly ``2n-5`` edges."""
    if n < 4:
        raise PreconditionError("two_bundles needs n >= 4")
    return Instance.from_pairs(n, [(0, 1)] * (n - 2) + [(2, 3)] * (n - 3))


def delete_random_edges(inst: Instance, k: int, seed: int) -> Instance:
    rng = random.Random(seed)
    keep = sorted(rng.sample(range(inst.m), max(inst.m - k, 0)))
    return Instance(inst.n, tuple(inst.pairs[i] for i in keep))
