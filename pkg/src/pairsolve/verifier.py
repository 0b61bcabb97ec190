"""Independent check of a resolution against the original demands.

Nothing here reuses solver bookkeeping: the set of used clique edges is
rebuilt from the path vertex sequences alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Instance

KINDS = (
    "endpoint-mismatch",
    "repeated-K_n-edge",
    "non-simple-path",
    "missing-pair",
    "extra-pair",
    "vertex-out-of-range",
)


@dataclass(frozen=True)
class Violation:
    kind: str
    origins: tuple[int, ...] = ()
    edge: tuple[int, int] | None = None

    def __str__(self) -> str:
        parts = [self.kind]
        if self.origins:
            parts.append("origins " + ",".join(map(str, self.origins)))
        if self.edge is not None:
            parts.append(f"edge {self.edge[0]}-{self.edge[1]}")
        return ": ".join(parts)


def verify(instance: Instance, res: Mapping[int, Sequence[int]]) -> list[Violation]:
    """Return every violation found; an empty list means the resolution is valid."""
    out: list[Violation] = []
    n = instance.n
    demanded = dict(enumerate(instance.pairs))

    for origin in sorted(set(demanded) - set(res)):
        out.append(Violation("missing-pair", (origin,)))

    used: dict[tuple[int, int], list[int]] = {}
    for origin in sorted(res):
        path = list(res[origin])
        if origin not in demanded:
            out.append(Violation("extra-pair", (origin,)))
        if not path or any(not isinstance(v, int) or not 0 <= v < n for v in path):
            out.append(Violation("vertex-out-of-range", (origin,)))
            continue
        if origin in demanded:
            u, v = demanded[origin]
            if {path[0], path[-1]} != {u, v} or len(path) < 2:
                out.append(Violation("endpoint-mismatch", (origin,)))
        if len(set(path)) != len(path):
            out.append(Violation("non-simple-path", (origin,)))
        for a, b in zip(path, path[1:]):
            if a == b:
                continue  # already reported as non-simple
            used.setdefault((min(a, b), max(a, b)), []).append(origin)

    for edge, owners in sorted(used.items()):
        if len(owners) > 1:
            out.append(Violation("repeated-K_n-edge", tuple(owners), edge))

    return out


def is_valid(instance: Instance, res: Mapping[int, Sequence[int]]) -> bool:
    return not verify(instance, res)
