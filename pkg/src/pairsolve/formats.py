"""Plain-text instance and solution files, and DOT export.

Instance file::

    # optional comment lines
    n m
    u v        (m lines; repeated lines are parallel demands)

Solution file: line ``i`` is the space-separated vertex path for demand ``i``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .core import Instance, Resolution
from .errors import PreconditionError


class ParseError(PreconditionError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def _ints(no: int, s: str, count: int, what: str) -> list[int]:
    parts = s.split()
    if len(parts) != count:
        raise ParseError(no, f"expected {what}, got {s!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(no, f"expected integers for {what}, got {s!r}") from None


def parse_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "missing header 'n m'")
    no, header = lines[0]
    n, m = _ints(no, header, 2, "header 'n m'")
    if n < 0 or m < 0:
        raise ParseError(no, "n and m must be non-negative")
    pairs = []
    for no, s in lines[1:]:
        u, v = _ints(no, s, 2, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(no, f"vertex out of range 0..{n - 1}")
        if u == v:
            raise ParseError(no, f"loop at vertex {u}")
        pairs.append((u, v))
    if len(pairs) != m:
        last = lines[-1][0]
        raise ParseError(last, f"header announces {m} edges but {len(pairs)} were given")
    return Instance(n, tuple(pairs))


def format_instance(inst: Instance, comment: str | None = None) -> str:
    out = [f"# {comment}"] if comment else []
    out.append(f"{inst.n} {inst.m}")
    out += [f"{u} {v}" for u, v in inst.pairs]
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Resolution:
    res: Resolution = {}
    for i, (no, s) in enumerate(_content_lines(text)):
        try:
            res[i] = tuple(int(p) for p in s.split())
        except ValueError:
            raise ParseError(no, f"expected a vertex path, got {s!r}") from None
    return res


def format_solution(res: Mapping[int, Sequence[int]]) -> str:
    return "".join(" ".join(map(str, res[i])) + "\n" for i in sorted(res))


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def to_dot(inst: Instance, res: Mapping[int, Sequence[int]] | None = None) -> str:
    """Demand edges dashed in grey; each solution path drawn in its own colour."""
    out = ["graph demands {", "  node [shape=circle];"]
    out += [f"  {v};" for v in range(inst.n)]
    for i, (u, v) in enumerate(inst.pairs):
        out.append(f'  {u} -- {v} [style=dashed, color="#bbbbbb", label="d{i}"];')
    for i, path in sorted((res or {}).items()):
        color = _PALETTE[i % len(_PALETTE)]
        for a, b in zip(path, path[1:]):
            out.append(f'  {a} -- {b} [color="{color}", penwidth=2, label="{i}"];')
    out.append("}")
    return "\n".join(out) + "\n"
