"""Line-oriented hypergraph text format.

::

    c optional comment lines
    h <n> <k> <m>
    e v1 v2 ... vk        (m lines, strictly increasing 1-based labels)
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .hypergraph import Hypergraph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def parse_hypergraph(text: str, source: str | None = None) -> tuple[Hypergraph, list[str]]:
    """Parse the text format; returns the hypergraph and its comment lines."""
    comments: list[str] = []
    header = None
    edges: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[1:].strip())
            continue
        try:
            nums = [int(x) for x in rest]
        except ValueError:
            raise FormatError(f"non-integer token in {line!r}", lineno, source) from None
        if tag == "h":
            if header is not None:
                raise FormatError("second header line", lineno, source)
            if len(nums) != 3:
                raise FormatError("header must be 'h <n> <k> <m>'", lineno, source)
            n, k, m = nums
            if n < 0 or k < 1 or m < 0:
                raise FormatError(f"invalid header values n={n} k={k} m={m}", lineno, source)
            header = (n, k, m)
        elif tag == "e":
            if header is None:
                raise FormatError("edge before header", lineno, source)
            n, k, _ = header
            if len(nums) != k:
                raise FormatError(f"edge has {len(nums)} vertices, expected {k}", lineno, source)
            for v in nums:
                if not 1 <= v <= n:
                    raise FormatError(f"vertex {v} outside 1..{n}", lineno, source)
            if any(a >= b for a, b in zip(nums, nums[1:])):
                raise FormatError("edge labels must be strictly increasing", lineno, source)
            e = tuple(nums)
            if e in seen:
                raise FormatError(f"duplicate edge (first on line {seen[e]})", lineno, source)
            seen[e] = lineno
            edges.append(e)
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno, source)

    if header is None:
        raise FormatError("missing header line", None, source)
    n, k, m = header
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}", None, source)
    if edges and k > n:
        raise FormatError(f"k={k} exceeds n={n}", None, source)
    return Hypergraph(n, k, frozenset(edges)), comments


def format_hypergraph(h: Hypergraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"h {h.n} {h.k} {h.size}")
    lines.extend("e " + " ".join(map(str, e)) for e in h.sorted_edges())
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str | Path) -> Hypergraph:
    path = Path(path)
    return parse_hypergraph(path.read_text(), source=str(path))[0]


def write_hypergraph(h: Hypergraph, path: str | Path, comments: Iterable[str] = ()):
    Path(path).write_text(format_hypergraph(h, comments))
