"""k-uniform hypergraphs on vertices 1..n, vertex bijections and generalized degrees.

Edges are stored as strictly increasing tuples of 1-based labels.  Alongside
the tuple form every hypergraph exposes its edges as integer bitmasks (bit
``v`` set for vertex ``v``); the solver and the degree routines work on masks
because subset tests become a single ``&``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

VertexSet = tuple[int, ...]

#: Above this vertex count :func:`degree` falls back to tuple subset tests.
MASK_LIMIT = 64


class HypergraphError(ValueError):
    """Invalid hypergraph, vertex set or bijection."""


def vertex_set(vertices: Iterable[int], n: int | None = None) -> VertexSet:
    """Return ``vertices`` as a sorted tuple, rejecting duplicates and bad labels."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise HypergraphError(f"duplicate vertex in {vs}")
    if vs and vs[0] < 1:
        raise HypergraphError(f"vertex labels are 1-based, got {vs[0]}")
    if n is not None and vs and vs[-1] > n:
        raise HypergraphError(f"vertex {vs[-1]} outside 1..{n}")
    return vs


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on the vertex set {1, ..., n}.

    Vertices that lie in no edge are still part of the hypergraph; ``n`` is
    the only record of them.  Build instances with :meth:`from_edges`, which
    rejects duplicate edges instead of silently merging them.
    """

    n: int
    k: int
    edges: frozenset[VertexSet] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0 or self.k < 1:
            raise HypergraphError(f"invalid parameters n={self.n}, k={self.k}")
        if self.edges and self.k > self.n:
            raise HypergraphError(f"k={self.k} exceeds n={self.n}")
        for e in self.edges:
            if len(e) != self.k:
                raise HypergraphError(f"edge {e} does not have {self.k} vertices")
            if vertex_set(e, self.n) != tuple(e):
                raise HypergraphError(f"edge {e} is not strictly increasing")

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]] = ()) -> Hypergraph:
        canon = []
        for e in edges:
            canon.append(vertex_set(e, n))
        unique = frozenset(canon)
        if len(unique) != len(canon):
            dup = next(e for e, c in Counter(canon).items() if c > 1)
            raise HypergraphError(f"duplicate edge {dup}")
        return cls(n, k, unique)

    @classmethod
    def complete(cls, n: int, k: int) -> Hypergraph:
        return cls(n, k, frozenset(combinations(range(1, n + 1), k)))

    @classmethod
    def random(cls, n: int, k: int, m: int, rng: random.Random) -> Hypergraph:
        """Uniformly random hypergraph with exactly ``m`` edges."""
        pool = list(combinations(range(1, n + 1), k))
        return cls(n, k, frozenset(rng.sample(pool, m)))

    @property
    def size(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[VertexSet]:
        return sorted(self.edges)

    @cached_property
    def masks(self) -> frozenset[int]:
        return frozenset(to_mask(e) for e in self.edges)

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edges

    def add_edge(self, e: Iterable[int]) -> Hypergraph:
        e = vertex_set(e, self.n)
        if e in self.edges:
            raise HypergraphError(f"duplicate edge {e}")
        return Hypergraph(self.n, self.k, self.edges | {e})

    def remove_edge(self, e: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.n, self.k, self.edges - {tuple(sorted(e))})

    def _check_subset(self, u: VertexSet):
        if len(u) > self.k:
            raise HypergraphError(f"|U|={len(u)} exceeds k={self.k}")
        vertex_set(u, self.n)

    def degree(self, u: Iterable[int]) -> int:
        """Number of edges containing ``u``."""
        u = tuple(sorted(u))
        self._check_subset(u)
        if self.n <= MASK_LIMIT:
            m = to_mask(u)
            return sum(1 for e in self.masks if e & m == m)
        return degree_by_sets(self, u)

    def max_degree(self, l: int) -> int:
        """Largest number of edges sharing a common ``l``-subset."""
        if not 1 <= l <= self.k:
            raise HypergraphError(f"l={l} outside 1..{self.k}")
        counts = self.degree_table(l)
        return max(counts.values(), default=0)

    def degree_table(self, l: int) -> Counter:
        """Degrees of every ``l``-subset lying in at least one edge."""
        counts: Counter = Counter()
        for e in self.edges:
            counts.update(combinations(e, l))
        return counts

    def relabel(self, f: Bijection) -> Hypergraph:
        return Hypergraph(self.n, self.k, frozenset(f.apply(e) for e in self.edges))


def degree_by_sets(h: Hypergraph, u: VertexSet) -> int:
    s = set(u)
    return sum(1 for e in h.edges if s.issubset(e))


def degree(h: Hypergraph, u: Iterable[int]) -> int:
    return h.degree(u)


def max_degree(h: Hypergraph, l: int) -> int:
    return h.max_degree(l)


@dataclass(frozen=True)
class Bijection:
    """Permutation of {1, ..., n}; ``images[i - 1]`` is the image of vertex ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise HypergraphError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Bijection:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], n: int) -> Bijection:
        return cls(tuple(mapping[v] for v in range(1, n + 1)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> Bijection:
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def inverse(self) -> Bijection:
        inv = [0] * self.n
        for i, img in enumerate(self.images, 1):
            inv[img - 1] = i
        return Bijection(tuple(inv))

    def apply(self, u: Iterable[int]) -> VertexSet:
        return tuple(sorted(self.images[v - 1] for v in u))

    def compose(self, other: Bijection) -> Bijection:
        """``self`` after ``other``."""
        return Bijection(tuple(self(other(v)) for v in range(1, self.n + 1)))


def apply(f: Bijection, u: Sequence[int]) -> VertexSet:
    if any(not 1 <= v <= f.n for v in u):
        raise HypergraphError(f"{tuple(u)} not within 1..{f.n}")
    return f.apply(u)


def check_compatible(h1: Hypergraph, h2: Hypergraph):
    if h1.n != h2.n or h1.k != h2.k:
        raise HypergraphError(
            f"parameter mismatch: H1 has (n={h1.n}, k={h1.k}), H2 has (n={h2.n}, k={h2.k})"
        )


def conflicts(h1: Hypergraph, h2: Hypergraph, f: Bijection) -> list[VertexSet]:
    """Edges of ``h2`` whose preimage under ``f`` is an edge of ``h1``, sorted.

    ``f`` is a packing exactly when this list is empty.
    """
    check_compatible(h1, h2)
    if f.n != h1.n:
        raise HypergraphError(f"bijection on {f.n} vertices, hypergraphs on {h1.n}")
    inv = f.inverse()
    return [c for c in sorted(h2.edges) if inv.apply(c) in h1.edges]
