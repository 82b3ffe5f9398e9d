"""Non-packing pairs giving upper bounds on m(n, k), and structural certificates for them.

Even k = 2a: H1 is a kernel K = {1..a} joined to every a-subset of the other
vertices, H2 an a-(n, k, 1) design.  Whatever a bijection does with K, the
image of K lies in exactly one block, and the rest of that block is the
image of some a-set U outside K, so the edge K | U collides with it.

Odd k: H1 is a clique on (k-2)t+1 vertices with every outside vertex joined
to each of its (k-1)-subsets; H2 is t disjoint copies of a (k-1)-(n/t, k, 1)
design.  By pigeonhole k-1 clique vertices land in one copy, where they
extend to a block.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

from .designs import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DesignNotFound,
    DesignSpec,
    construct_design,
    construct_sts,
    divisibility_check,
)
from .hypergraph import Bijection, Hypergraph, VertexSet, conflicts


class ExtremalError(ValueError):
    pass


class PairKind(str, Enum):
    EVEN = "even"
    ODD = "odd"
    EVEN_PADDED = "even-padded"


@dataclass(frozen=True)
class ExtremalPair:
    h1: Hypergraph
    h2: Hypergraph
    kind: PairKind
    alpha: int | None = None     # k/2 for the even constructions
    t: int | None = None         # number of design copies (odd)
    clique_size: int | None = None
    kernels: tuple[VertexSet, ...] = ()
    design_n: int = 0            # vertices carrying the design (n minus padding)
    claimed_total: int = field(default=0)

    def __post_init__(self):
        total = self.h1.size + self.h2.size
        if self.claimed_total and self.claimed_total != total:
            raise ExtremalError(f"claimed total {self.claimed_total} != {total}")
        object.__setattr__(self, "claimed_total", total)

    @property
    def n(self) -> int:
        return self.h1.n

    @property
    def k(self) -> int:
        return self.h1.k

    @property
    def isolated(self) -> int:
        return self.n - self.design_n


def even_bound(n: int, k: int) -> int:
    a = k // 2
    return comb(n - a, a) + comb(n, a) // comb(2 * a, a)


def even_divisibility(n: int, k: int):
    return divisibility_check(DesignSpec(k // 2, n, k, 1))


def default_t(n: int, k: int) -> int:
    """floor(n ** ((k-2)/(2k-3))), computed exactly."""
    p, q = n ** (k - 2), 2 * k - 3
    t = int(round(p ** (1.0 / q)))
    while t ** q > p:
        t -= 1
    while (t + 1) ** q <= p:
        t += 1
    return t


def odd_exponent(k: int) -> Fraction:
    return Fraction(k * k - k - 1, 2 * k - 3)


def odd_sizes(n: int, k: int, t: int) -> tuple[int, int]:
    """Edge counts of the odd construction with t copies (t must divide n)."""
    c = (k - 2) * t + 1
    h1 = comb(c, k) + comb(c, k - 1) * (n - c)
    h2 = t * (comb(n // t, k - 1) // k)
    return h1, h2


def _kernel_hypergraph(n: int, k: int, kernels: list[VertexSet], rest: list[int]) -> Hypergraph:
    a = k // 2
    edges = set()
    for K in kernels:
        for P in combinations(rest, a):
            edges.add(tuple(sorted(K + P)))
    return Hypergraph(n, k, frozenset(edges))


def _design(spec: DesignSpec, budget: int):
    if spec.t == 2 and spec.k == 3 and spec.lam == 1 and spec.n % 6 in (1, 3):
        return construct_sts(spec.n)
    try:
        return construct_design(spec, budget)
    except (DesignNotFound, BudgetExceeded) as exc:
        raise ExtremalError(f"cannot build {spec}: {exc}") from exc


def _check_even_divisibility(n: int, k: int):
    div = even_divisibility(n, k)
    if not div:
        bad = div.first_failure()
        raise ExtremalError(
            f"divisibility fails for n={n}, k={k} at i={bad.i}: "
            f"{bad.divisor} does not divide {bad.dividend}"
        )


def build_even_pair(n: int, k: int, budget: int = DEFAULT_BUDGET) -> ExtremalPair:
    if k < 2 or k % 2:
        raise ExtremalError(f"even construction needs even k >= 2, got {k}")
    a = k // 2
    if n < k:
        raise ExtremalError(f"need n >= k, got n={n}, k={k}")
    _check_even_divisibility(n, k)
    d = _design(DesignSpec(a, n, k, 1), budget)
    kernel = tuple(range(1, a + 1))
    h1 = _kernel_hypergraph(n, k, [kernel], list(range(a + 1, n + 1)))
    h2 = Hypergraph(n, k, d.blocks)
    return ExtremalPair(h1, h2, PairKind.EVEN, alpha=a, kernels=(kernel,), design_n=n)


def build_even_pair_padded(n: int, k: int, r: int, budget: int = DEFAULT_BUDGET) -> ExtremalPair:
    """Design on n - r vertices plus r isolated ones; H1 has ceil(r/a) + 1 disjoint kernels."""
    if k < 2 or k % 2:
        raise ExtremalError(f"even construction needs even k >= 2, got {k}")
    if r < 0:
        raise ExtremalError(f"padding must be non-negative, got {r}")
    if r == 0:
        return build_even_pair(n, k, budget)
    a = k // 2
    n_design = n - r
    if n_design < k:
        raise ExtremalError(f"no room for a design: n - r = {n_design} < k = {k}")
    _check_even_divisibility(n_design, k)
    s = -(-r // a) + 1
    if s * a + a > n:
        raise ExtremalError(f"{s} kernels of size {a} leave fewer than {a} other vertices")
    d = _design(DesignSpec(a, n_design, k, 1), budget)
    kernels = [tuple(range(i * a + 1, (i + 1) * a + 1)) for i in range(s)]
    h1 = _kernel_hypergraph(n, k, kernels, list(range(s * a + 1, n + 1)))
    h2 = Hypergraph(n, k, d.blocks)
    return ExtremalPair(
        h1, h2, PairKind.EVEN_PADDED, alpha=a, kernels=tuple(kernels), design_n=n_design
    )


def smallest_padding(n: int, k: int, max_r: int | None = None) -> int | None:
    """Least r >= 0 such that the even divisibility conditions hold at n - r."""
    top = n - k if max_r is None else min(max_r, n - k)
    for r in range(0, top + 1):
        if even_divisibility(n - r, k):
            return r
    return None


def build_odd_pair(n: int, k: int, t: int | None = None, budget: int = DEFAULT_BUDGET) -> ExtremalPair:
    if k < 3 or k % 2 == 0:
        raise ExtremalError(f"odd construction needs odd k >= 3, got {k}")
    if t is None:
        t = default_t(n, k)
    if t < 1 or n % t:
        raise ExtremalError(f"t={t} does not divide n={n}; pass an explicit t")
    m = n // t
    c = (k - 2) * t + 1
    if c > n or m < k:
        raise ExtremalError(f"t={t} too large for n={n}, k={k}")
    spec = DesignSpec(k - 1, m, k, 1)
    div = divisibility_check(spec)
    if not div:
        bad = div.first_failure()
        raise ExtremalError(
            f"divisibility fails for {spec} at i={bad.i}: {bad.divisor} does not divide {bad.dividend}"
        )
    d = _design(spec, budget)
    h2_edges = set()
    for j in range(t):
        for b in d.blocks:
            h2_edges.add(tuple(v + j * m for v in b))
    h1 = _clique_join(n, k, c)
    h2 = Hypergraph(n, k, frozenset(h2_edges))
    return ExtremalPair(h1, h2, PairKind.ODD, t=t, clique_size=c, design_n=n)


def _clique_join(n: int, k: int, c: int) -> Hypergraph:
    clique = range(1, c + 1)
    edges = set(combinations(clique, k))
    for S in combinations(clique, k - 1):
        for v in range(c + 1, n + 1):
            edges.add(S + (v,))
    return Hypergraph(n, k, frozenset(edges))


@dataclass(frozen=True)
class Certificate:
    ok: bool
    verified: tuple[str, ...] = ()
    failure: str = ""
    witness: VertexSet | None = None
    packing: Bijection | None = None  # explicit packing, when the argument breaks down that badly
    notes: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok

    def to_text(self) -> str:
        lines = [f"certified={str(self.ok).lower()}"]
        lines += [f"verified: {v}" for v in self.verified]
        if self.failure:
            lines.append(f"failure: {self.failure}")
        if self.witness is not None:
            lines.append("witness: " + " ".join(map(str, self.witness)))
        if self.packing is not None:
            lines.append("packing: " + " ".join(map(str, self.packing.images)))
        lines += [f"note: {x}" for x in self.notes]
        return "\n".join(lines) + "\n"


def verify_nonpacking_even(p: ExtremalPair) -> Certificate:
    if p.kind not in (PairKind.EVEN, PairKind.EVEN_PADDED):
        raise ExtremalError(f"expected an even-k pair, got {p.kind.value}")
    a, n = p.alpha, p.n
    done = []
    h2_cover = p.h2.degree_table(a)
    for S in combinations(range(1, p.design_n + 1), a):
        if not h2_cover.get(S):
            return Certificate(False, tuple(done), f"{a}-set {S} lies in no edge of H2", witness=S)
    done.append(f"every {a}-subset of 1..{p.design_n} lies in an edge of H2")

    kernel_vertices = {v for K in p.kernels for v in K}
    rest = [v for v in range(1, n + 1) if v not in kernel_vertices]
    for K in p.kernels:
        for U in combinations(rest, a):
            e = tuple(sorted(K + U))
            if e not in p.h1.edges:
                return Certificate(False, tuple(done), f"kernel {K} with {U} is not an edge of H1", witness=e)
    done.append(f"each kernel joins every {a}-subset of its complement in H1")

    if len(p.kernels) == 1 and p.isolated == 0:
        done.append("single kernel and no isolated vertices: every image of the kernel completes to a block")
        return Certificate(True, tuple(done))

    # several kernels or isolated vertices: the completing a-set may be another kernel's image
    notes = ()
    if p.kind is PairKind.EVEN_PADDED:
        notes = (f"padded construction uses ceil(r/alpha)+1 = {len(p.kernels)} disjoint kernels",)
    reason = (f"{len(p.kernels)} kernels and {p.isolated} isolated vertices: "
              "the completing set of a kernel's image need not come from the kernel's complement")
    f = _dodge_kernels(p)
    if f is not None and not conflicts(p.h1, p.h2, f):
        return Certificate(False, tuple(done), reason + "; explicit packing found", packing=f, notes=notes)
    return Certificate(False, tuple(done), reason, notes=notes)


def _dodge_kernels(p: ExtremalPair) -> Bijection | None:
    """Place the kernels so that no kernel edge can land on a block.

    Two kernels mapped onto the halves of one block shield each other: the
    only block through either half is completed by the other kernel.  A
    kernel touching an isolated vertex is safe outright.  A last unpaired
    kernel goes into a block that already holds some kernel image.
    """
    a, n = p.alpha, p.n
    iso = list(range(p.design_n + 1, n + 1))
    blocks = sorted(p.h2.edges)
    f: dict[int, int] = {}
    taken: set[int] = set()

    def put(src, dst):
        f[src] = dst
        taken.add(dst)

    kernels = list(p.kernels)
    while len(kernels) >= 2:
        B = next((b for b in blocks if taken.isdisjoint(b)), None)
        if B is None:
            break
        Ka, Kb = kernels.pop(0), kernels.pop(0)
        for src, dst in zip(Ka + Kb, B):
            put(src, dst)
    while kernels and iso:
        put(kernels.pop(0)[0], iso.pop(0))
    for K in kernels:
        B = next((b for b in blocks if not taken.isdisjoint(b)
                  and len([v for v in b if v not in taken]) >= a), None)
        if B is None:
            return None
        for src, dst in zip(K, [v for v in B if v not in taken]):
            put(src, dst)
    free_dst = iter(v for v in range(1, n + 1) if v not in taken)
    for v in range(1, n + 1):
        if v not in f:
            put(v, next(free_dst))
    return Bijection.from_mapping(f, n)


def verify_nonpacking_odd(p: ExtremalPair) -> Certificate:
    if p.kind is not PairKind.ODD:
        raise ExtremalError(f"expected an odd-k pair, got {p.kind.value}")
    n, k, t, c = p.n, p.k, p.t, p.clique_size
    m = n // t
    done = []
    share = -(-c // t)
    if share < k - 1:
        return Certificate(False, (), f"pigeonhole gives only {share} clique vertices per copy, need {k - 1}")
    done.append(f"some copy receives ceil({c}/{t}) = {share} >= {k - 1} clique vertices")

    for j in range(t):
        cls = range(j * m + 1, (j + 1) * m + 1)
        table = Hypergraph(n, k, frozenset(e for e in p.h2.edges if cls[0] <= e[0] and e[-1] <= cls[-1])).degree_table(k - 1)
        for S in combinations(cls, k - 1):
            if not table.get(S):
                return Certificate(False, tuple(done), f"{S} extends to no edge of copy {j + 1}", witness=S)
    done.append(f"every {k - 1}-subset of each copy extends to an edge of that copy")

    for S in combinations(range(1, c + 1), k - 1):
        for v in range(1, n + 1):
            if v in S:
                continue
            e = tuple(sorted(S + (v,)))
            if e not in p.h1.edges:
                return Certificate(False, tuple(done), f"clique subset {S} with {v} is not an edge of H1", witness=e)
    done.append(f"every {k - 1}-subset of the clique forms an edge with every other vertex")
    return Certificate(True, tuple(done))


def verify_nonpacking(p: ExtremalPair) -> Certificate:
    if p.kind is PairKind.ODD:
        return verify_nonpacking_odd(p)
    return verify_nonpacking_even(p)
