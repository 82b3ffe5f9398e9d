"""t-(n,k,lambda) designs: divisibility test, search, direct Steiner triple systems, verification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .exact_cover import BudgetExceeded, ExactCover
from .hypergraph import Hypergraph, VertexSet

DEFAULT_BUDGET = 10**7


class DesignError(ValueError):
    pass


class DesignNotFound(LookupError):
    """No design exists for these parameters (divisibility fails or search space exhausted)."""

    def __init__(self, spec: DesignSpec, reason: str, exhausted: bool):
        self.spec = spec
        self.reason = reason
        self.exhausted = exhausted
        super().__init__(f"no {spec}: {reason}")


@dataclass(frozen=True)
class DesignSpec:
    t: int
    n: int
    k: int
    lam: int = 1

    def __post_init__(self):
        if not (1 <= self.t <= self.k <= self.n) or self.lam < 1:
            raise DesignError(f"invalid design parameters {self}")

    def __str__(self):
        return f"{self.t}-({self.n},{self.k},{self.lam}) design"

    @property
    def block_count(self) -> int:
        """lambda*C(n,t)/C(k,t); only meaningful when the divisibility check passes."""
        return self.lam * comb(self.n, self.t) // comb(self.k, self.t)


@dataclass(frozen=True)
class Design:
    spec: DesignSpec
    blocks: frozenset[VertexSet]

    def sorted_blocks(self) -> list[VertexSet]:
        return sorted(self.blocks)


@dataclass(frozen=True)
class DivisibilityTerm:
    i: int
    divisor: int   # C(k-i, t-i)
    dividend: int  # lambda * C(n-i, t-i)

    @property
    def ok(self) -> bool:
        return self.dividend % self.divisor == 0


@dataclass(frozen=True)
class Divisibility:
    ok: bool
    terms: tuple[DivisibilityTerm, ...]

    def __bool__(self):
        return self.ok

    def first_failure(self) -> DivisibilityTerm | None:
        return next((t for t in self.terms if not t.ok), None)


def divisibility_check(spec: DesignSpec) -> Divisibility:
    t, n, k, lam = spec.t, spec.n, spec.k, spec.lam
    terms = tuple(
        DivisibilityTerm(i, comb(k - i, t - i), lam * comb(n - i, t - i)) for i in range(t)
    )
    return Divisibility(all(x.ok for x in terms), terms)


@dataclass(frozen=True)
class Verification:
    ok: bool
    subset: VertexSet | None = None  # first t-subset with wrong coverage
    coverage: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_design(d: Design) -> Verification:
    """Exhaustive check that every t-subset lies in exactly lambda blocks."""
    t, n, k, lam = d.spec.t, d.spec.n, d.spec.k, d.spec.lam
    for b in d.blocks:
        if len(b) != k or len(set(b)) != k or any(not 1 <= v <= n for v in b):
            raise DesignError(f"malformed block {b} for {d.spec}")
    cover: dict[VertexSet, int] = {}
    for b in d.blocks:
        for s in combinations(sorted(b), t):
            cover[s] = cover.get(s, 0) + 1
    for s in combinations(range(1, n + 1), t):
        c = cover.get(s, 0)
        if c != lam:
            return Verification(False, s, c, f"{s} covered {c} times, expected {lam}")
    return Verification(True)


def construct_design(spec: DesignSpec, budget: int = DEFAULT_BUDGET) -> Design:
    """Find a design by exact multi-cover search over all k-subsets.

    Raises :class:`DesignNotFound` when divisibility fails (no search is run)
    or when the whole search space is exhausted, and
    :class:`~hyperpack.exact_cover.BudgetExceeded` when ``budget`` nodes are spent.
    """
    if budget <= 0:
        raise DesignError("budget must be positive")
    div = divisibility_check(spec)
    if not div:
        bad = div.first_failure()
        raise DesignNotFound(
            spec, f"divisibility fails at i={bad.i}: {bad.divisor} does not divide {bad.dividend}",
            exhausted=False,
        )
    t, n, k, lam = spec.t, spec.n, spec.k, spec.lam
    vertices = range(1, n + 1)
    col_index = {s: j for j, s in enumerate(combinations(vertices, t))}
    blocks = list(combinations(vertices, k))
    rows = [[col_index[s] for s in combinations(b, t)] for b in blocks]
    solver = ExactCover(rows, {j: lam for j in col_index.values()})
    # any design can be relabelled so that {1..k} is a block
    forced = [0] if lam == 1 else []
    found = solver.solve(budget, forced=forced)
    if found is None:
        raise DesignNotFound(spec, "search space exhausted", exhausted=True)
    d = Design(spec, frozenset(blocks[i] for i in found))
    check = verify_design(d)
    if not check:
        raise AssertionError(f"search returned an invalid design: {check.reason}")
    return d


def construct_sts(n: int) -> Design:
    """Steiner triple system of order n (n = 1 or 3 mod 6) by the Bose/Skolem constructions."""
    if n < 3 or n % 6 not in (1, 3):
        raise DesignError(f"no Steiner triple system of order {n}: need n = 1 or 3 (mod 6)")
    triples = _bose(n) if n % 6 == 3 else _skolem(n)
    d = Design(DesignSpec(2, n, 3, 1), frozenset(tuple(sorted(b)) for b in triples))
    check = verify_design(d)
    if not check:
        raise AssertionError(f"STS({n}) construction failed: {check.reason}")
    return d


def _bose(n: int) -> list[tuple[int, int, int]]:
    # idempotent commutative quasigroup on Z_v (v odd): x.y = (x + y)/2 mod v
    v = n // 3
    half = (v + 1) // 2

    def lab(x, i):
        return i * v + x + 1

    out = [(lab(x, 0), lab(x, 1), lab(x, 2)) for x in range(v)]
    for i in range(3):
        for x, y in combinations(range(v), 2):
            out.append((lab(x, i), lab(y, i), lab((x + y) * half % v, (i + 1) % 3)))
    return out


def _skolem(n: int) -> list[tuple[int, int, int]]:
    # half-idempotent commutative quasigroup on Z_2m, plus a point at infinity (label n)
    m = (n - 1) // 6
    v = 2 * m

    def op(x, y):
        s = (x + y) % v
        return s // 2 if s % 2 == 0 else s // 2 + m

    def lab(x, i):
        return i * v + x + 1

    inf = n
    out = [(lab(x, 0), lab(x, 1), lab(x, 2)) for x in range(m)]
    for i in range(3):
        for x in range(m):
            out.append((inf, lab(x + m, i), lab(x, (i + 1) % 3)))
        for x, y in combinations(range(v), 2):
            out.append((lab(x, i), lab(y, i), lab(op(x, y), (i + 1) % 3)))
    return out


def design_to_hypergraph(d: Design) -> Hypergraph:
    return Hypergraph(d.spec.n, d.spec.k, d.blocks)


def relabel_blocks(blocks, offset: int) -> frozenset[VertexSet]:
    return frozenset(tuple(v + offset for v in b) for b in blocks)


__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "Design",
    "DesignError",
    "DesignNotFound",
    "DesignSpec",
    "Divisibility",
    "Verification",
    "construct_design",
    "construct_sts",
    "design_to_hypergraph",
    "divisibility_check",
    "verify_design",
]
