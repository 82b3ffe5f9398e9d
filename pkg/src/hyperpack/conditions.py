"""Sufficient conditions for two k-uniform hypergraphs to pack.

Every checker returns a :class:`ConditionReport` comparing an integer
left-hand side against an integer right-hand side.  A passing report
guarantees that a packing exists; a failing one says nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb, isqrt

from .hypergraph import Hypergraph, HypergraphError, check_compatible


class ConditionId(str, Enum):
    SS_PRODUCT = "SS_PRODUCT"
    SS_DEGREE = "SS_DEGREE"
    SS_SIZE = "SS_SIZE"
    NAROSKI = "NAROSKI"
    RRT = "RRT"
    BETA = "BETA"


@dataclass(frozen=True)
class ConditionReport:
    condition_id: ConditionId
    lhs: int
    rhs: int
    guarantees_packing: bool
    beta: int | None = None  # the beta evaluated, BETA reports only

    @property
    def witness_beta(self) -> int | None:
        return self.beta if self.guarantees_packing else None

    def to_line(self) -> str:
        line = (
            f"condition={self.condition_id.value} lhs={self.lhs} rhs={self.rhs} "
            f"packs={str(self.guarantees_packing).lower()}"
        )
        if self.beta is not None:
            line += f" beta={self.beta}"
        return line

    def to_dict(self) -> dict:
        return {
            "condition": self.condition_id.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "packs": self.guarantees_packing,
            "beta": self.beta,
        }


def _strict(cid, lhs, rhs, beta=None):
    return ConditionReport(cid, lhs, rhs, lhs < rhs, beta)


def _graphs(g1: Hypergraph, g2: Hypergraph):
    check_compatible(g1, g2)
    if g1.k != 2:
        raise HypergraphError(f"graph condition needs k=2, got k={g1.k}")


def check_ss_product(g1: Hypergraph, g2: Hypergraph) -> ConditionReport:
    _graphs(g1, g2)
    return _strict(ConditionId.SS_PRODUCT, g1.size * g2.size, comb(g1.n, 2))


def check_ss_degree(g1: Hypergraph, g2: Hypergraph) -> ConditionReport:
    _graphs(g1, g2)
    return _strict(ConditionId.SS_DEGREE, 2 * g1.max_degree(1) * g2.max_degree(1), g1.n)


def check_ss_size(g1: Hypergraph, g2: Hypergraph) -> ConditionReport:
    # non-strict comparison, unlike the other checkers
    _graphs(g1, g2)
    lhs = g1.size + g2.size
    rhs = -(-3 * g1.n // 2) - 2
    return ConditionReport(ConditionId.SS_SIZE, lhs, rhs, lhs <= rhs)


def check_naroski(h1: Hypergraph, h2: Hypergraph) -> ConditionReport:
    check_compatible(h1, h2)
    return _strict(ConditionId.NAROSKI, h1.size * h2.size, comb(h1.n, h1.k))


def check_rrt(h1: Hypergraph, h2: Hypergraph) -> ConditionReport:
    check_compatible(h1, h2)
    k = h1.k
    lhs = h1.max_degree(1) * h2.max_degree(k - 1) + h2.max_degree(1) * h1.max_degree(k - 1)
    return _strict(ConditionId.RRT, lhs, h1.n - k + 2)


def check_beta(h1: Hypergraph, h2: Hypergraph, beta: int) -> ConditionReport:
    """Degree-product condition at a split of each edge into ``beta`` and ``k - beta`` vertices."""
    check_compatible(h1, h2)
    n, k = h1.n, h1.k
    if not 0 < beta < k:
        raise HypergraphError(f"beta={beta} outside 1..{k - 1}")
    lhs = (h1.max_degree(beta) * h2.max_degree(k - beta)
           + h1.max_degree(k - beta) * h2.max_degree(beta))
    rhs = comb(n, beta) - comb(k, beta) + 2
    return _strict(ConditionId.BETA, lhs, rhs, beta)


def check_beta_any(h1: Hypergraph, h2: Hypergraph) -> ConditionReport:
    """Smallest passing beta, or the failing beta with the smallest ``lhs - rhs``."""
    check_compatible(h1, h2)
    if h1.k < 2:
        raise HypergraphError("no beta with 0 < beta < k exists for k=1")
    reports = [check_beta(h1, h2, b) for b in range(1, h1.k)]
    for r in reports:
        if r.guarantees_packing:
            return r
    return min(reports, key=lambda r: (r.lhs - r.rhs, r.beta))


def check_all(h1: Hypergraph, h2: Hypergraph) -> list[ConditionReport]:
    """Every checker that applies to the pair's uniformity."""
    check_compatible(h1, h2)
    reports = []
    if h1.k == 2:
        reports += [check_ss_product(h1, h2), check_ss_degree(h1, h2), check_ss_size(h1, h2)]
    reports += [check_naroski(h1, h2), check_rrt(h1, h2)]
    if h1.k >= 2:
        reports.append(check_beta_any(h1, h2))
    return reports


def _ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def packing_threshold(n: int, k: int) -> int:
    """Largest total edge count that the product bound turns into a packing guarantee.

    ``|E1| + |E2| < 2*sqrt(C(n, k))`` forces ``|E1|*|E2| < C(n, k)`` by AM-GM;
    the largest integer below ``2*sqrt(C)`` is ``ceil(sqrt(4*C)) - 1``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return _ceil_sqrt(4 * comb(n, k)) - 1


def lower_bound_m(n: int, k: int) -> int:
    """Every non-packing pair has at least this many edges in total."""
    return packing_threshold(n, k) + 1


def m_graph(n: int) -> int:
    """Exact minimum total size of a non-packing pair of n-vertex graphs."""
    return -(-3 * n // 2) - 1
