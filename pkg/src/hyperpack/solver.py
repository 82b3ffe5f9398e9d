"""Packing search: conflict-reducing switches and an exhaustive backtracking oracle.

A bijection ``f: V(H1) -> V(H2)`` packs the pair when no edge of H1 is mapped
onto an edge of H2.  :func:`switching_pack` repeatedly takes a conflict ``C``
(an edge of H2 whose preimage is an edge of H1), picks ``beta`` of its
vertices and exchanges their preimages' images with those of ``beta`` other
vertices, accepting the exchange only when the total number of conflicts
strictly drops.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations

import numpy as np

from ._kernels import build_table, scan_conflict
from .conditions import check_beta, check_beta_any
from .hypergraph import (
    Bijection,
    Hypergraph,
    HypergraphError,
    VertexSet,
    check_compatible,
    conflicts,
    to_mask,
)

log = logging.getLogger(__name__)

MAX_RESTARTS = 50
DEFAULT_NODE_BUDGET = 10**7
# image masks use bit v for label v, so compiled scoring needs labels <= 63
COMPILED_LIMIT = 64


class Outcome(str, Enum):
    PACKED = "packed"
    NO_PACKING = "no-packing-proven"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SwitchStep:
    beta: int
    u_set: VertexSet  # vertices of H1 whose images lie in the conflict
    v_set: VertexSet  # their swap partners
    conflicts_before: int
    conflicts_after: int
    restart: int = 0


@dataclass
class SearchStats:
    examined: int = 0   # candidate bijections evaluated (switches tried, or search nodes)
    switches: int = 0
    restarts: int = 0
    initial_conflicts: int = 0
    stuck_despite_condition: int = 0  # local minima hit while the degree condition holds


@dataclass(frozen=True)
class PackResult:
    outcome: Outcome
    bijection: Bijection | None = None
    trace: tuple[SwitchStep, ...] = ()
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def packed(self) -> bool:
        return self.outcome is Outcome.PACKED


def validate_packing(h1: Hypergraph, h2: Hypergraph, f: Bijection) -> bool:
    return not conflicts(h1, h2, f)


class _SwitchState:
    """Bijection plus per-edge image masks, updated in place as switches are applied.

    With labels below 64 candidate switches are scored by a compiled loop
    over incidence arrays; :meth:`delta` is the pure-Python fallback and the
    reference the compiled path is tested against.
    """

    def __init__(self, h1: Hypergraph, h2: Hypergraph, f: Bijection):
        n = h1.n
        self.n = n
        self.edges1 = h1.sorted_edges()
        self.masks1 = [to_mask(e) for e in self.edges1]
        self.inc = [[] for _ in range(n + 1)]
        for idx, e in enumerate(self.edges1):
            for v in e:
                self.inc[v].append(idx)
        self.e2 = h2.masks
        self.f = [0, *f.images]
        self.finv = [0] * (n + 1)
        for v in range(1, n + 1):
            self.finv[self.f[v]] = v
        self.img = [self._image(e) for e in self.edges1]
        self.conf = [m in self.e2 for m in self.img]
        self.count = sum(self.conf)
        self.compiled = n < COMPILED_LIMIT and bool(self.edges1) and bool(self.e2)
        if self.compiled:
            sizes = [len(x) for x in self.inc] + [0]
            self.inc_ptr = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
            self.inc_idx = np.array([i for x in self.inc for i in x], dtype=np.int64)
            self.masks_arr = np.array(self.masks1, dtype=np.uint64)
            self.e2_table = build_table(sorted(self.e2))
            self.stamp = np.empty(len(self.edges1), dtype=np.int64)
            self._sync()

    def _sync(self):
        self.img_arr = np.array(self.img, dtype=np.uint64)
        self.conf_arr = np.array(self.conf, dtype=np.int8)
        self.f_arr = np.array(self.f, dtype=np.int64)

    def _image(self, e) -> int:
        m = 0
        for v in e:
            m |= 1 << self.f[v]
        return m

    def conflict_edges(self) -> list[VertexSet]:
        """Current conflicts as sorted H2 edges, lexicographically ordered."""
        out = []
        for idx, c in enumerate(self.conf):
            if c:
                out.append(tuple(sorted(self.f[v] for v in self.edges1[idx])))
        out.sort()
        return out

    def _affected(self, pairs):
        seen = set()
        for u, v in pairs:
            seen.update(self.inc[u])
            seen.update(self.inc[v])
        return seen

    def delta(self, pairs) -> int:
        """Change in conflict count if each ``(u, v)`` in ``pairs`` exchanged images."""
        f, img, conf, e2, masks1 = self.f, self.img, self.conf, self.e2, self.masks1
        flips = [(1 << u, 1 << v, (1 << f[u]) | (1 << f[v])) for u, v in pairs]
        d = 0
        for idx in self._affected(pairs):
            em = masks1[idx]
            m = img[idx]
            for bu, bv, bits in flips:
                if bool(em & bu) != bool(em & bv):
                    m ^= bits
            d += (m in e2) - conf[idx]
        return d

    def swap(self, pairs):
        f = self.f
        affected = self._affected(pairs)
        for u, v in pairs:
            f[u], f[v] = f[v], f[u]
            self.finv[f[u]] = u
            self.finv[f[v]] = v
        for idx in affected:
            m = self._image(self.edges1[idx])
            self.img[idx] = m
            c = m in self.e2
            self.count += c - self.conf[idx]
            self.conf[idx] = c
        if self.compiled:
            self._sync()

    def full_count(self) -> int:
        return sum(self._image(e) in self.e2 for e in self.edges1)

    def bijection(self) -> Bijection:
        return Bijection(tuple(self.f[1:]))


def _candidates(state: _SwitchState, c: VertexSet, beta: int):
    """(u_set, v_set) rows for conflict ``c`` in scan order.

    u runs over the beta-subsets of ``c`` (as preimages, in order of their
    images); v over beta-subsets of the other vertices not inside the
    conflict's preimage.  The i-th smallest image in u is paired with v[i].
    """
    pre = {state.finv[x] for x in c}
    rows_u, rows_v = [], []
    for u_img in combinations(c, beta):
        u_set = [state.finv[x] for x in u_img]
        rest = [v for v in range(1, state.n + 1) if v not in u_set]
        for v_set in combinations(rest, beta):
            if pre.issuperset(v_set):
                continue
            rows_u.append(u_set)
            rows_v.append(v_set)
    return rows_u, rows_v


@lru_cache(maxsize=64)
def _combos(n: int, beta: int) -> np.ndarray:
    return np.array(list(combinations(range(1, n + 1), beta)), dtype=np.int64).reshape(-1, beta)


@lru_cache(maxsize=64)
def _positions(k: int, beta: int) -> np.ndarray:
    return np.array(list(combinations(range(k), beta)), dtype=np.int64).reshape(-1, beta)


def _find_switch(state: _SwitchState, beta: int, stats: SearchStats):
    """First strictly improving switch, scanning conflicts in lexicographic order.

    Returns ``(u_set, v_set, pairs)`` or None when no switch improves.
    """
    for c in state.conflict_edges():
        if state.compiled:
            pre = np.array([state.finv[x] for x in c], dtype=np.int64)
            positions = _positions(len(c), beta)
            v_rows = _combos(state.n, beta)
            a, b, examined = scan_conflict(
                pre, positions, v_rows, state.f_arr, state.inc_ptr, state.inc_idx,
                state.masks_arr, state.img_arr, state.conf_arr, state.e2_table, state.stamp,
            )
            stats.examined += int(examined)
            if a < 0:
                continue
            u_set = [int(pre[p]) for p in positions[a]]
            v_set = tuple(int(v) for v in v_rows[b])
        else:
            rows_u, rows_v = _candidates(state, c, beta)
            for i, (u_set, v_set) in enumerate(zip(rows_u, rows_v)):
                if state.delta(list(zip(u_set, v_set))) < 0:
                    stats.examined += i + 1
                    break
            else:
                stats.examined += len(rows_u)
                continue
        return tuple(sorted(u_set)), tuple(v_set), list(zip(u_set, v_set))
    return None


def switching_pack(
    h1: Hypergraph,
    h2: Hypergraph,
    beta: int,
    f0: Bijection | None = None,
    seed: int = 0,
    max_restarts: int = MAX_RESTARTS,
    check: bool = False,
) -> PackResult:
    """Switching descent from ``f0`` (identity by default) with seeded random restarts.

    Restarts happen only from local minima (no improving switch for any
    conflict).  Minima reached while the degree condition holds at ``beta``
    are counted in ``stats.stuck_despite_condition``.  ``check=True``
    recounts all conflicts after every switch and compares with the
    incremental count.
    """
    check_compatible(h1, h2)
    if not 0 < beta < h1.k:
        raise HypergraphError(f"beta={beta} outside 1..{h1.k - 1}")
    f = f0 if f0 is not None else Bijection.identity(h1.n)
    if f.n != h1.n:
        raise HypergraphError(f"initial bijection on {f.n} vertices, hypergraphs on {h1.n}")
    guaranteed = check_beta(h1, h2, beta).guarantees_packing

    stats = SearchStats()
    trace: list[SwitchStep] = []
    restart = 0
    state = _SwitchState(h1, h2, f)
    stats.initial_conflicts = state.count
    while True:
        while state.count:
            found = _find_switch(state, beta, stats)
            if found is None:
                break
            u_set, v_set, pairs = found
            before = state.count
            state.swap(pairs)
            if check:
                full = state.full_count()
                if full != state.count:
                    raise AssertionError(f"incremental count {state.count} != full recount {full}")
            trace.append(SwitchStep(beta, u_set, v_set, before, state.count, restart))
            stats.switches += 1
        if state.count == 0:
            g = state.bijection()
            if not validate_packing(h1, h2, g):
                raise AssertionError("switching produced a bijection with conflicts")
            return PackResult(Outcome.PACKED, g, tuple(trace), stats)
        if guaranteed:
            stats.stuck_despite_condition += 1
            log.debug("no improving switch at beta=%d although the degree condition holds", beta)
        if restart >= max_restarts:
            return PackResult(Outcome.UNKNOWN, None, tuple(trace), stats)
        restart += 1
        stats.restarts = restart
        rng = random.Random(f"{seed}:{beta}:{restart}")
        state = _SwitchState(h1, h2, Bijection.random(h1.n, rng))


def switching_pack_auto(
    h1: Hypergraph,
    h2: Hypergraph,
    seed: int = 0,
    f0: Bijection | None = None,
    max_restarts: int = MAX_RESTARTS,
) -> PackResult:
    """Switching with a guaranteed beta when one exists, otherwise every beta in turn."""
    check_compatible(h1, h2)
    witness = check_beta_any(h1, h2).witness_beta
    if witness is not None:
        return switching_pack(h1, h2, witness, f0, seed, max_restarts)
    total = SearchStats()
    trace: list[SwitchStep] = []
    for beta in range(1, h1.k):
        res = switching_pack(h1, h2, beta, f0, seed, max_restarts)
        total.examined += res.stats.examined
        total.switches += res.stats.switches
        total.restarts += res.stats.restarts
        total.stuck_despite_condition += res.stats.stuck_despite_condition
        total.initial_conflicts = res.stats.initial_conflicts
        trace.extend(res.trace)
        if res.packed:
            return PackResult(Outcome.PACKED, res.bijection, tuple(trace), total)
    return PackResult(Outcome.UNKNOWN, None, tuple(trace), total)


def brute_force_pack(h1: Hypergraph, h2: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET) -> PackResult:
    """Exhaustive backtracking over vertex assignments.

    H1 vertices are placed in order of decreasing degree (ties by label), each
    trying the free H2 labels in ascending order; a partial assignment is cut
    as soon as a fully placed H1 edge lands on an H2 edge.  The first packing
    found in this order is returned.
    """
    check_compatible(h1, h2)
    if node_budget <= 0:
        raise ValueError("node_budget must be positive")
    n = h1.n
    deg = [0] * (n + 1)
    for e in h1.edges:
        for v in e:
            deg[v] += 1
    order = sorted(range(1, n + 1), key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    # edges to test once the vertex at each position is placed
    closing: list[list[VertexSet]] = [[] for _ in range(n)]
    for e in h1.edges:
        closing[max(pos[v] for v in e)].append(e)
    e2 = h2.masks
    f = [0] * (n + 1)
    used = [False] * (n + 1)
    stats = SearchStats()

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for img in range(1, n + 1):
            if used[img]:
                continue
            stats.examined += 1
            if stats.examined > node_budget:
                raise _OutOfBudget
            f[v] = img
            ok = True
            for e in closing[i]:
                m = 0
                for w in e:
                    m |= 1 << f[w]
                if m in e2:
                    ok = False
                    break
            if ok:
                used[img] = True
                if place(i + 1):
                    return True
                used[img] = False
        return False

    try:
        found = place(0)
    except _OutOfBudget:
        return PackResult(Outcome.UNKNOWN, None, (), stats)
    if not found:
        return PackResult(Outcome.NO_PACKING, None, (), stats)
    g = Bijection(tuple(f[1:]))
    if not validate_packing(h1, h2, g):
        raise AssertionError("backtracking produced a bijection with conflicts")
    return PackResult(Outcome.PACKED, g, (), stats)


class _OutOfBudget(Exception):
    pass
