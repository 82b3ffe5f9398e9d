import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpack import Hypergraph, HypergraphError
from hyperpack.conditions import (
    ConditionId,
    check_all,
    check_beta,
    check_beta_any,
    check_naroski,
    check_rrt,
    check_ss_degree,
    check_ss_product,
    check_ss_size,
    lower_bound_m,
    m_graph,
    packing_threshold,
)
from hyperpack.solver import brute_force_pack

from conftest import random_pair

MATCHING4 = Hypergraph.from_edges(4, 2, [(1, 2), (3, 4)])
STAR4 = Hypergraph.from_edges(4, 2, [(1, 2), (1, 3), (1, 4)])


def single(n, k):
    return Hypergraph.from_edges(n, k, [tuple(range(1, k + 1))])


class TestGraphConditions:
    def test_product_matchings(self):
        r = check_ss_product(MATCHING4, MATCHING4)
        assert (r.lhs, r.rhs, r.guarantees_packing) == (4, 6, True)

    def test_product_complete(self):
        k4 = Hypergraph.complete(4, 2)
        r = check_ss_product(k4, k4)
        assert (r.lhs, r.rhs, r.guarantees_packing) == (36, 6, False)

    def test_product_edgeless(self):
        r = check_ss_product(Hypergraph(4, 2), Hypergraph.complete(4, 2))
        assert r.lhs == 0 and r.guarantees_packing

    def test_degree_matchings(self):
        m6 = Hypergraph.from_edges(6, 2, [(1, 2), (3, 4), (5, 6)])
        r = check_ss_degree(m6, m6)
        assert (r.lhs, r.rhs, r.guarantees_packing) == (2, 6, True)

    def test_degree_star(self):
        r = check_ss_degree(STAR4, MATCHING4)
        assert r.lhs >= 6 and r.rhs == 4 and not r.guarantees_packing

    def test_degree_edgeless(self):
        assert check_ss_degree(STAR4, Hypergraph(4, 2)).guarantees_packing

    def test_size_extremal_pair(self):
        r = check_ss_size(STAR4, MATCHING4)
        assert (r.lhs, r.rhs, r.guarantees_packing) == (5, 4, False)

    def test_size_boundary_is_inclusive(self):
        r = check_ss_size(STAR4, Hypergraph.from_edges(4, 2, [(1, 2)]))
        assert (r.lhs, r.rhs, r.guarantees_packing) == (4, 4, True)

    def test_size_edgeless(self):
        assert check_ss_size(Hypergraph(4, 2), Hypergraph(4, 2)).guarantees_packing

    @pytest.mark.parametrize("check", [check_ss_product, check_ss_degree, check_ss_size])
    def test_graph_checks_refuse_hypergraphs(self, check):
        with pytest.raises(HypergraphError):
            check(single(4, 3), single(4, 3))

    def test_unequal_n(self):
        with pytest.raises(HypergraphError):
            check_ss_product(MATCHING4, Hypergraph(5, 2))


class TestHypergraphConditions:
    def test_naroski_single_edges(self):
        r = check_naroski(single(4, 3), single(4, 3))
        assert (r.lhs, r.rhs, r.guarantees_packing) == (1, 4, True)

    def test_naroski_complete(self):
        k = Hypergraph.complete(4, 3)
        r = check_naroski(k, k)
        assert (r.lhs, r.guarantees_packing) == (16, False)

    def test_naroski_edgeless(self):
        r = check_naroski(Hypergraph(4, 3), Hypergraph.complete(4, 3))
        assert r.lhs == 0 and r.guarantees_packing

    def test_rrt_single_edges(self):
        r = check_rrt(single(6, 3), single(6, 3))
        assert (r.lhs, r.rhs, r.guarantees_packing) == (2, 5, True)

    def test_rrt_boundary(self):
        r = check_rrt(single(3, 3), single(3, 3))
        assert (r.lhs, r.rhs, r.guarantees_packing) == (2, 2, False)

    def test_rrt_edgeless(self):
        r = check_rrt(single(5, 3), Hypergraph(5, 3))
        assert r.lhs == 0 and r.guarantees_packing

    def test_beta_single_edges(self):
        r = check_beta(single(4, 3), single(4, 3), 1)
        assert (r.lhs, r.rhs, r.guarantees_packing, r.witness_beta) == (2, 3, True, 1)

    def test_beta_boundary(self):
        r = check_beta(single(3, 3), single(3, 3), 1)
        assert (r.lhs, r.rhs, r.guarantees_packing, r.witness_beta) == (2, 2, False, None)

    def test_beta_symmetric_middle(self, rng):
        h1, h2 = random_pair(rng, 8, 4, 12, 9)
        a, b = check_beta(h1, h2, 2), check_beta(h2, h1, 2)
        assert a.lhs == b.lhs == 2 * h1.max_degree(2) * h2.max_degree(2)

    @pytest.mark.parametrize("beta", [0, 3, -1])
    def test_beta_out_of_range(self, beta):
        with pytest.raises(HypergraphError):
            check_beta(single(4, 3), single(4, 3), beta)

    def test_beta_any_smallest_witness(self):
        r = check_beta_any(single(6, 3), single(6, 3))
        assert r.witness_beta == 1

    def test_beta_any_fails_on_n_equals_k(self):
        for k in (2, 3, 4):
            r = check_beta_any(single(k, k), single(k, k))
            assert not r.guarantees_packing and r.witness_beta is None
            assert (r.lhs, r.rhs) == (2, 2)

    def test_beta_any_failure_reports_minimal_gap(self, rng):
        for _ in range(50):
            h1, h2 = random_pair(rng, 7, 4, 20, 20)
            r = check_beta_any(h1, h2)
            if r.guarantees_packing:
                continue
            gaps = [(check_beta(h1, h2, b).lhs - check_beta(h1, h2, b).rhs, b) for b in range(1, 4)]
            assert (r.lhs - r.rhs, r.beta) == min(gaps)

    def test_check_all_order_and_lines(self):
        reports = check_all(single(4, 3), single(4, 3))
        ids = [r.condition_id for r in reports]
        assert ConditionId.NAROSKI in ids and ConditionId.SS_PRODUCT not in ids
        lines = [r.to_line() for r in reports]
        assert "condition=NAROSKI lhs=1 rhs=4 packs=true" in lines
        assert any(x.startswith("condition=BETA") and x.endswith("beta=1") for x in lines)


class TestBounds:
    def test_threshold_small(self):
        assert packing_threshold(4, 2) == 4
        assert lower_bound_m(4, 2) == 5 == m_graph(4)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_threshold_n_equals_k(self, k):
        assert packing_threshold(k, k) == 1

    def test_threshold_is_exact(self):
        # largest s with s < 2*sqrt(C(n,k)), i.e. s*s < 4*C(n,k)
        for n in range(1, 65):
            for k in range(1, min(n, 6) + 1):
                s = packing_threshold(n, k)
                c = comb(n, k)
                assert s * s < 4 * c <= (s + 1) * (s + 1)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_threshold_monotone(self, k):
        values = [packing_threshold(n, k) for n in range(k, 65)]
        assert values == sorted(values)

    def test_threshold_huge_values(self):
        assert packing_threshold(64, 32) > 2**30

    def test_threshold_invalid(self):
        with pytest.raises(ValueError):
            packing_threshold(3, 4)
        with pytest.raises(ValueError):
            packing_threshold(3, 0)


class TestProperties:
    def test_rrt_equals_beta_one(self, rng):
        for _ in range(200):
            n = rng.randint(3, 9)
            k = rng.randint(2, n)
            cap = comb(n, k)
            h1, h2 = random_pair(rng, n, k, rng.randint(0, min(cap, 15)), rng.randint(0, min(cap, 15)))
            a, b = check_rrt(h1, h2), check_beta(h1, h2, 1)
            assert (a.lhs, a.rhs, a.guarantees_packing) == (b.lhs, b.rhs, b.guarantees_packing)

    def test_beta_generalizes_degree_condition(self, rng):
        for _ in range(300):
            n = rng.randint(2, 12)
            cap = min(n, comb(n, 2))
            g1, g2 = random_pair(rng, n, 2, rng.randint(0, cap), rng.randint(0, cap))
            if check_ss_degree(g1, g2).guarantees_packing:
                assert check_beta(g1, g2, 1).guarantees_packing

    @settings(max_examples=60, deadline=None)
    @given(st.integers(3, 7), st.data())
    def test_adding_edges_is_monotone(self, n, data):
        k = data.draw(st.integers(2, n))
        seed = data.draw(st.integers(0, 10**6))
        rng = random.Random(seed)
        cap = comb(n, k)
        h1, h2 = random_pair(rng, n, k, rng.randint(0, cap - 1), rng.randint(0, cap))
        extra = next(e for e in combinations(range(1, n + 1), k) if e not in h1.edges)
        bigger = h1.add_edge(extra)
        checks = [check_naroski, check_rrt] + [lambda a, b, beta=beta: check_beta(a, b, beta) for beta in range(1, k)]
        for check in checks:
            before, after = check(h1, h2), check(bigger, h2)
            assert after.lhs >= before.lhs and after.rhs == before.rhs
            assert not (after.guarantees_packing and not before.guarantees_packing)

    def test_passing_conditions_pack_by_brute_force(self, rng):
        checked = 0
        for _ in range(300):
            n = rng.randint(3, 7)
            k = rng.randint(2, min(n, 4))
            cap = comb(n, k)
            h1, h2 = random_pair(rng, n, k, rng.randint(0, min(cap, 8)), rng.randint(0, min(cap, 8)))
            reports = [r for r in check_all(h1, h2) if r.condition_id is not ConditionId.BETA]
            reports.append(check_beta(h1, h2, 1))
            if any(r.guarantees_packing for r in reports):
                checked += 1
                assert brute_force_pack(h1, h2).packed
        assert checked > 50

    def test_beta_above_one_can_hold_without_a_packing(self):
        # One edge against the complete 4-graph on 5 vertices: nothing packs,
        # yet the beta=3 degree inequality is satisfied (6 < 8).
        h1 = single(5, 4)
        h2 = Hypergraph.complete(5, 4)
        r = check_beta(h1, h2, 3)
        assert (r.lhs, r.rhs, r.guarantees_packing) == (6, 8, True)
        assert brute_force_pack(h1, h2).outcome.value == "no-packing-proven"

    def test_deterministic(self, rng):
        h1, h2 = random_pair(rng, 8, 3, 10, 10)
        assert check_all(h1, h2) == check_all(h1, h2)
