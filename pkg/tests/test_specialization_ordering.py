import functools
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from commkernel.graphs import LabeledDigraph, count_paths, with_extra_edge
from commkernel.linalg import bareiss_det, nullity, random_residue, trial_rng
from commkernel.ordering import (check_block_shape, delta, descending_graphs, edge_rank,
                                 enumerate_U, graph_cmp, graph_key, h_graph, ic_matrix,
                                 ic_via_maximal, max_t, maximal_graph, n_matrix,
                                 n_matrix_det_formula, numeric_blocks, rep, structure_report,
                                 supp_H, universe_summary, vertex_cmp, vertex_pos)
from commkernel.poly import poly_eval
from commkernel.scalars import MERSENNE_61
from commkernel.specialization import (block_Lj_direct,
                                       block_Lj_via_operator, exponents, gr_of_monomial,
                                       mon_of_graph, numeric_operator)

P = MERSENNE_61


@functools.lru_cache(maxsize=None)
def summary(n, r, strict=False):
    return universe_summary(n, exponents(r), strict)


# exponents and blocks

def test_exponents():
    assert exponents(1).s == (1, -1)
    assert exponents(2).s == (1, 1, -1, -1)
    assert exponents(3).s == (1, 1, 2, -1, -1, -2)
    e = exponents(3)
    assert e.of(-3) == -2 and e.index(-1) == 4 and e.total == 0
    with pytest.raises(ValueError):
        exponents(0)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (5, 2)])
def test_direct_block_equals_operator_block(n, r):
    for j in range(n):
        assert block_Lj_direct(n, r, j) == block_Lj_via_operator(n, r, j)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 2)])
def test_block_evaluates_to_numeric_operator(n, r):
    e = exponents(r)
    rng = trial_rng(4, n)
    values = [[random_residue(rng, 10 ** 6) for _ in range(n)] for _ in range(e.k)]
    L = numeric_operator(n, e, values)
    point = {(l, a): values[l - 1][a] for l in range(1, e.k + 1) for a in range(n)}
    s = e.total
    for j in range(n):
        B = block_Lj_direct(n, e, j).body
        for a in range(n):
            for b in range(n):
                x = B[a, b]
                got = poly_eval(x, point) if hasattr(x, "terms") else x
                assert got == L[a * n + (a + j + s) % n, b * n + (b + j) % n]


def test_gr_mon_roundtrip():
    e = exponents(2)
    for srcs in itertools.product(range(3), repeat=4):
        m = tuple((l, a) for l, a in enumerate(srcs, 1))
        G = gr_of_monomial(m, e, 3)
        assert mon_of_graph(G) == m
        assert gr_of_monomial(m, e, 3, j=1).num_labels == 5


def test_repeated_edge_monomials_have_zero_coefficient():
    n, e = 4, exponents(2)
    for j in range(n):
        B = block_Lj_direct(n, e, j).body
        for a in range(n):
            for b in range(n):
                x = B[a, b]
                for m in getattr(x, "terms", {}):
                    assert not gr_of_monomial(m, e, n).has_repeated_edge()


# orders

def test_vertex_order():
    n = 7
    order = sorted(range(n), key=lambda v: vertex_pos(v, n))
    assert [rep(v, n) for v in order] == [0, -1, 1, -2, 2, -3, 3]
    assert vertex_cmp(0, 6, n) == 1 and vertex_cmp(1, 6, n) == -1
    assert [rep(v, 4) for v in sorted(range(4), key=lambda v: vertex_pos(v, 4))] == [0, -1, 1, -2]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4),
       st.lists(st.integers(0, 4), min_size=4, max_size=4),
       st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_graph_order_is_total(s1, s2, s3):
    e = exponents(2)
    G = [LabeledDigraph(5, tuple(x % 5 for x in e.s), tuple(s)) for s in (s1, s2, s3)]
    assert graph_cmp(G[0], G[1], e) == -graph_cmp(G[1], G[0], e)
    assert (graph_cmp(G[0], G[1], e) == 0) == (s1 == s2)
    if graph_cmp(G[0], G[1], e) >= 0 and graph_cmp(G[1], G[2], e) >= 0:
        assert graph_cmp(G[0], G[2], e) >= 0


def test_graph_cmp_label_mismatch():
    e = exponents(1)
    with pytest.raises(ValueError):
        graph_cmp(LabeledDigraph(3, (1, 2), (0, None)), LabeledDigraph(3, (1, 2), (0, 1)), e)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 2), (5, 2)])
def test_descent_visits_every_graph_once_in_order(n, r):
    e = exponents(r)
    seen = list(descending_graphs(n, e))
    assert len(seen) == len(set(seen)) == n ** e.k
    keys = [graph_key(LabeledDigraph(n, tuple(x % n for x in e.s), s), e) for s in seen]
    assert keys == sorted(keys)
    mid = seen[len(seen) // 3]
    start = LabeledDigraph(n, tuple(x % n for x in e.s), mid)
    assert list(descending_graphs(n, e, start)) == seen[len(seen) // 3:]


def test_golden_ic():
    M, _ = ic_matrix(block_Lj_direct(3, 1, 1))
    assert M.tolist() == [[-1, 0, 0], [0, 1, 0], [-1, 0, 0]]
    assert nullity(M) == 1


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (5, 1), (5, 2)])
def test_ic_via_maximal_matches_ic_matrix(n, r):
    e = exponents(r)
    for j in range(n):
        assert ic_via_maximal(n, e, j)[0] == ic_matrix(block_Lj_direct(n, e, j), e)[0]


# the universe and maximal graphs

def test_universe_count_readings():
    e = exponents(1)
    assert len(enumerate_U(0, 1, 3, e)) == 5
    assert len(enumerate_U(0, 1, 3, e, strict=True)) == 4


def test_universe_members_satisfy_definition():
    n, e, j = 4, exponents(1), 1
    for a in range(n):
        for G in enumerate_U(a, j, n, e):
            assert not G.has_repeated_edge()
            assert any(count_paths(with_extra_edge(G, b), a)[0] for b in range(n))


def test_h_graph_shape():
    n, r = 7, 3
    H = h_graph(3, n, r)
    assert len(H.labels) == 6
    assert H.support() == supp_H(3, n)
    for t in range(1, r + 1):
        assert count_paths(h_graph(t, n, r), 0)[1] != 0
    with pytest.raises(ValueError):
        h_graph(4, n, r)


@pytest.mark.parametrize("n,r", [(n, r) for r in (1, 2) for n in range(r + 1, 6)])
def test_maximal_graph_is_argmax(n, r):
    S = summary(n, r)
    e = exponents(r)
    for a in range(n):
        for j in range(n):
            G = maximal_graph(a, j, n, e)
            assert G == S.argmax(a, j), (a, j)
            assert max_t(a, j, n, e) == S.top_t[(a, j)]


def test_max_t_needs_large_n():
    with pytest.raises(ValueError):
        max_t(0, 0, 2, exponents(2))


# structure

@pytest.mark.parametrize("r", range(1, 6))
def test_n_matrix_determinant(r):
    assert bareiss_det(n_matrix(r).tolist()) == n_matrix_det_formula(r)


def test_n_matrix_small():
    assert n_matrix(1).tolist() == [[2, 1], [1, 2]]
    with pytest.raises(ValueError):
        n_matrix(0)


@pytest.mark.parametrize("n,r", [(3, 1), (5, 2), (8, 3)])
def test_budgets_sum_to_k(n, r):
    assert sum(delta(j, n, r) for j in range(1, n)) == 2 * r


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (5, 2), (6, 2)])
def test_structure_report_passes(n, r):
    rep_ = structure_report(n, r, trials=2)
    assert rep_["pass"], [c for c in rep_["checks"] if not c["pass"]]
    assert sum(rep_["nullity_Ic"]) == 2 * r


def test_structure_report_over_gfp_and_errors():
    assert structure_report(5, 2, p=P, trials=1)["pass"]
    with pytest.raises(ValueError):
        structure_report(5, 2, p=5)
    with pytest.raises(ValueError):
        structure_report(2, 2)


def test_block_shape_detects_corruption():
    M0, _ = ic_via_maximal(5, exponents(2), 0)
    assert check_block_shape(M0, 5, 2) == []
    rows = M0.tolist()
    rows[0] = [0] * 5
    from commkernel.linalg import ExactMatrix
    assert check_block_shape(ExactMatrix(rows), 5, 2)


def test_numeric_blocks_reproducible():
    b1, _ = numeric_blocks(4, exponents(1), P, 7, 0)
    b2, _ = numeric_blocks(4, exponents(1), P, 7, 0)
    b3, _ = numeric_blocks(4, exponents(1), P, 7, 1)
    assert b1 == b2 and b1 != b3


def test_edge_rank_prefers_hub():
    e = exponents(1)
    # e_1 : P_0 -> P_1 beats e_1 : P_1 -> P_2
    assert edge_rank(1, 0, 5, e) < edge_rank(1, 1, 5, e)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2)])
def test_universe_summary_matches_enumeration(n, r):
    e = exponents(r)
    S = summary(n, r)
    for a in range(n):
        for j in range(n):
            U = enumerate_U(a, j, n, e)
            assert S.size.get((a, j), 0) == len(U)
            if U:
                best = min(U, key=lambda G: graph_key(G, e))
                assert S.argmax(a, j) == best
