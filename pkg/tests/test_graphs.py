import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commkernel import _pykernels, kernels
from commkernel.graphs import (LabeledDigraph, closed_form_flower, closed_form_flower_chord,
                               closed_form_flower_loop, closed_form_flower_tail, count_paths,
                               enumerate_signed, flower, flower_chord, flower_loop, flower_tail,
                               has_eulerian_path, relabel, signed_sum, union, with_extra_edge)


def graph_strategy(max_n=4, max_m=6):
    return st.integers(1, max_n).flatmap(lambda n: st.integers(0, max_m).flatmap(
        lambda m: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                           min_size=m, max_size=m).map(
            lambda es: LabeledDigraph.from_edges(n, dict(enumerate(es, 1))))))


def brute_signed(G, a):
    paths = enumerate_signed(G, a)
    return len(paths), sum(p.sign for p in paths)


# closed forms

@pytest.mark.parametrize("alpha", range(1, 6))
def test_flower_matches_closed_form(alpha):
    G = flower(alpha)
    for a in range(alpha + 1):
        assert abs(signed_sum(G, a)) == closed_form_flower(alpha, a)


@pytest.mark.parametrize("alpha", range(2, 6))
def test_chord_matches_closed_form(alpha):
    assert abs(signed_sum(flower_chord(alpha), 1)) == closed_form_flower_chord(alpha)


@pytest.mark.parametrize("alpha", range(1, 6))
def test_loop_matches_closed_form_and_sign_coherent(alpha):
    for b in range(alpha + 1):
        G = flower_loop(alpha, b)
        sums = [signed_sum(G, a) for a in range(alpha + 1)]
        assert [abs(x) for x in sums] == [closed_form_flower_loop(alpha, a, b)
                                          for a in range(alpha + 1)]
        assert all(x > 0 for x in sums) or all(x < 0 for x in sums)


@pytest.mark.parametrize("alpha", range(0, 6))
@pytest.mark.parametrize("beta", range(1, 4))
def test_tail_matches_closed_form(alpha, beta):
    G = flower_tail(alpha, beta)
    assert abs(signed_sum(G, alpha + beta)) == closed_form_flower_tail(alpha, beta)


def test_closed_form_examples_and_errors():
    assert closed_form_flower(3, 0) == 6
    assert closed_form_flower(1, 1) == 1
    assert closed_form_flower(4, 2) == 6
    assert [closed_form_flower_chord(a) for a in (2, 3, 4)] == [1, 2, 6]
    assert closed_form_flower_loop(2, 0, 0) == 6
    assert closed_form_flower_loop(2, 1, 1) == 2
    assert closed_form_flower_loop(3, 1, 2) == 2
    assert closed_form_flower_tail(2, 1) == 4
    assert closed_form_flower_tail(0, 1) == 2
    assert closed_form_flower_tail(3, 2) == 12
    for bad in (lambda: closed_form_flower(0, 1), lambda: closed_form_flower_chord(1),
                lambda: closed_form_flower_loop(2, 3, 0), lambda: closed_form_flower_tail(2, 0)):
        with pytest.raises(ValueError):
            bad()


# basic path behaviour

def test_repeated_edge_cancels():
    G = LabeledDigraph.from_edges(2, {1: (0, 1), 2: (0, 1), 3: (1, 0), 4: (1, 0)})
    assert G.has_repeated_edge()
    assert count_paths(G, 0) == (4, 0)


def test_single_loop_and_empty():
    loop = LabeledDigraph.from_edges(1, {1: (0, 0)})
    assert count_paths(loop, 0) == (1, 1)
    empty = LabeledDigraph.from_edges(3, {})
    assert has_eulerian_path(empty, 1, 1) and not has_eulerian_path(empty, 0, 1)
    assert signed_sum(empty, 2) == 1


def test_disconnected_has_no_path():
    G = LabeledDigraph.from_edges(4, {1: (0, 1), 2: (1, 0), 3: (2, 3), 4: (3, 2)})
    assert not has_eulerian_path(G, 0, 0)
    assert count_paths(G, 0) == (0, 0)


def test_extra_edge_and_union():
    G = LabeledDigraph(3, (1, 2), (0, None))
    Gb = with_extra_edge(G, 1)
    assert Gb.edges() == [(1, 0, 1), (2, 1, 0)]
    with pytest.raises(ValueError):
        union(flower(2), flower(2))


def test_json_roundtrip_and_str():
    G = flower_chord(3)
    assert LabeledDigraph.from_json(json.loads(json.dumps(G.to_json()))) == G
    assert str(G).startswith("G(n=4;")


# properties

@settings(max_examples=300, deadline=None)
@given(graph_strategy(), st.integers(0, 3))
def test_existence_iff_enumeration_nonempty(G, a):
    a %= G.n
    paths = enumerate_signed(G, a)
    exists = any(has_eulerian_path(G, a, b) for b in range(G.n))
    assert exists == bool(paths)


@settings(max_examples=300, deadline=None)
@given(graph_strategy(), st.integers(0, 3))
def test_count_matches_enumeration(G, a):
    assert count_paths(G, a % G.n) == brute_signed(G, a % G.n)


@settings(max_examples=200, deadline=None)
@given(graph_strategy(max_m=6), st.integers(0, 3))
def test_transposition_flips_sign(G, a):
    if G.num_labels < 2:
        return
    swapped = relabel(G, {1: 2, 2: 1})
    assert signed_sum(swapped, a % G.n) == -signed_sum(G, a % G.n)


@settings(max_examples=200, deadline=None)
@given(graph_strategy(max_m=7), st.integers(0, 3))
def test_eulerian_kernels_agree(G, a):
    src = [u for _, u, _ in G.edges()]
    tar = [v for _, _, v in G.edges()]
    a %= G.n
    assert kernels.signed_eulerian_count(G.n, src, tar, a) == \
        _pykernels.signed_eulerian_count(G.n, src, tar, a)


def test_swan_vanishing_small():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(2 * n, 2 * n + 3))
        G = LabeledDigraph.from_edges(
            n, {l: (int(rng.integers(n)), int(rng.integers(n))) for l in range(1, m + 1)})
        for a in range(n):
            assert signed_sum(G, a) == 0
