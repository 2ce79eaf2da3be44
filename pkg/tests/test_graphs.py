import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_type1_set
from findim.algebra import ClassificationError, classify, delta, nabla, pretty
from findim.graphs import (
    CycleWitness,
    DiGraph,
    Ordering,
    build_gamma_type1,
    build_gamma_type2,
    build_variable_graph,
    cycle_vertices,
    find_cycle_through,
    strongly_connected_components,
    to_dot,
    topological_order,
)

GOLDEN = Path(__file__).parent / "golden"


def edges1(*pairs):
    """1-based pairs as written in the examples, to 0-based edges."""
    return frozenset((u - 1, v - 1) for u, v in pairs)


# --- builders ------------------------------------------------------------------------


def test_gamma_type1_examples():
    g = build_gamma_type1([nabla(0, (0, 2)), nabla(1, (1, 0))])
    assert g.edges == edges1((1, 2), (2, 1))
    assert build_gamma_type1([nabla(0, (0,))]).edges == frozenset()
    g = build_gamma_type1([nabla(0, (0, 0, 0)), nabla(1, (1, 0, 0)), nabla(2, (1, 1, 0))])
    assert g.edges == edges1((1, 2), (1, 3), (2, 3))


def test_gamma_type1_rejects_type2():
    with pytest.raises(ClassificationError):
        build_gamma_type1([delta((1, 0), (1, 0))])


def test_gamma_type2_examples():
    ex1 = [delta((1, 0), (1, -1)), delta((0, 1), (0, 1))]
    assert build_gamma_type2(ex1).edges == edges1((1, 2))
    assert build_gamma_type2([delta((1, 0), (1, 1)), delta((0, 1), (2, 2))]).edges == frozenset()
    assert build_gamma_type2([delta((1, 0), (1, 1))]).edges == frozenset()
    with pytest.raises(ClassificationError):
        build_gamma_type2([nabla(0, (0, 1))])


def test_variable_graph_examples():
    assert build_variable_graph([nabla(1, (1, 0))]).edges == edges1((1, 2))
    assert build_variable_graph([nabla(0, (0,))]).edges == frozenset()
    assert build_variable_graph([nabla(0, (0, 2)), nabla(1, (1, 0))]).edges == edges1((2, 1), (1, 2))


# --- cycles, SCCs, order ------------------------------------------------------------


def test_cycle_vertices_examples():
    assert cycle_vertices(DiGraph(2, edges1((1, 2), (2, 1)))) == {0, 1}
    assert cycle_vertices(DiGraph(3, edges1((1, 2), (2, 3)))) == set()
    assert cycle_vertices(DiGraph(3, edges1((1, 2), (2, 1), (2, 3)))) == {0, 1}


def test_self_loop_is_a_cycle():
    assert cycle_vertices(DiGraph(2, edges1((2, 2)))) == {1}


def test_topological_order_examples():
    assert topological_order(DiGraph(3, edges1((1, 2), (1, 3), (2, 3)))) == Ordering((0, 1, 2))
    assert topological_order(DiGraph(3)) == Ordering((0, 1, 2))
    assert topological_order(DiGraph(2, edges1((1, 2), (2, 1)))) == CycleWitness((0, 1, 0))


def test_topological_order_tie_break():
    # 3 must precede 1; 2 is free and smallest-first puts it right after 3's release
    assert topological_order(DiGraph(3, edges1((3, 1)))) == Ordering((1, 2, 0))


def test_out_of_range_edge_rejected():
    with pytest.raises(ValueError):
        DiGraph(2, frozenset({(0, 2)}))


def test_to_dot_examples():
    assert to_dot(DiGraph(1)) == "digraph G {\n  1;\n}\n"
    assert to_dot(DiGraph(2, edges1((2, 1), (1, 2)))) == "digraph G {\n  1;\n  2;\n  1 -> 2;\n  2 -> 1;\n}\n"


def test_to_dot_golden_chain_r1():
    ex1 = [delta((1, 0), (1, -1)), delta((0, 1), (0, 1))]
    g = build_gamma_type2(ex1, labels=[pretty(d) for d in ex1])
    assert to_dot(g) == (GOLDEN / "chain_r1_gamma.dot").read_text()


def test_to_dot_escapes_quotes():
    assert '[label="a\\"b"]' in to_dot(DiGraph(1, labels=('a"b',)))


# --- properties ------------------------------------------------------------------------


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 7))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    return DiGraph(n, frozenset(pairs))


def _reachable(g, start):
    succ = g.successors()
    seen, stack = set(), list(succ[start])
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(succ[v])
    return seen


@given(graphs())
def test_cycle_vertices_match_reachability(g):
    expected = {v for v in range(g.vertex_count) if v in _reachable(g, v)}
    assert cycle_vertices(g) == expected


@given(graphs())
def test_acyclic_iff_ordering(g):
    res = topological_order(g)
    assert (not cycle_vertices(g)) == isinstance(res, Ordering)
    if isinstance(res, Ordering):
        pos = {v: k for k, v in enumerate(res.order)}
        assert sorted(res.order) == list(range(g.vertex_count))
        assert all(pos[u] < pos[v] for u, v in g.edges)
    else:
        cyc = res.cycle
        assert cyc[0] == cyc[-1] and all((u, v) in g.edges for u, v in zip(cyc, cyc[1:]))


@given(graphs(), st.randoms(use_true_random=False))
def test_cycle_vertices_relabel_invariant(g, rnd):
    perm = list(range(g.vertex_count))
    rnd.shuffle(perm)
    assert cycle_vertices(g.relabeled(perm)) == {perm[v] for v in cycle_vertices(g)}


@given(graphs())
def test_sccs_partition_vertices(g):
    comps = strongly_connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.vertex_count))
    for c in comps:
        for v in c:
            assert set(c) - {v} <= _reachable(g, v)


@given(graphs())
def test_find_cycle_through_cycle_vertices(g):
    for v in cycle_vertices(g):
        cyc = find_cycle_through(g, v)
        assert cyc[0] == cyc[-1] == v
        assert all((a, b) in g.edges for a, b in zip(cyc, cyc[1:]))


def test_type1_graph_has_no_self_loops_and_matches_variable_graph():
    rng = random.Random(11)
    for _ in range(300):
        gens = random_type1_set(rng)
        gamma = build_gamma_type1([classify(d) for d in gens])
        assert all(u != v for u, v in gamma.edges)
        if not cycle_vertices(gamma):
            assert not cycle_vertices(build_variable_graph(gens))
