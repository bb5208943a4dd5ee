from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab.errors import PreconditionError, StateSpaceOverflow
from schemespinlab.exactalg import Mat, cyclo_sqrt_int, schur_inverse
from schemespinlab.knotstat import (StateGraph, apply_r2, invariance_check, partition_function, r2_pair_graph,
                                    schur_pair, star_graph, star_triangle_check, state_count, triangle_graph)
from schemespinlab.spinmodel import potts_spin_model

W = Mat([[1, 2], [3, 5]])


@st.composite
def graphs(draw, max_vertices=4):
    v = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1), st.sampled_from([1, -1])),
                          max_size=5))
    return StateGraph(v, tuple(edges))


@st.composite
def weights(draw):
    n = draw(st.integers(2, 3))
    entries = st.integers(1, 4) | st.integers(-4, -1)
    return Mat([[draw(entries) for _ in range(n)] for _ in range(n)])


def test_single_edge_and_loop():
    edge = StateGraph(2, ((0, 1, "+"),))
    loop = StateGraph(1, ((0, 0, "-"),))
    assert partition_function(edge, W, W) == 11
    assert partition_function(loop, W, W) == 6


def test_signs_accept_symbols():
    g = StateGraph(2, ((0, 1, "+"), (0, 1, "-")))
    assert g.edges == ((0, 1, 1), (0, 1, -1))
    assert StateGraph.from_json(g.to_json()) == g


def test_edge_to_missing_vertex():
    with pytest.raises(PreconditionError):
        StateGraph(2, ((0, 2, 1),))


def test_fixed_vertices():
    edge = StateGraph(2, ((0, 1, 1),))
    assert partition_function(edge, W, W, fixed={0: 1}) == 8


def test_state_cap():
    g = StateGraph(12)
    assert state_count(g, 2) == 4096
    with pytest.raises(StateSpaceOverflow):
        partition_function(g, W, W, cap=1000)


@given(graphs(), weights())
@settings(max_examples=30, deadline=None)
def test_all_ones_weights_count_colourings(g, w):
    J = Mat.ones(w.n)
    assert partition_function(g, J, J) == w.n ** g.vertices


@given(graphs(3), graphs(3), weights())
@settings(max_examples=30, deadline=None)
def test_disjoint_union_multiplies(g, h, w):
    wm = schur_inverse(w)
    joined = partition_function(g.disjoint_union(h), w, wm)
    assert joined == partition_function(g, w, wm) * partition_function(h, w, wm)


@given(weights())
@settings(max_examples=20, deadline=None)
def test_r2_with_schur_inverse(w):
    assert invariance_check(r2_pair_graph(), [(0, 1)], *schur_pair(w)).passed


def test_r2_with_unrelated_weights_fails():
    rep = invariance_check(r2_pair_graph(), [(0, 1)], W, Mat.ones(2))
    assert not rep.passed and rep.z_before == 11 and rep.z_after == 4


def test_r2_needs_opposite_edges():
    with pytest.raises(PreconditionError):
        apply_r2(StateGraph(2, ((0, 1, 1),)), 0, 1)


def test_r2_inside_larger_graph():
    g = StateGraph(3, ((0, 1, 1), (0, 1, -1), (1, 2, 1)))
    rng = np.random.default_rng(5)
    wp = Mat((rng.normal(size=(3, 3)) + 3).tolist(), "approx")
    assert invariance_check(g, [(0, 1)], wp, schur_inverse(wp)).passed


def test_canonical_graphs():
    assert star_graph().vertices == 4 and triangle_graph().vertices == 3
    assert partition_function(star_graph(), Mat.ones(2), Mat.ones(2)) == 16


def test_potts3_star_triangle():
    s = potts_spin_model(3)
    assert star_triangle_check(s.Wminus, s.Wplus, cyclo_sqrt_int(3)).holds
    bad = star_triangle_check(s.Wminus, s.Wplus, -cyclo_sqrt_int(3))
    assert not bad.holds and bad.worst is not None
