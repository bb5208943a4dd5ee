from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab import catalog
from schemespinlab.errors import PreconditionError, StrandMismatch
from schemespinlab.exactalg import Cyclo, Mat, cyclo_sqrt_int
from schemespinlab.tlbraid import (TLElement, adjoint_diagram, braid_representation, catalan, closure_loops,
                                   commuting_square_check, compose_diagrams, cup_cap, enumerate_diagrams,
                                   identity_diagram, is_planar, jones_index_values, make_diagram, markov_trace,
                                   tl_from_json, tl_generators, tl_to_json, verify_tl_relations)

N = 4
DIAGRAMS = enumerate_diagrams(N)


@st.composite
def elements(draw, delta=3):
    picks = draw(st.lists(st.tuples(st.sampled_from(DIAGRAMS), st.integers(-3, 3)), min_size=1, max_size=4))
    x = TLElement(N, delta)
    for d, c in picks:
        x = x + TLElement.diagram(N, delta, d, c)
    return x


def test_catalan_numbers():
    assert [catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert [len(enumerate_diagrams(n)) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]


def test_crossing_pairing_is_refused():
    assert not is_planar(((0, 4), (1, 3), (2, 5)), 3)
    with pytest.raises(ValueError):
        make_diagram([(0, 3), (1, 2)], 2)


def test_cup_cap_squares_to_a_loop():
    e = cup_cap(3, 1)
    assert compose_diagrams(e, e, 3) == (e, 1)
    assert compose_diagrams(identity_diagram(3), e, 3) == (e, 0)


def test_closure_loop_counts():
    assert closure_loops(identity_diagram(3), 3) == 3
    assert closure_loops(cup_cap(3, 1), 3) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("delta", [2, "phi"])
def test_tl_relations_exact(n, delta):
    if delta == "phi":
        delta = (1 + cyclo_sqrt_int(5)) / 2
    rep = verify_tl_relations(n, delta)
    assert rep.exact and rep.passed and rep.residual == 0


def test_tl_relations_numeric():
    rep = verify_tl_relations(4, 1.7)
    assert not rep.exact and rep.passed


def test_markov_trace_of_generators():
    delta = (1 + cyclo_sqrt_int(5)) / 2
    for e in tl_generators(4, delta):
        assert markov_trace(e) == 1 / (delta * delta)
    assert markov_trace(TLElement.identity(4, delta)) == 1


@given(elements(), elements())
@settings(max_examples=40, deadline=None)
def test_trace_is_tracial(x, y):
    assert markov_trace(x * y) == markov_trace(y * x)


@given(elements(), elements(), elements())
@settings(max_examples=25, deadline=None)
def test_product_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(elements(), elements())
@settings(max_examples=25, deadline=None)
def test_adjoint_reverses_products(x, y):
    assert (x * y).adjoint() == y.adjoint() * x.adjoint()


def test_adjoint_diagram_is_an_involution():
    for d in DIAGRAMS:
        assert adjoint_diagram(adjoint_diagram(d, N), N) == d


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        tl_generators(3, 2)[0] * tl_generators(4, 2)[0]


def test_json_round_trip():
    delta = Cyclo.root(5) + 1
    x = tl_generators(3, delta)[0] * tl_generators(3, delta)[1]
    assert tl_from_json(tl_to_json(x)) == x


def test_braid_relations_exact_at_root_of_unity():
    rep = braid_representation(4, Cyclo.root(20))
    assert rep.exact and rep.passed and rep.residual == 0


def test_braid_needs_nonzero_loop_value():
    with pytest.raises(PreconditionError):
        braid_representation(3, Cyclo.root(8))


@given(st.floats(0.5, 1.5), st.floats(0, 6.28))
@settings(max_examples=15, deadline=None)
def test_braid_relations_numeric(r, angle):
    import cmath
    A = r * cmath.exp(1j * angle)
    if abs(A * A + A ** -2) < 1e-3:
        return
    assert braid_representation(3, A).residual < 1e-10


def test_jones_index_values():
    assert jones_index_values(3) == 1
    assert jones_index_values(4) == 2
    assert jones_index_values(5) == (3 + cyclo_sqrt_int(5)) / 2
    assert jones_index_values(6) == 3
    with pytest.raises(PreconditionError):
        jones_index_values(2)


@pytest.mark.parametrize("name", ["W1", "W2", "W3"])
def test_catalog_matrices_give_commuting_squares(name):
    rep = commuting_square_check(catalog.build(catalog.get(name)))
    assert rep.passed and rep.residual == 0 and rep.type_ii


def test_identity_fails_with_witness():
    rep = commuting_square_check(Mat.identity(3))
    assert not rep.passed and rep.witness == (0, 0) and not rep.type_ii


def test_non_hadamard_invertible_matrix_fails():
    rep = commuting_square_check(Mat([[1, 2], [3, 4]]))
    assert not rep.passed and rep.witness is not None
