from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab import catalog
from schemespinlab.errors import NotAScheme
from schemespinlab.exactalg import Mat
from schemespinlab.scheme import (cyclic_group_table, distance_scheme, eigenmatrices, generalized_hamming,
                                  group_scheme, hamming_scheme, hypergroup_coefficients, intersection_numbers,
                                  krein_parameters, krein_violations, scheme_from_json, scheme_to_json,
                                  self_duality_check, su2_clebsch_gordan, trivial_scheme, verify_axioms)


def _petersen() -> np.ndarray:
    pairs = list(itertools.combinations(range(5), 2))
    return np.array([[int(not set(a) & set(b)) for b in pairs] for a in pairs])


def test_cyclic_three_cycle_is_a_scheme():
    shift = np.roll(np.eye(3, dtype=int), 1, axis=1)
    s = verify_axioms([np.eye(3, dtype=int), shift, shift.T])
    assert s.valencies == (1, 1, 1)
    assert s.transpose_index == (0, 2, 1)


def test_partition_failure_names_a_cell():
    with pytest.raises(NotAScheme) as info:
        verify_axioms([np.eye(3, dtype=int), np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]])])
    assert info.value.witness == (1, 2)


def test_hamming_3_2_tables():
    h = hamming_scheme(3, 2)
    P, Q = eigenmatrices(h)
    krawtchouk = [[1, 3, 3, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -3, 3, -1]]
    assert P == Mat(krawtchouk)
    assert Q == Mat(krawtchouk)
    assert intersection_numbers(h)[1].tolist() == [[0, 1, 0, 0], [1, 0, 2, 0], [0, 2, 0, 1], [0, 0, 1, 0]]
    assert krein_violations(h) == []
    rep = self_duality_check(h)
    assert rep.is_self_dual and rep.permutation == (0, 1, 2, 3)


def test_petersen_distance_scheme():
    s = distance_scheme(_petersen())
    assert s.valencies == (1, 3, 6)
    assert intersection_numbers(s)[1].tolist() == [[0, 1, 0], [1, 0, 2], [0, 2, 4]]
    P, _ = eigenmatrices(s)
    assert P == Mat([[1, 3, 6], [1, 1, -2], [1, -2, 1]])
    assert not self_duality_check(s).is_self_dual


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_cyclic_groups_are_self_dual(m):
    s = group_scheme(cyclic_group_table(m))
    assert s.valencies == (1,) * m
    assert self_duality_check(s).is_self_dual


@pytest.mark.parametrize("m", [3, 4, 5])
def test_eigenmatrices_are_mutually_inverse(m):
    s = group_scheme(cyclic_group_table(m))
    P, Q = eigenmatrices(s)
    assert P @ Q == Mat.identity(m).scale(m)


def test_generalized_hamming_of_trivial_base():
    g = generalized_hamming(2, trivial_scheme(4))
    assert g.valencies == (1, 6, 9)


def test_scheme16_krein_equals_intersection():
    s = catalog.build(catalog.get("scheme16"))
    p, q = intersection_numbers(s), krein_parameters(s)
    assert s.valencies == (1, 6, 3, 6)
    assert all(p[idx] == q[idx] for idx in np.ndindex(p.shape))


def test_hypergroup_coefficients_of_hamming():
    c = hypergroup_coefficients(hamming_scheme(3, 2))
    assert c[1].tolist() == [[0, Fraction(1, 8), 0, 0], [Fraction(1, 8), 0, Fraction(1, 12), 0],
                             [0, Fraction(1, 12), 0, Fraction(1, 8)], [0, 0, Fraction(1, 8), 0]]


def test_su2_fusion_probabilities():
    assert su2_clebsch_gordan(2, 1) == Fraction(1, 4)
    assert su2_clebsch_gordan(2, 3) == Fraction(3, 4)
    assert su2_clebsch_gordan(2, 2) == 0
    with pytest.raises(ValueError):
        su2_clebsch_gordan(0, 1)


def test_json_round_trip():
    h = hamming_scheme(2, 3)
    back = scheme_from_json(scheme_to_json(h))
    assert back.valencies == h.valencies
    assert np.array_equal(back.mats, h.mats)


@given(st.integers(2, 7))
@settings(max_examples=6, deadline=None)
def test_valencies_sum_to_vertex_count(m):
    s = group_scheme(cyclic_group_table(m))
    p = intersection_numbers(s)
    assert sum(s.valencies) == s.n
    # p^0_{ij} = k_i when j is the transpose of i
    for i in range(s.d + 1):
        assert p[0, i, s.transpose_index[i]] == s.valencies[i]
