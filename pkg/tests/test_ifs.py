from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab.errors import InvalidJacobi, NotDistanceRegular
from schemespinlab.exactalg import Mat
from schemespinlab.ifs import (JacobiCoefficients, boson_ladder, boundary_defect, build_ifs, compress_to_strata,
                               intersection_array, jacobi_matrix, orthopoly_recurrence, recurrence_residual,
                               sl2_check, sl2_jacobi, sl2_ladder, stratify_distance_regular)


def _hypercube(d: int) -> np.ndarray:
    n = 1 << d
    adj = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for bit in range(d):
            adj[u, u ^ (1 << bit)] = 1
    return adj


@pytest.mark.parametrize("bad, witness", [
    (((1, 0, 2), ()), (2, 3)),
    (((-1,), ()), 1),
    (((1,), (0,)), 1),
])
def test_invalid_jacobi_data(bad, witness):
    with pytest.raises(InvalidJacobi) as info:
        JacobiCoefficients(*bad)
    assert info.value.witness == witness


def test_jacobi_matrix_uses_square_roots():
    m = jacobi_matrix(JacobiCoefficients((1, 2, 3)))
    assert (m @ m).data[0, 0] == 1
    assert (m @ m).data[1, 1] == 3


def test_ladder_sum_is_jacobi_matrix():
    j = JacobiCoefficients((2, 6, 12), (1, 0, -1, 2))
    f = build_ifs(j)
    assert f.T == jacobi_matrix(j)
    assert f.Bplus.T == f.Bminus


def test_boson_defect_sits_on_last_level():
    defect = boundary_defect(boson_ladder(3))
    assert defect == Mat.diag([0, 0, 0, -4])


@pytest.mark.parametrize("d", [1, 2, 5, 12])
def test_sl2_ladders_are_exact(d):
    rep = sl2_check(sl2_ladder(d))
    assert rep.passed and rep.h_diagonal


def test_wrong_weights_fail_sl2():
    rep = sl2_check(build_ifs(JacobiCoefficients((1, 1))))
    assert not rep.passed and rep.residual_h_plus == 1.0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hypercube_stratification_gives_sl2_weights(d):
    f = stratify_distance_regular(_hypercube(d))
    assert f.jacobi.omega == sl2_jacobi(d).omega


def test_cube_intersection_array():
    arr = intersection_array(_hypercube(3))
    assert arr.b == (3, 2, 1, 0) and arr.c == (0, 1, 2, 3) and arr.sizes == (1, 3, 3, 1)
    assert compress_to_strata(_hypercube(3)) == sl2_ladder(3).T


def test_star_graph_is_not_distance_regular():
    star = np.zeros((4, 4), dtype=np.int64)
    star[0, 1:] = star[1:, 0] = 1
    with pytest.raises(NotDistanceRegular):
        intersection_array(star)


def test_recurrence_values():
    j = JacobiCoefficients((1, 2, 3))
    vals = orthopoly_recurrence(j, 4, [0, 1, 2])
    # P_4 = x^4 - 6x^2 + 3
    assert vals[4] == [3, -2, -5]
    assert recurrence_residual(j, vals, [0, 1, 2]) == 0


@given(st.integers(1, 10))
@settings(max_examples=10, deadline=None)
def test_top_polynomial_vanishes_on_sl2_spectrum(d):
    # the spectrum of the sl2 Jacobi matrix is -d, -d+2, ..., d
    xs = list(range(-d, d + 1, 2))
    vals = orthopoly_recurrence(sl2_jacobi(d), d + 1, xs)
    assert all(v == 0 for v in vals[d + 1])
    assert all(v != 0 for v in vals[d])


@given(st.lists(st.integers(1, 9), min_size=1, max_size=6),
       st.lists(st.fractions(-3, 3, max_denominator=4), min_size=7, max_size=7))
@settings(max_examples=25, deadline=None)
def test_top_polynomial_at_zero_is_signed_determinant(omega, alpha):
    j = JacobiCoefficients(tuple(omega), tuple(alpha[: len(omega) + 1]))
    m = np.array(jacobi_matrix(j).to_complex().real)
    eig = np.linalg.eigvalsh(m)
    top = orthopoly_recurrence(j, j.d + 1, [Fraction(0)])
    # the constant term of the monic P_{d+1} is (-1)^(d+1) det(T)
    assert abs(float(top[j.d + 1][0]) - (-1) ** (j.d + 1) * np.prod(eig)) < 1e-6 * max(1.0, abs(np.prod(eig)))
