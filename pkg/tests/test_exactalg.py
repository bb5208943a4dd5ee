from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab.exactalg import (Cyclo, Mat, NotCyclotomic, SchurSingular, Surd, cyclo_sqrt_int,
                                    cyclotomic_polynomial, eigen_decomposition, exact_sqrt, inverse,
                                    mat_from_json, mat_to_json, nullspace_exact, rank, recognize,
                                    schur_inverse, schur_product, simultaneous_eigenprojections, totient)

ORDERS = st.sampled_from([3, 4, 5, 8, 12])
RATS = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclos(draw):
    n = draw(ORDERS)
    return Cyclo(n, draw(st.lists(RATS, min_size=1, max_size=n)))


def test_cyclotomic_polynomials_match_known_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert [totient(n) for n in (1, 5, 8, 12, 30)] == [1, 4, 4, 4, 8]


def test_roots_of_unity_and_demotion():
    z = Cyclo.root(5)
    assert z ** 5 == 1
    assert isinstance(Cyclo.root(4, 2), Fraction)
    assert Cyclo.root(4, 2) == -1
    # 2cos(2pi/5) = (sqrt5 - 1)/2
    assert z + z.inverse() == (cyclo_sqrt_int(5) - 1) / 2


def test_different_orders_compare_equal():
    assert Cyclo.root(3) == Cyclo.root(6, 2)
    assert Cyclo.root(4) * Cyclo.root(3) == Cyclo.root(12, 7)


@given(cyclos(), cyclos(), cyclos())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if a != 0:
        assert a * (1 / a) == 1


@given(cyclos())
@settings(max_examples=40, deadline=None)
def test_complex_embedding_is_a_homomorphism(a):
    assert abs(complex(a * a) - complex(a) ** 2) < 1e-9 * max(1.0, abs(complex(a)) ** 2)
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9 * max(1.0, abs(complex(a)))


def test_surd_arithmetic():
    r2 = Surd.sqrt(2)
    assert r2 * r2 == 2
    assert Surd.sqrt(8) == 2 * r2
    assert (1 + r2) * (r2 - 1) == 1
    assert abs(float(Surd.sqrt(3) + r2) - (3 ** 0.5 + 2 ** 0.5)) < 1e-12


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    i3 = exact_sqrt(-3)
    assert i3 * i3 == -3
    assert cyclo_sqrt_int(2) ** 2 == 2
    with pytest.raises(TypeError):
        exact_sqrt(2.0)


def test_exact_sqrt_reports_non_cyclotomic():
    # sqrt(1 + sqrt 2) generates a non-abelian extension
    with pytest.raises(NotCyclotomic):
        exact_sqrt(1 + cyclo_sqrt_int(2))


def test_recognize_needs_high_precision_input():
    with mpmath.workdps(80):
        assert recognize(Cyclo.root(5, 2).to_mpc(), hint=5) == Cyclo.root(5, 2)
        assert recognize(mpmath.sqrt(2) + mpmath.mpf(1) / 3) == cyclo_sqrt_int(2) + Fraction(1, 3)
        assert recognize(mpmath.pi) is None


def test_matrix_inverse_rank_and_nullspace():
    m = Mat([[1, 2], [3, 4]])
    assert m.mode == "exact"
    assert inverse(m) @ m == Mat.identity(2)
    assert rank(m) == 2
    assert nullspace_exact([[1, 1], [2, 2]]) == [[-1, 1]]


def test_schur_operations():
    m = Mat([[1, 2], [3, 4]])
    assert schur_product(m, schur_inverse(m)) == Mat.ones(2)
    with pytest.raises(SchurSingular):
        schur_inverse(Mat([[1, 0], [1, 1]]))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_exact_and_float_products_agree(rows):
    m = Mat(rows)
    prod = (m @ m.T).to_complex()
    a = np.array(rows, dtype=float)
    assert np.allclose(prod, a @ a.T)


def test_eigenprojections_of_swap():
    swap = Mat([[0, 1], [1, 0]])
    pairs = eigen_decomposition([swap])
    half = Fraction(1, 2)
    assert pairs[0][0] == Mat([[half, half], [half, half]])
    assert [vals for _, vals in pairs] == [[1], [-1]]


def test_eigenprojections_over_cyclotomic_field():
    # cyclic shift on Z_5 has eigenvalues zeta_5^k
    shift = Mat.from_perm([1, 2, 3, 4, 0])
    projs = simultaneous_eigenprojections([shift])
    assert len(projs) == 5
    total = Mat.zeros(5)
    for e in projs:
        assert e @ e == e
        total = total + e
    assert total == Mat.identity(5)


def test_json_round_trip_exact_and_approx():
    m = Mat([[Cyclo.root(5), Fraction(1, 3)], [0, cyclo_sqrt_int(2)]])
    assert mat_from_json(mat_to_json(m)) == m
    a = Mat([[1.5, 2j], [0.0, -1.0]], "approx")
    back = mat_from_json(mat_to_json(a))
    assert back.mode == "approx" and back.equals(a)
