from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemespinlab import catalog
from schemespinlab.errors import NotDistinct, PreconditionError, SynthesisFailure
from schemespinlab.exactalg import Cyclo, Mat, cyclo_sqrt_int
from schemespinlab.scheme import cyclic_group_table, eigenmatrices, group_scheme
from schemespinlab.spinmodel import (is_type_ii, is_type_iii, modular_invariance_check, nomura_algebra,
                                     nomura_algebra_direct, potts_parameters, potts_spin_model,
                                     require_synthesis, scheme_modular_check, spans_same,
                                     spin_model_from_scheme, synthesize_spin_model)


def _fourier(m: int) -> Mat:
    z = Cyclo.root(m)
    return Mat([[z ** (i * j) for j in range(m)] for i in range(m)])


def test_catalog_matrices_are_type_ii():
    for name in ("W1", "W2", "W3"):
        rep = is_type_ii(catalog.build(catalog.get(name)))
        assert rep.is_type_ii and rep.residual == 0


def test_all_ones_is_not_type_ii():
    assert not is_type_ii(Mat.ones(3)).is_type_ii


def test_hadamard_j_minus_2i():
    W = Mat.ones(4) - Mat.identity(4).scale(2)
    assert is_type_ii(W).is_type_ii


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_fourier_matrix_nomura_is_cyclic_scheme(m):
    W = _fourier(m)
    assert is_type_ii(W).is_type_ii
    nom = nomura_algebra(W)
    assert nom.dimension == m
    assert spans_same(nom.basis, group_scheme(cyclic_group_table(m)).classes)


def test_direct_nomura_agrees():
    W = catalog.build(catalog.get("W2"))
    assert nomura_algebra_direct(W).dimension == nomura_algebra(W).dimension == 3


def test_small_hadamard_is_not_type_iii():
    rep = is_type_iii(catalog.build(catalog.get("W1")))
    assert not rep.holds and rep.sign is None
    assert set(rep.worst_triple) == {1, -1}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_potts_models_exact(n):
    s = potts_spin_model(n)
    t = potts_parameters(n)[0]
    assert s.mode == "exact"
    assert t + 1 / t == n - 2
    assert s.type_ii.is_type_ii and s.type_iii.holds and s.type_iii.sign == 1
    assert s.loop_scalar * s.loop_scalar == n


def test_potts_five_falls_back_to_floats():
    s = potts_spin_model(5)
    assert s.mode == "approx"
    assert s.type_iii.holds
    assert abs(complex(s.loop_scalar) - 5 ** 0.5) < 1e-12


def test_potts3_modular_scalar_matches_parameters():
    s = potts_spin_model(3)
    rep = scheme_modular_check(s)
    assert rep.proportional and rep.matches_expected
    assert rep.mu == s.loop_scalar ** 3 / s.a


def test_modular_check_rejects_non_diagonal_t():
    P, _ = eigenmatrices(group_scheme(cyclic_group_table(3)))
    with pytest.raises(PreconditionError):
        modular_invariance_check(P, Mat.ones(3))


def test_repeated_coefficients_are_refused():
    s = group_scheme(cyclic_group_table(3))
    with pytest.raises(NotDistinct):
        spin_model_from_scheme(s, (1, cyclo_sqrt_int(-3), cyclo_sqrt_int(-3)))


def test_synthesis_on_z3_only_finds_repeated_solutions():
    s = group_scheme(cyclic_group_table(3))
    res = synthesize_spin_model(s, seed=0, restarts=4)
    assert not res.found
    assert res.candidates and res.residual < 1e-8
    t = res.t
    assert abs(t[1] - t[2]) < 1e-6
    with pytest.raises(SynthesisFailure):
        require_synthesis(s, seed=0, restarts=4)


@given(st.integers(2, 6), st.integers(0, 5))
@settings(max_examples=15, deadline=None)
def test_type_ii_is_preserved_by_diagonal_scaling(m, k):
    # D1 W D2 with unit-modulus diagonals is still type II
    W = _fourier(m)
    z = Cyclo.root(7)
    D1 = Mat.diag([z ** ((k * i) % 7) for i in range(m)])
    D2 = Mat.diag([z ** ((k + i * i) % 7) for i in range(m)])
    assert is_type_ii(D1 @ W @ D2).is_type_ii


def test_random_complex_matrix_fails_type_ii():
    rng = np.random.default_rng(3)
    W = Mat((rng.normal(size=(3, 3)) + 2).tolist(), "approx")
    rep = is_type_ii(W)
    assert not rep.is_type_ii and rep.residual > 1e-3
