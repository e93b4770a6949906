import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcskit import (
    EdgeSupport,
    FockVector,
    LeakageExceeded,
    Overflow,
    apply_k_ladder,
    apply_lowering,
    apply_raising,
    basis_state,
    hamiltonian_apply,
    inner,
    ladder_eigenstate,
    ladder_spectrum,
    lowering_power,
    number_falling_apply,
    pha_commutator_check,
    raising_power,
    time_evolve,
)


def random_state(rng, n_max=64, clear_top=8):
    c = rng.standard_normal(n_max) + 1j * rng.standard_normal(n_max)
    if clear_top:
        c[-clear_top:] = 0.0
    return FockVector(c / np.linalg.norm(c))


def test_fockvector_validation():
    with pytest.raises(ValueError):
        FockVector(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        FockVector(np.array([]))
    v = FockVector(np.array([3.0, 4.0]))
    assert v.norm() == pytest.approx(5.0)
    assert v.normalized().norm() == pytest.approx(1.0)


def test_basis_state_and_inner():
    v = basis_state(3, n_max=8)
    assert v.coeffs[3] == 1.0
    assert v.top_occupied() == 3
    w = basis_state(5, n_max=8)
    assert inner(v, w) == 0.0
    assert inner(v, v) == 1.0


def test_ladder_actions_on_basis():
    v = basis_state(4, n_max=16)
    low = apply_lowering(v)
    assert low.coeffs[3] == pytest.approx(math.sqrt(4))
    high = apply_raising(v)
    assert high.coeffs[5] == pytest.approx(math.sqrt(5))
    assert apply_lowering(basis_state(0, n_max=4)).norm() == 0.0


def test_raising_adjoint_to_lowering(rng):
    # with empty edge slots the truncated matrices are exact adjoints
    u = random_state(rng)
    v = random_state(rng)
    lhs = inner(apply_raising(u), v)
    rhs = inner(u, apply_lowering(v))
    assert abs(lhs - rhs) < 1e-14


def test_leakage_accounting():
    v = basis_state(7, n_max=8)
    with pytest.raises(LeakageExceeded):
        apply_raising(v)
    raised = apply_raising(v, leak_tol=np.inf)
    assert raised.norm() == 0.0
    assert raised.leakage == pytest.approx(8.0)  # n_max * |c_top|^2


def test_k_ladder_matches_repeated_single(rng):
    v = random_state(rng)
    for k in (1, 2, 3):
        stepped = v
        for _ in range(k):
            stepped = apply_lowering(stepped)
        direct = apply_k_ladder(v, lowering_power(k))
        assert np.allclose(direct.coeffs, stepped.coeffs, atol=1e-13)


def test_number_falling_is_lower_then_raise(rng):
    v = random_state(rng)
    for k in (1, 2, 3, 4):
        composed = apply_k_ladder(
            apply_k_ladder(v, lowering_power(k)), raising_power(k)
        )
        direct = number_falling_apply(v, k)
        assert np.allclose(direct.coeffs, composed.coeffs, atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(k=st.integers(1, 5), seed=st.integers(0, 2**32 - 1))
def test_commutator_residuals_property(k, seed):
    probe = random_state(np.random.default_rng(seed), n_max=96, clear_top=k + 4)
    res = pha_commutator_check(k, probe)
    assert res.lowering < 1e-12
    assert res.raising < 1e-12
    assert res.number_poly < 1e-12


def test_commutator_edge_guard(rng):
    probe = FockVector(np.ones(16) / 4.0)
    with pytest.raises(EdgeSupport):
        pha_commutator_check(3, probe)


def test_hamiltonian_apply():
    v = basis_state(2, n_max=4)
    assert hamiltonian_apply(v).coeffs[2] == pytest.approx(2.5)


def test_ladder_eigenstate():
    v = ladder_eigenstate(3, 2, 4, n_max=32)
    assert v.coeffs[3 * 4 + 2] == 1.0
    with pytest.raises(Overflow):
        ladder_eigenstate(3, 2, 10, n_max=32)
    with pytest.raises(ValueError):
        ladder_eigenstate(3, 3, 0)
    with pytest.raises(ValueError):
        ladder_eigenstate(2, 0, -1)


def test_spectrum_ladders():
    spec = ladder_spectrum(3, levels=4)
    assert np.array_equal(spec.ladders[0], [0.5, 3.5, 6.5, 9.5])
    assert np.array_equal(spec.ladders[1], [1.5, 4.5, 7.5, 10.5])
    assert np.array_equal(spec.ladders[2], [2.5, 5.5, 8.5, 11.5])
    with pytest.raises(ValueError):
        spec.merged(13)


def test_time_evolution_is_unitary(rng):
    v = random_state(rng)
    evolved = time_evolve(v, 0.37)
    assert evolved.norm() == pytest.approx(1.0, abs=1e-14)
    # one full oscillator period returns the state up to the ground phase
    full = time_evolve(v, 2.0 * math.pi)
    assert np.allclose(full.coeffs, -v.coeffs, atol=1e-12)
