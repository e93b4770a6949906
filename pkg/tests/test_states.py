import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcskit import (
    MCSLabel,
    MomentSet,
    Overflow,
    TailTooHeavy,
    UnsupportedOrder,
    a_norm_closed,
    a_norm_series,
    basis_state,
    build_mcs,
    eigenvalue_residual,
    geometric_phase,
    inner,
    moments,
    norm_sum,
    numeric_moments,
    revival_phase,
    time_evolve,
)

# frozen reference values, computed once from the defining series by hand
COSH_1 = 1.5430806348152437  # S_{2,0}(1)
S31_AT_1 = 1.0418653550989099  # S_{3,1}(1)


def brute_norm_sum(k, j, x, terms=400):
    # log-space so x^m and (km+j)! never overflow individually
    if x == 0.0:
        return 1.0 / math.factorial(j)
    return sum(
        math.exp(m * math.log(x) - math.lgamma(k * m + j + 1)) for m in range(terms)
    )


def test_norm_sum_known_values():
    assert norm_sum(1, 0, 1.0) == pytest.approx(math.e, rel=1e-15)
    assert norm_sum(2, 0, 1.0) == pytest.approx(COSH_1, rel=1e-15)
    assert norm_sum(3, 1, 1.0) == pytest.approx(S31_AT_1, rel=1e-15)
    # x = 0 keeps only the seed term
    assert norm_sum(4, 3, 0.0) == pytest.approx(1.0 / math.factorial(3))


@settings(max_examples=25, deadline=None)
@given(
    k=st.integers(1, 4),
    j=st.integers(0, 3),
    x=st.floats(0.0, 30.0, allow_nan=False),
)
def test_norm_sum_matches_brute_force(k, j, x):
    j = j % k
    assert norm_sum(k, j, x) == pytest.approx(brute_norm_sum(k, j, x), rel=1e-11)


def test_norm_sum_overflow():
    with pytest.raises(Overflow):
        norm_sum(1, 0, 1e308)


def test_label_validation():
    with pytest.raises(ValueError):
        MCSLabel(0, 0, 1.0)
    with pytest.raises(ValueError):
        MCSLabel(2, 2, 1.0)
    with pytest.raises(ValueError):
        MCSLabel(2, 1, complex("inf"))


@settings(max_examples=25, deadline=None)
@given(
    k=st.integers(1, 5),
    j=st.integers(0, 4),
    r=st.floats(0.0, 3.0, allow_nan=False),
    theta=st.floats(0.0, 2.0 * math.pi, allow_nan=False),
)
def test_support_pattern(k, j, r, theta):
    j = j % k
    state = build_mcs(MCSLabel(k, j, r * np.exp(1j * theta)))
    occupied = np.nonzero(state.coeffs)[0]
    assert occupied.size > 0
    assert np.all(occupied % k == j)


def test_build_is_normalized_eigenvector():
    label = MCSLabel(3, 1, 2.0 + 1.0j)
    state = build_mcs(label)
    assert state.norm() == pytest.approx(1.0, abs=1e-14)
    assert eigenvalue_residual(label, state) < 1e-12


def test_zero_alpha_is_basis_state():
    state = build_mcs(MCSLabel(4, 3, 0.0))
    assert abs(inner(state, basis_state(3))) == pytest.approx(1.0)


def test_tail_guard():
    with pytest.raises(TailTooHeavy):
        build_mcs(MCSLabel(1, 0, 4.0), n_max=8)


def test_momentset_rejects_bad_values():
    with pytest.raises(ValueError):
        MomentSet(0, 0, 0.5, 0.5, -1.0, 0.5, 0.5, 0.0, 0.5)
    with pytest.raises(ValueError):
        MomentSet(0, 0, 0.5, 0.5, 0.2, 0.2, 0.2, 0.0, 0.5)
    with pytest.raises(ValueError):
        MomentSet(0, 0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 1.5)


def test_coherent_moments_are_displaced_gaussian():
    alpha = 1.3 - 0.7j
    mom = moments(MCSLabel(1, 0, alpha))
    assert mom.mean_x == pytest.approx(math.sqrt(2.0) * alpha.real, abs=1e-12)
    assert mom.mean_p == pytest.approx(math.sqrt(2.0) * alpha.imag, abs=1e-12)
    assert mom.uncertainty_product == 0.5
    assert mom.a_norm_sq == pytest.approx(abs(alpha) ** 2, abs=1e-12)


def test_first_moments_vanish_for_higher_orders():
    for k, j in ((2, 0), (2, 1), (3, 2)):
        mom = moments(MCSLabel(k, j, 1.5 + 0.5j))
        assert mom.mean_x == 0.0
        assert mom.mean_p == 0.0


def test_order_two_cross_term():
    # only k=2 feels the direction of alpha: <x^2> - <p^2> = 2 Re alpha
    mom = moments(MCSLabel(2, 0, 1.2))
    assert mom.mean_x2 - mom.mean_p2 == pytest.approx(2.4, abs=1e-12)
    mom = moments(MCSLabel(3, 0, 1.2))
    assert mom.mean_x2 - mom.mean_p2 == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(theta=st.floats(0.0, 2.0 * math.pi, allow_nan=False))
def test_moment_phase_covariance_order_three(theta):
    ref = moments(MCSLabel(3, 1, 2.0))
    rot = moments(MCSLabel(3, 1, 2.0 * np.exp(1j * theta)))
    for name in MomentSet.__dataclass_fields__:
        assert getattr(rot, name) == pytest.approx(getattr(ref, name), abs=1e-12)


def test_closed_vs_series_number_expectation():
    for k in (2, 3):
        for j in range(k):
            for r in np.linspace(1e-3, 4.0, 25):
                series = a_norm_series(k, j, r * r)
                closed = a_norm_closed(MCSLabel(k, j, r))
                assert closed == pytest.approx(series, rel=1e-10)


def test_a_norm_closed_limits_and_orders():
    assert a_norm_closed(MCSLabel(2, 0, 0.0)) == 0.0
    assert a_norm_closed(MCSLabel(2, 1, 0.0)) == 1.0
    assert a_norm_closed(MCSLabel(3, 2, 0.0)) == 2.0
    with pytest.raises(UnsupportedOrder):
        a_norm_closed(MCSLabel(4, 0, 1.0))


def test_numeric_moments_match_route():
    # numeric_moments on the built vector is exactly what moments() checks
    label = MCSLabel(2, 1, 2.0 + 2.0j)
    closed = moments(label)
    numeric = numeric_moments(build_mcs(label))
    assert closed.mean_H == pytest.approx(numeric.mean_H, abs=1e-12)


def test_undersized_truncation_refuses():
    # alpha=3 cannot live in 12 levels; the tail guard fires before any
    # moment is reported
    with pytest.raises(TailTooHeavy):
        moments(MCSLabel(1, 0, 3.0), n_max=12)


def test_revival_phase_matches_evolution():
    label = MCSLabel(3, 2, 1.0 + 2.0j)
    state = build_mcs(label)
    cycled = time_evolve(state, 2.0 * math.pi / 3.0)
    expect = revival_phase(3, 2) * state.coeffs
    assert np.allclose(cycled.coeffs, expect, atol=1e-13)


def test_geometric_phase_closed_forms():
    for r in (0.5, 1.0, 2.0):
        beta0 = geometric_phase(MCSLabel(2, 0, r))
        beta1 = geometric_phase(MCSLabel(2, 1, r))
        assert beta0 == pytest.approx(math.pi * r * math.tanh(r), abs=1e-10)
        assert beta1 == pytest.approx(math.pi * (r / math.tanh(r) - 1.0), abs=1e-10)
    assert geometric_phase(MCSLabel(2, 0, 0.0)) == 0.0


def test_geometric_phase_grows_with_energy():
    small = geometric_phase(MCSLabel(3, 0, 0.5))
    large = geometric_phase(MCSLabel(3, 0, 2.5))
    assert 0.0 <= small < large
