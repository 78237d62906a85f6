import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from nmrdelayed.numcore import ValidationError, basis_ket, projector
from nmrdelayed.spinmodel import (
    DeviationMatrix,
    Normalization,
    SpinSystem,
    full_density,
    observable_trace,
    pseudo_pure,
    thermal_deviation,
)
from oracles import superposition_ket, random_ket


def test_spin_system_defaults_and_validation():
    s = SpinSystem()
    assert s.j_coupling == 215.1
    assert s.half_j_period == pytest.approx(2.3245e-3, rel=1e-4)
    with pytest.raises(ValidationError):
        SpinSystem(j_coupling=0)
    with pytest.raises(ValidationError):
        SpinSystem(epsilon=0.05)


def test_pseudo_pure_ground():
    d = pseudo_pure(basis_ket(0))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_array_equal(d.delta, expected)
    assert d.normalization is Normalization.PROJECTOR


def test_pseudo_pure_bell():
    d = pseudo_pure(np.array([1, 0, 0, 1]) / math.sqrt(2))
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(d.delta, expected, atol=1e-15)


def test_pseudo_pure_superposition_state():
    ket = (np.kron([1, 0], [1, 1]) / math.sqrt(2) + np.kron([0, 1], [1, 0])) / math.sqrt(2)
    d = pseudo_pure(superposition_ket(math.pi / 2, 0.0))
    np.testing.assert_allclose(d.delta, np.outer(ket, ket.conj()), atol=1e-15)


def test_pseudo_pure_rejects_unnormalized():
    with pytest.raises(ValidationError):
        pseudo_pure([1, 1, 0, 0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pseudo_pure_idempotent(seed):
    d = pseudo_pure(random_ket(np.random.default_rng(seed))).delta
    np.testing.assert_allclose(d @ d, d, atol=1e-10)


def test_full_density_examples():
    d = pseudo_pure(basis_ket(0))
    np.testing.assert_allclose(full_density(SpinSystem(epsilon=0.0), d), np.eye(4) / 4)
    mixed = DeviationMatrix(np.eye(4) / 4)
    np.testing.assert_allclose(full_density(SpinSystem(epsilon=5e-3), mixed), np.eye(4) / 4, atol=1e-17)
    rho = full_density(SpinSystem(epsilon=1e-5), d)
    np.testing.assert_allclose(
        rho, np.diag([0.25 + 7.5e-6, 0.25 - 2.5e-6, 0.25 - 2.5e-6, 0.25 - 2.5e-6]), atol=1e-16
    )


def test_full_density_rejects_raw():
    with pytest.raises(ValidationError):
        full_density(SpinSystem(), thermal_deviation())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(0, 1e-4))
def test_full_density_unit_trace_positive(seed, eps):
    d = pseudo_pure(random_ket(np.random.default_rng(seed)))
    rho = full_density(SpinSystem(epsilon=eps), d)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() >= 0


def test_observable_trace_examples():
    d = pseudo_pure(basis_ket(0))
    assert observable_trace(d, projector(basis_ket(0))) == 1.0
    assert observable_trace(d, projector(basis_ket(2))) == 0.0
    # sin^2(pi/4) cos^2(0) via the dephased closed form
    from nmrdelayed.experiment import expected_dephased_deviation

    dz = expected_dephased_deviation(math.pi / 2, 0.0)
    assert observable_trace(dz, projector(basis_ket(2))) == pytest.approx(0.5, abs=1e-15)


def test_observable_trace_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        observable_trace(pseudo_pure(basis_ket(0)), 1j * np.eye(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(-3, 3), st.floats(-3, 3))
def test_observable_trace_linear_and_covariant(seed, s, t):
    rng = np.random.default_rng(seed)
    d = pseudo_pure(random_ket(rng))
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a, b = a + a.conj().T, b + b.conj().T
    lhs = observable_trace(d, s * a + t * b)
    assert lhs == pytest.approx(s * observable_trace(d, a) + t * observable_trace(d, b), abs=1e-9)
    u = unitary_group.rvs(4, random_state=seed % 2**32)
    d2 = DeviationMatrix(u @ d.delta @ u.conj().T)
    assert observable_trace(d2, u @ a @ u.conj().T) == pytest.approx(observable_trace(d, a), abs=1e-9)


def test_deviation_matrix_invariants():
    with pytest.raises(ValidationError):
        DeviationMatrix(np.diag([2.0, 0, 0, 0]))
    with pytest.raises(ValidationError):
        DeviationMatrix(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(ValidationError):
        DeviationMatrix.raw(np.triu(np.ones((4, 4))))
    d = pseudo_pure(basis_ket(1))
    with pytest.raises(ValueError):
        d.delta[0, 0] = 1


def test_thermal_deviation_traceless():
    t = thermal_deviation(0.2514)
    assert t.normalization is Normalization.RAW
    assert t.trace == pytest.approx(0.0)
    np.testing.assert_allclose(np.diag(t.delta).real, [1.2514, 0.7486, -0.7486, -1.2514])
