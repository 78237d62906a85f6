import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmrdelayed.experiment import expected_dephased_deviation
from nmrdelayed.numcore import basis_ket
from nmrdelayed.spinmodel import DeviationMatrix, Normalization, pseudo_pure
from nmrdelayed.tomo import PAULI_LABELS, PauliExpectations, measure_expectations, pauli, perturb, reconstruct
from oracles import random_hermitian_trace1, random_ket


def test_labels():
    assert len(PAULI_LABELS) == 15 and "II" not in PAULI_LABELS
    assert PAULI_LABELS[0] == "IX" and PAULI_LABELS[-1] == "ZZ"
    np.testing.assert_array_equal(pauli("ZI"), np.diag([1, 1, -1, -1]))


def test_ground_state_expectations():
    e = measure_expectations(pseudo_pure(basis_ket(0)))
    for k in PAULI_LABELS:
        assert e[k] == pytest.approx(1.0 if k in ("ZI", "IZ", "ZZ") else 0.0, abs=1e-15)


def test_maximally_mixed():
    e = measure_expectations(DeviationMatrix(np.eye(4) / 4))
    assert all(v == 0 for v in e.values())


def test_dephased_zi_vanishes_at_half_alpha():
    e = measure_expectations(expected_dephased_deviation(math.pi / 2, math.pi / 2))
    assert e["ZI"] == pytest.approx(0.0, abs=1e-15)


def test_reconstruct_examples():
    np.testing.assert_array_equal(reconstruct(PauliExpectations(dict.fromkeys(PAULI_LABELS, 0.0))).delta, np.eye(4) / 4)
    rng = np.random.default_rng(0)
    for _ in range(10):
        d = pseudo_pure(random_ket(rng))
        np.testing.assert_allclose(reconstruct(measure_expectations(d)).delta, d.delta, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip_hermitian_trace1(seed):
    d = DeviationMatrix.raw(random_hermitian_trace1(np.random.default_rng(seed)))
    np.testing.assert_allclose(reconstruct(measure_expectations(d)).delta, d.delta, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=15, max_size=15))
def test_reconstruct_always_hermitian_unit_trace(vals):
    d = reconstruct(PauliExpectations(dict(zip(PAULI_LABELS, vals))))
    np.testing.assert_allclose(d.delta, d.delta.conj().T, atol=0)
    assert d.trace == pytest.approx(1.0, abs=1e-12)


def test_unphysical_input_reported_not_rejected(caplog):
    d = reconstruct(PauliExpectations(dict.fromkeys(PAULI_LABELS, 1.0)))
    assert d.normalization is Normalization.RAW
    assert d.min_eigenvalue() < 0
    assert "not positive" in caplog.text


def test_perturb_zero_and_determinism():
    e = measure_expectations(pseudo_pure(random_ket(np.random.default_rng(4))))
    assert dict(perturb(e, 0.0, 1)) == dict(e)
    assert dict(perturb(e, 0.05, 9)) == dict(perturb(e, 0.05, 9))
    assert dict(perturb(e, 0.05, 9)) != dict(perturb(e, 0.05, 10))
    assert all(-1 <= v <= 1 for v in perturb(e, 5.0, 1).values())
    with pytest.raises(ValueError):
        perturb(e, -1, 0)


def test_perturb_linear_bound_and_slope():
    rng = np.random.default_rng(6)
    errs = {s: [] for s in (0.001, 0.01, 0.1)}
    for trial in range(20):
        d = pseudo_pure(random_ket(rng))
        e = measure_expectations(d)
        for s in errs:
            rec = reconstruct(perturb(e, s, trial))
            errs[s].append(np.abs(rec.delta - d.delta).max())
    assert max(errs[0.01]) <= 15 * 0.01
    means = {s: np.mean(v) for s, v in errs.items()}
    # error grows linearly with sigma: a 10x step in sigma is a ~10x step in error
    assert means[0.01] / means[0.001] == pytest.approx(10, rel=0.1)
    assert means[0.1] / means[0.01] == pytest.approx(10, rel=0.2)


def test_json_roundtrip():
    e = measure_expectations(expected_dephased_deviation(math.pi / 2, math.pi / 4))
    text = e.to_json()
    assert list(json.loads(text)) == list(PAULI_LABELS)
    assert dict(PauliExpectations.from_json(text)) == dict(e)


def test_rejects_incomplete():
    with pytest.raises(ValueError, match="missing"):
        PauliExpectations({"ZZ": 1.0})


def test_tomogram_panel_structure():
    # alpha = pi/2, theta = pi/4: blocks weight 1/2; particle block fringes carry e^{i theta}
    t = math.pi / 4
    d = reconstruct(measure_expectations(expected_dephased_deviation(math.pi / 2, t))).delta
    np.testing.assert_allclose(d[:2, 2:], 0, atol=1e-12)
    np.testing.assert_allclose(d[:2, :2].real, [[0.25, 0.25 * math.cos(t)], [0.25 * math.cos(t), 0.25]], atol=1e-12)
    np.testing.assert_allclose(
        d[2:, 2:].real,
        [[0.5 * math.cos(t / 2) ** 2, 0], [0, 0.5 * math.sin(t / 2) ** 2]],
        atol=1e-12,
    )
    assert d[2, 3] == pytest.approx(0.5 * 1j * math.sin(t / 2) * math.cos(t / 2), abs=1e-12)
