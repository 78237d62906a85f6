"""Two-spin Pauli tomography by linear inversion."""

from __future__ import annotations

import itertools
import json
import logging
from collections.abc import Mapping

import numpy as np

from .numcore import I2, SX, SY, SZ, kron
from .spinmodel import DeviationMatrix, Normalization

__all__ = ["PAULI_LABELS", "pauli", "PauliExpectations", "measure_expectations", "reconstruct", "perturb"]

log = logging.getLogger(__name__)

_SINGLE = {"I": I2, "X": SX, "Y": SY, "Z": SZ}
# First letter acts on the ancilla.
PAULI_LABELS = tuple(a + b for a, b in itertools.product("IXYZ", repeat=2) if a + b != "II")


def pauli(label: str) -> np.ndarray:
    a, b = label.upper()
    return kron(_SINGLE[a], _SINGLE[b])


_PAULIS = {label: pauli(label) for label in PAULI_LABELS}


class PauliExpectations(Mapping):
    """The 15 non-trivial two-spin Pauli expectation values."""

    def __init__(self, values: Mapping[str, float]):
        vals = {k.upper(): float(v) for k, v in values.items()}
        if set(vals) != set(PAULI_LABELS):
            missing = sorted(set(PAULI_LABELS) - set(vals))
            extra = sorted(set(vals) - set(PAULI_LABELS))
            raise ValueError(f"need exactly the 15 Pauli labels; missing {missing}, unexpected {extra}")
        self._values = {k: vals[k] for k in PAULI_LABELS}

    def __getitem__(self, key):
        return self._values[key.upper()]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f"PauliExpectations({self._values!r})"

    def to_json(self) -> str:
        return json.dumps(self._values, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PauliExpectations":
        return cls(json.loads(text))


def measure_expectations(d: DeviationMatrix) -> PauliExpectations:
    """``Tr(delta P)`` for every non-identity Pauli pair ``P``."""
    out = {}
    for label, p in _PAULIS.items():
        v = np.trace(d.delta @ p)
        assert abs(v.imag) < 1e-10, (label, v)
        out[label] = v.real
    return PauliExpectations(out)


def reconstruct(e: PauliExpectations) -> DeviationMatrix:
    """``(I + sum_P <P> P) / 4``.

    Unit trace and Hermitian by construction. Inputs that do not come from a
    physical state may give negative eigenvalues; those are logged and the
    result is tagged ``RAW`` rather than rejected.
    """
    m = np.eye(4, dtype=complex)
    for label, p in _PAULIS.items():
        m = m + e[label] * p
    m /= 4
    lo = float(np.linalg.eigvalsh(m).min())
    if lo < -1e-10:
        log.warning("reconstructed deviation matrix is not positive (min eigenvalue %.3e)", lo)
        return DeviationMatrix(m, Normalization.RAW)
    return DeviationMatrix(m)


def perturb(e: PauliExpectations, sigma: float, seed: int) -> PauliExpectations:
    """Add seeded Gaussian noise of width ``sigma`` to every value, clamped to [-1, 1]."""
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    if sigma == 0:
        return PauliExpectations(dict(e))
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=len(PAULI_LABELS))
    return PauliExpectations(
        {k: float(np.clip(e[k] + n, -1.0, 1.0)) for k, n in zip(PAULI_LABELS, noise)}
    )
