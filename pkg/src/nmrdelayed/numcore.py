"""Small exact linear algebra for one- and two-spin operators.

Matrices are plain ``numpy`` complex arrays of shape (2, 2) or (4, 4).
Two-spin operators use the fixed tensor order ancilla (1H) first, system
(13C) second, so ``|a s>`` has index ``2*a + s``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "StructuralError",
    "ValidationError",
    "I2",
    "I4",
    "SX",
    "SY",
    "SZ",
    "HADAMARD",
    "CNOT_AS",
    "CH_AS",
    "as_operator",
    "frozen",
    "kron",
    "on_ancilla",
    "on_system",
    "rotation",
    "rz",
    "ry",
    "rx",
    "is_unitary",
    "hermitian_check",
    "gp_distance",
    "best_global_phase",
    "basis_ket",
    "projector",
]

DEFAULT_TOL = 1e-10


class StructuralError(ValueError):
    """Operand has the wrong shape for the requested operation."""


class ValidationError(ValueError):
    """Operand has the right shape but violates a mathematical precondition."""


def frozen(a: np.ndarray) -> np.ndarray:
    """Return a read-only complex copy of ``a``."""
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def as_operator(m, dims=(2, 4)) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise StructuralError(f"expected a square matrix of dim in {dims}, got shape {a.shape}")
    return a


I2 = frozen(np.eye(2))
I4 = frozen(np.eye(4))
SX = frozen([[0, 1], [1, 0]])
SY = frozen([[0, -1j], [1j, 0]])
SZ = frozen([[1, 0], [0, -1]])
HADAMARD = frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2))

_P0 = np.diag([1.0, 0.0])
_P1 = np.diag([0.0, 1.0])
CNOT_AS = frozen(np.kron(_P0, I2) + np.kron(_P1, SX))
CH_AS = frozen(np.kron(_P0, I2) + np.kron(_P1, HADAMARD))


def kron(a, b) -> np.ndarray:
    """Tensor product of a one-spin ancilla operator ``a`` and system operator ``b``."""
    a = as_operator(a, dims=(2,))
    b = as_operator(b, dims=(2,))
    return np.kron(a, b)


def on_ancilla(u) -> np.ndarray:
    return kron(u, I2)


def on_system(u) -> np.ndarray:
    return kron(I2, u)


def rotation(axis, angle: float) -> np.ndarray:
    """Spin-1/2 rotation ``exp(-i angle/2 n.sigma)`` about the unit vector ``axis``.

    Closed form ``cos(angle/2) I - i sin(angle/2) n.sigma``; ``angle`` in radians.
    """
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if n.shape != (3,) or norm == 0.0:
        raise StructuralError(f"rotation axis must be a nonzero 3-vector, got {axis!r}")
    nx, ny, nz = n / norm
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array(
        [[c - 1j * s * nz, -1j * s * nx - s * ny], [-1j * s * nx + s * ny, c + 1j * s * nz]],
        dtype=np.complex128,
    )


def rx(angle: float) -> np.ndarray:
    return rotation((1, 0, 0), angle)


def ry(angle: float) -> np.ndarray:
    return rotation((0, 1, 0), angle)


def rz(angle: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m, dtype=np.complex128)
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def hermitian_check(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff every entry of ``m - m^dagger`` is at most ``tol`` in magnitude."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise StructuralError(f"expected a square matrix, got shape {m.shape}")
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def _check_unitary_pair(u, v):
    u = as_operator(u)
    v = as_operator(v)
    if u.shape != v.shape:
        raise StructuralError(f"dimension mismatch: {u.shape} vs {v.shape}")
    for name, m in (("u", u), ("v", v)):
        if not is_unitary(m):
            raise ValidationError(f"{name} is not unitary")
    return u, v


def gp_distance(u, v) -> float:
    """Global-phase-insensitive distance ``1 - |Tr(u^dagger v)| / dim``.

    Zero exactly when ``u = exp(i phi) v``; one when the two are trace-orthogonal.
    """
    u, v = _check_unitary_pair(u, v)
    overlap = abs(np.trace(u.conj().T @ v)) / u.shape[0]
    return float(min(1.0, max(0.0, 1.0 - overlap)))


def best_global_phase(u, v) -> float:
    """Phase ``phi`` minimising ``||u - exp(i phi) v||_F``."""
    u, v = _check_unitary_pair(u, v)
    return float(np.angle(np.trace(v.conj().T @ u)))


def basis_ket(index: int) -> np.ndarray:
    ket = np.zeros(4, dtype=np.complex128)
    ket[index] = 1.0
    return ket


def projector(ket) -> np.ndarray:
    ket = np.asarray(ket, dtype=np.complex128)
    return np.outer(ket, ket.conj())
