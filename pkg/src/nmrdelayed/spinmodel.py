"""Two-spin NMR ensemble model in the high-temperature expansion.

The full state is ``rho = I/4 + eps * (delta - I/4)`` where ``delta`` is
stored projector-normalized (unit trace, so pseudo-pure states look like
ordinary pure-state projectors). Every observable in this package is read
off ``delta``; ``eps`` only matters for :func:`full_density`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .numcore import (
    DEFAULT_TOL,
    I2,
    SZ,
    StructuralError,
    ValidationError,
    as_operator,
    frozen,
    hermitian_check,
    kron,
    projector,
)

__all__ = [
    "SpinSystem",
    "Normalization",
    "DeviationMatrix",
    "pseudo_pure",
    "full_density",
    "observable_trace",
    "thermal_deviation",
]

DEFAULT_J_HZ = 215.1
DEFAULT_EPSILON = 1e-5
DEFAULT_GYRO_RATIO = 0.2514  # gamma_C / gamma_H


@dataclass(frozen=True)
class SpinSystem:
    """Scalar-coupled 1H (ancilla A) / 13C (system S) pair."""

    j_coupling: float = DEFAULT_J_HZ
    epsilon: float = DEFAULT_EPSILON
    gyro_ratio: float = DEFAULT_GYRO_RATIO

    def __post_init__(self):
        if not self.j_coupling > 0:
            raise ValidationError(f"j_coupling must be positive, got {self.j_coupling}")
        # eps = 0 is the infinite-temperature limit and is kept legal.
        if not 0 <= self.epsilon < 0.01:
            raise ValidationError(f"epsilon must lie in [0, 0.01), got {self.epsilon}")

    @property
    def half_j_period(self) -> float:
        """Duration 1/(2J) in seconds."""
        return 1.0 / (2.0 * self.j_coupling)


class Normalization(enum.Enum):
    PROJECTOR = "projector-normalized"
    RAW = "raw"


@dataclass(frozen=True)
class DeviationMatrix:
    """Hermitian 4x4 deviation matrix.

    ``PROJECTOR`` normalization promises unit trace and no eigenvalue below
    ``-1e-10``; ``RAW`` only promises hermiticity.
    """

    delta: np.ndarray
    normalization: Normalization = Normalization.PROJECTOR
    tol: float = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        m = as_operator(self.delta, dims=(4,))
        if not hermitian_check(m, self.tol):
            raise ValidationError("deviation matrix is not Hermitian")
        if self.normalization is Normalization.PROJECTOR:
            tr = np.trace(m).real
            if abs(tr - 1.0) > self.tol:
                raise ValidationError(f"projector-normalized deviation needs trace 1, got {tr}")
            lo = np.linalg.eigvalsh(m).min()
            if lo < -self.tol:
                raise ValidationError(f"projector-normalized deviation has eigenvalue {lo}")
        object.__setattr__(self, "delta", frozen(m))

    @classmethod
    def raw(cls, m) -> "DeviationMatrix":
        return cls(np.asarray(m), Normalization.RAW)

    def with_delta(self, m) -> "DeviationMatrix":
        """Same normalization tag, new matrix (used by trace-preserving maps)."""
        return DeviationMatrix(np.asarray(m), self.normalization, self.tol)

    @property
    def trace(self) -> float:
        return float(np.trace(self.delta).real)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.delta).min())


def pseudo_pure(ket) -> DeviationMatrix:
    """Deviation matrix of the effective pure state ``ket`` (|psi><psi|)."""
    ket = np.asarray(ket, dtype=np.complex128).reshape(-1)
    if ket.shape != (4,):
        raise StructuralError(f"expected a 4-component ket, got shape {ket.shape}")
    norm = np.linalg.norm(ket)
    if abs(norm - 1.0) > DEFAULT_TOL:
        raise ValidationError(f"ket must be normalized, |ket| = {norm}")
    return DeviationMatrix(projector(ket))


def full_density(sys: SpinSystem, d: DeviationMatrix) -> np.ndarray:
    """Full ensemble density ``I/4 + eps (delta - I/4)``."""
    if d.normalization is not Normalization.PROJECTOR:
        raise ValidationError("full_density needs a projector-normalized deviation matrix")
    eye = np.eye(4)
    rho = eye / 4 + sys.epsilon * (d.delta - eye / 4)
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -DEFAULT_TOL:
        raise ValidationError(f"density matrix not positive (min eigenvalue {lo}); epsilon too large")
    return rho


def observable_trace(d: DeviationMatrix, obs) -> float:
    """``Re Tr(delta . obs)`` for a Hermitian observable."""
    obs = as_operator(obs, dims=(4,))
    if not hermitian_check(obs, DEFAULT_TOL):
        raise ValidationError("observable is not Hermitian")
    value = np.trace(d.delta @ obs)
    if abs(value.imag) >= DEFAULT_TOL:
        raise ValidationError(f"trace has imaginary part {value.imag}")
    return float(value.real)


def thermal_deviation(gyro_ratio: float = DEFAULT_GYRO_RATIO) -> DeviationMatrix:
    """Traceless equilibrium deviation ``sz_H + (gamma_C/gamma_H) sz_C``.

    Provided for completeness; the delayed-choice runs start from a
    pseudo-pure state instead.
    """
    return DeviationMatrix.raw(kron(SZ, I2) + gyro_ratio * kron(I2, SZ))
