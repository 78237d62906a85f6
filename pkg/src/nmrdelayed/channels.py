"""Ancilla sz dephasing: the ideal channel and its gradient-pulse emulation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numcore import I2, ValidationError, kron, rz
from .pulselang.events import GradientZ, PulseSequence, RefocusPiX, Spin
from .pulselang.semantics import event_unitary
from .spinmodel import DEFAULT_GYRO_RATIO, DeviationMatrix

__all__ = [
    "DephaseSpec",
    "IDEAL",
    "ancilla_z_dephase",
    "gradient_unitary",
    "apply_sequence",
    "measurement_block_sequence",
    "refocus_unitary",
    "gradient_measurement_block",
    "measure_ancilla",
]

_P0 = kron(np.diag([1.0, 0.0]), I2)
_P1 = kron(np.diag([0.0, 1.0]), I2)


@dataclass(frozen=True)
class DephaseSpec:
    """How the ancilla measurement is emulated.

    ``mode`` is ``"ideal"`` (projective dephasing) or ``"gradient"``
    (``samples`` equally spaced gradient phases on [0, 2pi)).
    """

    mode: str = "ideal"
    samples: int = 8
    refocus: bool = True

    def __post_init__(self):
        if self.mode not in ("ideal", "gradient"):
            raise ValidationError(f"unknown dephasing mode {self.mode!r}")

    @classmethod
    def gradient(cls, samples: int = 8, refocus: bool = True) -> "DephaseSpec":
        return cls("gradient", samples, refocus)

    def describe(self) -> str:
        if self.mode == "ideal":
            return "ideal"
        return f"gradient(N={self.samples}, refocus={'on' if self.refocus else 'off'})"


IDEAL = DephaseSpec()


def ancilla_z_dephase(d: DeviationMatrix) -> DeviationMatrix:
    """Keep the ancilla-diagonal blocks, drop the ancilla coherences."""
    m = d.delta
    return d.with_delta(_P0 @ m @ _P0 + _P1 @ m @ _P1)


def gradient_unitary(phase: float, gyro_ratio: float = DEFAULT_GYRO_RATIO) -> np.ndarray:
    """Gradient-induced z rotation at one position: ``Rz_A(phi) x Rz_S(r phi)``."""
    return kron(rz(phase), rz(gyro_ratio * phase))


def refocus_unitary() -> np.ndarray:
    return event_unitary(RefocusPiX(Spin.S))


def measurement_block_sequence(refocus: bool = True) -> PulseSequence:
    events = (GradientZ(), RefocusPiX(Spin.S), GradientZ()) if refocus else (GradientZ(), GradientZ())
    return PulseSequence(events, "measure_block")


def apply_sequence(
    d: DeviationMatrix,
    seq: PulseSequence,
    samples: int = 8,
    gyro_ratio: float = DEFAULT_GYRO_RATIO,
) -> DeviationMatrix:
    """Evolve ``d`` through a sequence that may contain gradient pulses.

    Each gradient-free sequence is a single conjugation. Otherwise the ensemble
    is sliced into ``samples`` positions with gradient phase ``2 pi k / N``;
    every gradient in the sequence imprints the same phase on a given slice,
    and the slices are averaged in a fixed order.
    """
    if seq.is_unitary:
        u = np.eye(4, dtype=complex)
        for e in seq:
            u = event_unitary(e) @ u
        return d.with_delta(u @ d.delta @ u.conj().T)
    if samples < 2:
        raise ValidationError(f"gradient emulation needs at least 2 samples, got {samples}")
    acc = np.zeros((4, 4), dtype=complex)
    for k in range(samples):
        g = gradient_unitary(2 * np.pi * k / samples, gyro_ratio)
        u = np.eye(4, dtype=complex)
        for e in seq:
            u = (g if isinstance(e, GradientZ) else event_unitary(e)) @ u
        acc += u @ d.delta @ u.conj().T
    acc /= samples
    # Restore exact hermiticity lost to rounding in the average.
    return d.with_delta((acc + acc.conj().T) / 2)


def gradient_measurement_block(
    d: DeviationMatrix, spec: DephaseSpec, gyro_ratio: float = DEFAULT_GYRO_RATIO
) -> DeviationMatrix:
    """Raw output of gradient / (pi)_x^S / gradient.

    The refocusing pulse is left in the state, so with ``refocus`` on this is
    ``X_S . dephase(d) . X_S^dagger`` for ``samples >= 3``.
    """
    if spec.mode != "gradient":
        raise ValidationError("gradient_measurement_block needs a gradient-mode spec")
    if spec.samples < 2:
        raise ValidationError(f"gradient emulation needs at least 2 samples, got {spec.samples}")
    return apply_sequence(d, measurement_block_sequence(spec.refocus), spec.samples, gyro_ratio)


def measure_ancilla(
    d: DeviationMatrix,
    spec: DephaseSpec = IDEAL,
    gyro_ratio: float = DEFAULT_GYRO_RATIO,
    corrected: bool = True,
) -> DeviationMatrix:
    """Apply the measurement emulation selected by ``spec``.

    With ``corrected`` the deterministic refocusing pi pulse is undone, giving
    the view that compares directly with projective dephasing.
    """
    if spec.mode == "ideal":
        return ancilla_z_dephase(d)
    out = gradient_measurement_block(d, spec, gyro_ratio)
    if corrected and spec.refocus:
        x = refocus_unitary()
        out = out.with_delta(x.conj().T @ out.delta @ x)
    return out
