"""Unitary meaning of pulse events."""

from __future__ import annotations

import math

import numpy as np

from ..numcore import I4, on_ancilla, on_system, rotation
from ..spinmodel import SpinSystem
from .events import GradientZ, JEvolution, PulseEvent, PulseSequence, RefocusPiX, Rotation, Spin

__all__ = ["NonUnitaryEventError", "event_unitary", "sequence_unitary", "j_evolution"]


class NonUnitaryEventError(ValueError):
    pass


def _on(spin: Spin, u: np.ndarray) -> np.ndarray:
    return on_ancilla(u) if spin is Spin.A else on_system(u)


def j_evolution(duration) -> np.ndarray:
    """``exp(-i (pi J/2) sz.sz t)`` for ``t = duration / (2J)``.

    The phase ``pi * duration / 4`` does not depend on J once time is measured
    in units of 1/(2J).
    """
    phi = math.pi * float(duration) / 4.0
    m, p = np.exp(-1j * phi), np.exp(1j * phi)
    return np.diag([m, p, p, m])


def event_unitary(e: PulseEvent, sys: SpinSystem | None = None) -> np.ndarray:
    if isinstance(e, Rotation):
        return _on(e.target, rotation(e.axis.vector, math.radians(e.angle)))
    if isinstance(e, JEvolution):
        return j_evolution(e.duration)
    if isinstance(e, RefocusPiX):
        return _on(e.target, rotation((1, 0, 0), math.pi))
    if isinstance(e, GradientZ):
        raise NonUnitaryEventError(
            "gradient pulses are non-unitary on the ensemble; evaluate them with nmrdelayed.channels"
        )
    raise TypeError(f"not a pulse event: {e!r}")


def sequence_unitary(seq: PulseSequence, sys: SpinSystem | None = None) -> np.ndarray:
    """Propagator ``U_n ... U_1`` of a gradient-free sequence."""
    u = np.array(I4)
    for e in seq:
        u = event_unitary(e, sys) @ u
    return u
