"""Named gates to pulse sequences."""

from __future__ import annotations

import enum
import math

import numpy as np

from ..numcore import CH_AS, CNOT_AS, on_ancilla, on_system, rx, ry, rz
from ..spinmodel import SpinSystem
from .events import Axis, JEvolution, PulseSequence, RefocusPiX, Rotation, Spin

__all__ = ["GateName", "compile_gate", "ideal_gate", "CNOT_FRAME_CORRECTION"]


class GateName(enum.Enum):
    CNOT_AS = "cnot"
    CH_AS = "ch"
    PSEUDO_H_S = "pseudo_h"
    RY_A = "ry_a"
    RZ_S = "rz_s"
    PI_X_S = "pi_x_s"

    @property
    def parametric(self) -> bool:
        return self in (GateName.RY_A, GateName.RZ_S)


def _rot(spin, axis, deg):
    return Rotation(spin, axis, float(deg))


# The NMR CNOT: composite z rotations on both spins around a single 1/(2J) delay.
_CNOT_EVENTS = (
    _rot(Spin.S, Axis.Y, 90),
    JEvolution(1),
    _rot(Spin.S, Axis.X, 90),
    _rot(Spin.S, Axis.MY, 90),
    _rot(Spin.S, Axis.MX, 90),
    _rot(Spin.S, Axis.Y, 90),
    _rot(Spin.A, Axis.MY, 90),
    _rot(Spin.A, Axis.X, 90),
    _rot(Spin.A, Axis.Y, 90),
)

# The sequence above implements (sz x sz) . CNOT, up to global phase.
# A z(180) on each spin returns it to the textbook CNOT.
CNOT_FRAME_CORRECTION = (_rot(Spin.A, Axis.Z, 180), _rot(Spin.S, Axis.Z, 180))

# CH = Ry_S(-45) . CNOT . Ry_S(45)
_CH_EVENTS = (
    (_rot(Spin.S, Axis.Y, 45),) + _CNOT_EVENTS + CNOT_FRAME_CORRECTION + (_rot(Spin.S, Axis.Y, -45),)
)


def _require_angle(gate: GateName, angle):
    if gate.parametric and angle is None:
        raise ValueError(f"{gate.name} needs an angle")
    if not gate.parametric and angle is not None:
        raise ValueError(f"{gate.name} takes no angle")


def compile_gate(gate: GateName, angle: float | None = None, sys: SpinSystem | None = None) -> PulseSequence:
    """Pulse program for ``gate``; ``angle`` (radians) only for RY_A and RZ_S."""
    gate = GateName(gate)
    _require_angle(gate, angle)
    if gate is GateName.CNOT_AS:
        return PulseSequence(_CNOT_EVENTS, "cnot_hc")
    if gate is GateName.CH_AS:
        return PulseSequence(_CH_EVENTS, "ch_hc")
    if gate is GateName.PSEUDO_H_S:
        return PulseSequence((_rot(Spin.S, Axis.Y, 90),), "pseudo_h")
    if gate is GateName.PI_X_S:
        return PulseSequence((RefocusPiX(Spin.S),), "pi_x_s")
    if gate is GateName.RY_A:
        return PulseSequence((_rot(Spin.A, Axis.Y, math.degrees(angle)),), "ry_a")
    return PulseSequence((_rot(Spin.S, Axis.Z, math.degrees(angle)),), "rz_s")


def ideal_gate(gate: GateName, angle: float | None = None) -> np.ndarray:
    """Textbook matrix of ``gate`` in the A x S basis."""
    gate = GateName(gate)
    _require_angle(gate, angle)
    if gate is GateName.CNOT_AS:
        return np.array(CNOT_AS)
    if gate is GateName.CH_AS:
        return np.array(CH_AS)
    if gate is GateName.PSEUDO_H_S:
        return on_system(ry(math.pi / 2))
    if gate is GateName.PI_X_S:
        return on_system(rx(math.pi))
    if gate is GateName.RY_A:
        return on_ancilla(ry(angle))
    return on_system(rz(angle))
