"""Pulse events and sequences."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ..numcore import ValidationError


class Spin(enum.Enum):
    A = "A"  # 1H ancilla
    S = "S"  # 13C system

    @property
    def nucleus(self) -> str:
        return "H" if self is Spin.A else "C"


class Axis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"
    MX = "-x"
    MY = "-y"

    @property
    def vector(self) -> tuple[float, float, float]:
        return _AXIS_VECTORS[self]


_AXIS_VECTORS = {
    Axis.X: (1.0, 0.0, 0.0),
    Axis.Y: (0.0, 1.0, 0.0),
    Axis.Z: (0.0, 0.0, 1.0),
    Axis.MX: (-1.0, 0.0, 0.0),
    Axis.MY: (0.0, -1.0, 0.0),
}


@dataclass(frozen=True)
class Rotation:
    """Hard pulse on one spin: ``exp(-i (angle/2) n.sigma)``, angle in degrees."""

    target: Spin
    axis: Axis
    angle: float

    def __post_init__(self):
        if not -360.0 < self.angle <= 360.0:
            raise ValidationError(f"rotation angle must lie in (-360, 360], got {self.angle}")


@dataclass(frozen=True)
class JEvolution:
    """Free evolution under the scalar coupling for ``duration`` units of 1/(2J)."""

    duration: Fraction = Fraction(1)

    def __post_init__(self):
        d = Fraction(self.duration)
        if d <= 0:
            raise ValidationError(f"J-evolution duration must be positive, got {d}")
        object.__setattr__(self, "duration", d)

    def seconds(self, j_coupling: float) -> float:
        return float(self.duration) / (2.0 * j_coupling)


@dataclass(frozen=True)
class GradientZ:
    """Linear z-gradient pulse. Not unitary on the ensemble; see ``channels``."""


@dataclass(frozen=True)
class RefocusPiX:
    """Refocusing pi pulse about +x on ``target``."""

    target: Spin


PulseEvent = Union[Rotation, JEvolution, GradientZ, RefocusPiX]


@dataclass(frozen=True)
class PulseSequence:
    """Pulse events in time order (first element acts first)."""

    events: tuple[PulseEvent, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def __iter__(self) -> Iterator[PulseEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __getitem__(self, i):
        return self.events[i]

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        name = "+".join(n for n in (self.name, other.name) if n)
        return PulseSequence(self.events + other.events, name)

    @property
    def is_unitary(self) -> bool:
        return not any(isinstance(e, GradientZ) for e in self.events)

    def render(self) -> str:
        from .parser import render

        return render(self)
