"""Pulse programs: events, text format, compiler and verifier."""

from .compiler import CNOT_FRAME_CORRECTION, GateName, compile_gate, ideal_gate
from .events import Axis, GradientZ, JEvolution, PulseEvent, PulseSequence, RefocusPiX, Rotation, Spin
from .parser import ParseError, load_sequence, parse_sequence, render
from .semantics import NonUnitaryEventError, event_unitary, j_evolution, sequence_unitary
from .verify import EQUIVALENCES, VerificationReport, local_z_alignment, verify_sequence, verify_unitary

__all__ = [
    "Axis",
    "CNOT_FRAME_CORRECTION",
    "EQUIVALENCES",
    "GateName",
    "GradientZ",
    "JEvolution",
    "NonUnitaryEventError",
    "ParseError",
    "PulseEvent",
    "PulseSequence",
    "RefocusPiX",
    "Rotation",
    "Spin",
    "VerificationReport",
    "compile_gate",
    "event_unitary",
    "ideal_gate",
    "j_evolution",
    "load_sequence",
    "local_z_alignment",
    "parse_sequence",
    "render",
    "sequence_unitary",
    "verify_sequence",
    "verify_unitary",
]
