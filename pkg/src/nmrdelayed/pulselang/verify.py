"""Equivalence checking of pulse sequences against target unitaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ..numcore import ValidationError, as_operator, best_global_phase, gp_distance, is_unitary, on_ancilla, on_system, rz
from ..spinmodel import SpinSystem
from .events import PulseSequence
from .semantics import sequence_unitary

__all__ = ["VerificationReport", "verify_sequence", "verify_unitary", "local_z_alignment", "EQUIVALENCES"]

EQUIVALENCES = ("global", "local-z")


@dataclass(frozen=True)
class VerificationReport:
    gp_distance: float
    global_phase: float
    transfer: np.ndarray  # |<i|U|j>|^2
    local_z_distance: float
    local_z_angles: tuple[float, float]  # (ancilla, system) frame rotation in radians
    equivalence: str
    tol: float

    @property
    def distance(self) -> float:
        return self.gp_distance if self.equivalence == "global" else self.local_z_distance

    @property
    def passed(self) -> bool:
        return self.distance <= self.tol

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "equivalence": self.equivalence,
            "tol": self.tol,
            "distance": self.distance,
            "gp_distance": self.gp_distance,
            "global_phase_rad": self.global_phase,
            "local_z_distance": self.local_z_distance,
            "local_z_angles_deg": [math.degrees(a) for a in self.local_z_angles],
            "transfer": self.transfer.tolist(),
        }

    def format(self) -> str:
        rows = ["        " + "".join(f"|{j:02b}>    " for j in range(4))]
        for i in range(4):
            rows.append(f"<{i:02b}|   " + "".join(f"{self.transfer[i, j]:8.5f} " for j in range(4)))
        za, zs = (math.degrees(a) for a in self.local_z_angles)
        return "\n".join(
            [
                f"result:            {'PASS' if self.passed else 'FAIL'} ({self.equivalence}, tol {self.tol:g})",
                f"gp_distance:       {self.gp_distance:.3e}",
                f"global phase:      {self.global_phase:+.6f} rad",
                f"local-z distance:  {self.local_z_distance:.3e}"
                f"  (frame z: A {za:+.3f} deg, S {zs:+.3f} deg)",
                "transfer |<i|U|j>|^2:",
                *rows,
            ]
        )


def _best_b(m):
    # |m0 + e^{ib} m1| + |m2 + e^{ib} m3| is the overlap after optimising a.
    def neg(b):
        e = np.exp(1j * b)
        return -(abs(m[0] + e * m[1]) + abs(m[2] + e * m[3]))

    grid = np.linspace(0.0, 2 * math.pi, 721)
    vals = [neg(b) for b in grid]
    k = int(np.argmin(vals))
    step = grid[1] - grid[0]
    res = minimize_scalar(neg, bounds=(grid[k] - step, grid[k] + step), method="bounded", options={"xatol": 1e-12})
    return (res.x, res.fun) if res.fun <= vals[k] else (grid[k], vals[k])


def local_z_alignment(u, target) -> tuple[float, tuple[float, float]]:
    """Best ``Rz_A(a) x Rz_S(b)`` frame correction applied after ``u``.

    Returns ``(distance, (a, b))`` where distance is the global-phase distance
    between the corrected ``u`` and ``target``.
    """
    m = np.diag(np.asarray(u) @ np.asarray(target).conj().T)
    b, _ = _best_b(m)
    e = np.exp(1j * b)
    a = float(np.angle(m[0] + e * m[1]) - np.angle(m[2] + e * m[3]))
    a = (a + math.pi) % (2 * math.pi) - math.pi
    b = (float(b) + math.pi) % (2 * math.pi) - math.pi
    corrected = on_ancilla(rz(a)) @ on_system(rz(b)) @ u
    return gp_distance(corrected, target), (a, b)


def verify_unitary(u, target, tol: float = 1e-9, equivalence: str = "global") -> VerificationReport:
    if equivalence not in EQUIVALENCES:
        raise ValueError(f"equivalence must be one of {EQUIVALENCES}, got {equivalence!r}")
    u = as_operator(u, dims=(4,))
    target = as_operator(target, dims=(4,))
    if not is_unitary(target):
        raise ValidationError("target is not unitary")
    lz, angles = local_z_alignment(u, target)
    return VerificationReport(
        gp_distance=gp_distance(u, target),
        global_phase=best_global_phase(u, target),
        transfer=np.abs(u) ** 2,
        local_z_distance=lz,
        local_z_angles=angles,
        equivalence=equivalence,
        tol=tol,
    )


def verify_sequence(
    seq: PulseSequence,
    target,
    sys: SpinSystem | None = None,
    tol: float = 1e-9,
    equivalence: str = "global",
) -> VerificationReport:
    """Compare the propagator of ``seq`` with ``target``.

    ``equivalence="global"`` passes when the two agree up to a global phase;
    ``"local-z"`` additionally allows a trailing z rotation on each spin,
    the usual NMR rotating-frame freedom.
    """
    return verify_unitary(sequence_unitary(seq, sys), target, tol, equivalence)
