"""Quantum delayed-choice protocol on the two-spin register.

Circuit, in time order, from the pseudo-pure ``|00>``:

1. ``Ry_A(alpha)``: ancilla in ``cos(alpha/2)|0> + sin(alpha/2)|1>``
2. ``(pi/2)_y`` on S: first beam splitter
3. ``Rz_S(theta)``: path phase shift
4. controlled-Hadamard A -> S: second beam splitter, present iff ancilla is 1
5. ancilla sz measurement emulation

The readout is ``Tr(delta |10><10|)``, the ancilla-1 (closed interferometer)
branch with the system back in its input path.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .channels import IDEAL, DephaseSpec, measure_ancilla
from .fitting import FringeFit, fit_cosine
from .numcore import ValidationError, basis_ket, kron, projector
from .pulselang.compiler import GateName, compile_gate, ideal_gate
from .pulselang.semantics import sequence_unitary
from .spinmodel import DeviationMatrix, SpinSystem, observable_trace, pseudo_pure

__all__ = [
    "LEVELS",
    "DEFAULT_ALPHAS",
    "default_thetas",
    "DelayedChoiceConfig",
    "DetectionRecord",
    "particle_ket",
    "wave_ket",
    "ideal_final_state",
    "circuit_unitary",
    "prepare_state",
    "run_circuit",
    "expected_dephased_deviation",
    "detection_probability",
    "run_sweep",
    "fit_fringes",
]

LEVELS = ("gate", "pulse")
DEFAULT_ALPHAS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)
DETECTOR = projector(basis_ket(0b10))
_ANGLE_SLACK = 1e-12


def default_thetas(n: int = 17) -> tuple[float, ...]:
    """``n`` equally spaced phases on [0, 2 pi], both ends included."""
    if n < 1:
        raise ValueError("need at least one theta")
    if n == 1:
        return (0.0,)
    return tuple(2 * math.pi * k / (n - 1) for k in range(n))


def _check_angles(alpha: float, theta: float):
    if not -_ANGLE_SLACK <= alpha <= math.pi + _ANGLE_SLACK:
        raise ValidationError(f"alpha must lie in [0, pi], got {alpha}")
    if not -_ANGLE_SLACK <= theta <= 2 * math.pi + _ANGLE_SLACK:
        raise ValidationError(f"theta must lie in [0, 2 pi], got {theta}")


@dataclass(frozen=True)
class DelayedChoiceConfig:
    alpha: float
    theta: float
    level: str = "gate"
    dephase: DephaseSpec = field(default=IDEAL)

    def __post_init__(self):
        _check_angles(self.alpha, self.theta)
        if self.level not in LEVELS:
            raise ValidationError(f"level must be one of {LEVELS}, got {self.level!r}")


@dataclass(frozen=True)
class DetectionRecord:
    alpha: float
    theta: float
    level: str
    p: float


def particle_ket(theta: float) -> np.ndarray:
    """Open interferometer: ``(|0> + e^{i theta}|1>)/sqrt 2``."""
    return np.array([1.0, np.exp(1j * theta)]) / math.sqrt(2)


def wave_ket(theta: float) -> np.ndarray:
    """Closed interferometer: ``e^{i theta/2}(cos(theta/2)|0> - i sin(theta/2)|1>)``."""
    return np.exp(0.5j * theta) * np.array([math.cos(theta / 2), -1j * math.sin(theta / 2)])


def ideal_final_state(alpha: float, theta: float) -> np.ndarray:
    """Entangled particle/wave superposition after the quantum beam splitter."""
    _check_angles(alpha, theta)
    ket = math.cos(alpha / 2) * np.kron([1, 0], particle_ket(theta)) + math.sin(alpha / 2) * np.kron(
        [0, 1], wave_ket(theta)
    )
    return ket / np.linalg.norm(ket)


_CIRCUIT = (GateName.RY_A, GateName.PSEUDO_H_S, GateName.RZ_S, GateName.CH_AS)


def circuit_unitary(alpha: float, theta: float, level: str = "gate", sys: SpinSystem | None = None) -> np.ndarray:
    """Propagator of the coherent part of the circuit (blocks 1 and 2)."""
    if level not in LEVELS:
        raise ValidationError(f"level must be one of {LEVELS}, got {level!r}")
    if level == "pulse" and sys is None:
        sys = SpinSystem()
    angles = {GateName.RY_A: alpha, GateName.RZ_S: theta}
    u = np.eye(4, dtype=complex)
    for gate in _CIRCUIT:
        if level == "gate":
            g = ideal_gate(gate, angles.get(gate))
        else:
            g = sequence_unitary(compile_gate(gate, angles.get(gate), sys), sys)
        u = g @ u
    return u


def prepare_state(cfg: DelayedChoiceConfig, sys: SpinSystem | None = None) -> np.ndarray:
    """Ket reached from ``|00>`` just before the measurement block."""
    return circuit_unitary(cfg.alpha, cfg.theta, cfg.level, sys) @ basis_ket(0)


def run_circuit(cfg: DelayedChoiceConfig, sys: SpinSystem | None = None) -> DeviationMatrix:
    """Final deviation matrix, refocusing pulse undone."""
    sys = sys or SpinSystem()
    u = circuit_unitary(cfg.alpha, cfg.theta, cfg.level, sys)
    d0 = pseudo_pure(basis_ket(0))
    d = d0.with_delta(u @ d0.delta @ u.conj().T)
    return measure_ancilla(d, cfg.dephase, sys.gyro_ratio, corrected=True)


def expected_dephased_deviation(alpha: float, theta: float) -> DeviationMatrix:
    """Block-diagonal closed form after an ancilla sz measurement (unit trace)."""
    _check_angles(alpha, theta)
    w0, w1 = math.cos(alpha / 2) ** 2, math.sin(alpha / 2) ** 2
    m = w0 * kron(np.diag([1.0, 0.0]), projector(particle_ket(theta))) + w1 * kron(
        np.diag([0.0, 1.0]), projector(wave_ket(theta))
    )
    return DeviationMatrix(m)


def detection_probability(d: DeviationMatrix) -> float:
    """``Tr(delta |10><10|)``."""
    return observable_trace(d, DETECTOR)


def run_sweep(
    alphas,
    thetas,
    level: str = "gate",
    dephase: DephaseSpec = IDEAL,
    sys: SpinSystem | None = None,
    noise: float = 0.0,
    seed: int | None = None,
    workers: int = 1,
) -> list[DetectionRecord]:
    """Evaluate the grid alpha-major, theta-minor.

    ``noise`` adds i.i.d. Gaussian scatter of that standard deviation to each
    probability (clipped to [0, 1]), drawn in row order from ``seed``.
    """
    alphas, thetas = list(alphas), list(thetas)
    if not alphas or not thetas:
        raise ValueError("sweep grids must be non-empty")
    if noise < 0:
        raise ValueError("noise must be non-negative")
    sys = sys or SpinSystem()
    cfgs = [DelayedChoiceConfig(a, t, level, dephase) for a, t in product(alphas, thetas)]

    def point(cfg):
        return detection_probability(run_circuit(cfg, sys))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            ps = list(pool.map(point, cfgs))
    else:
        ps = [point(c) for c in cfgs]
    ps = np.asarray(ps)
    if noise > 0:
        rng = np.random.default_rng(seed)
        ps = np.clip(ps + rng.normal(0.0, noise, size=ps.shape), 0.0, 1.0)
    return [DetectionRecord(c.alpha, c.theta, level, float(p)) for c, p in zip(cfgs, ps)]


def fit_fringes(records) -> dict[float, FringeFit]:
    """One cosine fit per alpha, in first-appearance order."""
    groups: dict[float, list] = {}
    for r in records:
        groups.setdefault(r.alpha, []).append((r.theta, r.p))
    return {a: fit_cosine(pts) for a, pts in groups.items()}
