"""Linear least-squares cosine fits of interference fringes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["FitError", "FringeFit", "fit_cosine"]


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class FringeFit:
    """``p(theta) = offset + amplitude * cos(theta + phase)``."""

    offset: float
    amplitude: float
    phase: float
    rms: float
    n_points: int

    def __call__(self, theta):
        return self.offset + self.amplitude * np.cos(np.asarray(theta) + self.phase)

    def to_dict(self) -> dict:
        return {
            "offset": self.offset,
            "amplitude": self.amplitude,
            "phase_rad": self.phase,
            "rms_residual": self.rms,
            "n_points": self.n_points,
        }


def fit_cosine(points) -> FringeFit:
    """Fit ``a + b cos(theta) + c sin(theta)`` to ``(theta, p)`` pairs.

    Solved through the 3x3 normal equations. Needs at least three distinct
    angles modulo 2 pi.
    """
    pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
    theta, p = pts[:, 0], pts[:, 1]
    distinct = {round(math.remainder(t, 2 * math.pi), 12) for t in theta}
    if len(distinct) < 3:
        raise FitError(f"cosine fit needs at least 3 distinct angles, got {len(distinct)}")
    design = np.column_stack([np.ones_like(theta), np.cos(theta), np.sin(theta)])
    normal = design.T @ design
    if np.linalg.cond(normal) > 1e12:
        raise FitError("cosine fit design matrix is degenerate")
    a, b, c = np.linalg.solve(normal, design.T @ p)
    resid = p - design @ np.array([a, b, c])
    amp = math.hypot(b, c)
    # A vanishing amplitude has no meaningful phase.
    phase = math.atan2(-c, b) if amp > 1e-15 else 0.0
    return FringeFit(
        offset=float(a),
        amplitude=float(amp),
        phase=float(phase),
        rms=float(np.sqrt(np.mean(resid**2))),
        n_points=len(theta),
    )
