"""Simulator of the NMR quantum delayed-choice experiment on a 1H-13C pair."""

from .channels import DephaseSpec, ancilla_z_dephase, gradient_measurement_block, measure_ancilla
from .experiment import (
    DelayedChoiceConfig,
    DetectionRecord,
    detection_probability,
    expected_dephased_deviation,
    fit_fringes,
    ideal_final_state,
    run_circuit,
    run_sweep,
)
from .fitting import FitError, FringeFit, fit_cosine
from .spinmodel import DeviationMatrix, Normalization, SpinSystem, full_density, observable_trace, pseudo_pure

__version__ = "0.1.0"

__all__ = [
    "DelayedChoiceConfig",
    "DephaseSpec",
    "DetectionRecord",
    "DeviationMatrix",
    "FitError",
    "FringeFit",
    "Normalization",
    "SpinSystem",
    "ancilla_z_dephase",
    "detection_probability",
    "expected_dephased_deviation",
    "fit_cosine",
    "fit_fringes",
    "full_density",
    "gradient_measurement_block",
    "ideal_final_state",
    "measure_ancilla",
    "observable_trace",
    "pseudo_pure",
    "run_circuit",
    "run_sweep",
]
