"""Simulation and verification of the lambda-family of 1 -> 2 cloning
machines for equatorial qubits."""

from eqclone.analysis import independence_scan, optimize_scalar, reproduce_constants, sweep
from eqclone.cloning import OPTIMAL_LAMBDA, ClonerParams, CloneOutput, build_isometry, clone, derive_params
from eqclone.metrics import MetricKind, bures_fidelity, closed_form, hs_distance, numeric_metric, pure_fidelity
from eqclone.states import BlochVector, EquatorialInput, EquatorPlane

__all__ = [
    "OPTIMAL_LAMBDA",
    "BlochVector",
    "ClonerParams",
    "CloneOutput",
    "EquatorPlane",
    "EquatorialInput",
    "MetricKind",
    "build_isometry",
    "bures_fidelity",
    "clone",
    "closed_form",
    "derive_params",
    "hs_distance",
    "independence_scan",
    "numeric_metric",
    "optimize_scalar",
    "pure_fidelity",
    "reproduce_constants",
    "sweep",
]
