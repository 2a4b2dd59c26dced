"""Steady-state multi-harmonic RLC analysis with rotoflex operators."""

from .circuit import Circuit, ResonanceError, Topology
from .core import (
    NullSignalError,
    Rotoflex,
    apply,
    build_rotoflex,
    construct_output,
    effective_angle,
    flextance,
    invert,
    power_factor,
    rotance,
    spectral_weights,
)
from .estimator import RotoflexSolver
from .ga import Multivector
from .signals import HarmonicSignal, HarmonicTerm, from_vector, to_vector

__all__ = [
    "Circuit",
    "HarmonicSignal",
    "HarmonicTerm",
    "Multivector",
    "NullSignalError",
    "ResonanceError",
    "Rotoflex",
    "RotoflexSolver",
    "Topology",
    "apply",
    "build_rotoflex",
    "construct_output",
    "effective_angle",
    "flextance",
    "from_vector",
    "invert",
    "power_factor",
    "rotance",
    "spectral_weights",
    "to_vector",
]
