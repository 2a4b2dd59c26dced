"""Random circuits and sources for property checks and benchmarks."""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Topology
from .signals import HarmonicSignal, HarmonicTerm

LOG_LOW, LOG_HIGH = -2.0, 2.0
DROP_PROB = 0.15


def log_uniform(rng: np.random.Generator, low: float = LOG_LOW, high: float = LOG_HIGH) -> float:
    return float(10.0 ** rng.uniform(low, high))


def random_circuit(rng: np.random.Generator, topology: Topology | str | None = None) -> Circuit:
    if topology is None:
        topology = Topology.SERIES if rng.random() < 0.5 else Topology.PARALLEL
    topology = Topology(topology)
    L = None if rng.random() < DROP_PROB else log_uniform(rng)
    C = None if rng.random() < DROP_PROB else log_uniform(rng)
    return Circuit(topology, log_uniform(rng), L, C)


def random_signal(
    rng: np.random.Generator, n_harmonics: int, omega: float | None = None, density: float = 1.0
) -> HarmonicSignal:
    """Random amplitudes and phases; each order below ``n_harmonics`` is kept
    with probability ``density``, the top order always."""
    omega = log_uniform(rng) if omega is None else omega
    terms = tuple(
        HarmonicTerm(h, float(rng.uniform(0.05, 2.0)), float(rng.uniform(-math.pi, math.pi)))
        for h in range(1, n_harmonics + 1)
        if h == n_harmonics or rng.random() < density
    )
    return HarmonicSignal(omega, terms)
