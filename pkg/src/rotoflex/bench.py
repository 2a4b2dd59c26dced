"""Timing comparison of the rotoflex solve against per-harmonic superposition."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import core, ga, phasor, signals
from .sampling import random_circuit, random_signal

DEFAULT_SWEEP = (1, 5, 10, 25)
GATE = 1e-9


@dataclass(frozen=True)
class BenchRow:
    n_harmonics: int
    trials: int
    ga_median_s: float
    oracle_median_s: float
    max_delta: float

    @property
    def passed(self) -> bool:
        return self.max_delta < GATE


def sweep_for(max_harmonics: int) -> list[int]:
    ns = [n for n in DEFAULT_SWEEP if n <= max_harmonics]
    if max_harmonics not in ns:
        ns.append(max_harmonics)
    return ns


def run_trial(rng: np.random.Generator, n: int) -> tuple[float, float, float]:
    """One random instance; returns ``(ga_seconds, oracle_seconds, delta)``.

    The delta is scaled by ``max(1, |output|)`` so the gate is meaningful
    regardless of the drawn element magnitudes.
    """
    circuit = random_circuit(rng)
    source = random_signal(rng, n)
    x = signals.to_vector(source, n)

    t0 = time.perf_counter()
    theta = core.build_rotoflex(circuit, x, source.omega)
    y = core.apply(theta, x)
    t1 = time.perf_counter()
    y_ref = phasor.phasors_to_vector(phasor.solve_harmonics(circuit, source), n)
    t2 = time.perf_counter()

    delta = ga.vector_delta(y, y_ref) / max(1.0, ga.norm(y_ref))
    return t1 - t0, t2 - t1, delta


def run_bench(max_harmonics: int = 25, trials: int = 20, seed: int = 0) -> list[BenchRow]:
    if trials <= 0:
        return []
    rng = np.random.default_rng(seed)
    rows = []
    for n in sweep_for(max_harmonics):
        results = [run_trial(rng, n) for _ in range(trials)]
        ga_t, or_t, deltas = zip(*results)
        rows.append(BenchRow(n, trials, statistics.median(ga_t), statistics.median(or_t), max(deltas)))
    return rows


def format_rows(rows: list[BenchRow]) -> str:
    header = f"{'N':>4}  {'trials':>6}  {'rotoflex (ms)':>14}  {'superposition (ms)':>18}  {'max delta':>10}  gate"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.n_harmonics:>4}  {r.trials:>6}  {r.ga_median_s * 1e3:>14.4f}  "
            f"{r.oracle_median_s * 1e3:>18.4f}  {r.max_delta:>10.2e}  {'ok' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines) + "\n"
