"""Classical per-harmonic phasor solver used as an independent reference.

Complex values are handled by the small :class:`Phasor` type below rather than
through the GA machinery, so the two solution paths share no arithmetic.
Phasors are RMS-scaled. A waveform term ``U cos(h w t - alpha)`` becomes
``U (cos alpha - j sin alpha)``, and a phasor ``A - jB`` maps to the vector
``A s_{2h-1} + B s_{2h}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, ResonanceError, Topology
from .ga import Multivector
from .signals import HarmonicSignal


@dataclass(frozen=True)
class Phasor:
    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("phasor components must be finite")

    @classmethod
    def polar(cls, magnitude: float, angle: float) -> "Phasor":
        return cls(magnitude * math.cos(angle), magnitude * math.sin(angle))

    def __add__(self, other: "Phasor") -> "Phasor":
        return Phasor(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Phasor") -> "Phasor":
        return Phasor(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Phasor") -> "Phasor":
        return Phasor(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __truediv__(self, other: "Phasor") -> "Phasor":
        den = other.re * other.re + other.im * other.im
        if den == 0.0:
            raise ZeroDivisionError("phasor division by zero")
        return Phasor(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def conjugate(self) -> "Phasor":
        return Phasor(self.re, -self.im)

    @property
    def angle(self) -> float:
        return math.atan2(self.im, self.re)

    def display(self) -> tuple[float, float]:
        """``(magnitude, angle_deg)`` as printed in a phasor table."""
        return abs(self), math.degrees(self.angle)


def impedance(c: Circuit, h: int, omega: float) -> Phasor:
    if c.topology is not Topology.SERIES:
        raise ValueError("impedance is defined here for series branches")
    hw = h * omega
    x = (hw * c.L if c.L is not None else 0.0) - (1.0 / (hw * c.C) if c.C is not None else 0.0)
    return Phasor(c.R or 0.0, x)


def admittance(c: Circuit, h: int, omega: float) -> Phasor:
    if c.topology is not Topology.PARALLEL:
        raise ValueError("admittance is defined here for parallel branches")
    hw = h * omega
    b = (hw * c.C if c.C is not None else 0.0) - (1.0 / (hw * c.L) if c.L is not None else 0.0)
    return Phasor(c.G or 0.0, b)


def source_phasor(rms: float, alpha: float) -> Phasor:
    return Phasor(rms * math.cos(alpha), -rms * math.sin(alpha))


def solve_harmonics(c: Circuit, source: HarmonicSignal) -> list[tuple[int, Phasor]]:
    """Superposition: one independent phasor solve per source harmonic."""
    out = []
    for term in source.harmonics:
        drive = source_phasor(term.rms, term.phase_alpha)
        if drive.re == 0.0 and drive.im == 0.0:
            out.append((term.order, Phasor(0.0, 0.0)))
            continue
        if c.topology is Topology.SERIES:
            load = impedance(c, term.order, source.omega)
        else:
            load = admittance(c, term.order, source.omega)
        try:
            out.append((term.order, drive / load))
        except ZeroDivisionError:
            raise ResonanceError(f"lossless resonance at h={term.order}") from None
    return out


def phasors_to_vector(phasors, n_harmonics: int) -> Multivector:
    terms: dict[int, float] = {}
    for h, p in phasors:
        if not 1 <= h <= n_harmonics:
            raise ValueError(f"harmonic order {h} outside 1..{n_harmonics}")
        terms[1 << (2 * h - 2)] = p.re
        terms[1 << (2 * h - 1)] = -p.im
    return Multivector(2 * n_harmonics, terms)
