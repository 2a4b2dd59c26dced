"""Multi-harmonic waveforms and their grade-1 vector embedding.

A waveform ``u(t) = U_dc + sqrt(2) * sum U_h cos(h w t - alpha_h)`` maps to the
vector with ``U_h cos(alpha_h)`` on ``s_{2h-1}`` and ``U_h sin(alpha_h)`` on
``s_{2h}``. The DC term is carried along for reporting but never embedded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ga import GradeError, Multivector

SQRT2 = math.sqrt(2.0)


def wrap_angle(angle: float) -> float:
    """Map an angle in radians to ``(-pi, pi]``."""
    wrapped = math.remainder(angle, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


@dataclass(frozen=True)
class HarmonicTerm:
    order: int
    rms: float
    phase_alpha: float = 0.0

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 1:
            raise ValueError(f"harmonic order must be a positive integer, got {self.order}")
        if not (math.isfinite(self.rms) and self.rms >= 0):
            raise ValueError(f"rms must be finite and non-negative, got {self.rms}")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "phase_alpha", wrap_angle(float(self.phase_alpha)))

    @classmethod
    def from_degrees(cls, order: int, rms: float, phase_deg: float = 0.0, form: str = "cos") -> "HarmonicTerm":
        """Build a term from ``rms * sqrt(2) * cos|sin(h w t - phase)``.

        ``sin(x) = cos(x - pi/2)``, so a sine term shifts alpha by +90 degrees.
        """
        alpha = math.radians(phase_deg)
        if form == "sin":
            alpha += math.pi / 2
        elif form != "cos":
            raise ValueError(f"form must be 'cos' or 'sin', got {form!r}")
        return cls(order, rms, alpha)

    @property
    def cos_component(self) -> float:
        return self.rms * math.cos(self.phase_alpha)

    @property
    def sin_component(self) -> float:
        return self.rms * math.sin(self.phase_alpha)


@dataclass(frozen=True)
class HarmonicSignal:
    omega: float
    harmonics: tuple[HarmonicTerm, ...] = field(default_factory=tuple)
    dc: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega}")
        terms = tuple(self.harmonics)
        orders = [t.order for t in terms]
        if len(set(orders)) != len(orders):
            raise ValueError(f"duplicate harmonic orders in {orders}")
        object.__setattr__(self, "harmonics", tuple(sorted(terms, key=lambda t: t.order)))

    @property
    def max_order(self) -> int:
        return max((t.order for t in self.harmonics), default=0)

    def period(self) -> float:
        return 2 * math.pi / self.omega


def to_vector(s: HarmonicSignal, n_harmonics: int | None = None) -> Multivector:
    n = s.max_order if n_harmonics is None else n_harmonics
    if s.max_order > n:
        raise ValueError(f"harmonic order {s.max_order} exceeds ambient N={n}")
    terms: dict[int, float] = {}
    for t in s.harmonics:
        terms[1 << (2 * t.order - 2)] = t.cos_component
        terms[1 << (2 * t.order - 1)] = t.sin_component
    return Multivector(2 * n, terms)


def from_vector(v: Multivector, omega: float, dc: float = 0.0) -> HarmonicSignal:
    if not v.is_vector():
        raise GradeError("from_vector takes a grade-1 multivector")
    comps = v.vector_components()
    harmonics = []
    for h in range(1, v.dim // 2 + 1):
        c, s = comps[2 * h - 2], comps[2 * h - 1]
        if c == 0.0 and s == 0.0:
            continue
        harmonics.append(HarmonicTerm(h, math.hypot(c, s), math.atan2(s, c)))
    return HarmonicSignal(omega, tuple(harmonics), dc)


def sample(s: HarmonicSignal, t):
    """Evaluate the waveform at time(s) ``t``; accepts scalars or arrays."""
    t = np.asarray(t, dtype=float)
    out = np.full(t.shape, float(s.dc))
    for term in s.harmonics:
        out = out + SQRT2 * term.rms * np.cos(term.order * s.omega * t - term.phase_alpha)
    return float(out) if out.ndim == 0 else out


def rms_norm(s: HarmonicSignal) -> float:
    return math.sqrt(math.fsum(t.rms**2 for t in s.harmonics))
