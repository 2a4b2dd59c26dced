"""Series and parallel RLC branches and their per-harmonic response."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Topology(str, enum.Enum):
    SERIES = "series"
    PARALLEL = "parallel"


class ResonanceError(ArithmeticError):
    """Raised when a lossless branch is driven exactly at resonance."""


@dataclass(frozen=True)
class Circuit:
    """A single RLC branch.

    ``dissipation`` is the resistance R (series) or the conductance G
    (parallel). Missing elements are taken in their open/short limit, so a
    series branch without C simply has no capacitive storance term.
    """

    topology: Topology
    dissipation: float | None = None
    L: float | None = None
    C: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))
        if self.dissipation is None and self.L is None and self.C is None:
            raise ValueError("circuit needs at least one element")
        if self.dissipation is not None:
            if not math.isfinite(self.dissipation) or self.dissipation < 0:
                raise ValueError(f"R/G must be finite and non-negative, got {self.dissipation}")
        for name in ("L", "C"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v}")

    @classmethod
    def series(cls, R: float | None = None, L: float | None = None, C: float | None = None) -> "Circuit":
        return cls(Topology.SERIES, R, L, C)

    @classmethod
    def parallel(cls, G: float | None = None, L: float | None = None, C: float | None = None) -> "Circuit":
        return cls(Topology.PARALLEL, G, L, C)

    @property
    def R(self) -> float | None:
        return self.dissipation if self.topology is Topology.SERIES else None

    @property
    def G(self) -> float | None:
        return self.dissipation if self.topology is Topology.PARALLEL else None

    @property
    def kernel_unit(self) -> str:
        return "S" if self.topology is Topology.SERIES else "Ohm"


@dataclass(frozen=True)
class HarmonicResponse:
    h: int
    kappa: float
    phi: float
    dissipance: float
    storance: float


def dissipance(c: Circuit) -> float:
    return 0.0 if c.dissipation is None else float(c.dissipation)


def storance(c: Circuit, h: int, omega: float) -> float:
    if h < 1 or omega <= 0:
        raise ValueError("need h >= 1 and omega > 0")
    hw = h * omega
    if c.topology is Topology.SERIES:
        stored, opposing = c.L, c.C
    else:
        stored, opposing = c.C, c.L
    x = 0.0
    if stored is not None:
        x += hw * stored
    if opposing is not None:
        x -= 1.0 / (hw * opposing)
    return x


def _check_resonance(d: float, x: float, h: int) -> None:
    if d == 0.0 and x == 0.0:
        raise ResonanceError(f"infinite kernel at resonance (lossless branch at h={h})")


def spectral_kernel(c: Circuit, h: int, omega: float) -> float:
    d, x = dissipance(c), storance(c, h, omega)
    _check_resonance(d, x, h)
    return 1.0 / math.hypot(d, x)


def harmonic_angle(c: Circuit, h: int, omega: float) -> float:
    d, x = dissipance(c), storance(c, h, omega)
    _check_resonance(d, x, h)
    return math.atan2(-x, d)


def harmonic_response(c: Circuit, h: int, omega: float) -> HarmonicResponse:
    d, x = dissipance(c), storance(c, h, omega)
    _check_resonance(d, x, h)
    return HarmonicResponse(h, 1.0 / math.hypot(d, x), math.atan2(-x, d), d, x)
