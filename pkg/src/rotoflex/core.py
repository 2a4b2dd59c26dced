"""The rotoflex operator: one multivector that maps a source vector to the
circuit response.

For a series branch driven by a voltage vector ``u`` the current is
``i = k R u``; for a parallel branch driven by a current vector the roles swap.
``k`` (flextance) is the norm ratio of output to input and ``R`` (rotance) is
the unit even multivector ``out_hat * in_hat`` turning one onto the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import ga
from .circuit import Circuit, HarmonicResponse, Topology, harmonic_response
from .ga import GradeError, Multivector

UNIT_TOL = 1e-10
CROSSCHECK_RTOL = 1e-10


class NullSignalError(ArithmeticError):
    pass


class IntegrityError(RuntimeError):
    """Two independent routes to the same quantity disagree."""


@dataclass(frozen=True)
class SpectralProfile:
    weights: tuple[float, ...]
    kernels: tuple[float, ...]


@dataclass(frozen=True)
class Rotoflex:
    topology: Topology
    n_harmonics: int
    k: float
    R: Multivector = field(compare=False)
    harmonics: tuple[HarmonicResponse, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"flextance must be positive and finite, got {self.k}")
        if self.R.dim != 2 * self.n_harmonics:
            raise ga.DimensionMismatchError("rotance dimension does not match 2N")
        if not self.R.grades() <= {0, 2}:
            raise GradeError("rotance must contain grades 0 and 2 only")
        if abs(ga.norm(self.R) - 1.0) > UNIT_TOL:
            raise ValueError(f"rotance is not unit norm (|R| = {ga.norm(self.R)!r})")

    @classmethod
    def identity(cls, topology: Topology | str, n_harmonics: int, k: float = 1.0) -> "Rotoflex":
        return cls(topology, n_harmonics, k, Multivector.scalar(1.0, 2 * n_harmonics))

    @property
    def dim(self) -> int:
        return 2 * self.n_harmonics

    @property
    def multivector(self) -> Multivector:
        return self.R * self.k

    def allclose(self, other: "Rotoflex", atol: float = 1e-12) -> bool:
        return (
            self.dim == other.dim
            and abs(self.k - other.k) <= atol
            and self.R.allclose(other.R, atol=atol)
        )


def _require_vector(x: Multivector, name: str = "input") -> None:
    if not x.is_vector():
        raise GradeError(f"{name} must be a grade-1 multivector")


def _plane_norms_sq(x: Multivector) -> np.ndarray:
    comps = x.vector_components()
    return comps[0::2] ** 2 + comps[1::2] ** 2


def spectral_weights(x: Multivector) -> tuple[float, ...]:
    """Per-harmonic share ``gamma_h`` of the input norm; ``sum gamma_h^2 = 1``."""
    _require_vector(x)
    if x.dim % 2:
        raise ValueError("harmonic space must have even dimension")
    planes = _plane_norms_sq(x)
    total = float(np.sum(planes))
    if total == 0.0:
        raise NullSignalError("undefined spectral weights for null signal")
    return tuple(float(v) for v in np.sqrt(planes / total))


def driven_responses(c: Circuit, x: Multivector, omega: float) -> list[HarmonicResponse]:
    """Responses for every harmonic plane carrying a nonzero input component."""
    planes = _plane_norms_sq(x)
    return [harmonic_response(c, h, omega) for h in range(1, planes.size + 1) if planes[h - 1] > 0.0]


def spectral_profile(c: Circuit, x: Multivector, omega: float) -> SpectralProfile:
    weights = spectral_weights(x)
    kernels = [0.0] * len(weights)
    for resp in driven_responses(c, x, omega):
        kernels[resp.h - 1] = resp.kappa
    return SpectralProfile(weights, tuple(kernels))


def _flextance_from(weights, responses) -> float:
    acc = 0.0
    for resp in responses:  # ascending h
        acc += (weights[resp.h - 1] * resp.kappa) ** 2
    return math.sqrt(acc)


def _output_from(x: Multivector, responses) -> Multivector:
    out = Multivector(x.dim)
    for resp in responses:
        h = resp.h
        lo, hi = 1 << (2 * h - 2), 1 << (2 * h - 1)
        x_h = Multivector(x.dim, {lo: x[lo], hi: x[hi]})
        rotor = ga.rotor_exp(h, resp.phi, x.dim)
        out = out + ga.product_grade(rotor, x_h, 1) * resp.kappa
    return out


def flextance(c: Circuit, x: Multivector, omega: float) -> float:
    return _flextance_from(spectral_weights(x), driven_responses(c, x, omega))


def construct_output(c: Circuit, x: Multivector, omega: float) -> Multivector:
    """Per-harmonic scale-and-rotate of ``x``, summed in ascending order."""
    _require_vector(x)
    return _output_from(x, driven_responses(c, x, omega))


def rotance(source: Multivector, response: Multivector) -> Multivector:
    """Unit rotor ``response_hat * source_hat`` taking ``source`` onto ``response``."""
    _require_vector(source, "source")
    _require_vector(response, "response")
    try:
        s_hat, r_hat = ga.normalize(source), ga.normalize(response)
    except ZeroDivisionError:
        raise NullSignalError("rotance undefined for a null vector") from None
    return ga.geometric_product(r_hat, s_hat)


def build_rotoflex(c: Circuit, x: Multivector, omega: float) -> Rotoflex:
    _require_vector(x)
    weights = spectral_weights(x)
    responses = driven_responses(c, x, omega)
    k = _flextance_from(weights, responses)
    y = _output_from(x, responses)
    k_direct = ga.norm(y) / ga.norm(x)
    if abs(k - k_direct) > CROSSCHECK_RTOL * max(1.0, k):
        raise IntegrityError(f"flextance {k!r} disagrees with output/input norm ratio {k_direct!r}")
    return Rotoflex(c.topology, x.dim // 2, k, rotance(x, y), tuple(responses))


def apply(theta: Rotoflex, x: Multivector) -> Multivector:
    _require_vector(x)
    if x.dim != theta.dim:
        raise ga.DimensionMismatchError(f"operator acts on dim {theta.dim}, got {x.dim}")
    return ga.product_grade(theta.R, x, 1) * theta.k


def residual(theta: Rotoflex, x: Multivector) -> float:
    """Largest non-vector coefficient of ``k R x``; zero for the construction input."""
    full = ga.geometric_product(theta.R, x) * theta.k
    return (full - ga.grade_projection(full, 1)).max_abs()


def invert(theta: Rotoflex) -> Rotoflex:
    return Rotoflex(theta.topology, theta.n_harmonics, 1.0 / theta.k, ga.reverse(theta.R), theta.harmonics)


def power_factor(u: Multivector, i: Multivector) -> float:
    _require_vector(u, "u")
    _require_vector(i, "i")
    nu, ni = ga.norm(u), ga.norm(i)
    if nu == 0.0 or ni == 0.0:
        raise NullSignalError("power factor undefined for a null vector")
    return max(-1.0, min(1.0, ga.inner_product_vectors(u, i) / (nu * ni)))


def effective_angle(theta: Rotoflex) -> float:
    s = ga.scalar_part(theta.R)
    if abs(s) > 1.0 + UNIT_TOL:
        raise ValueError(f"rotance scalar part {s} outside [-1, 1]")
    return math.acos(max(-1.0, min(1.0, s)))
