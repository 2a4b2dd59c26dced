"""Published reference values and the self-test that checks them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import core, ga, phasor, signals
from .circuit import Circuit, spectral_kernel
from .signals import HarmonicSignal, HarmonicTerm

# printed values are rounded to 4 decimals
COEFF_TOL = 1e-3
# printed with 2 decimals
TABLE_MAG_TOL = 5e-3
# 4-decimal phasor components propagated through atan2, plus display rounding
TABLE_PHASE_TOL_DEG = 0.03
ANGLE_TOL_RAD = 1e-3

CASE1_CIRCUIT = Circuit.series(R=3.0, L=1.0, C=1.0)
CASE1_SOURCE = HarmonicSignal(1.0, (HarmonicTerm(1, 1.0), HarmonicTerm(2, 0.8)))
CASE2_CIRCUIT = Circuit.parallel(G=0.5, L=3.0, C=0.5)
CASE2_SOURCE = HarmonicSignal(
    2.0,
    (
        HarmonicTerm.from_degrees(1, 1.5),
        HarmonicTerm.from_degrees(2, 0.9, form="sin"),
        HarmonicTerm.from_degrees(3, 0.5),
    ),
)

GOLDEN = {
    "case1": {
        "flextance": 0.3201,
        "rotance": {"1": 0.9602, "s13": 0.1016, "s14": -0.2032, "s34": -0.1626},
        "output": {"s1": 0.3333, "s3": 0.2133, "s4": 0.1067},
        "power_factor": 0.9602,
        "effective_angle_deg": 16.26,
        "table": {1: (0.33, 0.00), 2: (0.24, -26.57)},
    },
    "case2": {
        "flextance": 0.8892,
        "rotance": {
            "1": 0.4446, "s12": -0.6746, "s13": 0.2241, "s14": 0.1844,
            "s15": 0.1206, "s16": -0.0841, "s24": 0.4047, "s25": 0.2249,
            "s34": -0.1344, "s35": -0.0747, "s45": 0.0109, "s46": -0.0505,
            "s56": -0.0280,
        },
        "output": {"s1": 0.7941, "s2": 1.3235, "s3": -0.4396, "s4": 0.1147, "s5": 0.0280, "s6": 0.1651},
        "power_factor": 0.4446,
        "effective_angle_deg": 63.58,
        "table": {1: (1.54, -59.04), 2: (0.45, -165.39), 3: (0.17, -80.39)},
    },
}


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.actual - self.expected) <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: expected={self.expected:.6g} actual={self.actual:.6g} "
            f"tol={self.tolerance:.1e}"
        )


def _case_checks(label: str, circuit: Circuit, source: HarmonicSignal, ref: dict) -> list[Check]:
    x = signals.to_vector(source)
    theta = core.build_rotoflex(circuit, x, source.omega)
    y = core.apply(theta, x)
    checks = [Check(f"{label}.flextance", ref["flextance"], theta.k, COEFF_TOL)]
    for name, value in ref["rotance"].items():
        checks.append(Check(f"{label}.rotance[{name}]", value, theta.R[ga.parse_blade(name)], COEFF_TOL))
    checks.append(Check(f"{label}.rotance.term_count", len(ref["rotance"]), len(theta.R), 0))
    for name, value in ref["output"].items():
        checks.append(Check(f"{label}.output[{name}]", value, y[ga.parse_blade(name)], COEFF_TOL))
    checks.append(Check(f"{label}.power_factor", ref["power_factor"], core.power_factor(x, y), COEFF_TOL))
    checks.append(
        Check(
            f"{label}.effective_angle_rad",
            math.radians(ref["effective_angle_deg"]),
            core.effective_angle(theta),
            ANGLE_TOL_RAD,
        )
    )
    rows = {t.order: t for t in signals.from_vector(y, source.omega).harmonics}
    for h, (mag, phase) in ref["table"].items():
        checks.append(Check(f"{label}.table[h={h}].magnitude", mag, rows[h].rms, TABLE_MAG_TOL))
        checks.append(
            Check(f"{label}.table[h={h}].phase_deg", phase, math.degrees(-rows[h].phase_alpha), TABLE_PHASE_TOL_DEG)
        )
    y_ref = phasor.phasors_to_vector(phasor.solve_harmonics(circuit, source), x.dim // 2)
    checks.append(Check(f"{label}.oracle_delta", 0.0, ga.vector_delta(y, y_ref), 1e-10))
    return checks


def _canonical_checks(h: int = 3, omega: float = 1.7, value: float = 0.6) -> list[Check]:
    hw = h * omega
    dim = 2 * h
    plane = 0b11 << (2 * h - 2)
    x = ga.Multivector.basis(2 * h - 1, dim) * 1.3
    cases = [
        ("series.R", Circuit.series(R=value), 1 / value, 0.0),
        ("series.L", Circuit.series(L=value), 1 / (hw * value), -1.0),
        ("series.C", Circuit.series(C=value), hw * value, 1.0),
        ("parallel.G", Circuit.parallel(G=value), 1 / value, 0.0),
        ("parallel.L", Circuit.parallel(L=value), hw * value, 1.0),
        ("parallel.C", Circuit.parallel(C=value), 1 / (hw * value), -1.0),
    ]
    checks = []
    for name, circuit, k_ref, bivector in cases:
        theta = core.build_rotoflex(circuit, x, omega)
        checks.append(Check(f"canonical.{name}.flextance", k_ref, theta.k, 1e-12))
        checks.append(Check(f"canonical.{name}.rotance_scalar", 1.0 - abs(bivector), theta.R[0], 1e-12))
        checks.append(Check(f"canonical.{name}.rotance_plane", bivector, theta.R[plane], 1e-12))
    return checks


def _kernel_checks() -> list[Check]:
    return [
        Check("case1.kernel[h=2]", 0.2981, spectral_kernel(CASE1_CIRCUIT, 2, 1.0), COEFF_TOL),
        Check("case2.kernel[h=1]", 1.0290, spectral_kernel(CASE2_CIRCUIT, 1, 2.0), COEFF_TOL),
    ]


def run_checks(golden: dict | None = None) -> list[Check]:
    golden = GOLDEN if golden is None else golden
    return (
        _case_checks("case1", CASE1_CIRCUIT, CASE1_SOURCE, golden["case1"])
        + _case_checks("case2", CASE2_CIRCUIT, CASE2_SOURCE, golden["case2"])
        + _kernel_checks()
        + _canonical_checks()
    )


def selftest(emit: Callable[[str], None] = print, golden: dict | None = None) -> bool:
    checks = run_checks(golden)
    for c in checks:
        emit(c.line())
    failed = [c for c in checks if not c.passed]
    emit(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return not failed
