"""Problem files (JSON) and the solve report built from them."""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import core, ga, phasor, signals
from .circuit import Circuit, Topology
from .signals import HarmonicSignal, HarmonicTerm

DEFAULT_PRECISION = 6
PRECISION_ENV = "ROTOFLEX_PRECISION"


class ProblemError(ValueError):
    """Invalid problem file; the message names the offending field."""


@dataclass(frozen=True)
class ProblemSpec:
    omega: float
    circuit: Circuit
    source_kind: str
    source: HarmonicSignal
    n_override: int | None = None
    precision: int = DEFAULT_PRECISION

    @property
    def n_harmonics(self) -> int:
        n = max(self.source.max_order, 1)
        return max(n, self.n_override or 0)


def _number(obj: dict, key: str, where: str, required: bool = True, default=None):
    if key not in obj or obj[key] is None:
        if required:
            raise ProblemError(f"{where}.{key}: missing required number")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ProblemError(f"{where}.{key}: expected a finite number, got {value!r}")
    return float(value)


def _integer(obj: dict, key: str, where: str, default=None):
    value = obj.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def parse_problem(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ProblemError("problem: expected a JSON object")
    omega = _number(data, "omega", "problem")
    if omega <= 0:
        raise ProblemError(f"problem.omega: must be positive, got {omega}")

    cdata = data.get("circuit")
    if not isinstance(cdata, dict):
        raise ProblemError("problem.circuit: expected an object")
    try:
        topology = Topology(cdata.get("topology"))
    except ValueError:
        raise ProblemError(f"circuit.topology: expected 'series' or 'parallel', got {cdata.get('topology')!r}") from None
    own, other = ("R", "G") if topology is Topology.SERIES else ("G", "R")
    if other in cdata:
        raise ProblemError(f"circuit.{other}: not valid for a {topology.value} circuit (use {own})")
    values = {k: _number(cdata, k, "circuit", required=False) for k in (own, "L", "C")}
    try:
        circuit = Circuit(topology, values[own], values["L"], values["C"])
    except ValueError as exc:
        raise ProblemError(f"circuit: {exc}") from None

    sdata = data.get("source")
    if not isinstance(sdata, dict):
        raise ProblemError("problem.source: expected an object")
    kind = sdata.get("kind")
    if kind not in ("voltage", "current"):
        raise ProblemError(f"source.kind: expected 'voltage' or 'current', got {kind!r}")
    expected = "voltage" if topology is Topology.SERIES else "current"
    if kind != expected:
        raise ProblemError(f"source.kind: a {topology.value} circuit must be driven by a {expected} source, got {kind!r}")
    hlist = sdata.get("harmonics", [])
    if not isinstance(hlist, list):
        raise ProblemError("source.harmonics: expected a list")
    terms = []
    for n, entry in enumerate(hlist):
        where = f"source.harmonics[{n}]"
        if not isinstance(entry, dict):
            raise ProblemError(f"{where}: expected an object")
        h = _integer(entry, "h", where)
        if h is None or h < 1:
            raise ProblemError(f"{where}.h: expected a positive integer, got {entry.get('h')!r}")
        rms = _number(entry, "rms", where)
        if rms < 0:
            raise ProblemError(f"{where}.rms: must be non-negative, got {rms}")
        phase = _number(entry, "phase_deg", where, required=False, default=0.0)
        form = entry.get("form", "cos")
        if form not in ("cos", "sin"):
            raise ProblemError(f"{where}.form: expected 'cos' or 'sin', got {form!r}")
        terms.append(HarmonicTerm.from_degrees(h, rms, phase, form))
    orders = [t.order for t in terms]
    if len(set(orders)) != len(orders):
        raise ProblemError(f"source.harmonics: duplicate orders {sorted(orders)}")
    dc = _number(sdata, "dc", "source", required=False, default=0.0)
    source = HarmonicSignal(omega, tuple(terms), dc)

    odata = data.get("options", {}) or {}
    if not isinstance(odata, dict):
        raise ProblemError("problem.options: expected an object")
    n_override = _integer(odata, "n_override", "options")
    if n_override is not None and n_override < max(source.max_order, 1):
        raise ProblemError(f"options.n_override: {n_override} is below the highest harmonic order {source.max_order}")
    precision = _integer(odata, "precision", "options", DEFAULT_PRECISION)
    env = os.environ.get(PRECISION_ENV)
    if env:
        try:
            precision = int(env)
        except ValueError:
            raise ProblemError(f"{PRECISION_ENV}: expected an integer, got {env!r}") from None
    if not 0 <= precision <= 17:
        raise ProblemError(f"options.precision: expected 0..17, got {precision}")
    return ProblemSpec(omega, circuit, kind, source, n_override, precision)


def load_problem(path: str | Path) -> ProblemSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProblemError(f"problem: invalid JSON ({exc})") from None
    return parse_problem(data)


@dataclass(frozen=True)
class Solution:
    problem: ProblemSpec
    source_vector: ga.Multivector
    output_vector: ga.Multivector
    operator: core.Rotoflex
    oracle_vector: ga.Multivector
    oracle_phasors: tuple
    max_delta: float
    residual: float


def solve_problem(spec: ProblemSpec) -> Solution:
    """Rotoflex solve plus the independent phasor solve it is checked against."""
    if spec.source.dc != 0.0:
        warnings.warn("DC source component is excluded from the AC solution", stacklevel=2)
    n = spec.n_harmonics
    x = signals.to_vector(spec.source, n)
    if ga.norm(x) == 0.0:
        theta = None
        y = ga.Multivector(2 * n)
    else:
        theta = core.build_rotoflex(spec.circuit, x, spec.omega)
        y = core.apply(theta, x)
    oracle = phasor.solve_harmonics(spec.circuit, spec.source)
    y_ref = phasor.phasors_to_vector(oracle, n)
    delta = ga.vector_delta(y, y_ref)
    resid = core.residual(theta, x) if theta is not None else 0.0
    return Solution(spec, x, y, theta, y_ref, tuple(oracle), delta, resid)


def _harmonic_rows(v: ga.Multivector, omega: float) -> dict[int, tuple[float, float]]:
    return {
        t.order: (t.rms, math.degrees(-t.phase_alpha))
        for t in signals.from_vector(v, omega).harmonics
    }


def build_report(sol: Solution) -> dict:
    spec = sol.problem
    p = spec.precision

    def r(x: float) -> float:
        v = round(float(x), p)
        return 0.0 if v == 0 else v

    def vec(m: ga.Multivector) -> dict[str, float]:
        return {name: r(c) for name, c in m.named_terms().items()}

    out_kind = "current" if spec.source_kind == "voltage" else "voltage"
    unit = spec.circuit.kernel_unit
    ga_rows = _harmonic_rows(sol.output_vector, spec.omega)
    oracle_rows = {h: (abs(ph), math.degrees(ph.angle)) for h, ph in sol.oracle_phasors}
    per_h = {resp.h: resp for resp in (sol.operator.harmonics if sol.operator else ())}
    table = []
    for t in spec.source.harmonics:
        if t.rms == 0.0:
            continue
        h = t.order
        ga_mag, ga_ph = ga_rows.get(h, (0.0, 0.0))
        or_mag, or_ph = oracle_rows.get(h, (0.0, 0.0))
        row = {
            "h": h,
            "ga": {"magnitude": r(ga_mag), "phase_deg": r(ga_ph)},
            "oracle": {"magnitude": r(or_mag), "phase_deg": r(or_ph)},
        }
        if h in per_h:
            row["kernel"] = r(per_h[h].kappa)
            row["angle_deg"] = r(math.degrees(per_h[h].phi))
        table.append(row)

    report = {
        "topology": spec.circuit.topology.value,
        "omega": spec.omega,
        "n_harmonics": spec.n_harmonics,
        "input": {"kind": spec.source_kind, "dc": spec.source.dc, "vector": vec(sol.source_vector)},
        "output": {"kind": out_kind, "vector": vec(sol.output_vector)},
    }
    if sol.operator is not None:
        report["flextance"] = {"value": r(sol.operator.k), "unit": unit}
        report["rotance"] = vec(sol.operator.R)
        report["power_factor"] = r(sol.operator.R[0])
        report["effective_angle_deg"] = r(math.degrees(core.effective_angle(sol.operator)))
    else:
        report["flextance"] = None
        report["rotance"] = None
        report["power_factor"] = None
        report["effective_angle_deg"] = None
    report["harmonics"] = table
    report["oracle"] = {"max_abs_delta": sol.max_delta, "grade3_residual": sol.residual}
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_table(report: dict) -> str:
    out_unit = "A" if report["output"]["kind"] == "current" else "V"
    lines = [
        f"{'Harmonic':>8}  {'Method':<9}  {'Magnitude':>12}  {'Phase (deg)':>11}",
        "-" * 48,
    ]
    for row in report["harmonics"]:
        for label, key in (("Classical", "oracle"), ("GA", "ga")):
            cell = row[key]
            lines.append(
                f"{'h=' + str(row['h']):>8}  {label:<9}  {cell['magnitude']:>10.2f} {out_unit}  {cell['phase_deg']:>11.2f}"
            )
    lines.append("-" * 48)
    if report["flextance"] is not None:
        flex = report["flextance"]
        lines.append(f"flextance k = {flex['value']:.4f} {flex['unit']}")
        lines.append(
            f"effective rotation = {report['effective_angle_deg']:.2f} deg, PF = {report['power_factor']:.4f}"
        )
    lines.append(f"max |GA - classical| = {report['oracle']['max_abs_delta']:.3e}")
    return "\n".join(lines) + "\n"
