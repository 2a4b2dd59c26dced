import csv
import io
import json
import math
from pathlib import Path

import pytest

from rotoflex import cli, golden
from rotoflex.problem import ProblemError, parse_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
CASE1 = PROBLEMS / "case1_series.json"
CASE2 = PROBLEMS / "case2_parallel.json"


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_case1(capsys):
    code, out, _ = run(["solve", str(CASE1)], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["flextance"] == {"value": pytest.approx(0.3201, abs=1e-4), "unit": "S"}
    assert report["power_factor"] == pytest.approx(0.9602, abs=1e-4)
    assert report["effective_angle_deg"] == pytest.approx(16.2227, abs=1e-4)
    assert report["oracle"]["max_abs_delta"] < 1e-10
    assert report["output"]["vector"] == {"s1": 0.333333, "s3": 0.213333, "s4": 0.106667}
    assert set(report["rotance"]) == {"1", "s13", "s14", "s34"}


def test_solve_case2(capsys):
    code, out, _ = run(["solve", str(CASE2)], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["flextance"]["unit"] == "Ohm"
    assert report["flextance"]["value"] == pytest.approx(0.8892, abs=1e-4)
    assert report["power_factor"] == pytest.approx(0.4446, abs=1e-4)
    assert len(report["rotance"]) == 13
    rows = {r["h"]: r for r in report["harmonics"]}
    assert rows[2]["ga"] == rows[2]["oracle"]


def test_solve_single_harmonic(tmp_path, capsys):
    R, L, C, w, U = 2.0, 0.5, 0.25, 3.0, 4.0
    path = write(tmp_path, {
        "omega": w,
        "circuit": {"topology": "series", "R": R, "L": L, "C": C},
        "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": U}]},
        "options": {"precision": 12},
    })
    _, out, _ = run(["solve", path], capsys)
    x1 = w * L - 1 / (w * C)
    vec = json.loads(out)["output"]["vector"]
    assert vec["s1"] == pytest.approx(U * R / (R * R + x1 * x1), abs=1e-12)
    assert vec["s2"] == pytest.approx(U * x1 / (R * R + x1 * x1), abs=1e-12)


def test_solve_is_deterministic(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert cli.main(["solve", str(CASE2), "--out", str(first)]) == 0
    assert cli.main(["solve", str(CASE2), "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_precision_env_override(monkeypatch, capsys):
    monkeypatch.setenv("ROTOFLEX_PRECISION", "2")
    _, out, _ = run(["solve", str(CASE1)], capsys)
    assert json.loads(out)["flextance"]["value"] == 0.32


def test_table_format(capsys):
    code, out, _ = run(["solve", str(CASE2), "--format", "table"], capsys)
    assert code == 0
    assert "Classical" in out and "GA" in out
    assert "1.54 V" in out and "-59.04" in out


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d.pop("omega"), "problem.omega"),
        (lambda d: d["circuit"].update(topology="mesh"), "circuit.topology"),
        (lambda d: d["circuit"].update(G=1.0), "circuit.G"),
        (lambda d: d["circuit"].update(R=-1.0), "circuit"),
        (lambda d: d["source"].update(kind="current"), "source.kind"),
        (lambda d: d["source"]["harmonics"].append({"h": 1, "rms": 0.1}), "source.harmonics"),
        (lambda d: d["source"]["harmonics"][0].update(rms="big"), "source.harmonics[0].rms"),
        (lambda d: d["source"]["harmonics"][0].update(form="square"), "source.harmonics[0].form"),
        (lambda d: d.update(options={"n_override": 1}), "options.n_override"),
    ],
)
def test_validation_errors_exit_2(tmp_path, capsys, mutate, field):
    data = json.loads(CASE1.read_text())
    mutate(data)
    code, _, err = run(["solve", write(tmp_path, data)], capsys)
    assert code == 2
    assert field in err


def test_invalid_json_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert run(["solve", str(path)], capsys)[0] == 2


def test_resonance_exit_3(tmp_path, capsys):
    path = write(tmp_path, {
        "omega": 1.0,
        "circuit": {"topology": "series", "L": 1.0, "C": 1.0},
        "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": 1.0}]},
    })
    code, _, err = run(["solve", path], capsys)
    assert code == 3 and "resonance" in err


def test_dc_is_echoed_and_warned(tmp_path, capsys):
    data = json.loads(CASE1.read_text())
    data["source"]["dc"] = 0.5
    code, out, err = run(["solve", write(tmp_path, data)], capsys)
    assert code == 0 and "DC" in err
    report = json.loads(out)
    assert report["input"]["dc"] == 0.5
    assert report["flextance"]["value"] == pytest.approx(0.3201, abs=1e-4)


def test_n_override_pads_dimension(tmp_path, capsys):
    data = json.loads(CASE1.read_text())
    data["options"] = {"n_override": 4}
    _, out, _ = run(["solve", write(tmp_path, data)], capsys)
    report = json.loads(out)
    assert report["n_harmonics"] == 4
    assert report["flextance"]["value"] == pytest.approx(0.3201, abs=1e-4)


def test_zero_source(tmp_path, capsys):
    data = json.loads(CASE1.read_text())
    for t in data["source"]["harmonics"]:
        t["rms"] = 0.0
    path = write(tmp_path, data)
    code, out, _ = run(["solve", path], capsys)
    assert code == 0
    assert json.loads(out)["flextance"] is None
    code, out, _ = run(["waveform", path, "--periods", "1", "--samples", "8"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and all(float(r["output"]) == 0.0 for r in rows)


def test_waveform_case1(capsys):
    code, out, _ = run(["waveform", str(CASE1), "--periods", "2", "--samples", "16"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "t,input,output"
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 * 16 + 1
    assert float(rows[0]["input"]) == pytest.approx(math.sqrt(2) * 1.8, abs=1e-12)
    assert float(rows[0]["output"]) == pytest.approx(math.sqrt(2) * (1 / 3 + 0.64 / 3), abs=1e-12)
    assert float(rows[-1]["t"]) == pytest.approx(4 * math.pi, abs=1e-12)
    assert float(rows[-1]["output"]) == pytest.approx(float(rows[0]["output"]), abs=1e-12)


def test_bench(capsys):
    code, out, _ = run(["bench", "--max-harmonics", "25", "--trials", "3"], capsys)
    assert code == 0
    lines = out.splitlines()[2:]
    assert [int(line.split()[0]) for line in lines] == [1, 5, 10, 25]
    assert all(line.endswith("ok") for line in lines)


def test_bench_zero_trials(capsys):
    code, out, _ = run(["bench", "--trials", "0"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 2


def test_selftest_passes(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert "expected=" in out and "tol=" in out


def test_selftest_catches_mutation():
    lines = []
    mutated = {k: dict(v) for k, v in golden.GOLDEN.items()}
    mutated["case1"] = dict(mutated["case1"], flextance=0.3301)
    assert not golden.selftest(lines.append, mutated)
    assert any(line.startswith("[FAIL] case1.flextance") for line in lines)


def test_parse_problem_defaults():
    spec = parse_problem({
        "omega": 2.0,
        "circuit": {"topology": "parallel", "G": 0.5},
        "source": {"kind": "current", "harmonics": [{"h": 3, "rms": 1.0, "phase_deg": 30.0, "form": "sin"}]},
    })
    assert spec.precision == 6 and spec.n_harmonics == 3
    assert math.degrees(spec.source.harmonics[0].phase_alpha) == pytest.approx(120.0)
    with pytest.raises(ProblemError):
        parse_problem([])
