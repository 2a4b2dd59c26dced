"""Command line entry point: ``rotoflex solve|waveform|bench|selftest``."""

from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import bench, golden, signals
from .circuit import ResonanceError
from .core import IntegrityError, NullSignalError
from .problem import ProblemError, build_report, load_problem, render_json, render_table, solve_problem

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_GOLDEN = 4


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    sol = solve_problem(load_problem(args.file))
    report = build_report(sol)
    _write(render_table(report) if args.format == "table" else render_json(report), args.out)
    return EXIT_OK


def waveform_rows(file: str, periods: int, samples: int) -> np.ndarray:
    sol = solve_problem(load_problem(file))
    src = sol.problem.source
    out_signal = signals.from_vector(sol.output_vector, src.omega)
    t = np.arange(periods * samples + 1) * (src.period() / samples)
    return np.column_stack([t, signals.sample(src, t), signals.sample(out_signal, t)])


def cmd_waveform(args) -> int:
    if args.periods < 1 or args.samples < 1:
        raise ProblemError("--periods and --samples must be positive integers")
    rows = waveform_rows(args.file, args.periods, args.samples)
    buf = io.StringIO()
    buf.write("t,input,output\n")
    for t, a, b in rows:
        buf.write(f"{t:.17g},{a:.17g},{b:.17g}\n")
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.max_harmonics, args.trials, args.seed)
    sys.stdout.write(bench.format_rows(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_NUMERICAL


def cmd_selftest(args) -> int:
    return EXIT_OK if golden.selftest() else EXIT_GOLDEN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotoflex", description="Multi-harmonic RLC solver using rotoflex operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a problem file and print the report")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("waveform", help="sample input and output waveforms as CSV")
    p.add_argument("file")
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=cmd_waveform)

    p = sub.add_parser("bench", help="time rotoflex vs per-harmonic superposition")
    p.add_argument("--max-harmonics", type=int, default=25)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="check the published reference values")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
        try:
            return args.func(args)
        except (ProblemError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        except (ResonanceError, NullSignalError, IntegrityError, ZeroDivisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
