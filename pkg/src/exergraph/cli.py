"""Command-line interface.

    exergraph analyze  <plant-file> [--format table|csv|json] [--t0-c C] [--p0-kpa P]
    exergraph sweep    <plant-file> --t0-from-c A --t0-to-c B --t0-step-c D
                       [--p0-kpa P] [--format ...]
    exergraph validate <plant-file>

``<plant-file>`` may be ``builtin:reference`` or ``builtin:reference-sweep``
for the bundled datasets.

Exit status: 0 success, 1 validation or analysis error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from .errors import ExergyError, PlantFileError
from .fluid_state import KELVIN_OFFSET, DeadState
from .plant import diagnose
from .plantfile import load_plant, read_plant
from .report import FORMATS, render_report, render_sweep
from .sweep import analyze_at, sweep_dead_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exergraph",
                                description="Exergy analysis of thermodynamic plant networks.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a plant and print the exergy report")
    a.add_argument("plant_file")
    a.add_argument("--format", choices=FORMATS, default="table")
    a.add_argument("--t0-c", type=float, help="dead-state temperature, degC")
    a.add_argument("--p0-kpa", type=float, help="dead-state pressure, kPa")

    s = sub.add_parser("sweep", help="repeat the analysis over a range of dead-state T0")
    s.add_argument("plant_file")
    s.add_argument("--t0-from-c", type=float, required=True)
    s.add_argument("--t0-to-c", type=float, required=True)
    s.add_argument("--t0-step-c", type=float, required=True)
    s.add_argument("--p0-kpa", type=float)
    s.add_argument("--format", choices=FORMATS, default="table")

    v = sub.add_parser("validate", help="list mass-balance, port and eps findings")
    v.add_argument("plant_file")
    return p


def sweep_temperatures_c(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic range; each value is ``start + i*step``."""
    if step <= 0:
        raise ValueError("--t0-step-c must be positive")
    if stop < start:
        raise ValueError("--t0-to-c must not be below --t0-from-c")
    n = int(round((stop - start) / step))
    if start + n * step > stop + 1e-9 * max(1.0, abs(stop)):
        n -= 1
    return [start + i * step for i in range(n + 1)]


def _analyze(args, out) -> int:
    plant = load_plant(args.plant_file)
    ds = plant.dead_state
    if args.t0_c is not None or args.p0_kpa is not None:
        ds = DeadState(p0=ds.p0 if args.p0_kpa is None else args.p0_kpa,
                       T0=ds.T0 if args.t0_c is None else args.t0_c + KELVIN_OFFSET)
    out.write(render_report(analyze_at(plant, ds), args.format))
    return EXIT_OK


def _sweep(args, out) -> int:
    try:
        temps = sweep_temperatures_c(args.t0_from_c, args.t0_to_c, args.t0_step_c)
    except ValueError as exc:
        print(f"exergraph sweep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    plant = load_plant(args.plant_file)
    series = sweep_dead_state(plant, [t + KELVIN_OFFSET for t in temps], p0=args.p0_kpa)
    out.write(render_sweep(series, args.format))
    return EXIT_OK


def _validate(args, out) -> int:
    plant = read_plant(args.plant_file, lenient=True)
    found = diagnose(plant)
    for v in found:
        out.write(f"{v}\n")
    out.write(f"{len(found)} violation(s)\n")
    return EXIT_FAIL if found else EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"analyze": _analyze, "sweep": _sweep, "validate": _validate}[args.command]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return handler(args, out)
    except PlantFileError as exc:
        print(f"exergraph {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExergyError as exc:
        print(f"exergraph {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
