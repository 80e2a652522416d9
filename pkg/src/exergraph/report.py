"""Rendering of analysis reports and sweep series as table, CSV or JSON.

CSV and JSON carry full-precision floats; the table rounds powers to 0.01 kW
and efficiencies to 0.01 %. All three are deterministic.

CSV layout (one row per component, then three system rows)::

    id,kind,ex_in_kw,ex_out_kw,ex_d_kw,eta_x,power_kw
    H1,heat_exchanger,...
    WS,system,<ex_in>,<ex_out>,<ex_d>,<functional eta>,<P_useful>
    WS,system_gross,<ex_in>,<ex_out>,<ex_d>,<ex_out/ex_in>,<P_useful>
    closure,closure,<sum of component ex_d>,<whole-system ex_d>,<residual>,,
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

from .components import ExergyBalance
from .fluid_state import KELVIN_OFFSET, DeadState
from .plant import Closure, ComponentResult, ExergyReport, SystemBalance

FORMATS = ("table", "csv", "json")
CSV_HEADER = ("id", "kind", "ex_in_kw", "ex_out_kw", "ex_d_kw", "eta_x", "power_kw")

_GROUPS = (
    ("Heat exchangers", ("heat_exchanger",)),
    ("Turbomachinery", ("turbine", "compressor")),
    ("Junctions", ("splitter", "merger")),
)


def _num(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _kw(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.2f}"


def _pct(x: Optional[float]) -> str:
    return "-" if x is None else f"{100.0 * x:.2f}"


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


# -- JSON --------------------------------------------------------------------

def report_to_dict(report: ExergyReport) -> dict:
    sysb, clo = report.system, report.closure
    return {
        "dead_state": {"p0_kpa": report.dead_state.p0, "T0_k": report.dead_state.T0},
        "components": [
            {"id": row.id, "kind": row.kind, "ex_in_kw": row.balance.ex_in,
             "ex_out_kw": row.balance.ex_out, "ex_d_kw": row.balance.ex_d,
             "eta_x": row.balance.eta_x, "power_kw": row.balance.power}
            for row in report.components
        ],
        "system": {"ex_in_kw": sysb.ex_in, "ex_out_kw": sysb.ex_out, "ex_d_kw": sysb.ex_d,
                   "eta_x": sysb.eta_x, "eta_gross": sysb.eta_gross,
                   "p_useful_kw": sysb.p_useful},
        "closure": {"sum_components_kw": clo.sum_components, "whole_system_kw": clo.whole_system,
                    "residual_kw": clo.residual},
        "shaft_net_consuming": report.shaft_net_consuming,
    }


def report_from_dict(d: dict) -> ExergyReport:
    rows = tuple(
        ComponentResult(c["id"], c["kind"], ExergyBalance(
            ex_in=c["ex_in_kw"], ex_out=c["ex_out_kw"], ex_d=c["ex_d_kw"],
            eta_x=c["eta_x"], power=c["power_kw"]))
        for c in d["components"]
    )
    s, c = d["system"], d["closure"]
    return ExergyReport(
        dead_state=DeadState(p0=d["dead_state"]["p0_kpa"], T0=d["dead_state"]["T0_k"]),
        components=rows,
        system=SystemBalance(ex_in=s["ex_in_kw"], ex_out=s["ex_out_kw"], ex_d=s["ex_d_kw"],
                             eta_x=s["eta_x"], eta_gross=s["eta_gross"],
                             p_useful=s["p_useful_kw"]),
        closure=Closure(sum_components=c["sum_components_kw"],
                        whole_system=c["whole_system_kw"], residual=c["residual_kw"]),
        shaft_net_consuming=d["shaft_net_consuming"],
    )


def report_from_json(text: str) -> ExergyReport:
    return report_from_dict(json.loads(text))


# -- CSV ---------------------------------------------------------------------

def _csv_rows(report: ExergyReport):
    for row in report.components:
        b = row.balance
        yield (row.id, row.kind, _num(b.ex_in), _num(b.ex_out), _num(b.ex_d), _num(b.eta_x),
               _num(b.power))
    s, c = report.system, report.closure
    yield ("WS", "system", _num(s.ex_in), _num(s.ex_out), _num(s.ex_d), _num(s.eta_x),
           _num(s.p_useful))
    yield ("WS", "system_gross", _num(s.ex_in), _num(s.ex_out), _num(s.ex_d),
           _num(s.eta_gross), _num(s.p_useful))
    yield ("closure", "closure", _num(c.sum_components), _num(c.whole_system),
           _num(c.residual), "", "")


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- table -------------------------------------------------------------------

def _table(report: ExergyReport) -> str:
    ds = report.dead_state
    lines = [f"Exergy analysis at dead state T0 = {ds.T0:.2f} K "
             f"({ds.T0 - KELVIN_OFFSET:.2f} degC), p0 = {ds.p0:.2f} kPa", ""]
    head = f"  {'component':<12}{'ex_in kW':>12}{'ex_out kW':>12}{'ex_d kW':>12}" \
           f"{'eta_x %':>10}{'P kW':>12}"
    for title, kinds in _GROUPS:
        rows = [r for r in report.components if r.kind in kinds]
        if not rows:
            continue
        lines += [title, head]
        for r in rows:
            b = r.balance
            lines.append(f"  {r.id:<12}{_kw(b.ex_in):>12}{_kw(b.ex_out):>12}{_kw(b.ex_d):>12}"
                         f"{_pct(b.eta_x):>10}{_kw(b.power):>12}")
        lines.append("")
    s, c = report.system, report.closure
    lines += [
        "Whole system",
        f"  exergy input                {_kw(s.ex_in):>12} kW",
        f"  exergy output               {_kw(s.ex_out):>12} kW",
        f"  exergy destruction          {_kw(s.ex_d):>12} kW",
        f"  useful power                {_kw(s.p_useful):>12} kW",
        f"  functional efficiency       {_pct(s.eta_x):>12} %   P_useful / (in - out streams)",
        f"  gross efficiency            {_pct(s.eta_gross):>12} %   ex_out / ex_in",
        f"  sum of component ex_d       {_kw(c.sum_components):>12} kW",
        f"  closure residual            {c.residual:>12.3e} kW",
    ]
    if report.shaft_net_consuming:
        lines.append("  WARNING: shaft is net consuming (useful power < 0)")
    return "\n".join(lines) + "\n"


def render_report(report: ExergyReport, fmt: str = "table") -> str:
    """Render ``report`` as ``table``, ``csv`` or ``json`` text."""
    _check_format(fmt)
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        return _write_csv(CSV_HEADER, _csv_rows(report))
    return _table(report)


# -- sweeps ------------------------------------------------------------------

def render_sweep(series, fmt: str = "table") -> str:
    """Render a :class:`~exergraph.sweep.SweepSeries`.

    CSV is the per-report CSV with a leading ``t0_k`` column.
    """
    _check_format(fmt)
    if fmt == "json":
        doc = {"mode": series.mode,
               "points": [{"t0_k": t0, "report": report_to_dict(rep)}
                          for t0, rep in series.points]}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        rows = ((_num(t0), *row) for t0, rep in series.points for row in _csv_rows(rep))
        return _write_csv(("t0_k", *CSV_HEADER), rows)

    lines = [f"Dead-state sweep ({series.mode}), {len(series.points)} points", "",
             f"{'T0 K':>8}{'T0 degC':>9}{'ex_in kW':>12}{'ex_out kW':>12}{'ex_d kW':>11}"
             f"{'eta %':>8}{'gross %':>9}{'residual kW':>13}  undefined eta"]
    for t0, rep in series.points:
        s = rep.system
        undefined = ",".join(r.id for r in rep.components
                             if r.eta_undefined) or "-"
        lines.append(f"{t0:>8.2f}{t0 - KELVIN_OFFSET:>9.2f}{_kw(s.ex_in):>12}"
                     f"{_kw(s.ex_out):>12}{_kw(s.ex_d):>11}{_pct(s.eta_x):>8}"
                     f"{_pct(s.eta_gross):>9}{rep.closure.residual:>13.2e}  {undefined}")
    return "\n".join(lines) + "\n"
