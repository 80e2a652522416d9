import math
from dataclasses import replace

import pytest

from exergraph import DeadState, analyze_plant, load_plant, sweep_dead_state
from exergraph.errors import SweepError
from exergraph.fluid_state import PropertyTable
from exergraph.plant import build_plant
from exergraph.report import render_sweep
from exergraph.sweep import FIXED_REFERENCE, TABLE_EVALUATED, plant_at_dead_state

TEMPS = [278.15 + 5.0 * i for i in range(9)]


def test_nine_point_series(sweep_plant):
    series = sweep_dead_state(sweep_plant, TEMPS)
    assert series.mode == FIXED_REFERENCE
    assert len(series.points) == 9
    assert list(series.t0_values) == sorted(set(series.t0_values))


def test_baseline_point_is_direct_analysis(sweep_plant):
    series = sweep_dead_state(sweep_plant, TEMPS)
    t0, report = series.points[2]
    assert t0 == sweep_plant.dead_state.T0
    assert report == analyze_plant(sweep_plant)


def test_closure_at_every_point(sweep_plant):
    for _, report in sweep_dead_state(sweep_plant, TEMPS).points:
        assert report.closure.relative_residual < 1e-9


def test_cooler_efficiency_undefined_above_crossover(sweep_plant):
    # CO2 drop in the cooler is 127.9*(182.84 - 0.5836*T0) kW: negative past ~313.3 K
    series = sweep_dead_state(sweep_plant, TEMPS)
    by_t0 = dict(series.points)
    assert by_t0[318.15]["Cooler"].eta_x is None
    assert by_t0[318.15]["Cooler"].ex_in < 0
    assert by_t0[313.15]["Cooler"].eta_x is not None
    assert [r.id for r in by_t0[318.15].components if r.eta_undefined] == ["Cooler"]


def test_fixed_reference_formula(sweep_plant):
    ds = DeadState(T0=300.0)
    moved = plant_at_dead_state(sweep_plant, ds)
    st = moved.states["10"]
    ref = sweep_plant.fluid_refs["CO2"]
    assert st.eps == pytest.approx((st.h - ref.h0) - 300.0 * (st.s - ref.s0), abs=1e-12)
    assert plant_at_dead_state(sweep_plant, sweep_plant.dead_state) is sweep_plant


def test_k0_only_rejected(reference_plant):
    with pytest.raises(SweepError, match="k0"):
        sweep_dead_state(reference_plant, TEMPS)


def test_t0_must_increase(sweep_plant):
    with pytest.raises(SweepError):
        sweep_dead_state(sweep_plant, [290.0, 285.0])
    with pytest.raises(SweepError):
        sweep_dead_state(sweep_plant, [])


def _table_plant(sweep_plant, t_range=(260.0, 330.0)):
    # synthetic tables whose h0(T0), s0(T0) follow a constant cp
    tables = {}
    samples_for = {"Air": (1.005, 420.1626, 3.87), "CO2": (0.85, 505.906, 2.74),
                   "Water": (4.18, 63.084, 0.2245)}
    for fid, (cp, h_ref, s_ref) in samples_for.items():
        samples = []
        for p in (50.0, 100.0, 150.0):
            for T in (t_range[0], 288.15, t_range[1]):
                samples.append((p, T, h_ref + cp * (T - 288.15), s_ref + cp * math.log(T / 288.15)))
        tables[fid] = PropertyTable.from_samples(fid, samples)
    states = [replace(s, eps=None) for s in sweep_plant.states.values()]
    return build_plant(states, sweep_plant.components, sweep_plant.boundary,
                       sweep_plant.dead_state, None, tables)


def test_table_evaluated_mode(sweep_plant):
    plant = _table_plant(sweep_plant)
    assert set(plant.reference_sources.values()) == {"table"}
    series = sweep_dead_state(plant, [280.0, 288.15, 300.0])
    assert series.mode == TABLE_EVALUATED
    _, rep = series.points[2]
    moved = plant_at_dead_state(plant, DeadState(T0=300.0))
    h0, s0 = moved.fluid_refs["CO2"].h0, moved.fluid_refs["CO2"].s0
    # linear-in-T table node spacing: h0 at 300 K lies on the secant
    assert h0 == pytest.approx(505.906 + 0.85 * (300.0 - 288.15), abs=1e-9)
    assert s0 > 2.74
    for _, r in series.points:
        assert r.closure.relative_residual < 1e-9


def test_table_coverage_gap(sweep_plant):
    plant = _table_plant(sweep_plant, t_range=(270.0, 295.0))
    with pytest.raises(SweepError, match="cover"):
        sweep_dead_state(plant, [280.0, 300.0])


def test_render_sweep_formats(sweep_plant):
    series = sweep_dead_state(sweep_plant, TEMPS)
    table = render_sweep(series, "table")
    assert "fixed-reference" in table and "Cooler" in table
    csv_text = render_sweep(series, "csv")
    assert csv_text.count("\n") == 1 + 9 * (14 + 3)
    assert render_sweep(series, "json") == render_sweep(series, "json")


def test_sweep_file_matches_reference_at_baseline(sweep_plant, reference_report):
    # synthetic (h0, s0) reproduce the published eps, so baseline results agree
    assert analyze_plant(sweep_plant) == reference_report
    assert load_plant("builtin:reference-sweep").fluid_refs["CO2"].separable
