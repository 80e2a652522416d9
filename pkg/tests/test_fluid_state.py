import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import REFERENCE_STATES
from exergraph import (
    DeadState,
    FluidRef,
    PropertyTable,
    StatePoint,
    derive_fluid_ref,
    exergy_flow,
    exergy_of_heat,
    lookup_properties,
    specific_exergy,
)
from exergraph.errors import (
    InconsistentDataError,
    NonSeparableReferenceError,
    PropertyTableError,
)

DS = DeadState()
finite = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)


def table_states(fluid):
    return [StatePoint.from_celsius(str(i), f, t, p, m, h, s, e)
            for i, (f, t, p, m, h, s, e) in REFERENCE_STATES.items() if f == fluid]


def test_default_dead_state():
    assert DS.p0 == 100.0
    assert DS.T0 == 288.15


@pytest.mark.parametrize("p0,T0", [(0.0, 288.15), (100.0, 0.0), (-1.0, 300.0)])
def test_dead_state_rejects_non_positive(p0, T0):
    with pytest.raises(ValueError):
        DeadState(p0=p0, T0=T0)


def test_fluid_ref_needs_exactly_one_form():
    with pytest.raises(ValueError):
        FluidRef("CO2")
    with pytest.raises(ValueError):
        FluidRef("CO2", h0=1.0, s0=2.0, k0=3.0, k0_T0=288.15)
    with pytest.raises(ValueError):
        FluidRef("CO2", h0=1.0)


@pytest.mark.parametrize("h,s,k0,expected", [
    (953.85, 4.9019, -694.97, 236.34),   # state 1 (air)
    (298.80, 1.3226, -283.63, 201.33),   # state 4 (CO2)
])
def test_specific_exergy_reference_states(h, s, k0, expected):
    ref = FluidRef.from_k0("x", k0, 288.15)
    assert specific_exergy(h, s, ref, DS) == pytest.approx(expected, abs=0.02)


def test_specific_exergy_k0_at_other_T0_is_rejected():
    ref = FluidRef.from_k0("Air", -694.97, 288.15)
    with pytest.raises(NonSeparableReferenceError):
        specific_exergy(953.85, 4.9019, ref, DeadState(T0=298.15))


def test_separable_reference_matches_k0_form():
    h0, s0 = 420.0, 3.87
    sep = FluidRef.from_h0s0("Air", h0, s0)
    comb = FluidRef.from_k0("Air", h0 - DS.T0 * s0, DS.T0)
    assert specific_exergy(953.85, 4.9019, sep, DS) == pytest.approx(
        specific_exergy(953.85, 4.9019, comb, DS), abs=1e-10)


@given(h0=finite, s0=st.floats(0, 20), T0=st.floats(1.0, 2000.0))
def test_dead_state_nullity(h0, s0, T0):
    ref = FluidRef.from_h0s0("f", h0, s0)
    assert specific_exergy(h0, s0, ref, DeadState(T0=T0)) == 0.0


@given(h=finite, s=st.floats(-10, 10), T0=st.floats(100.0, 1000.0))
def test_specific_exergy_affine_slopes(h, s, T0):
    ref = FluidRef.from_h0s0("f", 10.0, 0.5)
    ds = DeadState(T0=T0)
    dh, dsv = 1e-3, 1e-6
    base = specific_exergy(h, s, ref, ds)
    slope_h = (specific_exergy(h + dh, s, ref, ds) - base) / dh
    slope_s = (specific_exergy(h, s + dsv, ref, ds) - base) / dsv
    assert slope_h == pytest.approx(1.0, rel=1e-6, abs=1e-6)
    assert slope_s == pytest.approx(-T0, rel=1e-4)


def test_exergy_flow_examples():
    p1 = StatePoint.from_celsius("1", "Air", 531.8, 104.3, 93.8, eps=236.34)
    p23 = StatePoint.from_celsius("23", "Water", 25.0, 200, 1119.0, eps=0.8095)
    assert exergy_flow(p1) == pytest.approx(93.8 * 236.34, abs=1e-9)
    assert exergy_flow(p1) == pytest.approx(22168.69, abs=0.01)
    assert exergy_flow(p23) == pytest.approx(905.83, abs=0.01)
    assert exergy_flow(StatePoint("0", "Air", 300.0, 100.0, 0.0, eps=50.0)) == 0.0


@given(m=st.floats(0, 1e4), lam=st.floats(0, 100), eps=finite)
def test_exergy_flow_linear_in_mdot(m, lam, eps):
    a = StatePoint("a", "f", 300.0, 100.0, m, eps=eps)
    b = StatePoint("b", "f", 300.0, 100.0, lam * m, eps=eps)
    assert exergy_flow(b) == pytest.approx(lam * exergy_flow(a), rel=1e-12, abs=1e-9)


def test_exergy_flow_requires_eps():
    with pytest.raises(ValueError):
        exergy_flow(StatePoint("a", "f", 300.0, 100.0, 1.0))


@pytest.mark.parametrize("kwargs", [dict(mdot=-1.0), dict(p=0.0), dict(T=-1.0)])
def test_state_point_invariants(kwargs):
    base = dict(id="x", fluid_id="f", T=300.0, p=100.0, mdot=1.0)
    with pytest.raises(ValueError):
        StatePoint(**{**base, **kwargs})


# frozen from the oracle: mean and spread of h - 288.15*s - eps over the reference states
@pytest.mark.parametrize("fluid,k0,max_spread", [
    ("Air", -694.9779, 0.03),
    ("Water", -1.6057, 0.01),
    ("CO2", -283.6250, 0.03),
])
def test_derive_fluid_ref(fluid, k0, max_spread):
    residuals = [h - 288.15 * s - e for f, _, _, _, h, s, e in REFERENCE_STATES.values() if f == fluid]
    oracle_k0 = sum(residuals) / len(residuals)
    oracle_spread = max(residuals) - min(residuals)
    assert oracle_k0 == pytest.approx(k0, abs=1e-4)

    ref, spread = derive_fluid_ref(table_states(fluid), DS)
    assert ref.k0 == pytest.approx(oracle_k0, abs=1e-9)
    assert spread == pytest.approx(oracle_spread, abs=1e-9)
    assert spread < max_spread
    assert ref.k0_T0 == DS.T0


def test_derive_fluid_ref_errors():
    with pytest.raises(InconsistentDataError):
        derive_fluid_ref([], DS)
    rows = table_states("CO2")
    bad = [StatePoint.from_celsius("4", "CO2", 31.0, 7579, 127.9, 298.80, 1.3226, 300.0)] + rows[1:]
    with pytest.raises(InconsistentDataError, match="'4'"):
        derive_fluid_ref(bad, DS)
    with pytest.raises(InconsistentDataError):
        derive_fluid_ref(table_states("CO2") + table_states("Air"), DS)


def test_exergy_of_heat():
    assert exergy_of_heat(100.0, DS.T0, DS) == 0.0
    assert exergy_of_heat(100.0, 576.30, DS) == pytest.approx(50.0, abs=1e-12)
    assert exergy_of_heat(0.0, 1234.0, DS) == 0.0
    with pytest.raises(ValueError):
        exergy_of_heat(10.0, 0.0, DS)


def test_exergy_of_heat_high_temperature_limit():
    Q = 250.0
    assert exergy_of_heat(Q, 1e6 * DS.T0, DS) == pytest.approx(Q, rel=1e-4)


# -- property tables ---------------------------------------------------------

def grid_table():
    pressures = [100.0, 200.0, 400.0]
    temps = [280.0, 300.0, 350.0, 400.0]
    samples = [(p, T, 1.0 * T + 0.01 * p, math.log(T) - 0.001 * p)
               for p in pressures for T in temps]
    return PropertyTable.from_samples("W", samples), samples


def test_lookup_exact_at_nodes():
    table, samples = grid_table()
    for p, T, h, s in samples:
        assert lookup_properties(table, p, T) == (h, s)


def test_lookup_constant_cell():
    samples = [(p, T, 42.0, 1.5) for p in (1.0, 2.0) for T in (300.0, 310.0)]
    table = PropertyTable.from_samples("c", samples)
    h, s = lookup_properties(table, 1.5, 305.0)
    assert h == pytest.approx(42.0, abs=1e-12)
    assert s == pytest.approx(1.5, abs=1e-12)


def test_lookup_linear_in_T():
    samples = [(p, T, 2.0 * T, 0.0) for p in (1.0, 2.0) for T in (300.0, 320.0)]
    table = PropertyTable.from_samples("c", samples)
    h, _ = lookup_properties(table, 1.0, 310.0)
    assert h == pytest.approx((600.0 + 640.0) / 2, abs=1e-12)


@given(p=st.floats(100.0, 400.0), T=st.floats(280.0, 400.0))
def test_lookup_reproduces_bilinear_field(p, T):
    # h is affine in T and p -> bilinear interpolation is exact
    table, _ = grid_table()
    h, _ = lookup_properties(table, p, T)
    assert h == pytest.approx(T + 0.01 * p, rel=1e-12, abs=1e-9)


@pytest.mark.parametrize("p,T", [(50.0, 300.0), (500.0, 300.0), (200.0, 279.0), (200.0, 401.0)])
def test_lookup_outside_grid(p, T):
    table, _ = grid_table()
    with pytest.raises(PropertyTableError):
        lookup_properties(table, p, T)


def test_table_must_be_rectangular():
    samples = [(1.0, 300.0, 1, 1), (1.0, 310.0, 1, 1), (2.0, 300.0, 1, 1)]
    with pytest.raises(PropertyTableError, match="rectangular"):
        PropertyTable.from_samples("x", samples)
    with pytest.raises(PropertyTableError, match="duplicate"):
        PropertyTable.from_samples("x", samples + [(1.0, 300.0, 2, 2)])
    with pytest.raises(PropertyTableError):
        PropertyTable.from_samples("x", [(1.0, 300.0, 1, 1), (1.0, 310.0, 1, 1)])
