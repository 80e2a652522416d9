"""Exergy analysis of thermodynamic plants given as networks of state points."""

from .components import (
    Compressor,
    ExergyBalance,
    HeatExchanger,
    Merger,
    Splitter,
    Turbine,
    compressor_balance,
    compressor_power,
    generic_balance,
    hx_balance,
    turbine_balance,
    turbine_power,
)
from .errors import *  # noqa: F401,F403
from .fluid_state import (
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
from .plant import (
    ExergyReport,
    PlantGraph,
    SystemBoundary,
    Violation,
    analyze_plant,
    build_plant,
    destruction_closure,
    diagnose,
    system_balance,
    useful_power,
    validate_mass_balance,
)
from .plantfile import builtin_path, load_plant, plant_from_dict, read_plant
from .report import render_report, render_sweep, report_from_json
from .sweep import SweepSeries, plant_at_dead_state, sweep_dead_state

__version__ = "0.1.0"
