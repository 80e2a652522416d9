"""Dead-state sensitivity: re-evaluating a plant at other ambient states.

Two ways to move the dead state, chosen per fluid:

* table-evaluated: the fluid has a property table (and no explicit
  reference), so (h0, s0) are looked up at each new (p0, T0);
* fixed-reference: the fluid has explicit (h0, s0). They stay pinned at
  their supplied values and only T0 in ``(h - h0) - T0*(s - s0)`` moves.
  This is an approximation: strictly h0, s0 depend on (p0, T0) too.

A fluid known only through k0 cannot be moved at all.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import PropertyTableError, SweepError
from .fluid_state import DeadState, FluidRef, lookup_properties, specific_exergy
from .plant import ExergyReport, PlantGraph, analyze_plant

FIXED_REFERENCE = "fixed-reference"
TABLE_EVALUATED = "table-evaluated"


@dataclass(frozen=True)
class SweepSeries:
    mode: str
    points: tuple[tuple[float, ExergyReport], ...]

    @property
    def t0_values(self) -> tuple[float, ...]:
        return tuple(t0 for t0, _ in self.points)


def sweep_mode(plant: PlantGraph) -> str:
    """Mode marker for ``plant``; raises SweepError if some fluid cannot move."""
    mode = FIXED_REFERENCE
    for fid in sorted(plant.fluid_refs):
        source = plant.reference_sources.get(fid, "explicit")
        if source == "table":
            mode = TABLE_EVALUATED
        elif not plant.fluid_refs[fid].separable:
            how = "derived from eps values" if source == "derived" else "given as k0"
            raise SweepError(
                f"fluid {fid!r} has only a combined reference k0 ({how}); "
                "a dead-state change needs (h0, s0) or a property table"
            )
    return mode


def plant_at_dead_state(plant: PlantGraph, dead_state: DeadState) -> PlantGraph:
    """Copy of ``plant`` with every eps recomputed at ``dead_state``.

    Supplied eps values only hold at the plant's own dead state and are
    discarded. At that dead state the plant is returned unchanged.
    """
    if dead_state == plant.dead_state:
        return plant
    sweep_mode(plant)
    refs = {}
    for fid, ref in plant.fluid_refs.items():
        if plant.reference_sources.get(fid) == "table":
            try:
                h0, s0 = lookup_properties(plant.property_tables[fid], dead_state.p0,
                                           dead_state.T0)
            except PropertyTableError as exc:
                raise SweepError(f"fluid {fid!r}: table does not cover the dead state: "
                                 f"{exc}") from exc
            refs[fid] = FluidRef.from_h0s0(fid, h0, s0)
        else:
            refs[fid] = ref
    states = {sid: replace(st, eps=specific_exergy(st.h, st.s, refs[st.fluid_id], dead_state))
              for sid, st in plant.states.items()}
    return replace(plant, states=states, fluid_refs=refs, dead_state=dead_state)


def analyze_at(plant: PlantGraph, dead_state: DeadState, *, strict: bool = True) -> ExergyReport:
    return analyze_plant(plant_at_dead_state(plant, dead_state), strict=strict)


def sweep_dead_state(plant: PlantGraph, T0_values: Sequence[float],
                     p0: Optional[float] = None) -> SweepSeries:
    """Full analysis at each T0 (K), all at pressure ``p0`` (kPa).

    Off the plant's own dead state an undefined component efficiency is
    reported as ``None`` rather than raised: a stream that crosses the
    ambient temperature can make an exchanger's hot-side exergy drop
    negative. The point at the plant's own dead state is the strict direct
    analysis, bit for bit.
    """
    T0_values = [float(t) for t in T0_values]
    if not T0_values:
        raise SweepError("no T0 values to sweep")
    if any(b <= a for a, b in zip(T0_values, T0_values[1:])):
        raise SweepError("T0 values must be strictly increasing")
    p0 = plant.dead_state.p0 if p0 is None else float(p0)
    mode = sweep_mode(plant)
    points = []
    for T0 in T0_values:
        ds = DeadState(p0=p0, T0=T0)
        baseline = ds == plant.dead_state
        points.append((T0, analyze_at(plant, ds, strict=baseline)))
    return SweepSeries(mode=mode, points=tuple(points))
