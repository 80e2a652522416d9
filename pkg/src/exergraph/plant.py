"""Plant network: validation, whole-system balance and destruction closure.

A plant is a set of state points wired together by components. A system
boundary names the streams that enter and leave and the turbines and
compressors on the common shaft. The whole-system balance is::

    ex_in  = sum of boundary inlet flows
    ex_out = sum of boundary outlet flows + P_useful
    ex_d   = ex_in - ex_out
    eta    = P_useful / (ex_in - sum of boundary outlet flows)   # functional
    gross  = ex_out / ex_in

Every internal stream is the outlet of one component and the inlet of
another, so the component destructions telescope to the whole-system one.
:func:`destruction_closure` reports the residual of that identity.
"""

from __future__ import annotations

import math
import re
import statistics
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

from . import components as comp
from .components import (
    Compressor,
    ExergyBalance,
    HeatExchanger,
    Merger,
    Splitter,
    Turbine,
)
from .errors import (
    ComponentAnalysisError,
    ConsistencyWarning,
    DegenerateComponentError,
    ExergyError,
    InconsistentDataError,
    PlantDefinitionError,
    SecondLawViolation,
)
from .fluid_state import (
    EPS_TOLERANCE,
    DeadState,
    FluidRef,
    PropertyTable,
    StatePoint,
    derive_fluid_ref,
    exergy_flow,
    lookup_properties,
    reference_residual,
    specific_exergy,
)

MASS_REL_TOL = 1e-6

# report row order: exchangers, turbomachinery, junctions
KIND_ORDER = ("heat_exchanger", "turbine", "compressor", "splitter", "merger")

def natural_key(text: str):
    """Sort key that orders ``"2" < "10"`` and ``"H2" < "H10"``."""
    return [(0, int(tok), "") if tok.isdigit() else (1, 0, tok)
            for tok in re.findall(r"\d+|\D+", text)]


@dataclass(frozen=True)
class SystemBoundary:
    in_streams: tuple[str, ...]
    out_streams: tuple[str, ...]
    producers: tuple[str, ...] = ()
    consumers: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("in_streams", "out_streams", "producers", "consumers"):
            object.__setattr__(self, name, tuple(str(x) for x in getattr(self, name)))
        overlap = set(self.in_streams) & set(self.out_streams)
        if overlap:
            raise PlantDefinitionError(
                f"boundary in_streams and out_streams share {sorted(overlap, key=natural_key)}"
            )


@dataclass(frozen=True)
class Violation:
    """One finding of plant validation.

    ``category`` is one of ``mass_balance`` (junction imbalance),
    ``port_mismatch`` (two ports of one leg disagree), ``junction_state``
    or ``eps_consistency``. ``where`` is a component or state id.
    """

    category: str
    where: str
    message: str
    imbalance: Optional[float] = None

    def __str__(self):
        return f"[{self.category}] {self.where}: {self.message}"


@dataclass(frozen=True, eq=False)
class PlantGraph:
    """Validated network of state points and components.

    Construction checks structure only (ids, wiring, boundary). Mass balance
    and data consistency are reported by :func:`validate_mass_balance` and
    :func:`diagnose`. All states must carry h, s and eps; use
    :func:`build_plant` to fill them in.
    """

    states: Mapping[str, StatePoint]
    components: Mapping[str, comp.Component]
    boundary: SystemBoundary
    dead_state: DeadState = field(default_factory=DeadState)
    fluid_refs: Mapping[str, FluidRef] = field(default_factory=dict)
    property_tables: Mapping[str, PropertyTable] = field(default_factory=dict)
    reference_sources: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        states, components = self.states, self.components
        for sid, st in states.items():
            if st.id != sid:
                raise PlantDefinitionError(f"state keyed {sid!r} carries id {st.id!r}")
            if st.h is None or st.s is None or st.eps is None:
                raise PlantDefinitionError(f"state {sid!r} lacks h, s or eps")
            if st.fluid_id not in self.fluid_refs:
                raise PlantDefinitionError(
                    f"state {sid!r}: no reference for fluid {st.fluid_id!r}"
                )

        referenced = set()
        for cid, c in components.items():
            if c.kind not in KIND_ORDER:
                raise PlantDefinitionError(f"component {cid!r}: unknown kind")
            if len(set(c.ports)) != len(c.ports):
                raise PlantDefinitionError(f"component {cid!r}: a state id appears on two ports")
            for port in c.ports:
                if port not in states:
                    raise PlantDefinitionError(
                        f"component {cid!r} references unknown state {port!r}"
                    )
                referenced.add(port)
        orphans = sorted(set(states) - referenced, key=natural_key)
        if orphans:
            raise PlantDefinitionError(f"states {orphans} are not connected to any component")

        b = self.boundary
        for sid in (*b.in_streams, *b.out_streams):
            if sid not in states:
                raise PlantDefinitionError(f"boundary references unknown state {sid!r}")
        for cid in b.producers:
            if not isinstance(components.get(cid), Turbine):
                raise PlantDefinitionError(f"shaft producer {cid!r} is not a turbine")
        for cid in b.consumers:
            if not isinstance(components.get(cid), Compressor):
                raise PlantDefinitionError(f"shaft consumer {cid!r} is not a compressor")

    def ordered_components(self) -> list[tuple[str, comp.Component]]:
        return sorted(self.components.items(),
                      key=lambda kv: (KIND_ORDER.index(kv[1].kind), natural_key(kv[0])))


def build_plant(
    states: Iterable[StatePoint],
    components: Mapping[str, comp.Component],
    boundary: SystemBoundary,
    dead_state: DeadState = DeadState(),
    fluid_refs: Optional[Mapping[str, FluidRef]] = None,
    property_tables: Optional[Mapping[str, PropertyTable]] = None,
    *,
    lenient: bool = False,
) -> PlantGraph:
    """Resolve (h, s), fluid references and eps, then build a PlantGraph.

    Precedence for eps: supplied value, then the fluid reference. For a
    fluid without explicit reference: a property table gives (h0, s0) at
    the dead state, otherwise k0 is derived from the states' eps.

    With ``lenient=True`` an inconsistent eps column does not raise; k0 is
    taken as the median residual so that :func:`diagnose` can single out
    the offending states.
    """
    tables = dict(property_tables or {})
    refs = dict(fluid_refs or {})
    sources = {fid: "explicit" for fid in refs}

    resolved: dict[str, StatePoint] = {}
    for st in states:
        if st.id in resolved:
            raise PlantDefinitionError(f"duplicate state id {st.id!r}")
        if st.h is None or st.s is None:
            table = tables.get(st.fluid_id)
            if table is None:
                raise PlantDefinitionError(
                    f"state {st.id!r}: h/s missing and no property table for {st.fluid_id!r}"
                )
            h, s = lookup_properties(table, st.p, st.T)
            st = replace(st, h=st.h if st.h is not None else h,
                          s=st.s if st.s is not None else s)
        resolved[st.id] = st

    by_fluid: dict[str, list[StatePoint]] = {}
    for st in resolved.values():
        by_fluid.setdefault(st.fluid_id, []).append(st)

    for fid, members in by_fluid.items():
        if fid in refs:
            continue
        if fid in tables:
            h0, s0 = lookup_properties(tables[fid], dead_state.p0, dead_state.T0)
            refs[fid] = FluidRef.from_h0s0(fid, h0, s0)
            sources[fid] = "table"
            continue
        with_eps = [st for st in members if st.eps is not None]
        if not with_eps:
            raise PlantDefinitionError(
                f"fluid {fid!r}: no reference, no property table and no eps values to derive one"
            )
        try:
            refs[fid], _ = derive_fluid_ref(with_eps, dead_state)
        except InconsistentDataError:
            if not lenient:
                raise
            k0 = statistics.median(reference_residual(st, dead_state.T0) for st in with_eps)
            refs[fid] = FluidRef.from_k0(fid, k0, dead_state.T0)
        sources[fid] = "derived"

    for sid, st in resolved.items():
        if st.eps is None:
            eps = specific_exergy(st.h, st.s, refs[st.fluid_id], dead_state)
            resolved[sid] = replace(st, eps=eps)

    return PlantGraph(states=resolved, components=dict(components), boundary=boundary,
                      dead_state=dead_state, fluid_refs=refs, property_tables=tables,
                      reference_sources=sources)


def _flows_balance(m_in: float, m_out: float) -> bool:
    return math.isclose(m_in, m_out, rel_tol=MASS_REL_TOL, abs_tol=1e-12)


def validate_mass_balance(plant: PlantGraph) -> list[Violation]:
    """Mass-flow balance at every junction and every leg of a two-port.

    Junction imbalances come back as ``mass_balance``, leg mismatches of
    exchangers and turbomachinery as ``port_mismatch``.
    """
    out = []
    for cid, c in plant.ordered_components():
        for leg, ins, outs in c.streams:
            m_in = sum(plant.states[s].mdot for s in ins)
            m_out = sum(plant.states[s].mdot for s in outs)
            if _flows_balance(m_in, m_out):
                continue
            junction = isinstance(c, (Splitter, Merger))
            where = cid if junction or len(c.streams) == 1 else f"{cid}.{leg}"
            out.append(Violation(
                "mass_balance" if junction else "port_mismatch", where,
                f"{c.kind} inflow {m_in:g} kg/s != outflow {m_out:g} kg/s "
                f"(imbalance {m_in - m_out:+.6g} kg/s)",
                imbalance=m_in - m_out,
            ))
    return out


def _junction_state_issues(cid: str, c, states, T0: float) -> list[Violation]:
    # same thermodynamic state on every port; s compared as T0*ds in kJ/kg
    ref = states[c.ports[0]]
    out = []
    for sid in c.ports[1:]:
        st = states[sid]
        diffs = {
            "T": abs(st.T - ref.T),
            "p": abs(st.p - ref.p),
            "h": abs(st.h - ref.h),
            "s": T0 * abs(st.s - ref.s),
            "eps": abs(st.eps - ref.eps),
        }
        bad = [k for k, d in diffs.items() if d > EPS_TOLERANCE]
        if bad:
            out.append(Violation(
                "junction_state", cid,
                f"state {sid!r} differs from {ref.id!r} in {', '.join(bad)}"))
    return out


def diagnose(plant: PlantGraph) -> list[Violation]:
    """Every validation finding: mass balance, port fluids, junction states, eps."""
    states = plant.states
    T0 = plant.dead_state.T0
    found = validate_mass_balance(plant)

    for cid, c in plant.ordered_components():
        fluids = {states[s].fluid_id for s in c.ports}
        if isinstance(c, HeatExchanger):
            for leg, ins, outs in c.streams:
                a, b = states[ins[0]], states[outs[0]]
                if a.fluid_id != b.fluid_id:
                    found.append(Violation("port_mismatch", f"{cid}.{leg}",
                                           f"fluid {a.fluid_id!r} in, {b.fluid_id!r} out"))
        elif len(fluids) > 1:
            found.append(Violation("port_mismatch", cid,
                                   f"ports carry several fluids {sorted(fluids)}"))
        if isinstance(c, (Splitter, Merger)):
            found.extend(_junction_state_issues(cid, c, states, T0))

    for sid in sorted(states, key=natural_key):
        st = states[sid]
        ref = plant.fluid_refs[st.fluid_id]
        try:
            expected = specific_exergy(st.h, st.s, ref, plant.dead_state)
        except ExergyError as exc:
            found.append(Violation("eps_consistency", sid, str(exc)))
            continue
        if abs(st.eps - expected) > EPS_TOLERANCE:
            found.append(Violation(
                "eps_consistency", sid,
                f"eps {st.eps:g} kJ/kg disagrees with (h, s) and the {st.fluid_id} reference "
                f"({expected:.4f} kJ/kg)"))
    return found


def useful_power(plant: PlantGraph) -> float:
    """Net shaft power: turbines minus compressors on the shaft, kW.

    A negative value (net-consuming shaft) is returned with a
    ConsistencyWarning.
    """
    b = plant.boundary
    if not b.producers:
        raise PlantDefinitionError("shaft declares no producing turbine")
    st = plant.states
    produced = sum(comp.turbine_power(st[plant.components[t].inlet], st[plant.components[t].outlet])
                   for t in b.producers)
    consumed = sum(comp.compressor_power(st[plant.components[c].inlet],
                                         st[plant.components[c].outlet])
                   for c in b.consumers)
    net = produced - consumed
    if net < 0.0:
        warnings.warn(f"shaft is net consuming: useful power {net:.4f} kW", ConsistencyWarning,
                      stacklevel=2)
    return net


@dataclass(frozen=True)
class SystemBalance:
    """Whole-system balance. ``eta_x`` is the functional efficiency
    (useful power over net boundary exergy decrease), ``eta_gross`` is
    ``ex_out / ex_in``."""

    ex_in: float
    ex_out: float
    ex_d: float
    eta_x: Optional[float]
    eta_gross: Optional[float]
    p_useful: float


def system_balance(plant: PlantGraph, *, strict: bool = True) -> SystemBalance:
    b = plant.boundary
    flow_in = sum(exergy_flow(plant.states[s]) for s in b.in_streams)
    flow_out = sum(exergy_flow(plant.states[s]) for s in b.out_streams)
    p_useful = useful_power(plant)
    ex_in = flow_in
    ex_out = flow_out + p_useful
    driving = flow_in - flow_out
    if driving > 0.0:
        eta = p_useful / driving
        if eta > 1.0:
            raise SecondLawViolation(f"whole-system exergy efficiency {eta:.6f} > 1")
    elif strict:
        raise DegenerateComponentError(
            f"net boundary exergy decrease is {driving:.6g} kW (<= 0); "
            "whole-system efficiency undefined")
    else:
        eta = None
    gross = ex_out / ex_in if ex_in > 0.0 else None
    return SystemBalance(ex_in=ex_in, ex_out=ex_out, ex_d=ex_in - ex_out, eta_x=eta,
                         eta_gross=gross, p_useful=p_useful)


@dataclass(frozen=True)
class Closure:
    """Sum of component destructions vs. whole-system destruction, kW."""

    sum_components: float
    whole_system: float
    residual: float

    @property
    def relative_residual(self) -> float:
        scale = max(abs(self.sum_components), abs(self.whole_system))
        return abs(self.residual) / scale if scale else abs(self.residual)


def _balances(plant: PlantGraph, strict: bool) -> dict[str, ExergyBalance]:
    if not plant.components:
        raise PlantDefinitionError("plant has no components")
    out = {}
    for cid, c in plant.ordered_components():
        try:
            out[cid] = comp.balance(c, plant.states, strict=strict)
        except ExergyError as exc:
            raise ComponentAnalysisError(cid, exc) from exc
    return out


def destruction_closure(plant: PlantGraph, *, exclude: Iterable[str] = (),
                        strict: bool = True) -> Closure:
    """Compare the summed component destructions with the whole-system one.

    Components listed in ``exclude`` are left out of the sum (diagnostic use).
    """
    balances = _balances(plant, strict)
    system = system_balance(plant, strict=strict)
    return _closure(balances, system, set(exclude))


def _closure(balances, system, exclude=frozenset()) -> Closure:
    total = math.fsum(b.ex_d for cid, b in balances.items() if cid not in exclude)
    return Closure(sum_components=total, whole_system=system.ex_d,
                   residual=total - system.ex_d)


@dataclass(frozen=True)
class ComponentResult:
    id: str
    kind: str
    balance: ExergyBalance

    @property
    def eta_undefined(self) -> bool:
        """Efficiency missing for a kind that normally has one."""
        return self.balance.eta_x is None and self.kind not in ("splitter", "merger")


@dataclass(frozen=True)
class ExergyReport:
    """Result of :func:`analyze_plant`. Components are in row order:
    exchangers, turbines, compressors, splitters, mergers, each by id."""

    dead_state: DeadState
    components: tuple[ComponentResult, ...]
    system: SystemBalance
    closure: Closure
    shaft_net_consuming: bool

    def component(self, cid: str) -> ComponentResult:
        for row in self.components:
            if row.id == cid:
                return row
        raise KeyError(cid)

    def __getitem__(self, cid: str) -> ExergyBalance:
        return self.component(cid).balance


def analyze_plant(plant: PlantGraph, *, strict: bool = True) -> ExergyReport:
    """Balance every component and the whole system.

    ``strict=False`` reports an undefined efficiency as ``None`` instead of
    raising (used off the baseline dead state, where a stream can cross the
    ambient temperature). Second-law violations raise in either mode.

    Raises:
        ComponentAnalysisError: a component balance failed; carries its id.
    """
    balances = _balances(plant, strict)
    system = system_balance(plant, strict=strict)
    rows = tuple(ComponentResult(cid, plant.components[cid].kind, b)
                 for cid, b in balances.items())
    return ExergyReport(dead_state=plant.dead_state, components=rows, system=system,
                        closure=_closure(balances, system),
                        shaft_net_consuming=system.p_useful < 0.0)
