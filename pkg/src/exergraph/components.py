"""Component kinds and their exergy balances.

Every balance is an instance of the general steady-flow exergy balance::

    X_H + P_in + sum(Ex_in) = P_out + sum(Ex_out) + Ex_D

with no heat crossing the component boundary (X_H = 0). The specialised
forms differ only in what counts as "input" and "output":

=============  =======================  ======================  ==========================
kind           ex_in                    ex_out                  eta_x
=============  =======================  ======================  ==========================
exchanger      Ex_hot,in - Ex_hot,out   Ex_cold,out - Ex_cold,in  ex_out / ex_in
turbine        Ex_in                    Ex_out + P              P / (Ex_in - Ex_out)
compressor     Ex_in + P                Ex_out                  (Ex_out - Ex_in) / P
=============  =======================  ======================  ==========================
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    ConsistencyWarning,
    DegenerateComponentError,
    PortMismatchError,
    SecondLawViolation,
)
from .fluid_state import StatePoint, exergy_flow

MDOT_REL_TOL = 1e-6


@dataclass(frozen=True)
class HeatExchanger:
    hot_in: str
    hot_out: str
    cold_in: str
    cold_out: str

    kind = "heat_exchanger"

    @property
    def ports(self) -> tuple[str, ...]:
        return (self.hot_in, self.hot_out, self.cold_in, self.cold_out)

    @property
    def streams(self) -> list[tuple[str, tuple[str, ...], tuple[str, ...]]]:
        return [("hot", (self.hot_in,), (self.hot_out,)),
                ("cold", (self.cold_in,), (self.cold_out,))]


@dataclass(frozen=True)
class Turbine:
    inlet: str
    outlet: str

    kind = "turbine"

    @property
    def ports(self) -> tuple[str, ...]:
        return (self.inlet, self.outlet)

    @property
    def streams(self):
        return [("flow", (self.inlet,), (self.outlet,))]


@dataclass(frozen=True)
class Compressor:
    inlet: str
    outlet: str

    kind = "compressor"

    @property
    def ports(self) -> tuple[str, ...]:
        return (self.inlet, self.outlet)

    @property
    def streams(self):
        return [("flow", (self.inlet,), (self.outlet,))]


@dataclass(frozen=True)
class Splitter:
    inlet: str
    outlets: tuple[str, ...]

    kind = "splitter"

    def __post_init__(self):
        object.__setattr__(self, "outlets", tuple(self.outlets))

    @property
    def ports(self) -> tuple[str, ...]:
        return (self.inlet, *self.outlets)

    @property
    def streams(self):
        return [("flow", (self.inlet,), self.outlets)]


@dataclass(frozen=True)
class Merger:
    inlets: tuple[str, ...]
    outlet: str

    kind = "merger"

    def __post_init__(self):
        object.__setattr__(self, "inlets", tuple(self.inlets))

    @property
    def ports(self) -> tuple[str, ...]:
        return (*self.inlets, self.outlet)

    @property
    def streams(self):
        return [("flow", self.inlets, (self.outlet,))]


Component = HeatExchanger | Turbine | Compressor | Splitter | Merger

KINDS = {cls.kind: cls for cls in (HeatExchanger, Turbine, Compressor, Splitter, Merger)}


@dataclass(frozen=True)
class ExergyBalance:
    """Exergy input, output, destruction (kW) and efficiency (fraction).

    ``eta_x`` is ``None`` when undefined: junctions, or a lenient analysis
    where the efficiency denominator is not positive. ``power`` is the shaft
    power of a turbine (produced) or compressor (consumed), else ``None``.
    """

    ex_in: float
    ex_out: float
    ex_d: float
    eta_x: Optional[float]
    power: Optional[float] = None

    @classmethod
    def from_in_out(cls, ex_in, ex_out, eta_x, power=None) -> "ExergyBalance":
        if eta_x is not None and eta_x > 1.0:
            raise SecondLawViolation(
                f"exergy efficiency {eta_x:.6f} > 1 (ex_in={ex_in:.4f} kW, "
                f"ex_out={ex_out:.4f} kW): input data violate the second law"
            )
        return cls(ex_in=ex_in, ex_out=ex_out, ex_d=ex_in - ex_out, eta_x=eta_x, power=power)


def _check_leg(a: StatePoint, b: StatePoint, leg: str) -> None:
    if a.fluid_id != b.fluid_id:
        raise PortMismatchError(
            f"{leg}: states {a.id!r} ({a.fluid_id}) and {b.id!r} ({b.fluid_id}) differ in fluid"
        )
    if not math.isclose(a.mdot, b.mdot, rel_tol=MDOT_REL_TOL, abs_tol=1e-12):
        raise PortMismatchError(
            f"{leg}: mass flow {a.mdot} kg/s at {a.id!r} != {b.mdot} kg/s at {b.id!r}"
        )


def _ratio(num: float, den: float, strict: bool, what: str) -> Optional[float]:
    if den > 0.0:
        return num / den
    if strict:
        raise DegenerateComponentError(
            f"{what} is {den:.6g} kW (<= 0); exergy efficiency undefined"
        )
    return None


def hx_balance(hot_in: StatePoint, hot_out: StatePoint, cold_in: StatePoint,
               cold_out: StatePoint, *, strict: bool = True) -> ExergyBalance:
    """Exchanger balance: hot-side exergy drop in, cold-side exergy rise out.

    With ``strict=False`` a non-positive hot-side drop yields ``eta_x=None``
    instead of raising.
    """
    _check_leg(hot_in, hot_out, "hot leg")
    _check_leg(cold_in, cold_out, "cold leg")
    ex_in = exergy_flow(hot_in) - exergy_flow(hot_out)
    ex_out = exergy_flow(cold_out) - exergy_flow(cold_in)
    eta = _ratio(ex_out, ex_in, strict, "hot-side exergy drop")
    return ExergyBalance.from_in_out(ex_in, ex_out, eta)


def turbine_power(inlet: StatePoint, outlet: StatePoint) -> float:
    """Produced shaft power ``mdot * (h_in - h_out)``, kW."""
    _check_leg(inlet, outlet, "turbine")
    return inlet.mdot * (inlet.h - outlet.h)


def compressor_power(inlet: StatePoint, outlet: StatePoint) -> float:
    """Consumed shaft power ``mdot * (h_out - h_in)``, kW."""
    _check_leg(inlet, outlet, "compressor")
    return inlet.mdot * (outlet.h - inlet.h)


def turbine_balance(inlet: StatePoint, outlet: StatePoint, *,
                    strict: bool = True) -> ExergyBalance:
    P = turbine_power(inlet, outlet)
    ex_a, ex_b = exergy_flow(inlet), exergy_flow(outlet)
    eta = _ratio(P, ex_a - ex_b, strict, "turbine exergy drop")
    return ExergyBalance.from_in_out(ex_a, ex_b + P, eta, power=P)


def compressor_balance(inlet: StatePoint, outlet: StatePoint, *,
                       strict: bool = True) -> ExergyBalance:
    P = compressor_power(inlet, outlet)
    ex_a, ex_b = exergy_flow(inlet), exergy_flow(outlet)
    eta = _ratio(ex_b - ex_a, P, strict, "compressor power")
    return ExergyBalance.from_in_out(ex_a + P, ex_b, eta, power=P)


def junction_balance(inlets: Iterable[StatePoint]) -> ExergyBalance:
    """Splitter/merger: loss-free by construction, efficiency not defined."""
    ex = sum(exergy_flow(st) for st in inlets)
    return ExergyBalance(ex_in=ex, ex_out=ex, ex_d=0.0, eta_x=None)


def generic_balance(ex_streams_in: Iterable[float], ex_streams_out: Iterable[float],
                    P_in: float = 0.0, P_out: float = 0.0, X_H: float = 0.0) -> float:
    """Exergy destruction from the general balance, kW.

    A negative result is returned as is, with a ConsistencyWarning.
    """
    ex_d = X_H + P_in + sum(ex_streams_in) - P_out - sum(ex_streams_out)
    if ex_d < 0.0:
        warnings.warn(f"negative exergy destruction {ex_d:.6g} kW", ConsistencyWarning,
                      stacklevel=2)
    return ex_d


def balance(component: Component, states: dict[str, StatePoint], *,
            strict: bool = True) -> ExergyBalance:
    """Dispatch to the balance of ``component`` using ``states`` by id."""
    get = states.__getitem__
    if isinstance(component, HeatExchanger):
        return hx_balance(get(component.hot_in), get(component.hot_out),
                          get(component.cold_in), get(component.cold_out), strict=strict)
    if isinstance(component, Turbine):
        return turbine_balance(get(component.inlet), get(component.outlet), strict=strict)
    if isinstance(component, Compressor):
        return compressor_balance(get(component.inlet), get(component.outlet), strict=strict)
    if isinstance(component, Splitter):
        return junction_balance([get(component.inlet)])
    if isinstance(component, Merger):
        return junction_balance([get(i) for i in component.inlets])
    raise TypeError(f"unknown component type {type(component).__name__}")
