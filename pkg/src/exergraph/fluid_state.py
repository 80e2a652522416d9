"""Fluid state points, dead-state reference and specific exergy.

Specific flow exergy of a stream::

    eps = (h - h0) - T0 * (s - s0) = (h - T0 * s) - k0,   k0 = h0 - T0 * s0

Only the combination ``k0`` enters the formula, so a fluid reference may be
given either as the pair ``(h0, s0)`` or as ``k0`` alone. The pair is needed
whenever T0 changes (dead-state sweeps); ``k0`` is tied to the T0 it was
defined at.

Units: kPa, K (°C only at the file boundary), kg/s, kJ/kg, kJ/(kg K), kW.
No equation of state lives here. (h, s) come from the plant file or from a
user-supplied :class:`PropertyTable`.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    InconsistentDataError,
    NonSeparableReferenceError,
    PropertyTableError,
)

KELVIN_OFFSET = 273.15

# Published state data carry 2 decimals; observed per-fluid residual spread <= 0.03.
EPS_TOLERANCE = 0.05


@dataclass(frozen=True)
class DeadState:
    """Ambient reference condition: ``p0`` in kPa, ``T0`` in K."""

    p0: float = 100.0
    T0: float = 288.15

    def __post_init__(self):
        if not (self.T0 > 0.0 and math.isfinite(self.T0)):
            raise ValueError(f"dead-state T0 must be a positive temperature in K, got {self.T0}")
        if not (self.p0 > 0.0 and math.isfinite(self.p0)):
            raise ValueError(f"dead-state p0 must be positive (kPa), got {self.p0}")

    @classmethod
    def from_celsius(cls, p0: float, t0_c: float) -> "DeadState":
        return cls(p0=p0, T0=t0_c + KELVIN_OFFSET)


@dataclass(frozen=True)
class FluidRef:
    """Dead-state reference data of one fluid.

    Exactly one form is present: ``(h0, s0)``, or ``k0`` together with the
    ``k0_T0`` it was defined at. Use :meth:`from_h0s0` / :meth:`from_k0`.
    """

    fluid_id: str
    h0: Optional[float] = None
    s0: Optional[float] = None
    k0: Optional[float] = None
    k0_T0: Optional[float] = None

    def __post_init__(self):
        pair = self.h0 is not None and self.s0 is not None
        half_pair = (self.h0 is None) != (self.s0 is None)
        combined = self.k0 is not None
        if half_pair:
            raise ValueError(f"fluid {self.fluid_id!r}: h0 and s0 must be given together")
        if pair == combined:
            raise ValueError(
                f"fluid {self.fluid_id!r}: give exactly one of (h0, s0) or k0 as reference"
            )
        if combined and self.k0_T0 is None:
            raise ValueError(f"fluid {self.fluid_id!r}: k0 needs the T0 it was defined at")

    @classmethod
    def from_h0s0(cls, fluid_id: str, h0: float, s0: float) -> "FluidRef":
        return cls(fluid_id=fluid_id, h0=float(h0), s0=float(s0))

    @classmethod
    def from_k0(cls, fluid_id: str, k0: float, T0: float) -> "FluidRef":
        return cls(fluid_id=fluid_id, k0=float(k0), k0_T0=float(T0))

    @property
    def separable(self) -> bool:
        """True when (h0, s0) are known individually."""
        return self.h0 is not None

    def k0_at(self, T0: float) -> float:
        if self.separable:
            return self.h0 - T0 * self.s0
        if T0 != self.k0_T0:
            raise NonSeparableReferenceError(
                f"fluid {self.fluid_id!r} has only k0 (defined at T0={self.k0_T0} K); "
                f"cannot evaluate at T0={T0} K without (h0, s0)"
            )
        return self.k0


@dataclass(frozen=True)
class StatePoint:
    """One numbered fluid stream.

    ``T`` is in K. Build from file-style °C values with :meth:`from_celsius`.
    ``h``/``s`` may be ``None`` until filled from a property table, ``eps``
    until computed.
    """

    id: str
    fluid_id: str
    T: float
    p: float
    mdot: float
    h: Optional[float] = None
    s: Optional[float] = None
    eps: Optional[float] = None

    def __post_init__(self):
        if not self.mdot >= 0.0:
            raise ValueError(f"state {self.id!r}: mass flow must be >= 0, got {self.mdot}")
        if not self.p > 0.0:
            raise ValueError(f"state {self.id!r}: pressure must be > 0 kPa, got {self.p}")
        if not self.T > 0.0:
            raise ValueError(
                f"state {self.id!r}: temperature must be above absolute zero, got {self.T} K"
            )

    @classmethod
    def from_celsius(cls, id, fluid_id, t_c, p, mdot, h=None, s=None, eps=None) -> "StatePoint":
        return cls(id=str(id), fluid_id=fluid_id, T=t_c + KELVIN_OFFSET, p=p, mdot=mdot,
                   h=h, s=s, eps=eps)

    @property
    def t_c(self) -> float:
        return self.T - KELVIN_OFFSET


def specific_exergy(h: float, s: float, fluid_ref: FluidRef, dead_state: DeadState) -> float:
    """Specific flow exergy in kJ/kg.

    Raises:
        NonSeparableReferenceError: ``fluid_ref`` only carries ``k0`` and
            ``dead_state.T0`` differs from the T0 it was defined at.
    """
    T0 = dead_state.T0
    if fluid_ref.separable:
        return (h - fluid_ref.h0) - T0 * (s - fluid_ref.s0)
    return (h - T0 * s) - fluid_ref.k0_at(T0)


def exergy_flow(state: StatePoint) -> float:
    """Exergy flow rate ``mdot * eps`` of a stream, kW."""
    if state.eps is None:
        raise ValueError(f"state {state.id!r} has no specific exergy yet")
    return state.mdot * state.eps


def reference_residual(state: StatePoint, T0: float) -> float:
    """``h - T0*s - eps``; equals k0 for a state whose eps is consistent."""
    return state.h - T0 * state.s - state.eps


def derive_fluid_ref(
    states: Sequence[StatePoint],
    dead_state: DeadState,
    tolerance: float = EPS_TOLERANCE,
) -> tuple[FluidRef, float]:
    """Recover a k0-form reference from states that carry h, s and eps.

    Returns the reference (k0 = mean residual) and the residual spread
    (max - min). All states must belong to one fluid.

    Raises:
        InconsistentDataError: empty input, mixed fluids, missing columns, or
            a spread above ``tolerance``.
    """
    if not states:
        raise InconsistentDataError("cannot derive a fluid reference from an empty state list")
    fluids = {st.fluid_id for st in states}
    if len(fluids) != 1:
        raise InconsistentDataError(f"states of several fluids given: {sorted(fluids)}")
    (fluid_id,) = fluids
    missing = [st.id for st in states if st.h is None or st.s is None or st.eps is None]
    if missing:
        raise InconsistentDataError(
            f"fluid {fluid_id!r}: states {missing} lack h, s or eps; cannot derive k0"
        )

    residuals = [reference_residual(st, dead_state.T0) for st in states]
    spread = max(residuals) - min(residuals)
    if spread > tolerance:
        lo = states[residuals.index(min(residuals))].id
        hi = states[residuals.index(max(residuals))].id
        raise InconsistentDataError(
            f"fluid {fluid_id!r}: h - T0*s - eps varies by {spread:.4f} kJ/kg "
            f"(states {lo!r} .. {hi!r}), above {tolerance} kJ/kg"
        )
    k0 = math.fsum(residuals) / len(residuals)
    return FluidRef.from_k0(fluid_id, k0, dead_state.T0), spread


def exergy_of_heat(Q: float, T: float, dead_state: DeadState) -> float:
    """Exergy carried by heat ``Q`` (kW) crossing a boundary at ``T`` (K)."""
    if not T > 0.0:
        raise ValueError(f"heat-transfer temperature must be > 0 K, got {T}")
    return (1.0 - dead_state.T0 / T) * Q


@dataclass(frozen=True)
class PropertyTable:
    """Rectangular p-T grid of (h, s) for one fluid.

    ``h[i][j]`` and ``s[i][j]`` belong to ``pressures[i]`` (kPa) and
    ``temperatures[j]`` (K). Both axes strictly increasing.
    """

    fluid_id: str
    pressures: tuple[float, ...]
    temperatures: tuple[float, ...]
    h: tuple[tuple[float, ...], ...]
    s: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for name, axis in (("pressure", self.pressures), ("temperature", self.temperatures)):
            if len(axis) < 2:
                raise PropertyTableError(
                    f"table {self.fluid_id!r}: {name} axis needs at least 2 values"
                )
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise PropertyTableError(
                    f"table {self.fluid_id!r}: {name} axis is not strictly increasing"
                )
        shape = (len(self.pressures), len(self.temperatures))
        for name, grid in (("h", self.h), ("s", self.s)):
            if len(grid) != shape[0] or any(len(row) != shape[1] for row in grid):
                raise PropertyTableError(f"table {self.fluid_id!r}: {name} grid is not {shape}")

    @classmethod
    def from_samples(
        cls, fluid_id: str, samples: Iterable[tuple[float, float, float, float]]
    ) -> "PropertyTable":
        """Build from ``(p_kPa, T_K, h, s)`` samples covering a full grid."""
        nodes = {}
        for p, T, h, s in samples:
            key = (float(p), float(T))
            if key in nodes:
                raise PropertyTableError(f"table {fluid_id!r}: duplicate node p={p}, T={T}")
            nodes[key] = (float(h), float(s))
        pressures = tuple(sorted({p for p, _ in nodes}))
        temperatures = tuple(sorted({T for _, T in nodes}))
        if len(nodes) != len(pressures) * len(temperatures):
            raise PropertyTableError(
                f"table {fluid_id!r}: {len(nodes)} samples do not form a rectangular "
                f"{len(pressures)}x{len(temperatures)} p-T grid"
            )
        h = tuple(tuple(nodes[p, T][0] for T in temperatures) for p in pressures)
        s = tuple(tuple(nodes[p, T][1] for T in temperatures) for p in pressures)
        return cls(fluid_id, pressures, temperatures, h, s)

    def covers(self, p: float, T: float) -> bool:
        return (self.pressures[0] <= p <= self.pressures[-1]
                and self.temperatures[0] <= T <= self.temperatures[-1])


def _cell(axis: Sequence[float], x: float) -> tuple[int, float]:
    # lower index and weight of the upper node; exact 0 or 1 at nodes
    i = bisect.bisect_right(axis, x) - 1
    i = min(max(i, 0), len(axis) - 2)
    lo, hi = axis[i], axis[i + 1]
    if x == lo:
        return i, 0.0
    if x == hi:
        return i, 1.0
    return i, (x - lo) / (hi - lo)


def lookup_properties(table: PropertyTable, p: float, T: float) -> tuple[float, float]:
    """Bilinear (h, s) at pressure ``p`` (kPa) and temperature ``T`` (K).

    No extrapolation: a query outside the grid raises PropertyTableError.
    """
    if not table.covers(p, T):
        raise PropertyTableError(
            f"table {table.fluid_id!r}: query p={p} kPa, T={T} K outside grid "
            f"p=[{table.pressures[0]}, {table.pressures[-1]}], "
            f"T=[{table.temperatures[0]}, {table.temperatures[-1]}]"
        )
    i, wp = _cell(table.pressures, p)
    j, wt = _cell(table.temperatures, T)

    def interp(grid):
        return ((1.0 - wp) * (1.0 - wt) * grid[i][j]
                + (1.0 - wp) * wt * grid[i][j + 1]
                + wp * (1.0 - wt) * grid[i + 1][j]
                + wp * wt * grid[i + 1][j + 1])

    return interp(table.h), interp(table.s)
