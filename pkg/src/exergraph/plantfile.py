"""Reading plant definition files (JSON).

Layout, with units fixed by the key suffix::

    {
      "dead_state": {"pressure_kpa": 100.0, "temperature_c": 15.0},
      "fluids": [{"id": "CO2", "reference": {"h0": ..., "s0": ...}},
                 {"id": "Water", "reference": {"k0": ...}},
                 {"id": "Air"}],
      "states": [{"id": "1", "fluid": "Air", "t_c": 531.8, "p_kpa": 104.3,
                  "mdot_kg_s": 93.8, "h_kj_kg": 953.85, "s_kj_kgk": 4.9019,
                  "eps_kj_kg": 236.34}, ...],
      "components": [{"id": "H1", "kind": "heat_exchanger", "hot_in": "1",
                      "hot_out": "2", "cold_in": "9", "cold_out": "10"},
                     {"id": "T1", "kind": "turbine", "inlet": "10", "outlet": "11"},
                     {"id": "S5", "kind": "splitter", "inlet": "5", "outlets": ["6", "18"]},
                     {"id": "M8", "kind": "merger", "inlets": ["7", "15"], "outlet": "8"}],
      "boundary": {"in_streams": ["1", "23"], "out_streams": ["3", "24"],
                   "shaft": {"producers": ["T1"], "consumers": ["Compr1"]}},
      "property_tables": [{"fluid": "Water",
                           "points": [[p_kpa, t_c, h_kj_kg, s_kj_kgk], ...]}]
    }

A fluid without ``reference`` gets one from its property table, or else k0
is derived from the eps values of its states. ``h_kj_kg``/``s_kj_kgk`` may
be omitted when a property table for the fluid exists; ``eps_kj_kg`` is
optional. Ids may be written as strings or integers.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .components import KINDS
from .errors import PlantDefinitionError, PlantFileError, PlantValidationError
from .fluid_state import KELVIN_OFFSET, DeadState, FluidRef, PropertyTable, StatePoint
from .plant import PlantGraph, SystemBoundary, build_plant, diagnose

BUILTIN_PREFIX = "builtin:"
BUILTINS = {
    "reference": "reference_plant.json",
    "reference-sweep": "reference_plant_sweep.json",
}

_PORTS = {
    "heat_exchanger": {"hot_in": str, "hot_out": str, "cold_in": str, "cold_out": str},
    "turbine": {"inlet": str, "outlet": str},
    "compressor": {"inlet": str, "outlet": str},
    "splitter": {"inlet": str, "outlets": list},
    "merger": {"inlets": list, "outlet": str},
}

_STATE_KEYS = {"id", "fluid", "t_c", "p_kpa", "mdot_kg_s", "h_kj_kg", "s_kj_kgk", "eps_kj_kg"}


def builtin_path(name: str = "reference") -> Path:
    """Path of a dataset shipped with the package (``reference``,
    ``reference-sweep``)."""
    try:
        fname = BUILTINS[name]
    except KeyError:
        raise PlantFileError(f"unknown builtin dataset {name!r}; have {sorted(BUILTINS)}")
    return Path(str(resources.files("exergraph") / "data" / fname))


def resolve_path(path) -> Path:
    text = str(path)
    if text.startswith(BUILTIN_PREFIX):
        return builtin_path(text[len(BUILTIN_PREFIX):])
    return Path(path)


class _Reader:
    """Typed access into the parsed JSON with path-style error locations."""

    def __init__(self, source):
        self.source = source

    def fail(self, where: str, message: str):
        raise PlantFileError(f"{where}: {message}", path=self.source)

    def obj(self, value, where, required=(), optional=()):
        if not isinstance(value, dict):
            self.fail(where, f"expected an object, got {type(value).__name__}")
        allowed = set(required) | set(optional)
        for key in value:
            if key not in allowed:
                self.fail(where, f"unknown key {key!r}")
        for key in required:
            if key not in value:
                self.fail(where, f"missing key {key!r}")
        return value

    def array(self, value, where):
        if not isinstance(value, list):
            self.fail(where, f"expected an array, got {type(value).__name__}")
        return value

    def number(self, value, where):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(where, f"expected a number, got {value!r}")
        return float(value)

    def ident(self, value, where):
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            self.fail(where, f"expected an id (string or integer), got {value!r}")
        return str(value)


def _unique(ids, what):
    seen = set()
    for i in ids:
        if i in seen:
            raise PlantDefinitionError(f"duplicate {what} id {i!r}")
        seen.add(i)


def plant_from_dict(data: Any, *, source=None, lenient: bool = False) -> PlantGraph:
    """Build a PlantGraph from an already parsed plant document.

    Structural problems raise. Mass-balance and consistency findings are
    left for :func:`exergraph.plant.diagnose`.
    """
    r = _Reader(source)
    r.obj(data, "$", required=("dead_state", "fluids", "states", "components", "boundary"),
          optional=("property_tables", "description"))

    ds = r.obj(data["dead_state"], "dead_state", required=("pressure_kpa", "temperature_c"))
    try:
        dead = DeadState.from_celsius(r.number(ds["pressure_kpa"], "dead_state.pressure_kpa"),
                                      r.number(ds["temperature_c"], "dead_state.temperature_c"))
    except ValueError as exc:
        raise PlantDefinitionError(str(exc)) from exc

    fluids = r.array(data["fluids"], "fluids")
    fluid_ids = []
    refs = {}
    for i, f in enumerate(fluids):
        where = f"fluids[{i}]"
        r.obj(f, where, required=("id",), optional=("reference",))
        fid = r.ident(f["id"], f"{where}.id")
        fluid_ids.append(fid)
        if "reference" not in f or f["reference"] is None:
            continue
        ref = r.obj(f["reference"], f"{where}.reference", optional=("h0", "s0", "k0"))
        keys = set(ref)
        if keys == {"h0", "s0"}:
            refs[fid] = FluidRef.from_h0s0(fid, r.number(ref["h0"], f"{where}.reference.h0"),
                                           r.number(ref["s0"], f"{where}.reference.s0"))
        elif keys == {"k0"}:
            refs[fid] = FluidRef.from_k0(fid, r.number(ref["k0"], f"{where}.reference.k0"),
                                         dead.T0)
        else:
            r.fail(f"{where}.reference", "give exactly {h0, s0} or {k0}")
    _unique(fluid_ids, "fluid")

    states = []
    for i, s in enumerate(r.array(data["states"], "states")):
        where = f"states[{i}]"
        r.obj(s, where, required=("id", "fluid", "t_c", "p_kpa", "mdot_kg_s"),
              optional=_STATE_KEYS)
        sid = r.ident(s["id"], f"{where}.id")
        fluid = r.ident(s["fluid"], f"{where}.fluid")
        if fluid not in fluid_ids:
            raise PlantDefinitionError(f"state {sid!r} uses undeclared fluid {fluid!r}")
        opt = {key: r.number(s[key], f"{where}.{key}") if s.get(key) is not None else None
               for key in ("h_kj_kg", "s_kj_kgk", "eps_kj_kg")}
        try:
            states.append(StatePoint.from_celsius(
                sid, fluid, r.number(s["t_c"], f"{where}.t_c"),
                r.number(s["p_kpa"], f"{where}.p_kpa"),
                r.number(s["mdot_kg_s"], f"{where}.mdot_kg_s"),
                h=opt["h_kj_kg"], s=opt["s_kj_kgk"], eps=opt["eps_kj_kg"]))
        except ValueError as exc:
            raise PlantDefinitionError(str(exc)) from exc
    _unique([st.id for st in states], "state")

    components = {}
    comp_ids = []
    for i, c in enumerate(r.array(data["components"], "components")):
        where = f"components[{i}]"
        kind = c.get("kind") if isinstance(c, dict) else None
        if isinstance(c, dict) and "kind" in c and kind not in _PORTS:
            r.fail(f"{where}.kind", f"unknown component kind {kind!r}; expected one of "
                                    f"{sorted(_PORTS)}")
        r.obj(c, where, required=("id", "kind"), optional=_PORTS.get(kind, ()))
        cid = r.ident(c["id"], f"{where}.id")
        kwargs = {}
        for port, typ in _PORTS[kind].items():
            if port not in c:
                r.fail(where, f"{kind} needs port {port!r}")
            if typ is list:
                ids = r.array(c[port], f"{where}.{port}")
                if len(ids) < 2:
                    r.fail(f"{where}.{port}", "needs at least two state ids")
                kwargs[port] = tuple(r.ident(x, f"{where}.{port}[{j}]")
                                     for j, x in enumerate(ids))
            else:
                kwargs[port] = r.ident(c[port], f"{where}.{port}")
        comp_ids.append(cid)
        components[cid] = KINDS[kind](**kwargs)
    _unique(comp_ids, "component")

    b = r.obj(data["boundary"], "boundary", required=("in_streams", "out_streams"),
              optional=("shaft",))
    shaft = r.obj(b.get("shaft", {}), "boundary.shaft", optional=("producers", "consumers"))
    ids = {}
    for key, src, where in (("in_streams", b, "boundary"), ("out_streams", b, "boundary"),
                            ("producers", shaft, "boundary.shaft"),
                            ("consumers", shaft, "boundary.shaft")):
        ids[key] = tuple(r.ident(x, f"{where}.{key}[{j}]")
                         for j, x in enumerate(r.array(src.get(key, []), f"{where}.{key}")))
    boundary = SystemBoundary(**ids)

    tables = {}
    for i, t in enumerate(r.array(data.get("property_tables", []), "property_tables")):
        where = f"property_tables[{i}]"
        r.obj(t, where, required=("fluid", "points"))
        fid = r.ident(t["fluid"], f"{where}.fluid")
        if fid in tables:
            raise PlantDefinitionError(f"duplicate property table for fluid {fid!r}")
        samples = []
        for j, pt in enumerate(r.array(t["points"], f"{where}.points")):
            row = r.array(pt, f"{where}.points[{j}]")
            if len(row) != 4:
                r.fail(f"{where}.points[{j}]", "expected [p_kpa, t_c, h_kj_kg, s_kj_kgk]")
            p, t_c, h, s = (r.number(v, f"{where}.points[{j}]") for v in row)
            samples.append((p, t_c + KELVIN_OFFSET, h, s))
        tables[fid] = PropertyTable.from_samples(fid, samples)

    return build_plant(states, components, boundary, dead, refs, tables, lenient=lenient)


def read_document(path) -> Any:
    """Parse the JSON of a plant file, reporting the position of syntax errors."""
    path = resolve_path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PlantFileError(f"cannot read file: {exc.strerror or exc}", path=path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PlantFileError(exc.msg, path=path, line=exc.lineno, column=exc.colno) from exc


def read_plant(path, *, lenient: bool = False) -> PlantGraph:
    """Load a plant without the consistency gate of :func:`load_plant`."""
    path = resolve_path(path)
    return plant_from_dict(read_document(path), source=path, lenient=lenient)


def load_plant(path) -> PlantGraph:
    """Load and fully validate a plant file.

    Raises:
        PlantFileError: the file cannot be read or parsed (with position).
        PlantDefinitionError: dangling or duplicate ids, unresolved fluids.
        InconsistentDataError: eps column of a fluid without reference is
            not self-consistent.
        PlantValidationError: mass-balance, port or eps findings; the
            exception lists all of them.
    """
    plant = read_plant(path)
    violations = diagnose(plant)
    if violations:
        raise PlantValidationError(violations)
    return plant
