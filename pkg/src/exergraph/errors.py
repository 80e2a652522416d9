"""Exception and warning types raised by the engine."""


class ExergyError(Exception):
    """Base class for every error raised by exergraph."""


class NonSeparableReferenceError(ExergyError):
    """A k0-only fluid reference was asked for a dead state it was not defined at."""


class InconsistentDataError(ExergyError):
    """Supplied data contradicts itself (eps vs. (h, s), reference spread, ...)."""


class PortMismatchError(ExergyError):
    """Ports of one component disagree on fluid or mass flow."""


class DegenerateComponentError(ExergyError):
    """The efficiency denominator of a component is zero or negative."""


class SecondLawViolation(ExergyError):
    """A computed exergy efficiency exceeds one."""


class PropertyTableError(ExergyError):
    """Malformed property table or a query outside its grid."""


class PlantDefinitionError(ExergyError):
    """Structural defect in a plant: dangling or duplicate id, bad boundary, ..."""


class PlantValidationError(ExergyError):
    """A plant failed validation. ``violations`` holds every finding."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"plant has {len(self.violations)} violation(s):\n{lines}")


class ComponentAnalysisError(ExergyError):
    """Wraps a component-level failure with the id of the component."""

    def __init__(self, component_id, cause):
        self.component_id = component_id
        self.cause = cause
        super().__init__(f"component {component_id!r}: {cause}")


class PlantFileError(ExergyError):
    """A plant file could not be parsed. ``line``/``column`` are 1-based when known."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = str(path) if path is not None else "<plant>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")


class SweepError(ExergyError):
    """A dead-state sweep cannot be carried out for this plant."""


class ConsistencyWarning(UserWarning):
    """Data-consistency warning (negative destruction, net-consuming shaft)."""
