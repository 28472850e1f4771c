"""Exception and warning types shared across the package."""


class VisrouteError(Exception):
    """Base class for all package-specific errors."""


class InvalidDirectionError(VisrouteError, ValueError):
    """A direction vector was zero where a nonzero one is required."""


class DomainError(VisrouteError, ValueError):
    """A domain file or domain structure is invalid."""


class DisconnectedGraphError(VisrouteError):
    """The visibility graph is not connected; the domain is malformed."""


class OrientationCorruptionError(VisrouteError):
    """An interior-sector or fan-closure assertion failed, meaning the
    stored boundary orientation does not match the geometry."""


class OutsideSectorError(VisrouteError, ValueError):
    """A queried direction does not lie inside a vertex's interior sector."""


class NonIntervalError(VisrouteError):
    """A per-cone member set on some boundary is not a cyclic interval.
    Valid inputs cannot trigger this; it signals corrupted data."""


class UnknownDestinationError(VisrouteError, LookupError):
    """No routing-table entry covers the target label."""


class TableCorruptionError(VisrouteError):
    """More than one routing-table entry covers the target label."""


class NonTerminationError(VisrouteError):
    """A routed packet exceeded its step budget."""


class HeaderMismatchError(VisrouteError, ValueError):
    """A tables file header disagrees with its payload or expectations."""


class GenerationError(VisrouteError):
    """An instance generator could not satisfy its postconditions."""


class GeneralPositionWarning(UserWarning):
    """Input is (numerically) outside the general-position assumptions:
    collinear grazing contact or near-tied shortest paths."""
