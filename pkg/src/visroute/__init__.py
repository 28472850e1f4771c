"""Compact routing on visibility graphs of polygonal domains.

Every vertex gets a short label and a small routing table; packets are
forwarded by looking up the target label's cyclic index interval and
hopping to the stored nearest visible vertex of the matching cone.  The
resulting routing distance is at most (1 + epsilon) times the geodesic
distance.
"""

from .cones import ConeFan, build_fan, cone_count, cone_index
from .domain import (
    HOLE,
    OUTER,
    Boundary,
    PolygonalDomain,
    ValidationReport,
    VertexLabel,
    Violation,
    base_ray,
    ceil_log2,
    domain_from_obj,
    domain_to_obj,
    inner_angle,
    label_bits,
    parse_domain,
    serialize_domain,
    validate,
)
from .errors import (
    DisconnectedGraphError,
    DomainError,
    GeneralPositionWarning,
    GenerationError,
    HeaderMismatchError,
    InvalidDirectionError,
    NonIntervalError,
    NonTerminationError,
    OrientationCorruptionError,
    OutsideSectorError,
    TableCorruptionError,
    UnknownDestinationError,
    VisrouteError,
)
from .geometry import Orientation, Point
from .harness import (
    CheckResult,
    VerificationReport,
    bellman_ford_distances,
    gen_holed_domain,
    gen_spire_polygon,
    gen_star_polygon,
    verify_scheme,
)
from .kernels import BACKEND
from .router import (
    RoutingScheme,
    RoutingTrace,
    format_trace,
    route,
    route_step,
)
from .spt import (
    ShortestPathTree,
    first_edge,
    shortest_path_tree,
    subtree_vertices,
)
from .svg import render_domain
from .tables import (
    CyclicInterval,
    RoutingTable,
    TableEntry,
    TableSet,
    build_all_tables,
    build_table,
    extract_interval,
    parse_tables,
    serialize_tables,
    table_bits,
)
from .visibility import VisibilityGraph, build_visibility_graph, visible

_CORPUS_NAMES = ("example_corpus", "expected_values", "regenerate")


def __getattr__(name):
    # Lazy so `python3 -m visroute.corpus` does not re-execute a module
    # the package import already loaded.
    if name in _CORPUS_NAMES:
        from . import corpus

        return getattr(corpus, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Boundary",
    "CheckResult",
    "ConeFan",
    "CyclicInterval",
    "DisconnectedGraphError",
    "DomainError",
    "GeneralPositionWarning",
    "GenerationError",
    "HeaderMismatchError",
    "HOLE",
    "InvalidDirectionError",
    "NonIntervalError",
    "NonTerminationError",
    "Orientation",
    "OrientationCorruptionError",
    "OUTER",
    "OutsideSectorError",
    "Point",
    "PolygonalDomain",
    "RoutingScheme",
    "RoutingTable",
    "RoutingTrace",
    "ShortestPathTree",
    "TableCorruptionError",
    "TableEntry",
    "TableSet",
    "UnknownDestinationError",
    "ValidationReport",
    "VerificationReport",
    "VertexLabel",
    "Violation",
    "VisibilityGraph",
    "VisrouteError",
    "base_ray",
    "bellman_ford_distances",
    "build_all_tables",
    "build_fan",
    "build_table",
    "build_visibility_graph",
    "ceil_log2",
    "cone_count",
    "cone_index",
    "domain_from_obj",
    "domain_to_obj",
    "example_corpus",
    "expected_values",
    "extract_interval",
    "first_edge",
    "format_trace",
    "gen_holed_domain",
    "gen_spire_polygon",
    "gen_star_polygon",
    "inner_angle",
    "label_bits",
    "parse_domain",
    "parse_tables",
    "regenerate",
    "render_domain",
    "route",
    "route_step",
    "serialize_domain",
    "serialize_tables",
    "shortest_path_tree",
    "subtree_vertices",
    "table_bits",
    "validate",
    "verify_scheme",
    "visible",
    "__version__",
]
