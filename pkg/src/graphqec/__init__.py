"""Quantum error-detecting codes from weighted graphs and finite abelian groups."""

from .abelian import FiniteAbelianGroup, Phase, make_group, parse_group
from .detector import (
    DetectionVerdict,
    SweepReport,
    corrects_errors,
    detects,
    detects_errors,
    input_exchange_check,
    is_isometry_condition,
    strong_detects,
)
from .graphcode import (
    WeightedGraph,
    matrix19_code,
    parse_graph,
    serialize_graph,
    tenfold_code,
    wheel_code,
)
from .oracle import CodeIsometry, build_isometry, check_isometry, kl_detects, omega_table
from .singleton import (
    DeterminantReport,
    Skeleton,
    graph_census,
    is_strongly_ec,
    offdiag_subdets,
    restricted_bad_primes,
    search_weights,
)

__all__ = [
    "CodeIsometry",
    "DetectionVerdict",
    "DeterminantReport",
    "FiniteAbelianGroup",
    "Phase",
    "Skeleton",
    "SweepReport",
    "WeightedGraph",
    "build_isometry",
    "check_isometry",
    "corrects_errors",
    "detects",
    "detects_errors",
    "graph_census",
    "input_exchange_check",
    "is_isometry_condition",
    "is_strongly_ec",
    "kl_detects",
    "make_group",
    "matrix19_code",
    "offdiag_subdets",
    "omega_table",
    "parse_graph",
    "parse_group",
    "restricted_bad_primes",
    "search_weights",
    "serialize_graph",
    "strong_detects",
    "tenfold_code",
    "wheel_code",
]

__version__ = "0.1.0"
