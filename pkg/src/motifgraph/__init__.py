"""Complexity and information content of graph representations built from motifs."""

from .bounds import ConstraintSet, ExtremesResult, constrained_extremes, mathematical_limits
from .errors import (
    BudgetExceeded,
    DegenerateOrder,
    Disconnected,
    DuplicateEdge,
    EmptyGraph,
    Infeasible,
    InputError,
    LoopEdge,
    MalformedConstraint,
    MotifGraphError,
    ParseError,
    PartitionMismatch,
    SingletonBlock,
    VertexOutOfRange,
)
from .graph import (
    Graph,
    build_graph,
    clustering,
    complete_graph,
    connectedness,
    cycle_graph,
    degree,
    descriptors,
    distance_descriptors,
    distances,
    extended_connectivity,
    is_connected,
    path_graph,
    star_graph,
    total_adjacency,
)
from .measures import (
    ad_index,
    b_index,
    complexity_report,
    edge_complexities,
    info_vertex_degree,
    measure_suite,
    overall_connectivity,
    subgraph_count_2,
    total_subgraph_count,
)
from .motifs import (
    Partition,
    enumerate_partitions,
    equal_info_partitions,
    info_content,
    merge_survey,
    quotient,
    sample_partitions,
    scan,
)
from .refine import candidates_for_increment, enumerate_splits, filter_candidates

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConstraintSet",
    "DegenerateOrder",
    "Disconnected",
    "DuplicateEdge",
    "EmptyGraph",
    "ExtremesResult",
    "Graph",
    "Infeasible",
    "InputError",
    "LoopEdge",
    "MalformedConstraint",
    "MotifGraphError",
    "ParseError",
    "Partition",
    "PartitionMismatch",
    "SingletonBlock",
    "VertexOutOfRange",
    "ad_index",
    "b_index",
    "build_graph",
    "candidates_for_increment",
    "clustering",
    "complete_graph",
    "complexity_report",
    "connectedness",
    "constrained_extremes",
    "cycle_graph",
    "degree",
    "descriptors",
    "distance_descriptors",
    "distances",
    "edge_complexities",
    "enumerate_partitions",
    "enumerate_splits",
    "equal_info_partitions",
    "extended_connectivity",
    "filter_candidates",
    "info_content",
    "info_vertex_degree",
    "is_connected",
    "mathematical_limits",
    "measure_suite",
    "merge_survey",
    "overall_connectivity",
    "path_graph",
    "quotient",
    "sample_partitions",
    "scan",
    "star_graph",
    "subgraph_count_2",
    "total_adjacency",
    "total_subgraph_count",
]
