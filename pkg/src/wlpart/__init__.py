"""Multilevel partitioning of doubly-weighted graphs.

A graph here carries positive vertex weights alongside its edge weights.
The library provides the graph container and cut metrics, adjacency-list
file I/O, a vertex-weight-normalized Laplacian with an eigensolver, four
initial clustering strategies, coarsening by heavy-edge matching, boundary
refinement, and a V-cycle driver tying them together.  The ``wlpart``
command line exposes single partitions and strategy benchmarks.
"""

from .bench import (
    BenchmarkRecord,
    RunConfig,
    SummaryRow,
    read_metrics,
    run_benchmark,
    run_single,
    summarize,
    write_metrics,
    write_summary,
)
from .cluster import (
    STRATEGIES,
    kmeans,
    plain_spectral,
    random_clustering,
    region_growing,
    weighted_spectral,
)
from .coarsen import (
    CoarseMap,
    Hierarchy,
    Level,
    build_hierarchy,
    contract,
    match_heavy_edge,
)
from .eigen import EigenSolverError, SpectralEmbedding, smallest_k
from .graph import (
    DoublyWeightedGraph,
    GraphError,
    Partition,
    connected_components,
    cut,
    edge_cut,
    induced_subgraph,
    is_connected,
    mvol,
    ncut,
    vol,
    wcut,
)
from .laplacian import WeightedLaplacian, rayleigh
from .metisio import (
    MetisFormatError,
    emit_metis,
    parse_metis,
    read_partition,
    write_partition,
)
from .refine import (
    RefineStats,
    VCycleResult,
    default_stop_threshold,
    local_refine,
    project,
    vcycle,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkRecord",
    "CoarseMap",
    "DoublyWeightedGraph",
    "EigenSolverError",
    "GraphError",
    "Hierarchy",
    "Level",
    "MetisFormatError",
    "Partition",
    "RefineStats",
    "RunConfig",
    "STRATEGIES",
    "SpectralEmbedding",
    "SummaryRow",
    "VCycleResult",
    "WeightedLaplacian",
    "build_hierarchy",
    "connected_components",
    "contract",
    "cut",
    "default_stop_threshold",
    "edge_cut",
    "emit_metis",
    "induced_subgraph",
    "is_connected",
    "kmeans",
    "local_refine",
    "match_heavy_edge",
    "mvol",
    "ncut",
    "parse_metis",
    "plain_spectral",
    "project",
    "random_clustering",
    "rayleigh",
    "read_metrics",
    "read_partition",
    "region_growing",
    "run_benchmark",
    "run_single",
    "smallest_k",
    "summarize",
    "vcycle",
    "vol",
    "wcut",
    "weighted_spectral",
    "write_metrics",
    "write_partition",
    "write_summary",
    "__version__",
]
