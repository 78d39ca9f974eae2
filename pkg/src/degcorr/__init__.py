"""Degree-degree correlation of pure-growth networks.

Simulation of the growth model and its ensemble edge-transfer variant,
empirical correlation estimators, the exact edge-state Markov chain
(transient and stationary, directed and undirected), and file/CLI tooling
for comparing simulation against theory.
"""

from .ensemble import EnsembleResult, run_ensemble
from .errors import (
    DegcorrError,
    EmptyInputError,
    GridParseError,
    IncompatibleInputsError,
    InvalidParameterError,
    InvalidStateError,
    UnsupportedModeError,
)
from .gridio import (
    ErrorTable,
    GridData,
    RunManifest,
    error_table,
    read_grid,
    read_manifest,
    write_error_table,
    write_grid,
    write_manifest,
)
from .growth import GrowthParams, Network, grow_run, grow_step, init_complete, replica_stream
from .spr import SprEnsemble, spr_run, spr_step
from .stats import (
    DIRECTED,
    UNDIRECTED,
    CorrelationSummary,
    DegreeHistogram,
    JointDegreeMatrix,
    Moments,
    average_neighbor_degree,
    degree_histogram,
    joint_degree_matrix,
    merge_matrices,
    node_counts_from_edge_dist,
    pearson_r,
)
from .theory import (
    EdgeStateDistribution,
    GFRow,
    StationaryGrid,
    TheoryParams,
    entries_sup_distance,
    exponential_degree_dist,
    fixed_point_map,
    gf_row_directed,
    gf_rows_undirected,
    grid_knn,
    grid_r,
    one_step_transition_directed,
    stationary_directed,
    stationary_grid,
    stationary_undirected,
    tail_mass,
    transient_run,
    transient_start,
    transient_step_directed,
    transient_step_undirected,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DIRECTED",
    "UNDIRECTED",
    "CorrelationSummary",
    "DegcorrError",
    "DegreeHistogram",
    "EdgeStateDistribution",
    "EmptyInputError",
    "EnsembleResult",
    "ErrorTable",
    "GFRow",
    "GridData",
    "GridParseError",
    "GrowthParams",
    "IncompatibleInputsError",
    "InvalidParameterError",
    "InvalidStateError",
    "JointDegreeMatrix",
    "Moments",
    "Network",
    "RunManifest",
    "SprEnsemble",
    "StationaryGrid",
    "TheoryParams",
    "UnsupportedModeError",
    "average_neighbor_degree",
    "degree_histogram",
    "entries_sup_distance",
    "error_table",
    "exponential_degree_dist",
    "fixed_point_map",
    "gf_row_directed",
    "gf_rows_undirected",
    "grid_knn",
    "grid_r",
    "grow_run",
    "grow_step",
    "init_complete",
    "joint_degree_matrix",
    "merge_matrices",
    "node_counts_from_edge_dist",
    "one_step_transition_directed",
    "pearson_r",
    "read_grid",
    "read_manifest",
    "replica_stream",
    "run_ensemble",
    "spr_run",
    "spr_step",
    "stationary_directed",
    "stationary_grid",
    "stationary_undirected",
    "tail_mass",
    "transient_run",
    "transient_start",
    "transient_step_directed",
    "transient_step_undirected",
    "write_error_table",
    "write_grid",
    "write_manifest",
]
