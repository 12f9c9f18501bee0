"""Graph analytics workbench: centrality measures, network models, and a
seeded correlation/granularity experiment harness."""

from .graphs import (
    Graph,
    GeodesicData,
    GraphError,
    FormatError,
    UNREACHABLE,
    bfs_all_pairs,
    format_edge_list,
    format_graph6,
    is_connected,
    parse_edge_list,
    parse_graph6,
)
from .linalg import SingularMatrixError, invert, solve_linear, sym_eigen
from .centrality import (
    MEASURES,
    SHORT_LABELS,
    CentralityVector,
    ConvergenceError,
    DisconnectedGraphError,
    FlowMatrix,
    InformationIntermediate,
    PowerIterationState,
    all_measures,
    betweenness,
    centrality_csv,
    closeness,
    compute_measure,
    degree,
    eccentricity,
    eigenvector,
    flow_matrix,
    information,
    information_intermediate,
    power_iteration,
    subgraph,
    walk_betweenness,
)
from .generators import (
    CONNECTED_CLASS_COUNTS,
    MODELS,
    GenerationError,
    KroneckerInitiator,
    ModelConfig,
    community_memberships,
    community_structure,
    derive_seed,
    ensure_connected,
    enumerate_connected_nonisomorphic,
    erdos_renyi,
    generate,
    geographical,
    grid_pair_probabilities,
    kronecker,
    kronecker_pair_probabilities,
    load_graph6_corpus,
    load_initiators,
    mix64,
    scale_free,
    small_world,
    splitmix64,
    write_edge_list_corpus,
)
from .stats import (
    GranularityReport,
    RankCorrelationMatrix,
    TAU_CONVENTIONS,
    aggregate_correlations,
    best_granularity_tally,
    distinct_count,
    granularity,
    granularity_report,
    kendall_tau_b,
    mean_ci,
    round6,
)
from .harness import (
    ConfigError,
    ExperimentCell,
    ExperimentPlan,
    RunResult,
    correlation_matrix,
    emit_heatmap,
    emit_tables,
    load_results,
    plan_experiments,
    run_experiment,
    write_all_tables,
)

__version__ = "0.1.0"
