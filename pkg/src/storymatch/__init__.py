"""Character-network comparison and narrative alignment across adaptations."""

from .centrality import (
    CentralityProfiles,
    ari,
    cluster_profiles,
    compute_profiles,
    spearman_matrix,
)
from .corpus import (
    CharacterRecord,
    CharsetKind,
    Corpus,
    CorpusError,
    ImportanceTable,
    InteractionRecord,
    NarrativeUnit,
    PeriodSpec,
    Sex,
    UnitKind,
    compute_importance,
    load_corpus,
    select_characters,
)
from .graph_match import (
    MatchProblem,
    Matching,
    attribute_prior,
    centre_adjacency,
    evaluate_matching,
    lap_solve,
    match_adaptive,
    match_percolation,
    match_relax,
    match_umeyama,
    pad_graphs,
    problem_from_slices,
)
from .narrative_align import (
    DevPair,
    GoldAlignment,
    SWParams,
    UnitSimilarityMatrix,
    align_smith_waterman,
    align_threshold,
    coarsen_alignment,
    embedding_similarity,
    evaluate_f1,
    extend_matrix,
    hybrid_combine,
    minmax_normalize,
    per_window_f1,
    structural_similarity,
    tfidf_similarity,
    tune_params,
)
from .networks import (
    CUMULATIVE,
    INSTANT,
    DynamicNetwork,
    GraphStats,
    NetworkSlice,
    build_dynamic,
    build_static,
    compute_stats,
    segment_blocks,
)
from .similarity_match import (
    CharSimilarityMatrix,
    mutual_best_match,
    neighborhood_similarity,
    ruzicka,
    self_alter_gap,
    sequential_match,
)

__version__ = "0.1.0"

__all__ = [
    "CentralityProfiles",
    "CharSimilarityMatrix",
    "CharacterRecord",
    "CharsetKind",
    "Corpus",
    "CorpusError",
    "CUMULATIVE",
    "DevPair",
    "DynamicNetwork",
    "GoldAlignment",
    "GraphStats",
    "ImportanceTable",
    "INSTANT",
    "InteractionRecord",
    "MatchProblem",
    "Matching",
    "NarrativeUnit",
    "NetworkSlice",
    "PeriodSpec",
    "SWParams",
    "Sex",
    "UnitSimilarityMatrix",
    "UnitKind",
    "align_smith_waterman",
    "align_threshold",
    "ari",
    "attribute_prior",
    "build_dynamic",
    "build_static",
    "centre_adjacency",
    "cluster_profiles",
    "coarsen_alignment",
    "compute_importance",
    "compute_profiles",
    "compute_stats",
    "embedding_similarity",
    "evaluate_f1",
    "evaluate_matching",
    "extend_matrix",
    "hybrid_combine",
    "lap_solve",
    "load_corpus",
    "match_adaptive",
    "match_percolation",
    "match_relax",
    "match_umeyama",
    "minmax_normalize",
    "mutual_best_match",
    "neighborhood_similarity",
    "pad_graphs",
    "per_window_f1",
    "problem_from_slices",
    "ruzicka",
    "segment_blocks",
    "select_characters",
    "self_alter_gap",
    "sequential_match",
    "spearman_matrix",
    "structural_similarity",
    "tfidf_similarity",
    "tune_params",
]
