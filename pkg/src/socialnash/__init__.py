"""Perceived-cost game engine for network formation.

Players carry a weight matrix over each other's actual costs; stability
is judged on the weighted (perceived) cost.  The package provides the
weight-matrix algebra, the link-purchase game, exhaustive and
constructive equilibrium solvers, best-response dynamics, and scenario
studies with an executable claim catalog.
"""

from .dual import (
    EPS,
    ONE,
    ZERO,
    Dual,
    EpsilonOrderError,
    FLOAT_TOLERANCE,
    format_weight,
    parse_weight,
)
from .social_matrix import (
    ARCHETYPES,
    DegenerateMatrixError,
    SocialRangeMatrix,
    SocietyProfile,
    build_archetype,
    dump_matrix_csv,
    dump_matrix_json,
    load_matrix,
)
from .game_core import (
    Deviation,
    GameInterface,
    PneResult,
    SocializationReport,
    best_deviation,
    effect_of_socialization,
    is_pne,
    perceived_cost,
    social_cost,
)
from .netgame import (
    InducedGraph,
    NetGameConfig,
    NetworkCreationGame,
    PROFILE_SHAPES,
    PurchaseProfile,
    RedundancyReport,
    UtilitySpec,
    actual_cost,
    dump_config_json,
    dump_dot,
    dump_profile_json,
    induce_graph,
    load_config,
    load_profile,
    make_profile,
    neighborhood_counts,
    parse_dot,
    redundant_edges,
)
from .equilibrium import (
    AdjacencyResult,
    DynamicsStep,
    DynamicsTrace,
    EdgeDecision,
    EquilibriumReport,
    NoEquilibriumError,
    OptimumResult,
    SizeCapError,
    TopologyClass,
    adjacency_equilibrium,
    best_response_dynamics,
    brute_force_social_optimum,
    edge_rule_profile,
    enumerate_pne,
    graph_to_profile,
    isolated_is_ne,
    iter_edge_rule_pne,
    profile_key,
    r1_linear_edge_rule,
    regular_ne_condition,
    social_optimum_graphs,
    tree_ne_condition,
)
from .analysis import (
    LEMMA_CLAIMS,
    LemmaVerdict,
    ScenarioComparison,
    SocietyOutcome,
    StarWitness,
    WindfallReport,
    anarchy_vs_monarchy,
    verify_all,
    verify_lemma,
    windfall_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # exact arithmetic
    "Dual",
    "EpsilonOrderError",
    "FLOAT_TOLERANCE",
    "EPS",
    "ONE",
    "ZERO",
    "parse_weight",
    "format_weight",
    # weight matrices
    "SocialRangeMatrix",
    "SocietyProfile",
    "DegenerateMatrixError",
    "ARCHETYPES",
    "build_archetype",
    "load_matrix",
    "dump_matrix_json",
    "dump_matrix_csv",
    # game abstractions
    "GameInterface",
    "PneResult",
    "Deviation",
    "SocializationReport",
    "perceived_cost",
    "social_cost",
    "is_pne",
    "best_deviation",
    "effect_of_socialization",
    # the link-purchase game
    "UtilitySpec",
    "NetGameConfig",
    "PurchaseProfile",
    "InducedGraph",
    "RedundancyReport",
    "NetworkCreationGame",
    "PROFILE_SHAPES",
    "actual_cost",
    "induce_graph",
    "neighborhood_counts",
    "redundant_edges",
    "make_profile",
    "dump_profile_json",
    "load_profile",
    "dump_config_json",
    "load_config",
    "dump_dot",
    "parse_dot",
    # solvers
    "SizeCapError",
    "NoEquilibriumError",
    "EdgeDecision",
    "EquilibriumReport",
    "TopologyClass",
    "OptimumResult",
    "DynamicsStep",
    "DynamicsTrace",
    "AdjacencyResult",
    "r1_linear_edge_rule",
    "edge_rule_profile",
    "iter_edge_rule_pne",
    "enumerate_pne",
    "profile_key",
    "brute_force_social_optimum",
    "social_optimum_graphs",
    "graph_to_profile",
    "best_response_dynamics",
    "isolated_is_ne",
    "regular_ne_condition",
    "tree_ne_condition",
    "adjacency_equilibrium",
    # scenario studies
    "SocietyOutcome",
    "StarWitness",
    "ScenarioComparison",
    "WindfallReport",
    "LemmaVerdict",
    "LEMMA_CLAIMS",
    "anarchy_vs_monarchy",
    "windfall_experiment",
    "verify_lemma",
    "verify_all",
]
