"""Monte Carlo simulation of classification error under forced ranking."""
from .classify import (
    ConfusionReport,
    ConfusionSide,
    Decisions,
    GroundTruth,
    apply_forced_ranking,
    ground_truth,
    k_true,
    labels_per_team,
    score,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    ForcedRankError,
    InvalidScenarioError,
    OracleCapacityError,
)
from .harness import (
    ReplicationResult,
    ScenarioSummary,
    SweepTable,
    bias_curve,
    run_replication,
    run_scenario,
    sweep_cutoff,
    sweep_distribution,
    sweep_team_size,
)
from .oracle import OracleReport, exhaustive_oracle, simulate_fixed_talents
from .org import (
    BiasedAssignment,
    Organization,
    RandomAssignment,
    Scenario,
    build_biased_org,
    build_org,
    build_random_org,
    effective_headcount,
    sigma_within,
)
from .talent import TalentShape, sample_standardized, shape_raw_moments

__version__ = "0.1.0"

__all__ = [
    "BiasedAssignment",
    "ConfigError",
    "ConfusionReport",
    "ConfusionSide",
    "ConsistencyError",
    "Decisions",
    "ForcedRankError",
    "GroundTruth",
    "InvalidScenarioError",
    "OracleCapacityError",
    "OracleReport",
    "Organization",
    "RandomAssignment",
    "ReplicationResult",
    "Scenario",
    "ScenarioSummary",
    "SweepTable",
    "TalentShape",
    "apply_forced_ranking",
    "bias_curve",
    "build_biased_org",
    "build_org",
    "build_random_org",
    "effective_headcount",
    "exhaustive_oracle",
    "ground_truth",
    "k_true",
    "labels_per_team",
    "run_replication",
    "run_scenario",
    "sample_standardized",
    "score",
    "shape_raw_moments",
    "sigma_within",
    "simulate_fixed_talents",
    "sweep_cutoff",
    "sweep_distribution",
    "sweep_team_size",
]
