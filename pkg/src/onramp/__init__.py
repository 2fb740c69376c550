"""Lane-choice equilibria and robust altruism design for two-lane highway on-ramps."""

from .analysis import (
    AnalysisSummary,
    Classification,
    ErrorInterval,
    ImprovementFlags,
    Regime,
    altruistic_intersection,
    analyze,
    classify,
    improvement_conditions,
    pi_value,
    selfish_equilibrium_flow,
    social_optimum,
)
from .equilibrium import (
    DynamicsStep,
    DynamicsTrace,
    EquilibriumCase,
    EquilibriumResult,
    WardropReport,
    best_response_dynamics,
    brute_force_equilibrium,
    solve_equilibrium,
    verify_wardrop,
)
from .errors import (
    ConfigError,
    DegenerateConfigError,
    NotInMeaningfulSetError,
    OnRampError,
    SingularPiError,
    TransitionUndefinedError,
    ZeroOptimumError,
)
from .model import (
    AltruisticCostPair,
    ConstraintViolation,
    CostCoefficients,
    DelayCoefficients,
    DelayProfile,
    FlowDistribution,
    NeighborFlows,
    OnRampConfig,
    PopulationParams,
    altruistic_costs,
    delays,
    derive_coefficients,
    load_config,
    social_delay,
    validate_flow_distribution,
)
from .robustness import (
    RobustnessSummary,
    WorstCasePoint,
    grid_optimal_beta,
    grid_poa,
    optimal_altruism_level,
    price_of_anarchy,
    transition_beta,
    worst_case_social_delay,
)
from .sweeps import (
    AlphaSweepRow,
    LevelSweepRow,
    sweep_alpha,
    sweep_beta_e,
    write_alpha_sweep,
    write_beta_e_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AltruisticCostPair",
    "AlphaSweepRow",
    "AnalysisSummary",
    "Classification",
    "ConfigError",
    "ConstraintViolation",
    "CostCoefficients",
    "DegenerateConfigError",
    "DelayCoefficients",
    "DelayProfile",
    "DynamicsStep",
    "DynamicsTrace",
    "EquilibriumCase",
    "EquilibriumResult",
    "ErrorInterval",
    "FlowDistribution",
    "ImprovementFlags",
    "LevelSweepRow",
    "NeighborFlows",
    "NotInMeaningfulSetError",
    "OnRampConfig",
    "OnRampError",
    "PopulationParams",
    "Regime",
    "RobustnessSummary",
    "SingularPiError",
    "TransitionUndefinedError",
    "WardropReport",
    "WorstCasePoint",
    "ZeroOptimumError",
    "altruistic_costs",
    "altruistic_intersection",
    "analyze",
    "best_response_dynamics",
    "brute_force_equilibrium",
    "classify",
    "delays",
    "derive_coefficients",
    "grid_optimal_beta",
    "grid_poa",
    "improvement_conditions",
    "load_config",
    "optimal_altruism_level",
    "pi_value",
    "price_of_anarchy",
    "selfish_equilibrium_flow",
    "social_delay",
    "social_optimum",
    "solve_equilibrium",
    "sweep_alpha",
    "sweep_beta_e",
    "transition_beta",
    "validate_flow_distribution",
    "verify_wardrop",
    "worst_case_social_delay",
    "write_alpha_sweep",
    "write_beta_e_sweep",
]
