"""Spectral-graph model of promotion and tenure committee voting."""
from .model import (
    CommitteeGraph,
    DepartmentData,
    ModelParams,
    ParameterError,
    ProductivityVector,
    apply_role_adjustments,
    assemble_weights,
    build_graph,
    compute_collaboration,
    compute_inbreeding_term,
    compute_productivity,
    compute_social,
    laplacian,
    symmetrize_pairs,
)
from .spectral import (
    ConvergenceError,
    FieldGrid,
    InfluenceDiagram,
    SpectralDecomposition,
    default_bounds,
    eigendecompose,
    embed,
    influence_field,
    jacobi_eigh,
    positive_area_fraction,
    sample_field,
)
from .voting import (
    MonteCarloStats,
    RngSpec,
    SweepResult,
    VoteOutcome,
    VotingScenario,
    candidate_merit,
    cost,
    cost_gradient,
    gamma_sweep,
    initialize_votes,
    laplacian_quadratic,
    monte_carlo_votes,
    solve_votes,
)
from .case_study import load_case_study

__version__ = "0.1.0"
