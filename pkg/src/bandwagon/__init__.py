"""Opinion dynamics with sign-only appraisals.

Appraisals are the signs of opinion correlations and opinions are averaged
through them. Every trajectory either freezes in finite time at a structurally
balanced modulus consensus or decays to zero.
"""

from .dynamics import (
    InvalidOpinionMatrix,
    ModelState,
    ValidationReport,
    appraisal_update,
    opinion_update,
    step,
    validate_initial,
)
from .montecarlo import CellSummary, ExperimentConfig, chernoff_trials, run_sweep, sample_initial
from .numerics import numerical_rank, symmetric_eigenvalues
from .signed_graph import (
    BalanceCertificate,
    all_triads_balanced,
    certify_balance,
    is_connected,
    rank_one_sign_check,
)
from .trajectory import (
    EquilibriumPoint,
    OutcomeKind,
    TrajectoryOutcome,
    detect_period,
    is_equilibrium,
    lyapunov,
    run_trajectory,
    s_stable_membership,
)

__version__ = "0.1.0"

__all__ = [
    "BalanceCertificate",
    "CellSummary",
    "EquilibriumPoint",
    "ExperimentConfig",
    "InvalidOpinionMatrix",
    "ModelState",
    "OutcomeKind",
    "TrajectoryOutcome",
    "ValidationReport",
    "all_triads_balanced",
    "appraisal_update",
    "certify_balance",
    "chernoff_trials",
    "detect_period",
    "is_connected",
    "is_equilibrium",
    "lyapunov",
    "numerical_rank",
    "opinion_update",
    "rank_one_sign_check",
    "run_sweep",
    "run_trajectory",
    "s_stable_membership",
    "sample_initial",
    "step",
    "symmetric_eigenvalues",
    "validate_initial",
]
