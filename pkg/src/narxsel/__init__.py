"""Polynomial NARX model structure selection.

Builds candidate regressor dictionaries, searches structures with a binary
particle-swarm / gravitational-search hybrid whose cost multiplies free-run
prediction error by a statistical-relevance penalty, and provides a greedy
error-reduction-ratio baseline for comparison.
"""

from .bpsogsa import AgentSwarm, OptimizeResult, OptimizerConfig, optimize
from .data import Dataset, load_csv, normalize, save_csv, with_split
from .dictionary import (
    Dictionary,
    DictionarySpec,
    ModelStructure,
    RegressorTerm,
    build_dictionary,
    build_regressor_matrix,
    candidate_count,
    decode,
    encode,
)
from .estimation import (
    EstimatedModel,
    RankDeficientError,
    estimate_model,
    least_squares,
    parameter_variances,
    relevance_flags,
    residual_variance,
    standard_errors,
    t_critical,
)
from .frols import ErrRanking, frols_select
from .objective import EvalConfig, Fitness, evaluate_candidate, make_objective, sigmoid_penalty
from .report import Report, load_report, save_report
from .runner import RunConfig, run_baseline, run_identify, simulate_report
from .simulation import SimulationResult, free_run, free_run_mse, mse, one_step_predict

__version__ = "0.1.0"

__all__ = [
    "AgentSwarm",
    "Dataset",
    "Dictionary",
    "DictionarySpec",
    "ErrRanking",
    "EstimatedModel",
    "EvalConfig",
    "Fitness",
    "ModelStructure",
    "OptimizeResult",
    "OptimizerConfig",
    "RankDeficientError",
    "RegressorTerm",
    "Report",
    "RunConfig",
    "SimulationResult",
    "build_dictionary",
    "build_regressor_matrix",
    "candidate_count",
    "decode",
    "encode",
    "estimate_model",
    "evaluate_candidate",
    "free_run",
    "free_run_mse",
    "frols_select",
    "least_squares",
    "load_csv",
    "load_report",
    "make_objective",
    "mse",
    "normalize",
    "one_step_predict",
    "optimize",
    "parameter_variances",
    "relevance_flags",
    "residual_variance",
    "run_baseline",
    "run_identify",
    "save_csv",
    "save_report",
    "sigmoid_penalty",
    "simulate_report",
    "standard_errors",
    "t_critical",
    "with_split",
]
