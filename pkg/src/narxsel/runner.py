"""Orchestration of identification runs: configure, search, refit, report."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .bpsogsa import OptimizerConfig, optimize
from .data import Dataset, apply_normalization, normalize, with_split
from .dictionary import Dictionary, DictionarySpec, build_dictionary
from .frols import frols_select
from .objective import EvalConfig, Fitness, evaluate_candidate, make_objective
from .report import Report
from .simulation import free_run_mse


@dataclass(frozen=True)
class RunConfig:
    dictionary: DictionarySpec
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    alpha: float = 0.05
    split: float = 0.5
    normalize: bool = True
    n_terms: int | None = None  # baseline stop rule
    err_threshold: float | None = None  # baseline stop rule

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.split < 1.0:
            raise ValueError(f"split fraction must lie in (0, 1), got {self.split}")


def prepare_dataset(config: RunConfig, data: Dataset, max_lag: int) -> Dataset:
    """Split (if not already split) and optionally normalize; validate sizes."""
    if data.split_index is None:
        data = with_split(data, config.split)
    if config.normalize and not data.is_normalized:
        data = normalize(data)
    id_len = data.split_index
    val_len = data.n - data.split_index
    needed = max_lag + 2
    if id_len < needed or val_len < needed:
        raise ValueError(
            f"each split needs at least {needed} samples for max lag {max_lag}; "
            f"got identification={id_len}, validation={val_len}"
        )
    return data


def _config_echo(config: RunConfig) -> dict:
    return {
        "dictionary": asdict(config.dictionary),
        "optimizer": asdict(config.optimizer),
        "alpha": config.alpha,
        "split": config.split,
        "normalize": config.normalize,
        "n_terms": config.n_terms,
        "err_threshold": config.err_threshold,
    }


def _dataset_echo(data: Dataset) -> dict:
    return {
        "source": data.source,
        "n_samples": data.n,
        "split_index": data.split_index,
        "normalized": data.is_normalized,
        "u_range": list(data.u_range) if data.u_range else None,
        "y_range": list(data.y_range) if data.y_range else None,
        "n_validation_out_of_range": data.n_validation_out_of_range,
    }


def _model_report_fields(fit: Fitness, dictionary: Dictionary) -> dict:
    if fit.model is None:
        return {
            "term_indices": [],
            "terms": [],
            "theta": [],
            "std_errors": [],
            "relevant": [],
            "n_irrelevant": 0,
            "penalty_rho": None,
            "cost": None,
        }
    structure = fit.model.structure
    return {
        "term_indices": list(structure.selected),
        "terms": structure.labels(),
        "theta": [float(v) for v in fit.model.theta],
        "std_errors": [float(v) for v in fit.model.std_errors],
        "relevant": [bool(v) for v in fit.model.relevant],
        "n_irrelevant": fit.n_irrelevant,
        "penalty_rho": fit.penalty_rho,
        "cost": fit.cost,
    }


def _validation_mse(fit: Fitness, data: Dataset) -> float:
    if fit.model is None:
        return math.inf
    u_val, y_val = data.validation
    return free_run_mse(fit.model.structure, fit.model.theta, u_val, y_val)


def run_identify(config: RunConfig, data: Dataset) -> Report:
    """Search structures with the swarm optimizer and report the winner.

    The objective scores candidates by free-run MSE on the identification
    split times the size/irrelevance penalty; the validation split is used
    only for the final reported MSE.
    """
    start = time.perf_counter()
    dictionary = build_dictionary(config.dictionary)
    data = prepare_dataset(config, data, dictionary.max_lag)
    u_id, y_id = data.identification
    eval_cfg = EvalConfig(alpha=config.alpha)
    objective = make_objective(dictionary, u_id, y_id, eval_cfg)
    result = optimize(objective, dictionary.nov, config.optimizer)
    fit = evaluate_candidate(result.best_bits, dictionary, u_id, y_id, eval_cfg)
    mse_val = _validation_mse(fit, data)
    elapsed = time.perf_counter() - start
    return Report(
        method="identify",
        seed=config.optimizer.seed,
        config=_config_echo(config),
        nov=dictionary.nov,
        search_space_size=2**dictionary.nov,
        mse_identification=fit.mse_free_run,
        mse_validation=mse_val,
        err_values=None,
        cumulative_err=None,
        convergence=[float(c) for c in result.curve],
        wall_clock_seconds=elapsed,
        dataset=_dataset_echo(data),
        **_model_report_fields(fit, dictionary),
    )


def run_baseline(config: RunConfig, data: Dataset) -> Report:
    """Greedy forward-orthogonal (error-reduction-ratio) baseline run."""
    start = time.perf_counter()
    dictionary = build_dictionary(config.dictionary)
    data = prepare_dataset(config, data, dictionary.max_lag)
    u_id, y_id = data.identification
    ranking = frols_select(
        dictionary, u_id, y_id, n_terms=config.n_terms, err_threshold=config.err_threshold
    )
    if ranking.indices:
        structure = ranking.structure(dictionary)
        bits = structure.bits
        fit = evaluate_candidate(bits, dictionary, u_id, y_id, EvalConfig(alpha=config.alpha))
    else:
        fit = evaluate_candidate(
            np.zeros(dictionary.nov, dtype=np.int8), dictionary, u_id, y_id, EvalConfig(alpha=config.alpha)
        )
    mse_val = _validation_mse(fit, data)
    elapsed = time.perf_counter() - start
    return Report(
        method="baseline",
        seed=None,
        config=_config_echo(config),
        nov=dictionary.nov,
        search_space_size=2**dictionary.nov,
        mse_identification=fit.mse_free_run,
        mse_validation=mse_val,
        err_values=[float(v) for v in ranking.err_values],
        cumulative_err=float(ranking.cumulative_err),
        convergence=[],
        wall_clock_seconds=elapsed,
        dataset=_dataset_echo(data),
        **_model_report_fields(fit, dictionary),
    )


def simulate_report(report: Report, raw_data: Dataset) -> tuple[float, float]:
    """Free-run a saved report's model on a dataset.

    Applies the report's stored normalization ranges and split point, then
    returns the free-run MSE over the identification and validation windows.
    On the dataset the report was produced from, both values reproduce the
    reported MSEs.
    """
    dictionary, structure, theta = report.rebuild_model()
    data = raw_data
    if report.dataset.get("normalized"):
        data = apply_normalization(
            data, tuple(report.dataset["u_range"]), tuple(report.dataset["y_range"])
        )
    split_index = report.dataset.get("split_index")
    if split_index is not None:
        if not 0 < split_index < data.n:
            raise ValueError(f"report split index {split_index} does not fit a dataset of {data.n} samples")
        data = Dataset(
            u=data.u, y=data.y, split_index=split_index,
            u_range=data.u_range, y_range=data.y_range, source=data.source,
        )
    u_id, y_id = data.identification
    u_val, y_val = data.validation
    mse_id = free_run_mse(structure, theta, u_id, y_id)
    mse_val = free_run_mse(structure, theta, u_val, y_val) if y_val.size else math.nan
    return mse_id, mse_val
