"""Penalized cost of one candidate structure.

The pipeline is decode -> regression matrix -> least squares -> relevance
test -> free-run simulation -> cost. The cost multiplies the free-run MSE by
a sigmoid penalty that grows with model size and with the number of
statistically irrelevant regressors, so two models with equal accuracy and
equal size are separated by how many of their terms actually matter.

Degenerate candidates (empty structure, rank-deficient matrix, too few rows,
diverged simulation) get an infinite cost and no model; the optimizer simply
abandons them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import expit

from .dictionary import Dictionary, ModelStructure, decode
from .estimation import EstimatedModel, RankDeficientError, estimate_model
from .simulation import free_run_mse


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation settings.

    ``noise_floor`` is a relative numerical noise level: residual variance and
    free-run MSE below noise_floor^2 times the output's mean square are
    treated as zero-valued ties. Exact fits on noiseless data then share one
    MSE value (so the penalty decides between them) and their relevance tests
    compare coefficients against a meaningful scale instead of rounding
    residue. Any genuinely noisy dataset sits far above the floor.
    """

    alpha: float = 0.05
    divergence_bound: float = 1e6
    noise_floor: float = 1e-12


@dataclass(frozen=True)
class Fitness:
    """Outcome of evaluating one bit vector."""

    cost: float
    mse_free_run: float
    penalty_rho: float
    n_terms: int
    n_irrelevant: int
    model: EstimatedModel | None
    degenerate_reason: str | None = None


def sigmoid_penalty(n_terms: int, n_irrelevant: int, nov: int) -> float:
    """Size/irrelevance penalty in (0, 1).

    rho = 1 / (1 + exp(-a (x - c))) with c = nov/2, slope a = n_terms / c and
    abscissa x = n_terms + n_irrelevant, so irrelevant regressors push a model
    further up its own sigmoid.
    """
    if not 1 <= n_terms <= nov:
        raise ValueError(f"n_terms must lie in [1, {nov}], got {n_terms}")
    if not 0 <= n_irrelevant <= n_terms:
        raise ValueError(f"n_irrelevant must lie in [0, {n_terms}], got {n_irrelevant}")
    c = nov / 2.0
    a = n_terms / c
    x = n_terms + n_irrelevant
    return float(expit(a * (x - c)))


def _degenerate(reason: str, n_terms: int) -> Fitness:
    return Fitness(
        cost=math.inf,
        mse_free_run=math.inf,
        penalty_rho=math.nan,
        n_terms=n_terms,
        n_irrelevant=0,
        model=None,
        degenerate_reason=reason,
    )


def _evaluate_structure(structure: ModelStructure, psi, target, u, y, cfg: EvalConfig) -> Fitness:
    m = structure.n_terms
    if psi.shape[0] <= m:
        return _degenerate("underdetermined", m)
    floor = cfg.noise_floor**2 * float(target @ target) / target.size
    try:
        model = estimate_model(structure, psi, target, cfg.alpha, sigma2_floor=floor)
    except RankDeficientError:
        return _degenerate("rank_deficient", m)
    mse_fr = free_run_mse(structure, model.theta, u, y, cfg.divergence_bound)
    if not math.isfinite(mse_fr):
        return _degenerate("diverged", m)
    mse_fr = max(mse_fr, floor)
    aux = model.n_irrelevant
    rho = sigmoid_penalty(m, aux, structure.dictionary.nov)
    return Fitness(
        cost=mse_fr * rho,
        mse_free_run=mse_fr,
        penalty_rho=rho,
        n_terms=m,
        n_irrelevant=aux,
        model=model,
    )


def evaluate_candidate(bits, dictionary: Dictionary, u, y, cfg: EvalConfig = EvalConfig()) -> Fitness:
    """Penalized free-run cost of the structure encoded by ``bits``.

    Pure function of its arguments; same bits on same data give a bit-for-bit
    identical Fitness, so candidates may be evaluated concurrently on shared
    read-only data.
    """
    structure = decode(bits, dictionary)
    if structure.n_terms == 0:
        return _degenerate("empty", 0)
    from .dictionary import build_regressor_matrix

    psi, target = build_regressor_matrix(structure, u, y)
    return _evaluate_structure(structure, psi, target, u, y, cfg)


def make_objective(dictionary: Dictionary, u, y, cfg: EvalConfig = EvalConfig()) -> Callable[[np.ndarray], float]:
    """Bit-vector cost function for the optimizer.

    Precomputes the full candidate matrix once and slices per candidate;
    repeat candidates are memoized (the evaluation is pure, so caching cannot
    change results).
    """
    from .dictionary import build_regressor_matrix

    full = ModelStructure(dictionary, tuple(range(dictionary.nov)))
    psi_all, target = build_regressor_matrix(full, u, y)
    u_arr = None if u is None else np.asarray(u, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    cache: dict[bytes, float] = {}

    def objective(bits) -> float:
        key = np.asarray(bits, dtype=np.int8).tobytes()
        cost = cache.get(key)
        if cost is None:
            structure = decode(bits, dictionary)
            if structure.n_terms == 0:
                cost = math.inf
            else:
                psi = psi_all[:, list(structure.selected)]
                cost = _evaluate_structure(structure, psi, target, u_arr, y_arr, cfg).cost
            cache[key] = cost
        return cost

    return objective
