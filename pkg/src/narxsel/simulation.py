"""One-step-ahead prediction, free-run simulation, and MSE scoring.

Free-run simulation seeds the first max_lag outputs with measured data and
then feeds the model its own past predictions (inputs stay measured). A run
is marked diverged as soon as a predicted value leaves [-bound, bound] or is
non-finite; divergence is a result state, not an error, and maps to an
infinite MSE so unstable candidates drop out of the structure search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dictionary import INPUT, OUTPUT, ModelStructure, build_regressor_matrix

DIVERGENCE_BOUND = 1e6


@dataclass(frozen=True)
class SimulationResult:
    predicted: np.ndarray
    diverged: bool
    first_invalid_index: int | None = None


def _term_program(structure: ModelStructure, theta) -> list[tuple[float, tuple[int, ...], tuple[int, ...]]]:
    # (coefficient, output lags, input lags) per term, for the recursion loop.
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (structure.n_terms,):
        raise ValueError("theta length must match the number of selected terms")
    program = []
    for coef, term in zip(theta, structure.terms):
        ylags = tuple(lag for kind, lag in term.factors if kind == OUTPUT)
        ulags = tuple(lag for kind, lag in term.factors if kind == INPUT)
        program.append((float(coef), ylags, ulags))
    return program


def one_step_predict(structure: ModelStructure, theta, u, y, bound: float = DIVERGENCE_BOUND) -> SimulationResult:
    """Predictions from measured past values, one per valid sample.

    The result covers k = max_lag ... N-1 only (length N - max_lag); there is
    no seed prefix because every prediction uses measured history.
    """
    psi, _ = build_regressor_matrix(structure, u, y)
    predicted = psi @ np.asarray(theta, dtype=float)
    invalid = ~np.isfinite(predicted) | (np.abs(predicted) > bound)
    if invalid.any():
        return SimulationResult(predicted, True, int(np.argmax(invalid)))
    return SimulationResult(predicted, False)


def free_run(structure: ModelStructure, theta, u, y, bound: float = DIVERGENCE_BOUND) -> SimulationResult:
    """Recursive simulation: predicted[:max_lag] is measured seed, rest fed back.

    Returns the full-length trajectory. On divergence the remaining entries
    are NaN and first_invalid_index holds the offending sample index.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    max_lag = structure.dictionary.max_lag
    if n <= max_lag:
        raise ValueError(f"need more than {max_lag} samples, got {n}")
    if u is None:
        u_values = [0.0] * n
    else:
        u_arr = np.asarray(u, dtype=float)
        if u_arr.shape != y.shape:
            raise ValueError("input and output series must have equal length")
        u_values = u_arr.tolist()
    program = _term_program(structure, theta)
    predicted = y[:max_lag].tolist() + [0.0] * (n - max_lag)
    diverged = False
    first_invalid = None
    for k in range(max_lag, n):
        acc = 0.0
        for coef, ylags, ulags in program:
            v = coef
            for lag in ylags:
                v *= predicted[k - lag]
            for lag in ulags:
                v *= u_values[k - lag]
            acc += v
        if not (-bound <= acc <= bound):  # also catches NaN and +-inf
            diverged = True
            first_invalid = k
            for j in range(k, n):
                predicted[j] = math.nan
            break
        predicted[k] = acc
    return SimulationResult(np.asarray(predicted), diverged, first_invalid)


def mse(y, yhat) -> float:
    """Mean squared error; +inf when the prediction contains invalid values."""
    y = np.asarray(y, dtype=float)
    yhat = np.asarray(yhat, dtype=float)
    if y.shape != yhat.shape:
        raise ValueError(f"length mismatch: {y.shape} vs {yhat.shape}")
    if y.size == 0:
        raise ValueError("need at least one sample")
    if not np.isfinite(yhat).all():
        return math.inf
    diff = y - yhat
    return float(diff @ diff) / y.size


def free_run_mse(structure: ModelStructure, theta, u, y, bound: float = DIVERGENCE_BOUND) -> float:
    """Free-run MSE over the comparison window (seed samples excluded)."""
    result = free_run(structure, theta, u, y, bound)
    if result.diverged:
        return math.inf
    max_lag = structure.dictionary.max_lag
    y = np.asarray(y, dtype=float)
    return mse(y[max_lag:], result.predicted[max_lag:])
