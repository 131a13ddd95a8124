"""Least-squares parameter estimation and regressor relevance statistics.

Parameters are solved through a QR factorization rather than the normal
equations; a candidate whose triangular factor has a tiny pivot (relative to
the largest one) is rejected as rank deficient so the structure search can
discard it. Parameter variances come from the residual variance scaled by the
diagonal of (Psi' Psi)^-1, and a regressor is flagged relevant when the
two-sided Student-t confidence interval of its parameter excludes zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import betaincinv

from .dictionary import ModelStructure

# Pivot below this fraction of the largest pivot counts as rank deficiency.
PIVOT_RTOL = 1e-10


class RankDeficientError(ValueError):
    """Regression matrix is numerically rank deficient."""


def _checked_qr(psi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q, r = np.linalg.qr(psi)
    pivots = np.abs(np.diag(r))
    largest = pivots.max(initial=0.0)
    if largest == 0.0 or pivots.min() < PIVOT_RTOL * largest:
        raise RankDeficientError(
            f"pivot ratio below {PIVOT_RTOL:g}; columns are numerically dependent"
        )
    return q, r


def _validate_shapes(psi: np.ndarray, y: np.ndarray) -> tuple[int, int]:
    if psi.ndim != 2:
        raise ValueError("regression matrix must be two-dimensional")
    n, m = psi.shape
    if y.shape != (n,):
        raise ValueError("target length must match the matrix rows")
    if n <= m:
        raise ValueError(f"need more rows than parameters, got {n} rows for {m} parameters")
    return n, m


def least_squares(psi, y) -> np.ndarray:
    """Minimum-norm-residual parameters via QR; raises RankDeficientError."""
    psi = np.asarray(psi, dtype=float)
    y = np.asarray(y, dtype=float)
    _validate_shapes(psi, y)
    q, r = _checked_qr(psi)
    return solve_triangular(r, q.T @ y)


def residual_variance(residuals, n_rows: int, n_params: int) -> float:
    """Mean-square residual rescaled by n/(n - m), i.e. sum(e^2)/(n - m)."""
    residuals = np.asarray(residuals, dtype=float)
    if n_rows <= n_params:
        raise ValueError(f"need n_rows > n_params, got {n_rows} <= {n_params}")
    return float(residuals @ residuals) / (n_rows - n_params)


def _inverse_gram_diagonal(r: np.ndarray) -> np.ndarray:
    # diag((Psi'Psi)^-1) = row sums of squares of R^-1 when Psi = QR.
    r_inv = solve_triangular(r, np.eye(r.shape[0]))
    return (r_inv**2).sum(axis=1)


def parameter_variances(psi, sigma_e2: float) -> np.ndarray:
    """Per-parameter variances: residual variance times diag((Psi'Psi)^-1)."""
    if sigma_e2 < 0:
        raise ValueError("residual variance must be non-negative")
    psi = np.asarray(psi, dtype=float)
    if psi.ndim != 2:
        raise ValueError("regression matrix must be two-dimensional")
    _, r = _checked_qr(psi)
    return sigma_e2 * _inverse_gram_diagonal(r)


def standard_errors(psi, sigma2: float) -> np.ndarray:
    """Element-wise square roots of parameter_variances."""
    return np.sqrt(parameter_variances(psi, sigma2))


def t_critical(alpha: float, dof: int) -> float:
    """Two-sided Student-t critical value: P(|T_dof| > t) = alpha.

    Inverts the regularized incomplete beta identity for the t tail mass,
    I_x(dof/2, 1/2) = alpha with x = dof / (dof + t^2).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if dof < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {dof}")
    x = float(betaincinv(dof / 2.0, 0.5, alpha))
    return math.sqrt(dof * (1.0 - x) / x)


def relevance_flags(theta, sigmas, alpha: float, dof: int) -> np.ndarray:
    """True where the confidence interval theta_j -+ sigma_j * t excludes zero."""
    theta = np.asarray(theta, dtype=float)
    sigmas = np.asarray(sigmas, dtype=float)
    if theta.shape != sigmas.shape:
        raise ValueError("theta and sigmas must have equal length")
    return np.abs(theta) > sigmas * t_critical(alpha, dof)


@dataclass(frozen=True)
class EstimatedModel:
    """A selected structure with fitted parameters and relevance statistics."""

    structure: ModelStructure
    theta: np.ndarray
    residual_variance: float
    param_variances: np.ndarray
    std_errors: np.ndarray
    relevant: np.ndarray
    n_rows: int
    n_params: int

    @property
    def n_irrelevant(self) -> int:
        return int(self.n_params - np.count_nonzero(self.relevant))


def estimate_model(
    structure: ModelStructure, psi, target, alpha: float = 0.05, sigma2_floor: float = 0.0
) -> EstimatedModel:
    """Full estimation pipeline on a prebuilt regression matrix (single QR).

    ``sigma2_floor`` guards the relevance test against exact fits: a residual
    variance at rounding level would make the t-test compare coefficients
    against meaningless machine noise, so callers scoring noiseless data can
    raise the variance to a numerical noise level first (0 keeps the raw
    estimate).
    """
    psi = np.asarray(psi, dtype=float)
    target = np.asarray(target, dtype=float)
    n, m = _validate_shapes(psi, target)
    q, r = _checked_qr(psi)
    theta = solve_triangular(r, q.T @ target)
    residuals = target - psi @ theta
    sigma_e2 = max(float(residuals @ residuals) / (n - m), sigma2_floor)
    variances = sigma_e2 * _inverse_gram_diagonal(r)
    errors = np.sqrt(variances)
    flags = np.abs(theta) > errors * t_critical(alpha, n - m)
    return EstimatedModel(
        structure=structure,
        theta=theta,
        residual_variance=sigma_e2,
        param_variances=variances,
        std_errors=errors,
        relevant=flags,
        n_rows=n,
        n_params=m,
    )
