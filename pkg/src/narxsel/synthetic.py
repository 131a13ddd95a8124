"""Synthetic benchmark data for recovery experiments and tests."""

from __future__ import annotations

import numpy as np

from .dictionary import Dictionary, ModelStructure, RegressorTerm

# y(k) = 0.5 y(k-1) - 0.3 y(k-2) + 0.1 u(k-1)
BENCHMARK_COEFFS = (0.5, -0.3, 0.1)
BENCHMARK_FACTORS = ((("y", 1),), (("y", 2),), (("u", 1),))


def generate_benchmark(
    n: int,
    seed: int,
    coeffs: tuple[float, float, float] = BENCHMARK_COEFFS,
    levels: tuple[float, float] = (-1.0, 1.0),
    snr_db: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Second-order benchmark series driven by a random binary input.

    The input switches between the two levels with equal probability; the
    output starts at rest. With snr_db set, white Gaussian noise scaled to
    that signal-to-noise ratio is added to the measured output.
    """
    if n < 3:
        raise ValueError("need at least 3 samples")
    rng = np.random.default_rng(seed)
    u = np.where(rng.integers(0, 2, size=n) == 1, levels[1], levels[0]).astype(float)
    a1, a2, b1 = coeffs
    y = np.zeros(n)
    for k in range(2, n):
        y[k] = a1 * y[k - 1] + a2 * y[k - 2] + b1 * u[k - 1]
    if snr_db is not None:
        noise_std = float(y.std()) * 10.0 ** (-snr_db / 20.0)
        y = y + rng.normal(0.0, noise_std, size=n)
    return u, y


def benchmark_structure(dictionary: Dictionary) -> ModelStructure:
    """Indices of the benchmark's three true terms within a dictionary."""
    indices = sorted(dictionary.index_of(RegressorTerm(f)) for f in BENCHMARK_FACTORS)
    return ModelStructure(dictionary, tuple(indices))
