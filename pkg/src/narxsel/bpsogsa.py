"""Binary hybrid particle-swarm / gravitational-search optimizer.

Agents carry binary position vectors and real-valued velocities. Each
iteration evaluates all agents, derives normalized masses from fitness (best
agent heaviest), accumulates randomly weighted pairwise gravitational pulls
into accelerations, blends them with an inertia term and an attraction toward
the best solution found so far, and finally complements bits with probability
given by a V-shaped transfer of the velocity.

Reproducibility contract: all randomness comes from a single numpy generator
seeded by OptimizerConfig.seed. Draw order: initial positions (agents x
dimensions); then per iteration: pairwise force weights (agents x agents),
two velocity coefficient blocks (agents x dimensions each), and the bit-flip
thresholds (agents x dimensions). A fixed seed therefore fixes the whole
trace. Candidate evaluations inside one iteration are independent and could
run concurrently; all state updates happen single-threaded at the iteration
barrier and never consume randomness during evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class OptimizerConfig:
    """Swarm parameters.

    The acceleration/attraction weights, inertia ramp and velocity clamp were
    calibrated on bit-vector benchmarks at this population/iteration budget:
    a rising inertia preserves exploration after the gravitational constant
    has decayed, and the tight clamp keeps bit-flip probabilities in a
    productive range. All of them are exposed for override.
    """

    n_agents: int = 10
    max_iter: int = 30
    g0: float = 100.0
    alpha_decay: float = 23.0
    c1: float = 5.0
    c2: float = 1.0
    w_start: float = 0.4
    w_end: float = 0.9
    v_max: float = 1.0
    epsilon: float = 1e-16
    seed: int = 0

    def __post_init__(self):
        if self.n_agents < 2:
            raise ValueError("need at least two agents")
        if self.max_iter < 1:
            raise ValueError("need at least one iteration")
        if self.g0 <= 0:
            raise ValueError("g0 must be positive")
        if self.v_max <= 0:
            raise ValueError("v_max must be positive")


@dataclass
class AgentSwarm:
    """Mutable optimizer state, advanced once per iteration."""

    positions: np.ndarray  # (n_agents, nov) int8 bits
    velocities: np.ndarray  # (n_agents, nov) float
    fitness: np.ndarray  # (n_agents,) float
    masses: np.ndarray  # (n_agents,) float
    gbest_bits: np.ndarray | None
    gbest_cost: float
    iteration: int = 0


@dataclass(frozen=True)
class OptimizeResult:
    best_bits: np.ndarray
    best_cost: float
    curve: np.ndarray  # per-iteration best cost, non-increasing
    n_evaluations: int

    def __iter__(self):
        return iter((self.best_bits, self.best_cost, self.curve))


def gravitational_constant(t: int, cfg: OptimizerConfig) -> float:
    """Exponentially decaying gravitational constant g0 * exp(-alpha t / T)."""
    return cfg.g0 * math.exp(-cfg.alpha_decay * t / cfg.max_iter)


def masses_from_fitness(fitness) -> np.ndarray:
    """Normalized masses for minimization: best agent 1, worst 0, sum 1.

    Infinite-cost agents are massless; if every agent has the same finite
    cost (or all are infinite) masses are uniform.
    """
    fit = np.asarray(fitness, dtype=float)
    n = fit.size
    finite = np.isfinite(fit)
    if not finite.any():
        return np.full(n, 1.0 / n)
    best = fit[finite].min()
    worst = fit[finite].max()
    if best == worst:
        raw = finite.astype(float)
    else:
        raw = np.zeros(n)
        raw[finite] = (fit[finite] - worst) / (best - worst)
    return raw / raw.sum()


def accelerations(positions, masses, g: float, rng, epsilon: float = 1e-16) -> np.ndarray:
    """Per-dimension accelerations from randomly weighted pairwise forces.

    The force of agent j on agent i along dimension d is
    g * m_i * m_j / (dist(i, j) + epsilon) * (x_j - x_i), each (i, j)
    contribution scaled by an independent uniform weight. Acceleration is
    force over own mass; the attracted mass cancels analytically, so the
    cancelled form is used and a massless (worst) agent still receives the
    full kick from the attracting masses.
    """
    x = np.asarray(positions, dtype=float)
    masses = np.asarray(masses, dtype=float)
    n = x.shape[0]
    weights = rng.random((n, n))
    diff = x[None, :, :] - x[:, None, :]  # diff[i, j] = x_j - x_i
    dist = np.sqrt((diff**2).sum(axis=2))
    coef = g * weights * masses[None, :] / (dist + epsilon)
    np.fill_diagonal(coef, 0.0)
    return np.einsum("ij,ijd->id", coef, diff)


def update_velocities(velocities, accel, positions, gbest_bits, t: int, cfg: OptimizerConfig, rng) -> np.ndarray:
    """Inertia + acceleration + attraction toward gbest, clamped to +-v_max.

    The inertia weight decays linearly from w_start at t=0 toward w_end over
    max_iter iterations; both random coefficients are drawn per element.
    """
    w = cfg.w_start - (cfg.w_start - cfg.w_end) * (t / cfg.max_iter)
    shape = np.shape(velocities)
    r1 = rng.random(shape)
    r2 = rng.random(shape)
    gap = np.asarray(gbest_bits, dtype=float) - np.asarray(positions, dtype=float)
    v = w * np.asarray(velocities, dtype=float) + cfg.c1 * r1 * np.asarray(accel, dtype=float) + cfg.c2 * r2 * gap
    return np.clip(v, -cfg.v_max, cfg.v_max)


def transfer(velocity):
    """V-shaped transfer |2/pi * arctan(pi/2 * v)|, mapping reals into [0, 1)."""
    v = np.asarray(velocity, dtype=float)
    return np.abs((2.0 / math.pi) * np.arctan((math.pi / 2.0) * v))


def update_positions(positions, velocities, rng) -> np.ndarray:
    """Complement each bit with probability transfer(velocity)."""
    positions = np.asarray(positions)
    flip = rng.random(positions.shape) < transfer(velocities)
    return np.where(flip, 1 - positions, positions).astype(np.int8)


def _update_gbest(swarm: AgentSwarm) -> None:
    # Strict improvement only; argmin keeps the earliest agent on ties.
    i = int(np.argmin(swarm.fitness))
    if swarm.gbest_bits is None or swarm.fitness[i] < swarm.gbest_cost:
        swarm.gbest_cost = float(swarm.fitness[i])
        swarm.gbest_bits = swarm.positions[i].copy()


def optimize(objective: Callable[[np.ndarray], float], nov: int, cfg: OptimizerConfig = OptimizerConfig()) -> OptimizeResult:
    """Minimize a bit-vector cost function over {0, 1}^nov.

    Positions start as independent fair coin flips and velocities at zero;
    the best-so-far candidate and the per-iteration convergence curve are
    returned after max_iter iterations.
    """
    rng = np.random.default_rng(cfg.seed)
    swarm = AgentSwarm(
        positions=(rng.random((cfg.n_agents, nov)) < 0.5).astype(np.int8),
        velocities=np.zeros((cfg.n_agents, nov)),
        fitness=np.full(cfg.n_agents, math.inf),
        masses=np.full(cfg.n_agents, 1.0 / cfg.n_agents),
        gbest_bits=None,
        gbest_cost=math.inf,
    )
    curve = np.empty(cfg.max_iter)
    for t in range(cfg.max_iter):
        swarm.iteration = t
        swarm.fitness = np.array([float(objective(swarm.positions[i].copy())) for i in range(cfg.n_agents)])
        _update_gbest(swarm)
        curve[t] = swarm.gbest_cost
        g = gravitational_constant(t, cfg)
        swarm.masses = masses_from_fitness(swarm.fitness)
        accel = accelerations(swarm.positions, swarm.masses, g, rng, cfg.epsilon)
        swarm.velocities = update_velocities(
            swarm.velocities, accel, swarm.positions, swarm.gbest_bits, t, cfg, rng
        )
        swarm.positions = update_positions(swarm.positions, swarm.velocities, rng)
    assert swarm.gbest_bits is not None
    return OptimizeResult(
        best_bits=swarm.gbest_bits.copy(),
        best_cost=float(swarm.gbest_cost),
        curve=curve,
        n_evaluations=cfg.n_agents * cfg.max_iter,
    )
