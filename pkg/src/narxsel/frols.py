"""Forward-regression orthogonal least squares with error-reduction ratios.

Greedy baseline for structure selection: at each step every remaining
candidate column is orthogonalized against the chosen ones and the term whose
error-reduction ratio (fraction of output energy it explains) is largest
joins the model. Selection stops at a requested term count, when the
unexplained ratio falls below a threshold, or when no remaining candidate
clears the threshold. Final parameters are re-estimated by ordinary least
squares on the selected structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dictionary import Dictionary, ModelStructure, build_regressor_matrix
from .estimation import least_squares

# Orthogonalized columns with squared norm below this fraction of their
# original squared norm are numerically dependent on the chosen set.
DEGENERACY_RTOL = 1e-12

DEFAULT_ERR_THRESHOLD = 1e-4


@dataclass(frozen=True)
class ErrRanking:
    """Greedy selection result, in selection order."""

    indices: tuple[int, ...]
    err_values: np.ndarray
    cumulative_err: float
    theta: np.ndarray  # aligned with indices

    def structure(self, dictionary: Dictionary) -> ModelStructure:
        return ModelStructure(dictionary, tuple(sorted(self.indices)))


def frols_select(
    dictionary: Dictionary,
    u,
    y,
    n_terms: int | None = None,
    err_threshold: float | None = None,
) -> ErrRanking:
    """Greedy forward orthogonal selection over the full candidate matrix.

    With neither stop rule given, err_threshold defaults to 1e-4 on the
    unexplained ratio; an explicit n_terms alone disables the threshold and
    selects exactly that many (non-degenerate) terms. The threshold also acts
    as a progress floor: selection ends when the best remaining
    error-reduction ratio is below it.
    """
    if n_terms is None and err_threshold is None:
        err_threshold = DEFAULT_ERR_THRESHOLD
    if n_terms is not None and n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    full = ModelStructure(dictionary, tuple(range(dictionary.nov)))
    psi, target = build_regressor_matrix(full, u, y)
    rows, nov = psi.shape
    limit = nov if n_terms is None else min(n_terms, nov)
    if rows <= limit:
        raise ValueError(f"need more than {limit} rows to select {limit} terms, got {rows}")
    energy = float(target @ target)
    if energy == 0.0:
        raise ValueError("output has zero energy; nothing to explain")

    work = psi.copy()  # progressively deflated candidate columns
    original_sq = (psi**2).sum(axis=0)
    active = original_sq > 0.0
    chosen: list[int] = []
    err_values: list[float] = []
    cumulative = 0.0
    while len(chosen) < limit and active.any():
        norms_sq = (work**2).sum(axis=0)
        usable = active & (norms_sq > DEGENERACY_RTOL * original_sq)
        if not usable.any():
            break
        projections = target @ work
        err = np.where(usable, projections**2 / np.where(usable, norms_sq, 1.0) / energy, -1.0)
        best = int(np.argmax(err))
        best_err = float(err[best])
        if err_threshold is not None and best_err < err_threshold:
            break
        chosen.append(best)
        err_values.append(best_err)
        cumulative += best_err
        active[best] = False
        if err_threshold is not None and 1.0 - cumulative < err_threshold:
            break
        if len(chosen) >= limit:
            break
        w = work[:, best]
        w_sq = norms_sq[best]
        coeffs = (w @ work[:, active]) / w_sq
        work[:, active] -= np.outer(w, coeffs)

    if chosen:
        sorted_indices = tuple(sorted(chosen))
        structure = ModelStructure(dictionary, sorted_indices)
        psi_sel, target_sel = build_regressor_matrix(structure, u, y)
        theta_sorted = least_squares(psi_sel, target_sel)
        position = {idx: pos for pos, idx in enumerate(sorted_indices)}
        theta = np.array([theta_sorted[position[i]] for i in chosen])
    else:
        theta = np.empty(0)
    return ErrRanking(
        indices=tuple(chosen),
        err_values=np.asarray(err_values),
        cumulative_err=cumulative,
        theta=theta,
    )
