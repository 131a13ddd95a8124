"""Run reports: a self-contained record of one identification run.

A report carries everything needed to rebuild and re-simulate the selected
model (dictionary spec, term indices, parameters, normalization ranges, split
point), plus the statistics and convergence curve of the run. Serialization
is JSON; floats round-trip exactly through their shortest repr.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .dictionary import Dictionary, DictionarySpec, ModelStructure, build_dictionary


@dataclass
class Report:
    method: str  # "identify" or "baseline"
    seed: int | None
    config: dict
    nov: int
    search_space_size: int
    term_indices: list[int]
    terms: list[str]
    theta: list[float]
    std_errors: list[float]
    relevant: list[bool]
    n_irrelevant: int
    penalty_rho: float | None
    cost: float | None
    mse_identification: float
    mse_validation: float
    err_values: list[float] | None
    cumulative_err: float | None
    convergence: list[float]
    wall_clock_seconds: float
    dataset: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def dictionary_spec(self) -> DictionarySpec:
        spec = self.config["dictionary"]
        return DictionarySpec(
            n_y=spec["n_y"],
            n_u=spec["n_u"],
            ell=spec["ell"],
            d=spec["d"],
            include_constant=spec["include_constant"],
        )

    def rebuild_model(self) -> tuple[Dictionary, ModelStructure, np.ndarray]:
        """Dictionary, structure and parameter vector this report describes."""
        dictionary = build_dictionary(self.dictionary_spec())
        structure = ModelStructure(dictionary, tuple(self.term_indices))
        return dictionary, structure, np.asarray(self.theta, dtype=float)


def save_report(report: Report, path) -> None:
    Path(path).write_text(report.to_json() + "\n")


def load_report(path) -> Report:
    return Report.from_json(Path(path).read_text())


def write_convergence_csv(curve, path) -> None:
    """Two-column (iteration, best cost) CSV, one row per iteration."""
    lines = ["iteration,gbest_cost"]
    for i, cost in enumerate(np.asarray(curve, dtype=float)):
        lines.append(f"{i},{format(cost, '.17g')}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_convergence_csv(path) -> np.ndarray:
    rows = Path(path).read_text().strip().splitlines()[1:]
    return np.array([float(row.split(",")[1]) for row in rows])
