"""Input/output sample sequences: CSV ingestion, splitting, normalization."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np


class CsvFormatError(ValueError):
    """Malformed data file (always names the offending line)."""


@dataclass(frozen=True)
class Dataset:
    """Paired input/output samples with split and normalization metadata.

    ``split_index`` separates identification samples (before) from validation
    samples (from the index on); None means everything is identification.
    ``u_range``/``y_range`` hold the per-channel (min, max) of the raw
    identification data when the channels were min-max scaled, and invert the
    scaling exactly.
    """

    u: np.ndarray
    y: np.ndarray
    split_index: int | None = None
    u_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    source: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.u.shape != self.y.shape or self.u.ndim != 1:
            raise ValueError("u and y must be one-dimensional and equally long")
        if self.split_index is not None and not 0 < self.split_index < self.u.size:
            raise ValueError(f"split_index must lie inside (0, {self.u.size}), got {self.split_index}")

    @property
    def n(self) -> int:
        return self.u.size

    @property
    def is_normalized(self) -> bool:
        return self.u_range is not None and self.y_range is not None

    @property
    def identification(self) -> tuple[np.ndarray, np.ndarray]:
        end = self.n if self.split_index is None else self.split_index
        return self.u[:end], self.y[:end]

    @property
    def validation(self) -> tuple[np.ndarray, np.ndarray]:
        start = self.n if self.split_index is None else self.split_index
        return self.u[start:], self.y[start:]

    @property
    def n_validation_out_of_range(self) -> int:
        """Validation samples falling outside [0, 1] after normalization."""
        if not self.is_normalized:
            return 0
        uv, yv = self.validation
        return int(((uv < 0.0) | (uv > 1.0)).sum() + ((yv < 0.0) | (yv > 1.0)).sum())


def load_csv(path, has_header: bool = True) -> Dataset:
    """Read a two-column (u, y) CSV into a Dataset.

    With a header the columns must be named "u" and "y" (any order); without
    one, column 0 is u and column 1 is y. Non-numeric or non-finite cells and
    ragged rows are reported with their line number.
    """
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        rows = [(line, row) for line, row in enumerate(reader, start=1) if row]
    if not rows:
        raise CsvFormatError(f"{path}: file contains no data")
    u_col, y_col = 0, 1
    if has_header:
        header_line, header = rows[0]
        names = [cell.strip().lower() for cell in header]
        if sorted(names) != ["u", "y"]:
            raise CsvFormatError(f"{path}: line {header_line}: expected columns 'u' and 'y', got {header}")
        u_col, y_col = names.index("u"), names.index("y")
        rows = rows[1:]
        if not rows:
            raise CsvFormatError(f"{path}: no data rows after the header")
    u_values, y_values = [], []
    for line, row in rows:
        if len(row) != 2:
            raise CsvFormatError(f"{path}: line {line}: expected 2 columns, got {len(row)}")
        pair = []
        for col in (u_col, y_col):
            cell = row[col].strip()
            try:
                value = float(cell)
            except ValueError:
                raise CsvFormatError(f"{path}: line {line}: non-numeric cell {cell!r}") from None
            if not math.isfinite(value):
                raise CsvFormatError(f"{path}: line {line}: non-finite cell {cell!r}")
            pair.append(value)
        u_values.append(pair[0])
        y_values.append(pair[1])
    return Dataset(u=np.array(u_values), y=np.array(y_values), source=str(path))


def save_csv(data: Dataset, path) -> None:
    """Write the dataset as a headed two-column CSV with full float precision."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["u", "y"])
        for uk, yk in zip(data.u, data.y):
            writer.writerow([format(uk, ".17g"), format(yk, ".17g")])


def with_split(data: Dataset, fraction: float) -> Dataset:
    """Place the identification/validation boundary at a fraction of the data."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"split fraction must lie in (0, 1), got {fraction}")
    index = int(round(data.n * fraction))
    index = min(max(index, 1), data.n - 1)
    return replace(data, split_index=index)


def normalize(data: Dataset) -> Dataset:
    """Min-max scale both channels to [0, 1].

    Scaling statistics come from the identification split only and are applied
    to the whole series, so validation samples outside the identification
    range land outside [0, 1]; the stored (min, max) pairs invert the mapping
    exactly.
    """
    u_id, y_id = data.identification
    ranges = []
    for name, channel in (("u", u_id), ("y", y_id)):
        lo, hi = float(channel.min()), float(channel.max())
        if hi == lo:
            raise ValueError(f"cannot normalize constant channel {name!r}")
        ranges.append((lo, hi))
    (u_lo, u_hi), (y_lo, y_hi) = ranges
    return replace(
        data,
        u=(data.u - u_lo) / (u_hi - u_lo),
        y=(data.y - y_lo) / (y_hi - y_lo),
        u_range=(u_lo, u_hi),
        y_range=(y_lo, y_hi),
    )


def apply_normalization(data: Dataset, u_range: tuple[float, float], y_range: tuple[float, float]) -> Dataset:
    """Scale with previously stored (min, max) pairs instead of recomputing."""
    (u_lo, u_hi), (y_lo, y_hi) = u_range, y_range
    if u_hi == u_lo or y_hi == y_lo:
        raise ValueError("degenerate normalization range")
    return replace(
        data,
        u=(data.u - u_lo) / (u_hi - u_lo),
        y=(data.y - y_lo) / (y_hi - y_lo),
        u_range=(float(u_lo), float(u_hi)),
        y_range=(float(y_lo), float(y_hi)),
    )


def denormalize(data: Dataset) -> Dataset:
    """Invert a previous min-max scaling using the stored ranges."""
    if not data.is_normalized:
        raise ValueError("dataset carries no normalization ranges")
    (u_lo, u_hi), (y_lo, y_hi) = data.u_range, data.y_range
    return replace(
        data,
        u=data.u * (u_hi - u_lo) + u_lo,
        y=data.y * (y_hi - y_lo) + y_lo,
        u_range=None,
        y_range=None,
    )
