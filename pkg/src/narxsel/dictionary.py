"""Candidate-term dictionaries for polynomial NARX structure selection.

A polynomial NARX model explains y(k) by a linear combination of monomials in
lagged outputs y(k-1) ... y(k-n_y) and lagged inputs u(k-d) ... u(k-d-n_u+1),
up to total degree ``ell``. The dictionary is the ordered universe of all such
monomials: the constant term first, then ascending degree, lexicographic
within equal degree. A model structure is a subset of the dictionary, encoded
as a bit vector of length ``nov`` (number of candidates) for the search.

Dictionaries, terms and structures are immutable and hashable, so they can be
shared freely across concurrent candidate evaluations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

OUTPUT = "y"
INPUT = "u"

_KIND_ORDER = {OUTPUT: 0, INPUT: 1}

Factor = tuple[str, int]


def candidate_count(n_y: int, n_u: int, ell: int) -> int:
    """Closed-form size of the candidate universe, constant term included.

    Follows the recurrence n_i = n_{i-1} * (n_y + n_u + i - 1) / i with
    n_0 = 1: the i-th increment counts the degree-i monomials over the
    n_y + n_u distinct lagged signals, and the final "+1" is the constant.
    """
    if ell < 1:
        raise ValueError(f"degree of nonlinearity must be >= 1, got {ell}")
    if n_y < 0 or n_u < 0:
        raise ValueError("lag counts must be non-negative")
    if n_y + n_u == 0:
        raise ValueError("at least one lagged signal is required (n_y + n_u >= 1)")
    n_signals = n_y + n_u
    n_i = 1
    total = 1
    for i in range(1, ell + 1):
        n_i = n_i * (n_signals + i - 1) // i
        total += n_i
    return total


def _factor_key(factor: Factor) -> tuple[int, int]:
    return (_KIND_ORDER[factor[0]], factor[1])


@dataclass(frozen=True)
class DictionarySpec:
    """Lag ranges, dead time and polynomial degree defining a dictionary."""

    n_y: int
    n_u: int
    ell: int
    d: int = 1
    include_constant: bool = True

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"degree of nonlinearity must be >= 1, got {self.ell}")
        if self.n_y < 0 or self.n_u < 0:
            raise ValueError("lag counts must be non-negative")
        if self.n_y + self.n_u == 0:
            raise ValueError("at least one lagged signal is required (n_y + n_u >= 1)")
        if self.d < 1:
            raise ValueError(f"dead time must be >= 1, got {self.d}")

    @property
    def output_lags(self) -> range:
        return range(1, self.n_y + 1)

    @property
    def input_lags(self) -> range:
        # n_u input lags starting at the dead time: u(k-d) ... u(k-d-n_u+1)
        return range(self.d, self.d + self.n_u)

    @property
    def max_lag(self) -> int:
        lags = [0]
        if self.n_y:
            lags.append(self.n_y)
        if self.n_u:
            lags.append(self.d + self.n_u - 1)
        return max(lags)


@dataclass(frozen=True)
class RegressorTerm:
    """One candidate monomial: a multiset of lagged signals, empty = constant.

    Factors are kept in canonical order (outputs before inputs, ascending
    lag), so equal terms compare and hash equal regardless of construction
    order.
    """

    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        for kind, lag in self.factors:
            if kind not in _KIND_ORDER:
                raise ValueError(f"unknown signal kind {kind!r}")
            if lag < 1:
                raise ValueError(f"lags must be positive, got {lag}")
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=_factor_key)))

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def label(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{kind}(k-{lag})" for kind, lag in self.factors)

    def sort_key(self):
        return (self.degree, tuple(_factor_key(f) for f in self.factors))


@dataclass(frozen=True)
class Dictionary:
    """Ordered universe of candidate terms for one DictionarySpec."""

    spec: DictionarySpec
    terms: tuple[RegressorTerm, ...]

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("dictionary terms must be unique")

    @property
    def nov(self) -> int:
        return len(self.terms)

    @property
    def max_lag(self) -> int:
        return self.spec.max_lag

    def __len__(self) -> int:
        return len(self.terms)

    def labels(self) -> list[str]:
        return [t.label for t in self.terms]

    def index_of(self, term: RegressorTerm) -> int:
        return self.terms.index(term)


def build_dictionary(spec: DictionarySpec) -> Dictionary:
    """Enumerate every monomial of degree <= ell over the spec's lagged signals.

    Enumeration order is a pure function of the spec: constant first, then
    combinations-with-replacement of the (output-then-input, ascending-lag)
    signal list per degree, which yields the canonical dictionary ordering.
    """
    signals: list[Factor] = [(OUTPUT, lag) for lag in spec.output_lags]
    signals += [(INPUT, lag) for lag in spec.input_lags]
    terms: list[RegressorTerm] = []
    if spec.include_constant:
        terms.append(RegressorTerm())
    for degree in range(1, spec.ell + 1):
        for combo in itertools.combinations_with_replacement(signals, degree):
            terms.append(RegressorTerm(combo))
    return Dictionary(spec=spec, terms=tuple(terms))


@dataclass(frozen=True)
class ModelStructure:
    """A subset of dictionary terms, identified by ascending indices."""

    dictionary: Dictionary
    selected: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "selected", tuple(int(i) for i in self.selected))
        prev = -1
        for i in self.selected:
            if not prev < i < self.dictionary.nov:
                raise ValueError(
                    "selected indices must be strictly increasing and < "
                    f"{self.dictionary.nov}, got {self.selected}"
                )
            prev = i

    @property
    def n_terms(self) -> int:
        return len(self.selected)

    @property
    def terms(self) -> tuple[RegressorTerm, ...]:
        return tuple(self.dictionary.terms[i] for i in self.selected)

    @property
    def bits(self) -> np.ndarray:
        b = np.zeros(self.dictionary.nov, dtype=np.int8)
        if self.selected:
            b[list(self.selected)] = 1
        return b

    def labels(self) -> list[str]:
        return [t.label for t in self.terms]


def decode(bits, dictionary: Dictionary) -> ModelStructure:
    """Map a bit vector over the dictionary to the structure it selects."""
    b = np.asarray(bits)
    if b.shape != (dictionary.nov,):
        raise ValueError(f"bit vector must have length {dictionary.nov}, got shape {b.shape}")
    return ModelStructure(dictionary, tuple(int(i) for i in np.flatnonzero(b)))


def encode(structure: ModelStructure) -> np.ndarray:
    """Inverse of decode: the structure's bit vector."""
    return structure.bits


def build_regressor_matrix(structure: ModelStructure, u, y) -> tuple[np.ndarray, np.ndarray]:
    """Regression matrix (one column per selected term) and the aligned target.

    Rows cover sample indices k = max_lag ... N-1 where max_lag is the
    *dictionary's* maximum lag, so every structure drawn from the same
    dictionary is scored on an identical row set. Entry (k, j) is the product
    of the j-th term's lagged signal values at k; the constant term gives a
    column of ones.
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValueError("output series must be one-dimensional")
    n = y.size
    if u is None:
        u = np.zeros(n)
    u = np.asarray(u, dtype=float)
    if u.shape != y.shape:
        raise ValueError("input and output series must have equal length")
    if not structure.selected:
        raise ValueError("empty structure has no regression matrix")
    max_lag = structure.dictionary.max_lag
    if n < max_lag + 2:
        raise ValueError(f"need at least {max_lag + 2} samples, got {n}")
    rows = n - max_lag
    columns = []
    for term in structure.terms:
        col = np.ones(rows)
        for kind, lag in term.factors:
            series = y if kind == OUTPUT else u
            col = col * series[max_lag - lag : n - lag]
        columns.append(col)
    return np.column_stack(columns), y[max_lag:]
