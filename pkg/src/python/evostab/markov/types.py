"""
Value types of the Markov kernel: measures, stochastic matrices, classifications and per-agent conditionals
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .exceptions import DimensionMismatchException, InvalidStochasticMatrixException

# Row sums and distribution masses must match 1 within this tolerance
STOCHASTIC_TOL = 1e-12


def _frozen(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Measure:
    """
    Non-negative weights over the states 0..N-1.

    Args:
        weights: one finite non-negative weight per state
        distribution: require the weights to sum to 1
    """

    weights: np.ndarray
    distribution: bool = False

    def __post_init__(self):
        weights = _frozen(self.weights)
        if weights.ndim != 1 or weights.size == 0:
            raise DimensionMismatchException(f"Measure needs a non-empty vector, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise InvalidStochasticMatrixException("Measure weights must be finite and non-negative")
        if self.distribution and abs(weights.sum() - 1.0) > STOCHASTIC_TOL:
            raise InvalidStochasticMatrixException(f"Distribution weights sum to {weights.sum()!r}, expected 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, n: int) -> "Measure":
        return cls(np.full(n, 1.0 / n), distribution=True)

    @classmethod
    def unit(cls, n: int, state: int) -> "Measure":
        weights = np.zeros(n)
        weights[state] = 1.0
        return cls(weights, distribution=True)

    @classmethod
    def normalized(cls, weights: Sequence[float]) -> "Measure":
        """Scale arbitrary non-negative weights into a distribution"""
        weights = np.asarray(weights, dtype=float)
        weights = weights / weights.sum()
        # Push rounding residue onto the largest entry so the mass is 1 within STOCHASTIC_TOL
        weights[np.argmax(weights)] += 1.0 - weights.sum()
        return cls(weights, distribution=True)

    @property
    def n(self) -> int:
        return self.weights.size

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def __getitem__(self, state: int) -> float:
        return float(self.weights[state])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class StochasticMatrix:
    """
    Row-stochastic transition matrix P over n labeled states.

    Args:
        entries: n x n matrix with entries in [0,1], rows summing to 1
        labels: optional state names, defaults to the state indices
        tol: accepted deviation of each row sum from 1
    """

    entries: np.ndarray
    labels: Optional[Tuple[str, ...]] = None
    tol: float = field(default=STOCHASTIC_TOL, compare=False)

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise DimensionMismatchException(f"Stochastic matrix must be square and non-empty, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)) or np.any(entries < 0) or np.any(entries > 1):
            raise InvalidStochasticMatrixException("Stochastic matrix entries must lie in [0,1]")

        worst = float(np.max(np.abs(entries.sum(axis=1) - 1.0)))
        if worst > self.tol:
            raise InvalidStochasticMatrixException(f"Row sums deviate from 1 by {worst:.3e}")

        labels = self.labels
        if labels is None:
            labels = tuple(str(i) for i in range(entries.shape[0]))
        labels = tuple(str(label) for label in labels)
        if len(labels) != entries.shape[0]:
            raise DimensionMismatchException(f"Expected {entries.shape[0]} labels, got {len(labels)}")

        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def normalized(cls, raw, labels: Optional[Sequence[str]] = None) -> "StochasticMatrix":
        """Divide each row of a non-negative matrix by its sum"""
        raw = np.asarray(raw, dtype=float)
        sums = raw.sum(axis=1, keepdims=True)
        if np.any(sums <= 0):
            raise InvalidStochasticMatrixException("Every row needs positive mass to normalize")
        entries = raw / sums
        rows = np.arange(entries.shape[0])
        entries[rows, np.argmax(entries, axis=1)] += 1.0 - entries.sum(axis=1)
        return cls(np.clip(entries, 0.0, 1.0), tuple(labels) if labels is not None else None)

    @classmethod
    def identity(cls, n: int) -> "StochasticMatrix":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]


@dataclass(frozen=True)
class ChainClassification:
    irreducible: bool
    aperiodic: bool
    period_per_state: Tuple[int, ...]

    def __post_init__(self):
        if self.aperiodic != all(period == 1 for period in self.period_per_state):
            raise ValueError("aperiodic must hold exactly when every state has period 1")


@dataclass(frozen=True)
class AgentConditional:
    """
    Pr(next scalar state of one agent | joint current state).

    One row per joint state Y, one column per scalar state of this agent.
    """

    table: np.ndarray

    def __post_init__(self):
        table = _frozen(self.table)
        if table.ndim != 2 or table.size == 0:
            raise DimensionMismatchException(f"Agent conditional must be a non-empty matrix, got shape {table.shape}")
        if np.any(table < 0) or np.any(table > 1):
            raise InvalidStochasticMatrixException("Agent conditional entries must lie in [0,1]")
        worst = float(np.max(np.abs(table.sum(axis=1) - 1.0)))
        if worst > STOCHASTIC_TOL:
            raise InvalidStochasticMatrixException(f"Agent conditional rows deviate from 1 by {worst:.3e}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_marginal(cls, matrix: StochasticMatrix, agent: int, state_counts: Sequence[int]) -> "AgentConditional":
        """
        Conditional of an agent that only looks at its own current state.

        Joint states are enumerated row-major, agent 0 most significant, matching numpy.kron ordering.
        """
        state_counts = tuple(state_counts)
        if matrix.n != state_counts[agent]:
            raise DimensionMismatchException(f"Agent {agent} has {state_counts[agent]} states, matrix has {matrix.n}")
        joint = np.indices(state_counts).reshape(len(state_counts), -1)
        return cls(matrix.entries[joint[agent]])

    @property
    def joint_states(self) -> int:
        return self.table.shape[0]

    @property
    def states(self) -> int:
        return self.table.shape[1]
