"""
Finite discrete-time Markov chain operations
"""

import logging
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .exceptions import DimensionMismatchException, NonConvergenceException, StateSpaceTooLargeException
from .types import AgentConditional, ChainClassification, Measure, StochasticMatrix

logger = logging.getLogger(__name__)

# Matrices derived by multiplication are accepted with this row-sum slack
DERIVED_TOL = 1e-10

POWER_ITERATION_CAP = 10**6
DIRECT_SOLVE_MAX_STATES = 64
JOINT_STATE_CAP = 4096
CONFIRMATION_STEPS = 3


def _check_dimension(measure: Measure, matrix: StochasticMatrix):
    if measure.n != matrix.n:
        raise DimensionMismatchException(f"Measure has {measure.n} states, matrix has {matrix.n}")


def _derived(entries: np.ndarray, labels) -> StochasticMatrix:
    return StochasticMatrix(np.clip(entries, 0.0, 1.0), labels, tol=DERIVED_TOL)


def total_variation(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


def propagate(measure: Measure, matrix: StochasticMatrix) -> Measure:
    """
    One step of the chain: (λP)_j = Σ_i λ_i p_ij.

    Args:
        measure: λ over the states of matrix
        matrix: transition matrix P

    Returns:
        λP, a distribution whenever λ is one
    """
    _check_dimension(measure, matrix)
    weights = np.clip(measure.weights @ matrix.entries, 0.0, None)
    if measure.distribution:
        return Measure.normalized(weights)
    return Measure(weights)


def n_step(matrix: StochasticMatrix, t: int) -> StochasticMatrix:
    """P^t, with P^0 the identity"""
    if t < 0:
        raise ValueError(f"Step count must be non-negative, got {t}")
    return _derived(np.linalg.matrix_power(matrix.entries, t), matrix.labels)


def path_probability(measure: Measure, matrix: StochasticMatrix, path: Sequence[int]) -> float:
    """Probability λ_{i0} p_{i0 i1} ... p_{i(t-1) it} of observing the given state path"""
    _check_dimension(measure, matrix)
    path = list(path)
    if not path:
        raise ValueError("Path must contain at least one state")
    if min(path) < 0 or max(path) >= matrix.n:
        raise DimensionMismatchException(f"Path states must lie in 0..{matrix.n - 1}")

    probability = measure[path[0]]
    for source, target in zip(path, path[1:]):
        probability *= float(matrix.entries[source, target])
    return probability


def solve_invariant_distribution(matrix: StochasticMatrix) -> Measure:
    """
    Direct dense solve of πP = π, Σπ = 1.

    For reducible chains the least-squares answer is one of many invariant distributions.
    """
    n = matrix.n
    system = np.vstack([matrix.entries.T - np.eye(n), np.ones((1, n))])
    target = np.zeros(n + 1)
    target[-1] = 1.0
    solution, *_ = np.linalg.lstsq(system, target, rcond=None)
    return Measure.normalized(np.clip(solution, 0.0, None))


def invariant_distribution(matrix: StochasticMatrix, tol: float = 1e-12, max_iterations: int = POWER_ITERATION_CAP) -> Measure:
    """
    Invariant distribution π with ‖πP − π‖₁ ≤ tol.

    Power iteration runs on the lazy chain (P + I)/2 from the uniform distribution. The lazy chain
    has the same invariant distributions as P and is aperiodic, so periodic chains converge as well.

    Args:
        matrix: transition matrix P
        tol: L1 residual accepted against P
        max_iterations: iteration cap

    Returns:
        invariant distribution

    Raises:
        NonConvergenceException: residual still above tol after max_iterations
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")

    entries = matrix.entries
    lazy = 0.5 * (entries + np.eye(matrix.n))
    current = np.full(matrix.n, 1.0 / matrix.n)

    residual = float(np.abs(current @ entries - current).sum())
    iterations = 0
    while residual > tol:
        if iterations >= max_iterations:
            logger.warning("Power iteration stopped after %d steps with residual %.3e", iterations, residual)
            raise NonConvergenceException(
                f"Power iteration did not reach residual {tol} in {max_iterations} steps",
                last_iterate=Measure.normalized(current),
                residual=residual,
                iterations=iterations,
            )
        current = current @ lazy
        current /= current.sum()
        residual = float(np.abs(current @ entries - current).sum())
        iterations += 1

    result = Measure.normalized(current)
    if matrix.n <= DIRECT_SOLVE_MAX_STATES:
        direct = solve_invariant_distribution(matrix)
        gap = float(np.abs(direct.weights - result.weights).max())
        if gap > np.sqrt(tol):
            logger.debug("Direct solve differs from power iteration by %.3e; invariant distribution may not be unique", gap)

    return result


def _state_periods(adjacency: csr_matrix, components: np.ndarray) -> List[int]:
    n = adjacency.shape[0]
    periods = [1] * n
    for component in np.unique(components):
        members = np.flatnonzero(components == component)
        sub = adjacency[members][:, members]

        # Breadth-first levels from one root; every edge u->v inside the component closes a cycle
        # whose length is a multiple of the period, so the period is gcd(level[u] + 1 - level[v])
        order, predecessors = breadth_first_order(sub, 0, directed=True, return_predecessors=True)
        level = np.zeros(len(members), dtype=int)
        for node in order[1:]:
            level[node] = level[predecessors[node]] + 1

        period = 0
        rows, cols = sub.nonzero()
        for u, v in zip(rows, cols):
            period = gcd(period, int(level[u] + 1 - level[v]))

        # A state on no cycle is visited at most once; it is counted as aperiodic
        for member in members:
            periods[member] = period if period > 0 else 1
    return periods


def classify(matrix: StochasticMatrix) -> ChainClassification:
    """Irreducibility and per-state periods of the chain's transition graph"""
    adjacency = csr_matrix((matrix.entries > 0).astype(np.int8))
    count, components = connected_components(adjacency, directed=True, connection="strong")
    periods = _state_periods(adjacency, components)
    return ChainClassification(
        irreducible=count == 1,
        aperiodic=all(period == 1 for period in periods),
        period_per_state=tuple(periods),
    )


def equilibrium_limit(measure: Measure, matrix: StochasticMatrix, tol: float = 1e-12, horizon: int = 100000) -> Tuple[Measure, bool]:
    """
    Iterate λ ↦ λP until successive iterates stay within tol in total variation for three consecutive steps.

    Args:
        measure: starting distribution λ
        matrix: transition matrix P
        tol: total-variation threshold
        horizon: maximum number of steps

    Returns:
        (last iterate, converged)
    """
    _check_dimension(measure, matrix)
    current = measure
    calm = 0
    for _ in range(horizon):
        following = propagate(current, matrix)
        calm = calm + 1 if total_variation(following.weights, current.weights) <= tol else 0
        current = following
        if calm >= CONFIRMATION_STEPS:
            return current, True
    return current, False


def joint_transition(conditionals: Sequence[AgentConditional], cap: int = JOINT_STATE_CAP) -> StochasticMatrix:
    """
    Joint transition matrix of agents whose next states are independent given the joint current state.

    Pr(X | Y) = Π_i Pr(X_i | Y), with joint states enumerated row-major, agent 0 most significant.

    Args:
        conditionals: one conditional table per agent, all over the same joint enumeration
        cap: largest joint state space accepted

    Returns:
        joint StochasticMatrix
    """
    if not conditionals:
        raise ValueError("At least one agent conditional is required")

    size = int(np.prod([conditional.states for conditional in conditionals], dtype=object))
    if size > cap:
        raise StateSpaceTooLargeException(size, cap)

    for index, conditional in enumerate(conditionals):
        if conditional.joint_states != size:
            raise DimensionMismatchException(f"Conditional {index} has {conditional.joint_states} rows, joint state space has {size}")

    joint = conditionals[0].table
    for conditional in conditionals[1:]:
        joint = (joint[:, :, None] * conditional.table[:, None, :]).reshape(size, -1)

    return _derived(joint, None)
