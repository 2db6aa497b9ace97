"""
Occupation estimates, stability verdicts and the degree of instability
"""

from collections import Counter
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import entropy

from ..evolution import Population, Request
from .exceptions import InvalidDistributionException, InvalidTrajectoryException
from .labels import MacroStateDistribution, MacroStateLabel, StabilityVerdict, sorted_labels
from .partition import DeviationPartition

DEFAULT_WINDOW = 50
DEFAULT_TOL = 1e-3


def classify(population: Population, request: Request) -> MacroStateLabel:
    """Macro-state of a population: its minimum agent deviation, or EXTINCT when empty"""
    return DeviationPartition().classify(population, request)


def occupation_estimate(observations: Sequence[Tuple[int, MacroStateLabel]]) -> MacroStateDistribution:
    """
    Empirical occupation probabilities from one (generation, label) observation per run.

    Args:
        observations: label of each run at a common generation

    Returns:
        fraction of runs in each label
    """
    if not observations:
        raise InvalidTrajectoryException("At least one run is required")

    generations = {generation for generation, _ in observations}
    if len(generations) != 1:
        raise InvalidTrajectoryException(f"Runs report different generations: {sorted(generations)}")

    counts = Counter(label for _, label in observations)
    runs = len(observations)
    return MacroStateDistribution(generations.pop(), {label: count / runs for label, count in counts.items()})


def distribution_distance(a: MacroStateDistribution, b: MacroStateDistribution) -> float:
    """Total-variation distance over the union of both label sets"""
    labels = set(a.probabilities) | set(b.probabilities)
    return 0.5 * sum(abs(a.probability(label) - b.probability(label)) for label in labels)


def stability_verdict(
    trajectory: Sequence[MacroStateDistribution],
    window: int = DEFAULT_WINDOW,
    tol: float = DEFAULT_TOL,
    universe: Optional[Iterable[MacroStateLabel]] = None,
) -> StabilityVerdict:
    """
    Decide whether the occupation distributions converge to a non-uniform limit.

    Args:
        trajectory: one distribution per generation
        window: trailing generations checked for convergence
        tol: threshold for both the convergence and the non-uniformity test
        universe: extra labels counted as possible macro-states with probability 0

    Returns:
        StabilityVerdict with the final distribution as the limit
    """
    if window < 2:
        raise InvalidTrajectoryException(f"Window must be at least 2, got {window}")
    if len(trajectory) <= window:
        raise InvalidTrajectoryException(f"Trajectory of {len(trajectory)} generations is too short for window {window}")

    tail = trajectory[-(window + 1):]
    max_delta = max(distribution_distance(a, b) for a, b in zip(tail, tail[1:]))

    limit = trajectory[-1]
    labels = set(limit.probabilities) | set(universe or ())
    values = [limit.probability(label) for label in sorted_labels(labels)]
    # A single occurring label still competes with at least one unoccupied macro-state
    values.extend([0.0] * max(0, 2 - len(values)))

    return StabilityVerdict(
        converged=max_delta <= tol,
        nonuniform=max(values) - min(values) > tol,
        limit=limit,
        max_tv_delta_tail=max_delta,
    )


def degree_of_instability(limit: MacroStateDistribution, n: int) -> float:
    """
    Entropy of the limit distribution in base n: δ = −Σ p log_n p.

    Args:
        limit: limit occupation distribution
        n: number of possible macro-states, >= 2

    Returns:
        δ in [0, 1], 0 exactly for a unit mass
    """
    if n < 2:
        raise InvalidDistributionException(f"Entropy base must be at least 2, got {n}")
    support = limit.support()
    if len(support) > n:
        raise InvalidDistributionException(f"Distribution occupies {len(support)} macro-states, more than n={n}")

    probabilities = np.array([limit.probability(label) for label in support])
    # Rounding can push a uniform limit a few ulps past 1
    return min(1.0, max(0.0, float(entropy(probabilities, base=n))))


def ensemble_instability(limit: MacroStateDistribution) -> Tuple[float, int]:
    """
    Degree of instability with n taken as the number of occupied macro-states (at least 2).

    Returns:
        (δ, n)
    """
    occupied = len(limit.support())
    n = max(2, occupied)
    if occupied <= 1:
        return 0.0, n
    return degree_of_instability(limit, n), n
