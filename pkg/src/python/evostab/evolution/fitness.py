"""
Fitness of agents under a request
"""

from functools import lru_cache
from typing import Tuple

from .agent import Agent, Request


@lru_cache(maxsize=1 << 16)
def _deviation(attributes: Tuple[int, ...], required: Tuple[int, ...]) -> int:
    # Each requirement independently takes its nearest attribute; attributes may serve several requirements
    return sum(min(abs(r - a) for a in attributes) for r in required)


def deviation(agent: Agent, request: Request) -> int:
    """
    Total deviation D = Σ_r min_a |r − a| of an agent from a request.

    Args:
        agent: candidate agent
        request: required attributes

    Returns:
        non-negative integer deviation
    """
    return _deviation(agent.attributes, request.required)


def fitness(agent: Agent, request: Request) -> float:
    """Raw fitness 1/(1 + D), in (0, 1] and exactly 1 iff D = 0"""
    return 1.0 / (1.0 + deviation(agent, request))


def parsimony_penalty(size: int, mean_size: float, strength: float) -> float:
    if size <= mean_size:
        return 1.0
    return (mean_size / size) ** strength


def parsimony_fitness(agent: Agent, request: Request, mean_size: float, strength: float) -> float:
    """
    Raw fitness scaled down for agents larger than the population's mean size.

    Args:
        agent: candidate agent
        request: required attributes
        mean_size: current mean agent length, > 0
        strength: exponent of the penalty (mean_size/length)^strength

    Returns:
        penalized fitness in (0, 1]
    """
    if mean_size <= 0:
        raise ValueError(f"Mean size must be positive, got {mean_size}")
    return fitness(agent, request) * parsimony_penalty(len(agent), mean_size, strength)
