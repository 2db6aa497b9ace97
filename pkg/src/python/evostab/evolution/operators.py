"""
Selection and variation operators
"""

from enum import Enum
from typing import List, Tuple

import numpy as np

from .agent import ATTR_HI, ATTR_LO, Agent, Population, Request
from .exceptions import PopulationExtinctException
from .fitness import deviation, parsimony_penalty


class MutationKind(Enum):
    INSERT = "insert"
    REPLACE = "replace"
    DELETE = "delete"


MUTATION_KINDS = (MutationKind.INSERT, MutationKind.REPLACE, MutationKind.DELETE)


def parsimony_weights(population: Population, request: Request, strength: float) -> np.ndarray:
    """Parsimony-adjusted fitness of every agent, in population order"""
    mean_size = population.mean_size
    return np.array(
        [parsimony_penalty(len(agent), mean_size, strength) / (1.0 + deviation(agent, request)) for agent in population.agents]
    )


def select(population: Population, request: Request, target_size: int, rng: np.random.Generator, strength: float = 1.0) -> Population:
    """
    Fitness-proportional, non-elitist selection with replacement.

    Args:
        population: current population
        request: required attributes
        target_size: number of survivors to draw, >= 1
        rng: random generator
        strength: parsimony strength

    Returns:
        population of target_size drawn agents

    Raises:
        PopulationExtinctException: population is empty
    """
    if target_size < 1:
        raise ValueError(f"Target size must be at least 1, got {target_size}")
    if not population.agents:
        raise PopulationExtinctException(population.generation)

    weights = parsimony_weights(population, request, strength)
    picks = rng.choice(len(population), size=target_size, replace=True, p=weights / weights.sum())
    agents = population.agents
    return population.replace([agents[i] for i in picks])


def quota(rate: float, n: int) -> int:
    """Exact number of agents a rate applies to, rounding halves up"""
    return min(n, int(np.floor(rate * n + 0.5)))


def crossover_pair(first: Agent, second: Agent, first_cut: int, second_cut: int) -> Tuple[Agent, Agent]:
    """
    Variable-length single-point crossover: the tails after each cut point are swapped.

    An empty offspring keeps the first attribute of the longer parent.
    """
    head_a, tail_a = first.attributes[:first_cut], first.attributes[first_cut:]
    head_b, tail_b = second.attributes[:second_cut], second.attributes[second_cut:]

    longer = first if len(first) >= len(second) else second
    children = []
    for attributes in (head_a + tail_b, head_b + tail_a):
        children.append(Agent(attributes if attributes else longer.attributes[:1]))
    return children[0], children[1]


def crossover_step(population: Population, rate: float, rng: np.random.Generator) -> Population:
    """
    Recombine a randomly chosen share of the population.

    round(rate * n) agents are chosen without replacement and paired in draw order; an odd leftover
    stays unchanged. Offspring replace their parents.
    """
    count = quota(rate, len(population))
    if count < 2:
        return population

    agents: List[Agent] = list(population.agents)
    chosen = rng.choice(len(agents), size=count, replace=False)
    for i, j in zip(chosen[0::2], chosen[1::2]):
        first, second = agents[i], agents[j]
        first_cut = int(rng.integers(0, len(first) + 1))
        second_cut = int(rng.integers(0, len(second) + 1))
        agents[i], agents[j] = crossover_pair(first, second, first_cut, second_cut)
    return population.replace(agents)


def point_mutation(agent: Agent, kind: MutationKind, position: int, value: int) -> Agent:
    """
    Apply one point mutation.

    Insert places value before position (0..len); replace overwrites position; delete removes it.
    """
    attributes = list(agent.attributes)
    if kind is MutationKind.INSERT:
        attributes.insert(position, value)
    elif kind is MutationKind.REPLACE:
        attributes[position] = value
    else:
        del attributes[position]
    return Agent(tuple(attributes))


def mutate_agent(agent: Agent, rng: np.random.Generator, lo: int = ATTR_LO, hi: int = ATTR_HI) -> Agent:
    kind = MUTATION_KINDS[int(rng.integers(0, len(MUTATION_KINDS)))]
    # Agents never shrink below one attribute
    if kind is MutationKind.DELETE and len(agent) == 1:
        kind = MutationKind.REPLACE

    if kind is MutationKind.INSERT:
        position = int(rng.integers(0, len(agent) + 1))
    else:
        position = int(rng.integers(0, len(agent)))
    value = int(rng.integers(lo, hi + 1))
    return point_mutation(agent, kind, position, value)


def mutate_step(population: Population, rate: float, rng: np.random.Generator, lo: int = ATTR_LO, hi: int = ATTR_HI) -> Population:
    """Give exactly one point mutation to each of round(rate * n) agents chosen without replacement"""
    count = quota(rate, len(population))
    if count == 0:
        return population

    agents = list(population.agents)
    for i in rng.choice(len(agents), size=count, replace=False):
        agents[i] = mutate_agent(agents[i], rng, lo, hi)
    return population.replace(agents)
