"""
Population initialisation and the single-generation step
"""

import numpy as np

from .agent import Agent, EvolutionParams, Population, Request
from .exceptions import PopulationExtinctException
from .operators import crossover_step, mutate_step, select


def target_population_size(population: Population, params: EvolutionParams, initial_mean_size: float) -> int:
    """
    Dynamic population size, growing linearly with the mean agent size.

    Args:
        population: current, non-empty population
        params: evolution parameters
        initial_mean_size: mean agent size of the initial population

    Returns:
        round(base_population * mean_size / initial_mean_size) clamped to size_bounds
    """
    if not population.agents:
        raise PopulationExtinctException(population.generation)

    low, high = params.size_bounds
    target = int(round(params.base_population * population.mean_size / initial_mean_size))
    return max(low, min(high, target))


def init_population(params: EvolutionParams, rng: np.random.Generator) -> Population:
    """base_population agents with uniform lengths and uniform attribute values"""
    lengths = rng.integers(params.init_attr_min, params.init_attr_max + 1, size=params.base_population)
    agents = [Agent(tuple(int(value) for value in rng.integers(params.attr_lo, params.attr_hi + 1, size=length))) for length in lengths]
    return Population(tuple(agents), 0)


def generation_step(
    population: Population, request: Request, params: EvolutionParams, initial_mean_size: float, rng: np.random.Generator
) -> Population:
    """
    One sample of the evolutionary transition kernel: select, crossover, mutate.

    Args:
        population: current population
        request: required attributes
        params: evolution parameters
        initial_mean_size: mean agent size at generation 0
        rng: random generator, the only source of randomness

    Returns:
        successor population with the generation counter advanced by one

    Raises:
        PopulationExtinctException: population is empty
    """
    size = target_population_size(population, params, initial_mean_size)
    survivors = select(population, request, size, rng, params.parsimony_strength)
    survivors = crossover_step(survivors, params.crossover_rate, rng)
    survivors = mutate_step(survivors, params.mutation_rate, rng, params.attr_lo, params.attr_hi)
    return Population(survivors.agents, population.generation + 1)
