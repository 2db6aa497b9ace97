"""
Evolution engine imports
"""


from .agent import ATTR_HI, ATTR_LO, Agent, EvolutionParams, Population, Request
from .engine import generation_step, init_population, target_population_size
from .exceptions import EvolutionException, InvalidAgentException, InvalidParamsException, PopulationExtinctException
from .fitness import deviation, fitness, parsimony_fitness
from .operators import MutationKind, crossover_pair, crossover_step, mutate_agent, mutate_step, point_mutation, quota, select
from .snapshot import dumps_population, load_population, loads_population, save_population
