"""
Single runs, ensembles and rate sweeps
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..evolution import Population, PopulationExtinctException, deviation, generation_step, init_population
from ..macrostate import (
    EXTINCT,
    M_MAX,
    MacroStateDistribution,
    MacroStateLabel,
    StabilityVerdict,
    ensemble_instability,
    occupation_estimate,
    partition_for,
    stability_verdict,
)
from .config import ExperimentConfig
from .exceptions import ConfigurationException
from .seeding import run_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    max_fitness: float
    mean_fitness: float
    population_size: int
    label: MacroStateLabel


@dataclass
class RunTrajectory:
    run_index: int
    records: List[GenerationRecord] = field(default_factory=list)
    snapshots: Dict[int, Population] = field(default_factory=dict)

    @property
    def labels(self) -> List[MacroStateLabel]:
        return [record.label for record in self.records]

    @property
    def extinct(self) -> bool:
        return bool(self.records) and self.records[-1].label.extinct


@dataclass(frozen=True)
class EnsembleSummary:
    """Limit-proxy statistics of an ensemble: final distribution, stability verdict, δ and its base N"""

    verdict: StabilityVerdict
    delta: float
    n: int

    @property
    def limit(self) -> MacroStateDistribution:
        return self.verdict.limit

    @property
    def p_max(self) -> float:
        return self.limit.probability(M_MAX)


@dataclass(frozen=True)
class SweepCell:
    mutation_rate: float
    crossover_rate: float
    delta: float
    runs: int
    n: int
    stable: bool
    p_max: float


@dataclass
class SweepResult:
    """
    Degree of instability per mutation x crossover cell.

    Every δ lies in [0, 1] with the upper bound inclusive: N counts the occupied labels,
    so an even split over them gives exactly 1.
    """

    mutation_grid: Tuple[float, ...]
    crossover_grid: Tuple[float, ...]
    cells: List[SweepCell] = field(default_factory=list)

    def cell(self, mutation_rate: float, crossover_rate: float) -> SweepCell:
        for cell in self.cells:
            if np.isclose(cell.mutation_rate, mutation_rate) and np.isclose(cell.crossover_rate, crossover_rate):
                return cell
        raise KeyError((mutation_rate, crossover_rate))

    def deltas(self) -> np.ndarray:
        """δ grid indexed [mutation, crossover]"""
        grid = np.zeros((len(self.mutation_grid), len(self.crossover_grid)))
        for cell in self.cells:
            i = int(np.argmin(np.abs(np.asarray(self.mutation_grid) - cell.mutation_rate)))
            j = int(np.argmin(np.abs(np.asarray(self.crossover_grid) - cell.crossover_rate)))
            grid[i, j] = cell.delta
        return grid


def _record(population: Population, request, partition) -> GenerationRecord:
    if not population.agents:
        return GenerationRecord(population.generation, 0.0, 0.0, 0, EXTINCT)

    deviations = np.array([deviation(agent, request) for agent in population.agents])
    fitnesses = 1.0 / (1.0 + deviations)
    return GenerationRecord(
        generation=population.generation,
        max_fitness=float(fitnesses.max()),
        mean_fitness=float(fitnesses.mean()),
        population_size=len(population),
        label=partition.label_for(int(deviations.min())),
    )


def run_single(config: ExperimentConfig, run_index: int, initial: Optional[Population] = None) -> RunTrajectory:
    """
    Evolve one population for config.generations generations.

    Args:
        config: resolved experiment config
        run_index: index of the run; with the master seed it fixes the run's generator
        initial: resume from this population (at its own generation) instead of a fresh random one

    Returns:
        per-generation records up to config.generations, plus checkpoint snapshots
    """
    if not config.resolved:
        raise ConfigurationException("run needs a resolved config with master_seed and request")

    rng = run_generator(config.master_seed, run_index)
    partition = partition_for(config.partition)
    request, params = config.request, config.params

    population = initial if initial is not None else init_population(params, rng)
    if not population.agents or population.generation > config.generations:
        raise ConfigurationException(f"cannot resume from generation {population.generation} with {len(population)} agents", "generations")
    initial_mean_size = population.mean_size
    trajectory = RunTrajectory(run_index)
    checkpoints = set(config.checkpoints)

    def observe(current: Population):
        trajectory.records.append(_record(current, request, partition))
        if current.generation in checkpoints:
            trajectory.snapshots[current.generation] = current

    observe(population)
    for generation in range(population.generation + 1, config.generations + 1):
        try:
            population = generation_step(population, request, params, initial_mean_size, rng)
        except PopulationExtinctException:
            logger.info("Run %d went extinct at generation %d", run_index, generation)
            for dead in range(generation, config.generations + 1):
                observe(Population((), dead))
            break
        observe(population)

    return trajectory


def _run_labels(config: ExperimentConfig, run_index: int) -> List[MacroStateLabel]:
    return run_single(config, run_index).labels


def run_ensemble(config: ExperimentConfig) -> List[MacroStateDistribution]:
    """
    Occupation distributions of config.runs independent runs, one per generation.

    Runs may execute in worker processes; results are reduced in ascending run order.
    """
    if not config.resolved:
        raise ConfigurationException("ensemble needs a resolved config with master_seed and request")

    indices = range(config.runs)
    logger.info("Running ensemble of %d runs x %d generations on %d worker(s)", config.runs, config.generations, config.workers)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            chunksize = max(1, config.runs // (4 * config.workers))
            labels = list(executor.map(_run_labels, [config] * config.runs, indices, chunksize=chunksize))
    else:
        labels = [_run_labels(config, index) for index in indices]

    return [occupation_estimate([(generation, run[generation]) for run in labels]) for generation in range(config.generations + 1)]


def summarize_ensemble(distributions: Sequence[MacroStateDistribution], config: ExperimentConfig) -> EnsembleSummary:
    """Stability verdict and δ of the final-generation distribution"""
    window = min(config.window, len(distributions) - 1)
    if window < 2:
        raise ConfigurationException(f"at least 3 generations are needed for a stability verdict, got {len(distributions)}", "generations")
    verdict = stability_verdict(distributions, window, config.tol)
    delta, n = ensemble_instability(verdict.limit)
    return EnsembleSummary(verdict, delta, n)


def parse_grid(text: str) -> Tuple[float, ...]:
    """
    Grid from start:stop:step, endpoints inclusive, or a comma-separated list.

    Args:
        text: e.g. "0:1:0.1" or "0,0.5,1"

    Returns:
        rates rounded to 10 decimals
    """
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0:
                raise ValueError("step must be positive")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            values = tuple(round(start + i * step, 10) for i in range(max(count, 0)))
        else:
            values = tuple(round(float(part), 10) for part in text.split(","))
    except ValueError as e:
        raise ConfigurationException(f"bad grid {text!r}: {e}", "grid") from None
    return validate_grid(values)


def validate_grid(values: Sequence[float], key: str = "grid") -> Tuple[float, ...]:
    values = tuple(float(value) for value in values)
    if not values:
        raise ConfigurationException("grid is empty", key)
    for value in values:
        if not 0.0 <= value <= 1.0:
            raise ConfigurationException(f"rate {value} outside [0, 1]", key)
    return values


def sweep(config: ExperimentConfig, mutation_grid: Sequence[float], crossover_grid: Sequence[float]) -> SweepResult:
    """
    Degree of instability over a mutation x crossover rate grid.

    Every cell runs a full ensemble with the same seeds and request and takes its final generation as the limit proxy.
    """
    if not config.resolved:
        raise ConfigurationException("sweep needs a resolved config with master_seed and request")

    result = SweepResult(validate_grid(mutation_grid, "mutation"), validate_grid(crossover_grid, "crossover"))
    for mutation_rate in result.mutation_grid:
        for crossover_rate in result.crossover_grid:
            distributions = run_ensemble(config.with_rates(mutation_rate, crossover_rate))
            summary = summarize_ensemble(distributions, config)
            result.cells.append(
                SweepCell(mutation_rate, crossover_rate, summary.delta, config.runs, summary.n, summary.verdict.stable, summary.p_max)
            )
            logger.info("Sweep cell mutation=%.2f crossover=%.2f: delta=%.4f N=%d", mutation_rate, crossover_rate, summary.delta, summary.n)
    return result
