"""
Result files: CSV tables, config echo, population snapshots and the population pixmap
"""

import csv
import logging
import os
from contextlib import contextmanager
from typing import List, Sequence

import numpy as np
from PIL import Image

from ..evolution import ATTR_HI, ATTR_LO, Population, Request, fitness, save_population
from ..macrostate import MacroStateDistribution, sorted_labels
from .config import ExperimentConfig
from .exceptions import ExperimentException, OutputException
from .runner import RunTrajectory, SweepResult

logger = logging.getLogger(__name__)

# Cells past the end of a shorter agent
PAD_COLOUR = (128, 0, 0)


@contextmanager
def _writing(path: str, newline: str = ""):
    try:
        with open(path, "w", encoding="utf-8", newline=newline) as f:
            yield f
    except OSError as e:
        raise OutputException(path, e.strerror or str(e)) from e
    logger.debug("Wrote %s", path)


def emit_fitness_curves(trajectory: RunTrajectory, path: str):
    """Columns generation, max_fitness, mean_fitness, population_size; one row per recorded generation"""
    with _writing(path) as f:
        writer = csv.writer(f)
        writer.writerow(["generation", "max_fitness", "mean_fitness", "population_size"])
        for record in trajectory.records:
            writer.writerow([record.generation, repr(record.max_fitness), repr(record.mean_fitness), record.population_size])


def emit_macrostate_trajectory(distributions: Sequence[MacroStateDistribution], path: str):
    """
    Columns generation, label, probability.

    Every label occupied at any generation gets a row at every generation, zero when unoccupied.
    """
    universe = sorted_labels(label for distribution in distributions for label in distribution.support())
    with _writing(path) as f:
        writer = csv.writer(f)
        writer.writerow(["generation", "label", "probability"])
        for distribution in distributions:
            for label in universe:
                writer.writerow([distribution.generation, str(label), repr(distribution.probability(label))])


def emit_sweep(result: SweepResult, path: str):
    with _writing(path) as f:
        writer = csv.writer(f)
        writer.writerow(["mutation_rate", "crossover_rate", "delta", "runs", "N"])
        for cell in result.cells:
            writer.writerow([cell.mutation_rate, cell.crossover_rate, repr(cell.delta), cell.runs, cell.n])


def emit_config(config: ExperimentConfig, path: str):
    """Resolved config echo, loadable with load_config"""
    with _writing(path, newline=None) as f:
        f.write(f"# config hash {config.config_hash()}\n")
        f.write(config.dumps())


def emit_population(population: Population, path: str, config_hash: str = ""):
    try:
        save_population(population, path, config_hash)
    except OSError as e:
        raise OutputException(path, e.strerror or str(e)) from e


def grouped_agents(population: Population, request: Request) -> List:
    """Agents ordered by descending raw fitness, then attributes, so identical agents sit together"""
    return sorted(population.agents, key=lambda agent: (-fitness(agent, request), agent.attributes))


def population_pixels(population: Population, request: Request, cell: int = 1) -> np.ndarray:
    """
    RGB grid with one row per agent and one cell per attribute.

    Attribute values map to grey levels, ATTR_LO darkest and ATTR_HI lightest.
    """
    if not population.agents:
        raise ExperimentException("Cannot visualize an empty population")

    agents = grouped_agents(population, request)
    width = max(len(agent) for agent in agents)
    pixels = np.empty((len(agents), width, 3), dtype=np.uint8)
    pixels[:, :] = PAD_COLOUR
    for row, agent in enumerate(agents):
        values = np.asarray(agent.attributes, dtype=float)
        shades = np.rint(255.0 * (values - ATTR_LO) / (ATTR_HI - ATTR_LO)).astype(np.uint8)
        pixels[row, : len(agent)] = shades[:, None]

    if cell > 1:
        pixels = np.repeat(np.repeat(pixels, cell, axis=0), cell, axis=1)
    return pixels


def visualize_population(population: Population, request: Request, path: str, cell: int = 1):
    """Write the population as a portable pixmap (binary PPM)"""
    pixels = population_pixels(population, request, cell)
    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        Image.fromarray(pixels, "RGB").save(path, format="PPM")
    except OSError as e:
        raise OutputException(path, e.strerror or str(e)) from e
    logger.debug("Wrote %s", path)
