"""
Experiment harness imports
"""


from .base import ExperimentManager  # type: ignore
from .catalog import CatalogEntry, ExperimentCatalog
from .config import DEFAULT_RUNS, FULL_RUNS, ExperimentConfig, from_mapping, load_config
from .exceptions import ConfigurationException, ExperimentException, OutputException
from .outputs import emit_config, emit_fitness_curves, emit_macrostate_trajectory, emit_sweep, population_pixels, visualize_population
from .runner import (
    EnsembleSummary,
    GenerationRecord,
    RunTrajectory,
    SweepCell,
    SweepResult,
    parse_grid,
    run_ensemble,
    run_single,
    summarize_ensemble,
    sweep,
)
from .seeding import run_generator, run_seed, splitmix64_mix
