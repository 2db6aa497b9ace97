"""
Full-scale ensemble experiments, deselected by default: run with pytest -m slow
"""

from collections import Counter
from dataclasses import replace

import numpy as np
import pytest

from evostab.evolution import init_population
from evostab.macrostate import M_HALF, M_MAX, best_deviation
from evostab.manager import (
    ExperimentConfig,
    population_pixels,
    run_ensemble,
    run_generator,
    run_single,
    summarize_ensemble,
    sweep,
    visualize_population,
)

pytestmark = pytest.mark.slow

WORKERS = 4


@pytest.fixture(scope="module")
def default_ensemble():
    config = ExperimentConfig(master_seed=20240101, workers=WORKERS).resolve()
    distributions = run_ensemble(config)
    return config, distributions, summarize_ensemble(distributions, config)


def test_eventual_optimality(default_ensemble):
    _, distributions, summary = default_ensemble
    assert distributions[-1].probability(M_MAX) >= 0.98
    assert summary.p_max >= 0.98


def test_transient_half_state(default_ensemble):
    _, distributions, _ = default_ensemble
    p_max = np.array([distribution.probability(M_MAX) for distribution in distributions])
    p_half = np.array([distribution.probability(M_HALF) for distribution in distributions])

    majority = int(np.argmax(p_max > 0.5))
    assert p_max[majority] > 0.5
    assert p_half[:majority].max() > 0.0
    assert p_half[-1] == 0.0


def test_zero_instability_at_defaults(default_ensemble):
    _, _, summary = default_ensemble
    assert summary.delta == 0.0


def test_sweep_trend_smoke():
    config = ExperimentConfig(master_seed=11, workers=WORKERS).resolve()
    crossover = (0.0, 0.5, 1.0)
    result = sweep(config, (0.3, 0.6, 0.7, 0.8, 0.9, 1.0), crossover)

    for rate in crossover:
        assert result.cell(0.3, rate).delta == 0.0
        assert result.cell(0.6, rate).delta == 0.0
        unstable = result.cell(0.7, rate).delta
        assert 0.0 < unstable < 0.35
        for mutation in (0.8, 0.9, 1.0):
            assert result.cell(mutation, rate).delta > unstable


@pytest.mark.parametrize("crossover", [0.0, 0.5, 1.0])
def test_zero_mutation_stability(crossover):
    config = ExperimentConfig(master_seed=5, workers=WORKERS, partition="banded").resolve().with_rates(0.0, crossover)

    # The exact match must be absent from every initial population
    for index in range(config.runs):
        assert best_deviation(init_population(config.params, run_generator(config.master_seed, index)), config.request) > 0

    distributions = run_ensemble(config)
    summary = summarize_ensemble(distributions, config)
    assert summary.delta == 0.0
    assert summary.p_max < 0.05


def test_halving_runs_keeps_p_max(default_ensemble):
    config, distributions, _ = default_ensemble
    half = run_ensemble(replace(config, runs=config.runs // 2))
    gap = abs(distributions[-1].probability(M_MAX) - half[-1].probability(M_MAX))
    assert gap <= 3 / (2 * np.sqrt(config.runs))


def test_final_population_mostly_one_genotype(tmp_path):
    config = ExperimentConfig(master_seed=20240101, checkpoints=(1000,)).resolve()
    population = run_single(config, 0).snapshots[1000]

    counts = Counter(agent.attributes for agent in population)
    dominant = counts.most_common(1)[0][1]
    assert len(population) / 2 < dominant < len(population)

    path = str(tmp_path / "population_1000.ppm")
    visualize_population(population, config.request, path)
    rows = population_pixels(population, config.request)
    assert not np.all(rows == rows[0])
