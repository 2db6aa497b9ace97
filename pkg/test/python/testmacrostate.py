"""
Macro-state analysis tests
"""

import math

import numpy as np
import pytest

from evostab.evolution import Agent, Population, Request
from evostab.macrostate import (
    EXTINCT,
    M_HALF,
    M_MAX,
    M_TENTH,
    M_TWENTIETH,
    BandedPartition,
    InvalidDistributionException,
    InvalidTrajectoryException,
    MacroStateDistribution,
    MacroStateLabel,
    classify,
    degree_of_instability,
    ensemble_instability,
    level_for_fitness_fraction,
    occupation_estimate,
    stability_verdict,
)

REQUEST = Request((10, 20))


def population(*agents):
    return Population(tuple(Agent(tuple(attributes)) for attributes in agents))


def distribution(generation, **probabilities):
    return MacroStateDistribution(generation, {MacroStateLabel.parse(label.lstrip("d")): p for label, p in probabilities.items()})


def test_classify():
    assert classify(population((10, 20), (50,)), REQUEST) == M_MAX
    assert classify(population((10, 21), (90, 90)), REQUEST) == M_HALF
    assert classify(Population(()), REQUEST) == EXTINCT


def test_classify_permutation_invariant():
    agents = [(10, 25), (3, 20), (60, 61, 62)]
    assert classify(population(*agents), REQUEST) == classify(population(*reversed(agents)), REQUEST)


def test_named_levels():
    assert M_HALF.fitness == 0.5
    assert M_TENTH == level_for_fitness_fraction(10)
    assert M_TWENTIETH.fitness == pytest.approx(1 / 20)
    assert str(EXTINCT) == "EXTINCT"
    assert MacroStateLabel.parse("EXTINCT") == EXTINCT


def test_banded_partition():
    bands = BandedPartition()
    assert bands.label_for(0) == M_MAX
    assert bands.label_for(1) == M_HALF
    assert bands.label_for(5) == MacroStateLabel(2)
    assert bands.label_for(9) == bands.label_for(19) == MacroStateLabel(9)
    assert bands.label_for(250) == MacroStateLabel(20)
    assert bands.classify(Population(()), REQUEST) == EXTINCT


def test_occupation_estimate():
    assert occupation_estimate([(5, M_MAX)] * 3).probability(M_MAX) == 1.0

    estimate = occupation_estimate([(7, M_MAX), (7, M_MAX), (7, M_HALF), (7, MacroStateLabel(3))])
    assert estimate.generation == 7
    assert estimate.probability(M_MAX) == 0.5
    assert estimate.probability(M_HALF) == 0.25
    assert estimate.probability(MacroStateLabel(3)) == 0.25

    single = occupation_estimate([(1, MacroStateLabel(4))])
    assert single.support() == [MacroStateLabel(4)]

    with pytest.raises(InvalidTrajectoryException):
        occupation_estimate([(1, M_MAX), (2, M_MAX)])


def test_occupation_estimate_is_distribution():
    rng = np.random.default_rng(30)
    for _ in range(50):
        labels = [MacroStateLabel(int(d)) for d in rng.integers(0, 6, size=int(rng.integers(1, 40)))]
        estimate = occupation_estimate([(0, label) for label in labels])
        assert sum(estimate.probabilities.values()) == pytest.approx(1.0, abs=1e-9)


def test_distribution_validation():
    with pytest.raises(InvalidDistributionException):
        MacroStateDistribution(0, {M_MAX: 0.5})


def test_stability_constant_unit_mass():
    trajectory = [distribution(t, d0=1.0) for t in range(60)]
    verdict = stability_verdict(trajectory, window=50, tol=1e-3)
    assert verdict.converged and verdict.nonuniform and verdict.stable
    assert verdict.limit == trajectory[-1]


def test_stability_oscillating():
    a = distribution(0, d0=0.6, d1=0.4)
    b = distribution(0, d0=0.4, d1=0.6)
    verdict = stability_verdict([a, b] * 30, window=10, tol=1e-3)
    assert verdict.max_tv_delta_tail == pytest.approx(0.2)
    assert not verdict.converged
    assert not verdict.stable


def test_stability_uniform_limit():
    trajectory = [distribution(t, d0=0.5, d3=0.5) for t in range(20)]
    verdict = stability_verdict(trajectory, window=5, tol=1e-3)
    assert verdict.converged
    assert not verdict.nonuniform
    assert not verdict.stable


def test_stability_eventually_constant():
    head = [distribution(t, d0=0.1 * (t % 3), d5=1 - 0.1 * (t % 3)) for t in range(30)]
    tail = [distribution(t, d0=0.8, d5=0.2) for t in range(30, 50)]
    for tol in (1e-9, 1e-3, 0.5):
        assert stability_verdict(head + tail, window=10, tol=tol).converged


def test_stability_rejects_short():
    with pytest.raises(InvalidTrajectoryException):
        stability_verdict([distribution(0, d0=1.0)] * 5, window=5)
    with pytest.raises(InvalidTrajectoryException):
        stability_verdict([distribution(0, d0=1.0)] * 5, window=1)


def test_degree_of_instability():
    assert degree_of_instability(distribution(0, d0=1.0), 2) == 0.0
    assert degree_of_instability(distribution(0, d0=0.25, d1=0.25, d2=0.25, d3=0.25), 4) == pytest.approx(1.0)
    assert degree_of_instability(distribution(0, d0=0.5, d1=0.5), 4) == pytest.approx(0.5)

    with pytest.raises(InvalidDistributionException):
        degree_of_instability(distribution(0, d0=1.0), 1)


def test_degree_of_instability_uniform_limit():
    five = MacroStateDistribution(0, {MacroStateLabel(i): 0.2 for i in range(5)})
    delta = degree_of_instability(five, 5)
    assert delta <= 1.0
    assert delta == pytest.approx(1.0)

    for n in range(2, 40):
        uniform = MacroStateDistribution(0, {MacroStateLabel(i): 1.0 / n for i in range(n)})
        delta = degree_of_instability(uniform, n)
        assert 0.0 <= delta <= 1.0
        assert delta == pytest.approx(1.0)


def test_degree_of_instability_properties():
    rng = np.random.default_rng(31)
    for _ in range(200):
        n = int(rng.integers(2, 8))
        p = rng.dirichlet(np.ones(n))
        p[np.argmax(p)] += 1.0 - p.sum()
        limit = MacroStateDistribution(0, {MacroStateLabel(i): float(v) for i, v in enumerate(p)})
        delta = degree_of_instability(limit, n)
        assert 0.0 <= delta <= 1.0
        if np.ptp(p) > 1e-6:
            assert delta < 1.0

        # Relabeling leaves δ unchanged
        shuffled = MacroStateDistribution(0, {MacroStateLabel(i): float(v) for i, v in zip(rng.permutation(n), p)})
        assert degree_of_instability(shuffled, n) == pytest.approx(delta, abs=1e-12)

        # Moving mass from a larger to a smaller probability never lowers δ
        i, j = int(np.argmax(p)), int(np.argmin(p))
        if i != j:
            moved = p.copy()
            shift = (p[i] - p[j]) / 4
            moved[i] -= shift
            moved[j] += shift
            spread = MacroStateDistribution(0, {MacroStateLabel(k): float(v) for k, v in enumerate(moved)})
            assert degree_of_instability(spread, n) >= delta - 1e-12


def test_ensemble_instability():
    assert ensemble_instability(distribution(0, d0=1.0)) == (0.0, 2)

    delta, n = ensemble_instability(distribution(0, d0=0.9, d1=0.1))
    assert n == 2
    assert delta == pytest.approx(-(0.9 * math.log2(0.9) + 0.1 * math.log2(0.1)))

    # Zero-probability labels do not count towards N
    delta, n = ensemble_instability(MacroStateDistribution(0, {M_MAX: 0.5, M_HALF: 0.5, MacroStateLabel(4): 0.0}))
    assert n == 2
    assert delta == pytest.approx(1.0)
