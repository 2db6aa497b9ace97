from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

from ..evolution import Population, Request, deviation
from .exceptions import MacroStateException
from .labels import EXTINCT, MacroStateLabel


def best_deviation(population: Population, request: Request) -> Optional[int]:
    """Minimum deviation over the population's agents, None when it is empty"""
    if not population.agents:
        return None
    return min(deviation(agent, request) for agent in population.agents)


class MacroStatePartition(ABC):
    """Groups population states into macro-states keyed by their best agent"""

    name = ""

    @abstractmethod
    def label_for(self, deviation_value: int) -> MacroStateLabel:
        """Macro-state of a population whose best agent has the given deviation"""
        pass

    def classify(self, population: Population, request: Request) -> MacroStateLabel:
        best = best_deviation(population, request)
        return EXTINCT if best is None else self.label_for(best)


class DeviationPartition(MacroStatePartition):
    """One macro-state per exact best deviation"""

    name = "deviation"

    def label_for(self, deviation_value: int) -> MacroStateLabel:
        return MacroStateLabel(deviation_value)


class BandedPartition(MacroStatePartition):
    """
    Macro-states are bands of best deviation, labeled by the band's lowest deviation.

    Args:
        upper_bounds: increasing inclusive upper deviation of each band; one open-ended band follows the last.
                      The default yields M_max {0}, M_half {1}, 2..8, M_tenth..M_twentieth 9..19 and 20 upward.
    """

    name = "banded"

    def __init__(self, upper_bounds: Sequence[int] = (0, 1, 8, 19)):
        bounds = tuple(int(bound) for bound in upper_bounds)
        if not bounds or bounds[0] < 0 or any(b <= a for a, b in zip(bounds, bounds[1:])):
            raise MacroStateException(f"Band bounds must be non-negative and strictly increasing, got {upper_bounds}")
        self.upper_bounds: Tuple[int, ...] = bounds
        self.floors: Tuple[int, ...] = (0,) + tuple(bound + 1 for bound in bounds)

    def label_for(self, deviation_value: int) -> MacroStateLabel:
        for floor, bound in zip(self.floors, self.upper_bounds):
            if deviation_value <= bound:
                return MacroStateLabel(floor)
        return MacroStateLabel(self.floors[-1])


PARTITIONS = {DeviationPartition.name: DeviationPartition, BandedPartition.name: BandedPartition}


def partition_for(name: str) -> MacroStatePartition:
    try:
        return PARTITIONS[name]()
    except KeyError:
        raise MacroStateException(f"Unknown macro-state partition: {name}") from None
