"""
Macro-state labels, occupation distributions and stability verdicts
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .exceptions import InvalidDistributionException

DISTRIBUTION_TOL = 1e-9

EXTINCT_TEXT = "EXTINCT"


@dataclass(frozen=True)
class MacroStateLabel:
    """
    Best (minimum) agent deviation of a population; None marks the extinct population.

    The label's fitness level is 1/(1 + best_deviation).
    """

    best_deviation: Optional[int]

    def __post_init__(self):
        if self.best_deviation is not None and self.best_deviation < 0:
            raise InvalidDistributionException(f"Best deviation must be non-negative, got {self.best_deviation}")

    @property
    def extinct(self) -> bool:
        return self.best_deviation is None

    @property
    def fitness(self) -> float:
        return 0.0 if self.extinct else 1.0 / (1.0 + self.best_deviation)

    def sort_key(self) -> Tuple[int, int]:
        return (1, 0) if self.extinct else (0, self.best_deviation)

    def __str__(self) -> str:
        return EXTINCT_TEXT if self.extinct else str(self.best_deviation)

    @classmethod
    def parse(cls, text: str) -> "MacroStateLabel":
        text = text.strip()
        if text == EXTINCT_TEXT:
            return EXTINCT
        try:
            return cls(int(text))
        except ValueError as e:
            raise InvalidDistributionException(f"Bad macro-state label: {text!r}") from e


EXTINCT = MacroStateLabel(None)
M_MAX = MacroStateLabel(0)
M_HALF = MacroStateLabel(1)
M_TENTH = MacroStateLabel(9)
M_TWENTIETH = MacroStateLabel(19)


def level_for_fitness_fraction(denominator: int) -> MacroStateLabel:
    """Label whose best fitness is 1/denominator of the global maximum"""
    if denominator < 1:
        raise InvalidDistributionException(f"Fitness fraction denominator must be >= 1, got {denominator}")
    return MacroStateLabel(denominator - 1)


def sorted_labels(labels: Iterable[MacroStateLabel]) -> List[MacroStateLabel]:
    return sorted(set(labels), key=MacroStateLabel.sort_key)


@dataclass(frozen=True)
class MacroStateDistribution:
    """Occupation probabilities p_M^t over macro-state labels at one generation"""

    generation: int
    probabilities: Mapping[MacroStateLabel, float] = field(default_factory=dict)

    def __post_init__(self):
        probabilities: Dict[MacroStateLabel, float] = {label: float(self.probabilities[label]) for label in sorted_labels(self.probabilities)}
        for label, probability in probabilities.items():
            if not 0.0 <= probability <= 1.0:
                raise InvalidDistributionException(f"Probability of {label} is {probability}, outside [0, 1]")
        total = sum(probabilities.values())
        if abs(total - 1.0) > DISTRIBUTION_TOL:
            raise InvalidDistributionException(f"Macro-state probabilities sum to {total}, expected 1")
        object.__setattr__(self, "probabilities", probabilities)

    def probability(self, label: MacroStateLabel) -> float:
        return self.probabilities.get(label, 0.0)

    def support(self) -> List[MacroStateLabel]:
        return [label for label, probability in self.probabilities.items() if probability > 0.0]

    def labels(self) -> List[MacroStateLabel]:
        return list(self.probabilities)


@dataclass(frozen=True)
class StabilityVerdict:
    converged: bool
    nonuniform: bool
    limit: MacroStateDistribution
    max_tv_delta_tail: float

    @property
    def stable(self) -> bool:
        return self.converged and self.nonuniform
