"""
Agents, requests, populations and evolution parameters
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

from .exceptions import InvalidAgentException, InvalidParamsException

ATTR_LO = 1
ATTR_HI = 100


def _attributes(values: Sequence[int], kind: str, lo: int = ATTR_LO, hi: int = ATTR_HI) -> Tuple[int, ...]:
    values = tuple(int(value) for value in values)
    if not values:
        raise InvalidAgentException(f"{kind} needs at least one attribute")
    for value in values:
        if not lo <= value <= hi:
            raise InvalidAgentException(f"{kind} attribute {value} outside [{lo}, {hi}]")
    return values


@dataclass(frozen=True, order=True)
class Agent:
    """A variable-length sequence of integer attributes"""

    attributes: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "attributes", _attributes(self.attributes, "Agent"))

    def __len__(self) -> int:
        return len(self.attributes)

    def __iter__(self):
        return iter(self.attributes)


@dataclass(frozen=True)
class Request:
    """Required attributes inducing the selection pressure"""

    required: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "required", _attributes(self.required, "Request"))

    def __len__(self) -> int:
        return len(self.required)

    def __iter__(self):
        return iter(self.required)


@dataclass(frozen=True)
class Population:
    agents: Tuple[Agent, ...]
    generation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        if self.generation < 0:
            raise InvalidParamsException(f"Generation must be non-negative, got {self.generation}")

    def __len__(self) -> int:
        return len(self.agents)

    def __iter__(self):
        return iter(self.agents)

    @property
    def mean_size(self) -> float:
        if not self.agents:
            return 0.0
        return sum(len(agent) for agent in self.agents) / len(self.agents)

    def genotypes(self) -> set:
        return {agent.attributes for agent in self.agents}

    def replace(self, agents: Sequence[Agent]) -> "Population":
        """Same generation, new agents"""
        return Population(tuple(agents), self.generation)


@dataclass(frozen=True)
class EvolutionParams:
    """
    Parameters of the evolutionary process.

    Defaults follow the reference setup: 10% crossover and mutation of the surviving population,
    300 initial agents of three to six attributes each, attributes in [1, 100].
    """

    mutation_rate: float = 0.1
    crossover_rate: float = 0.1
    base_population: int = 300
    init_attr_min: int = 3
    init_attr_max: int = 6
    attr_lo: int = ATTR_LO
    attr_hi: int = ATTR_HI
    parsimony_strength: float = 1.0
    size_bounds: Tuple[int, int] = field(default=(10, 3000))

    def __post_init__(self):
        object.__setattr__(self, "size_bounds", tuple(int(bound) for bound in self.size_bounds))
        self.validate()

    def validate(self) -> bool:
        for name in ("mutation_rate", "crossover_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise InvalidParamsException(f"{name} must lie in [0, 1], got {rate}")
        if not ATTR_LO <= self.attr_lo <= self.attr_hi <= ATTR_HI:
            raise InvalidParamsException(f"Attribute range [{self.attr_lo}, {self.attr_hi}] must lie within [{ATTR_LO}, {ATTR_HI}]")
        if not 1 <= self.init_attr_min <= self.init_attr_max:
            raise InvalidParamsException(f"Initial attribute counts need 1 <= min <= max, got {self.init_attr_min}..{self.init_attr_max}")
        if self.parsimony_strength < 0:
            raise InvalidParamsException(f"parsimony_strength must be non-negative, got {self.parsimony_strength}")
        if len(self.size_bounds) != 2:
            raise InvalidParamsException(f"size_bounds must be a (min, max) pair, got {self.size_bounds}")
        low, high = self.size_bounds
        if not 1 <= low <= self.base_population <= high:
            raise InvalidParamsException(f"Need 1 <= size_min <= base_population <= size_max, got {low}, {self.base_population}, {high}")
        return True
