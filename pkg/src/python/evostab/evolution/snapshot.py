"""
Population snapshot text format.

    # generation=<g> config=<hash>
    12,40,7
    55,3

One agent per line, comma-separated attributes.
"""

import re
from typing import Tuple

from .agent import Agent, Population
from .exceptions import InvalidAgentException

HEADER = re.compile(r"^#\s*generation=(\d+)\s+config=(\S*)\s*$")


def dumps_population(population: Population, config_hash: str = "") -> str:
    lines = [f"# generation={population.generation} config={config_hash}"]
    lines.extend(",".join(str(value) for value in agent.attributes) for agent in population.agents)
    return "\n".join(lines) + "\n"


def loads_population(text: str) -> Tuple[Population, str]:
    """
    Parse a snapshot.

    Returns:
        (population, config hash recorded in the header)
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidAgentException("Empty population snapshot")

    match = HEADER.match(lines[0])
    if not match:
        raise InvalidAgentException(f"Bad snapshot header: {lines[0]!r}")

    try:
        agents = tuple(Agent(tuple(int(value) for value in line.split(","))) for line in lines[1:])
    except ValueError as e:
        raise InvalidAgentException(f"Bad snapshot line: {e}") from e
    return Population(agents, int(match.group(1))), match.group(2)


def save_population(population: Population, path: str, config_hash: str = ""):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_population(population, config_hash))


def load_population(path: str) -> Tuple[Population, str]:
    with open(path, "r", encoding="utf-8") as f:
        return loads_population(f.read())
