class EvolutionException(Exception):
    pass


class InvalidAgentException(EvolutionException, ValueError):
    pass


class InvalidParamsException(EvolutionException, ValueError):
    pass


class PopulationExtinctException(EvolutionException):
    """Every agent is dead; the all-dead population is absorbing"""

    def __init__(self, generation: int):
        super().__init__(f"Population extinct at generation {generation}")
        self.generation = generation
