class MarkovChainException(Exception):
    pass


class DimensionMismatchException(MarkovChainException, ValueError):
    pass


class InvalidStochasticMatrixException(MarkovChainException, ValueError):
    pass


class NonConvergenceException(MarkovChainException):
    def __init__(self, message: str, last_iterate, residual: float, iterations: int):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations


class StateSpaceTooLargeException(MarkovChainException, ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"Joint state space of {size} states exceeds cap of {cap}")
        self.size = size
        self.cap = cap
