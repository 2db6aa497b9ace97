"""
Markov chain kernel imports
"""


from .chain import (
    classify,
    equilibrium_limit,
    invariant_distribution,
    joint_transition,
    n_step,
    path_probability,
    propagate,
    solve_invariant_distribution,
    total_variation,
)
from .exceptions import (
    DimensionMismatchException,
    InvalidStochasticMatrixException,
    MarkovChainException,
    NonConvergenceException,
    StateSpaceTooLargeException,
)
from .io import load_matrix, load_measure, save_matrix, save_measure
from .types import AgentConditional, ChainClassification, Measure, StochasticMatrix
