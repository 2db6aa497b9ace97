
import logging

# Top-level imports
from .evolution import Agent, EvolutionParams, Population, Request  # type: ignore
from .macrostate import MacroStateDistribution, MacroStateLabel, StabilityVerdict  # type: ignore
from .manager import ExperimentConfig, ExperimentManager  # type: ignore
from .markov import ChainClassification, Measure, StochasticMatrix  # type: ignore
from .version import __version__

# Configure logging per standard Python library recommendations
logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
