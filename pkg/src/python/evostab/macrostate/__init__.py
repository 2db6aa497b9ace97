"""
Macro-state analysis imports
"""


from .analysis import (
    classify,
    degree_of_instability,
    distribution_distance,
    ensemble_instability,
    occupation_estimate,
    stability_verdict,
)
from .exceptions import InvalidDistributionException, InvalidTrajectoryException, MacroStateException
from .labels import (
    EXTINCT,
    M_HALF,
    M_MAX,
    M_TENTH,
    M_TWENTIETH,
    MacroStateDistribution,
    MacroStateLabel,
    StabilityVerdict,
    level_for_fitness_fraction,
    sorted_labels,
)
from .partition import BandedPartition, DeviationPartition, MacroStatePartition, best_deviation, partition_for
