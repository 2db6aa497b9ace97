"""
Experiment configuration.

Config files are flat YAML mappings whose keys mirror the ExperimentConfig fields:

    mutation_rate: 0.1
    crossover_rate: 0.1
    base_population: 300
    generations: 1000
    runs: 200
    master_seed: 7
    request: [12, 40, 77, 3, 91]
"""

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np
import yaml

from ..evolution import EvolutionParams, InvalidAgentException, InvalidParamsException, Request
from ..macrostate.partition import PARTITIONS
from .exceptions import ConfigurationException
from .seeding import fresh_master_seed

FULL_RUNS = 10000
DEFAULT_RUNS = 200

INT_KEYS = (
    "base_population",
    "init_attr_min",
    "init_attr_max",
    "attr_lo",
    "attr_hi",
    "size_min",
    "size_max",
    "request_seed",
    "request_length",
    "generations",
    "runs",
    "master_seed",
    "workers",
    "window",
)
FLOAT_KEYS = ("mutation_rate", "crossover_rate", "parsimony_strength", "tol")
LIST_KEYS = ("request", "checkpoints")
STR_KEYS = ("partition",)
KEYS = INT_KEYS + FLOAT_KEYS + LIST_KEYS + STR_KEYS
PARAM_KEYS = ("mutation_rate", "crossover_rate", "base_population", "init_attr_min", "init_attr_max", "attr_lo", "attr_hi", "parsimony_strength")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full parameterization of an experiment: evolution parameters, request, horizon, ensemble size and seeds"""

    params: EvolutionParams = field(default_factory=EvolutionParams)
    request: Optional[Request] = None
    request_seed: Optional[int] = None
    request_length: int = 5
    generations: int = 1000
    runs: int = DEFAULT_RUNS
    master_seed: Optional[int] = None
    checkpoints: Tuple[int, ...] = ()
    workers: int = 1
    partition: str = "deviation"
    window: int = 50
    tol: float = 1e-3

    def __post_init__(self):
        object.__setattr__(self, "checkpoints", tuple(sorted(set(int(g) for g in self.checkpoints))))
        self.validate()

    def validate(self) -> bool:
        if self.generations < 1:
            raise ConfigurationException(f"must be at least 1, got {self.generations}", "generations")
        if self.runs < 1:
            raise ConfigurationException(f"must be at least 1, got {self.runs}", "runs")
        if self.workers < 1:
            raise ConfigurationException(f"must be at least 1, got {self.workers}", "workers")
        if self.request_length < 1:
            raise ConfigurationException(f"must be at least 1, got {self.request_length}", "request_length")
        if self.partition not in PARTITIONS:
            raise ConfigurationException(f"must be one of {sorted(PARTITIONS)}, got {self.partition!r}", "partition")
        if self.window < 2:
            raise ConfigurationException(f"must be at least 2, got {self.window}", "window")
        if self.tol <= 0:
            raise ConfigurationException(f"must be positive, got {self.tol}", "tol")
        for generation in self.checkpoints:
            if not 0 <= generation <= self.generations:
                raise ConfigurationException(f"generation {generation} outside 0..{self.generations}", "checkpoints")
        if self.master_seed is not None and self.master_seed < 0:
            raise ConfigurationException(f"must be non-negative, got {self.master_seed}", "master_seed")
        return True

    @property
    def resolved(self) -> bool:
        return self.master_seed is not None and self.request is not None

    def resolve(self) -> "ExperimentConfig":
        """
        Fix every random choice left open: the master seed and the request.

        Returns:
            config that reproduces bit-exactly when reloaded
        """
        master_seed = self.master_seed if self.master_seed is not None else fresh_master_seed()
        request = self.request
        if request is None:
            seed = self.request_seed if self.request_seed is not None else master_seed
            rng = np.random.Generator(np.random.PCG64(seed))
            values = rng.integers(self.params.attr_lo, self.params.attr_hi + 1, size=self.request_length)
            request = Request(tuple(int(value) for value in values))
        return replace(self, master_seed=master_seed, request=request)

    def with_rates(self, mutation_rate: float, crossover_rate: float) -> "ExperimentConfig":
        return replace(self, params=replace(self.params, mutation_rate=mutation_rate, crossover_rate=crossover_rate))

    def to_mapping(self) -> Dict[str, Any]:
        """Flat mapping in config-file form"""
        params = self.params
        mapping: Dict[str, Any] = {key: getattr(params, key) for key in PARAM_KEYS}
        mapping["size_min"], mapping["size_max"] = params.size_bounds
        mapping.update(
            request=list(self.request.required) if self.request is not None else None,
            request_seed=self.request_seed,
            request_length=self.request_length,
            generations=self.generations,
            runs=self.runs,
            master_seed=self.master_seed,
            checkpoints=list(self.checkpoints),
            workers=self.workers,
            partition=self.partition,
            window=self.window,
            tol=self.tol,
        )
        return {key: value for key, value in mapping.items() if value is not None}

    def config_hash(self) -> str:
        # workers only changes scheduling, never results
        mapping = {key: value for key, value in self.to_mapping().items() if key != "workers"}
        return hashlib.sha256(json.dumps(mapping, sort_keys=True).encode("utf-8")).hexdigest()[:16]

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_mapping(), sort_keys=False)


def _coerce(key: str, value: Any) -> Any:
    try:
        if key in INT_KEYS:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if key in FLOAT_KEYS:
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        if key in LIST_KEYS:
            if not isinstance(value, (list, tuple)):
                raise ValueError(value)
            return tuple(int(item) for item in value)
        if not isinstance(value, str):
            raise ValueError(value)
        return value
    except (TypeError, ValueError):
        raise ConfigurationException(f"invalid value {value!r}", key) from None


def from_mapping(mapping: Mapping[str, Any], base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """
    Apply flat key-value settings on top of a base config.

    Args:
        mapping: flat settings, keys as documented in this module
        base: config to override, defaults to ExperimentConfig()

    Returns:
        new ExperimentConfig

    Raises:
        ConfigurationException: unknown key or invalid value, naming the key
    """
    base = base or ExperimentConfig()
    values = {}
    for key, value in mapping.items():
        if key not in KEYS:
            raise ConfigurationException("unknown configuration key", key)
        if value is None:
            continue
        if isinstance(value, dict):
            raise ConfigurationException("nested values are not allowed", key)
        values[key] = _coerce(key, value)

    for key in ("mutation_rate", "crossover_rate"):
        if key in values and not 0.0 <= values[key] <= 1.0:
            raise ConfigurationException(f"must lie in [0, 1], got {values[key]}", key)

    params_values = {key: values.pop(key) for key in PARAM_KEYS if key in values}
    size_min, size_max = base.params.size_bounds
    if "size_min" in values or "size_max" in values:
        params_values["size_bounds"] = (values.pop("size_min", size_min), values.pop("size_max", size_max))

    try:
        params = replace(base.params, **params_values)
        if "request" in values:
            values["request"] = Request(values["request"])
    except (InvalidParamsException, InvalidAgentException) as e:
        raise ConfigurationException(str(e)) from e

    return replace(base, params=params, **values)


def load_config(path: str, base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """Read a flat YAML config file"""
    with open(path, "r", encoding="utf-8") as f:
        try:
            mapping = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationException(f"{path}: not valid YAML ({e})") from e
    if not isinstance(mapping, dict):
        raise ConfigurationException(f"{path}: expected a flat key-value mapping")
    return from_mapping(mapping, base)
