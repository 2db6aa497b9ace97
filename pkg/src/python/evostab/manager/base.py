import logging
import os
from dataclasses import replace
from datetime import datetime
from typing import Optional, Sequence, Tuple

import yaml

from ..evolution import load_population
from ..macrostate import M_MAX, MacroStateDistribution
from .catalog import CatalogEntry, ExperimentCatalog
from .config import ExperimentConfig, load_config
from .exceptions import ConfigurationException, OutputException
from .outputs import emit_config, emit_fitness_curves, emit_macrostate_trajectory, emit_population, emit_sweep, visualize_population
from .runner import EnsembleSummary, RunTrajectory, SweepResult, run_ensemble, run_single, summarize_ensemble, sweep

logger = logging.getLogger(__name__)

CATALOG_NAME = "experiments.db"


class ExperimentManager:
    def __init__(self, root: str, catalog: bool = True):
        """
        Runs experiments and persists their results

        Args:
            root: output root; every experiment writes into its own subdirectory
            catalog: record experiments in root/experiments.db
        """
        self.root = root
        self._makedirs(root)
        self.catalog: Optional[ExperimentCatalog] = ExperimentCatalog(os.path.join(root, CATALOG_NAME)) if catalog else None

    @staticmethod
    def _makedirs(path: str):
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as e:
            raise OutputException(path, e.strerror or str(e)) from e

    def experiment_dir(self, kind: str, config: ExperimentConfig, name: Optional[str] = None) -> str:
        directory = os.path.join(self.root, name or f"{kind}-{config.config_hash()}")
        self._makedirs(directory)
        return directory

    def _prepare(self, kind: str, config: ExperimentConfig, name: Optional[str]) -> Tuple[ExperimentConfig, str]:
        config = config.resolve()
        directory = self.experiment_dir(kind, config, name)
        emit_config(config, os.path.join(directory, "config.yaml"))
        logger.info("%s experiment %s (master seed %d, request %s)", kind, directory, config.master_seed, list(config.request.required))
        return config, directory

    def _catalog(self, kind: str, directory: str, config: ExperimentConfig, p_max=None, delta=None, n_labels=None):
        if not self.catalog:
            return
        self.catalog.record(
            CatalogEntry(
                directory=os.path.abspath(directory),
                kind=kind,
                config_hash=config.config_hash(),
                master_seed=config.master_seed,
                runs=config.runs,
                generations=config.generations,
                created_at=datetime.now(),
                p_max=p_max,
                delta=delta,
                n_labels=n_labels,
            )
        )

    def _emit_snapshots(self, trajectory: RunTrajectory, directory: str, config: ExperimentConfig):
        for generation, population in sorted(trajectory.snapshots.items()):
            emit_population(population, os.path.join(directory, f"population_{generation}.txt"), config.config_hash())

    def run(self, config: ExperimentConfig, run_index: int = 0, name: Optional[str] = None) -> RunTrajectory:
        """Single run: fitness curves plus checkpoint snapshots"""
        config, directory = self._prepare("run", config, name)
        trajectory = run_single(config, run_index)
        emit_fitness_curves(trajectory, os.path.join(directory, "fitness.csv"))
        self._emit_snapshots(trajectory, directory, config)

        final = trajectory.records[-1]
        self._catalog("run", directory, config, p_max=1.0 if final.label == M_MAX else 0.0)
        return trajectory

    def ensemble(self, config: ExperimentConfig, name: Optional[str] = None) -> Tuple[Sequence[MacroStateDistribution], EnsembleSummary]:
        """Ensemble: macro-state occupation trajectory, stability verdict and δ"""
        config, directory = self._prepare("ensemble", config, name)
        distributions = run_ensemble(config)
        summary = summarize_ensemble(distributions, config)
        emit_macrostate_trajectory(distributions, os.path.join(directory, "macrostates.csv"))
        self._emit_summary(summary, os.path.join(directory, "summary.yaml"))

        logger.info("Ensemble p(M_max)=%.4f delta=%.4f N=%d stable=%s", summary.p_max, summary.delta, summary.n, summary.verdict.stable)
        self._catalog("ensemble", directory, config, summary.p_max, summary.delta, summary.n)
        return distributions, summary

    def sweep(self, config: ExperimentConfig, mutation_grid: Sequence[float], crossover_grid: Sequence[float], name: Optional[str] = None) -> SweepResult:
        """Mutation x crossover grid of degrees of instability"""
        config, directory = self._prepare("sweep", config, name)
        result = sweep(config, mutation_grid, crossover_grid)
        emit_sweep(result, os.path.join(directory, "sweep.csv"))
        self._catalog("sweep", directory, config, delta=max(cell.delta for cell in result.cells))
        return result

    def visualize(self, config: ExperimentConfig, snapshot: Optional[str] = None, cell: int = 1, name: Optional[str] = None) -> str:
        """
        Population pixmap of a snapshot file, or of the last generation of run 0

        Returns:
            path of the written pixmap
        """
        if snapshot:
            try:
                population, snapshot_hash = load_population(snapshot)
            except OSError as e:
                raise OutputException(snapshot, e.strerror or str(e)) from e
            config, directory = self._prepare("visualize", self._snapshot_config(config, snapshot, snapshot_hash), name)
        else:
            config = config.resolve()
            config = replace(config, checkpoints=config.checkpoints + (config.generations,))
            config, directory = self._prepare("visualize", config, name)
            trajectory = run_single(config, 0)
            self._emit_snapshots(trajectory, directory, config)
            population = trajectory.snapshots[config.generations]

        path = os.path.join(directory, f"population_{population.generation}.ppm")
        visualize_population(population, config.request, path, cell)
        self._catalog("visualize", directory, config)
        return path

    @staticmethod
    def _snapshot_config(config: ExperimentConfig, snapshot: str, snapshot_hash: str) -> ExperimentConfig:
        """
        Config to draw a snapshot with.

        An explicit request wins. Otherwise the request comes from the config.yaml echo next to the snapshot,
        which must carry the hash recorded in the snapshot header.
        """
        if config.request is not None:
            return config

        echo = os.path.join(os.path.dirname(snapshot), "config.yaml")
        if not os.path.exists(echo):
            raise ConfigurationException(f"no request given and no config.yaml next to {snapshot}", "request")
        try:
            source = load_config(echo)
        except OSError as e:
            raise OutputException(echo, e.strerror or str(e)) from e
        if snapshot_hash and source.config_hash() != snapshot_hash:
            raise ConfigurationException(f"{echo} has hash {source.config_hash()}, snapshot was written under {snapshot_hash}", "request")
        if source.request is None:
            raise ConfigurationException(f"{echo} records no request", "request")

        master_seed = config.master_seed if config.master_seed is not None else source.master_seed
        return replace(config, request=source.request, master_seed=master_seed)

    @staticmethod
    def _emit_summary(summary: EnsembleSummary, path: str):
        verdict = summary.verdict
        document = {
            "generation": verdict.limit.generation,
            "converged": verdict.converged,
            "nonuniform": verdict.nonuniform,
            "stable": verdict.stable,
            "max_tv_delta_tail": float(verdict.max_tv_delta_tail),
            "delta": float(summary.delta),
            "N": summary.n,
            "p_max": float(summary.p_max),
            "limit": {str(label): float(p) for label, p in verdict.limit.probabilities.items()},
        }
        try:
            with open(path, "w", encoding="utf-8") as f:
                yaml.safe_dump(document, f, sort_keys=False)
        except OSError as e:
            raise OutputException(path, e.strerror or str(e)) from e
