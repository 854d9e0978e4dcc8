"""Experiment layer: configs, drop tests, gaits, metrics, plots and sweeps."""

from .config import ExperimentConfig, dump_config, load_config, save_config
from .digest import ConfigDigest, canonical_json, pretty_json
from .experiments import (
    export_gait_trajectory,
    initial_state,
    run_drop_test,
    run_experiment,
    run_gait,
    settle,
    simulate_drop,
)
from .metrics import REFERENCE_VELOCITIES, GaitMetrics, compare_to_reference, compute_metrics
from .plots import export_plots, render_plots
from .results import DropReport, ExperimentResults, backbone_series
from .store import DirectoryStore, InMemoryStore, ResultStore
from .sweep import SweepResult, SweepRun, run_sweep

__all__ = [
    "ExperimentConfig",
    "dump_config",
    "load_config",
    "save_config",
    "ConfigDigest",
    "canonical_json",
    "pretty_json",
    "export_gait_trajectory",
    "initial_state",
    "run_drop_test",
    "run_experiment",
    "run_gait",
    "settle",
    "simulate_drop",
    "REFERENCE_VELOCITIES",
    "GaitMetrics",
    "compare_to_reference",
    "compute_metrics",
    "export_plots",
    "render_plots",
    "DropReport",
    "ExperimentResults",
    "backbone_series",
    "DirectoryStore",
    "InMemoryStore",
    "ResultStore",
    "SweepResult",
    "SweepRun",
    "run_sweep",
]
