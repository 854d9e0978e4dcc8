"""Drop tests and gait experiments."""

import logging
from typing import Optional

import numpy as np

from ..core.exceptions import InputDomainError
from ..core.state import N_DOF, SimState
from ..gaits.rolling import GaitController, build_trajectory
from ..integrator.simulate import Trajectory, integrate
from ..kinematics.grid import SkinGrid, skin_grid
from .config import ExperimentConfig, dump_config
from .digest import pretty_json
from .metrics import compare_to_reference, compute_metrics
from .plots import export_joint_trajectory, export_plots
from .results import DropReport, ExperimentResults, backbone_series
from .store import DirectoryStore, ResultStore

logger = logging.getLogger(__name__)

METRICS_FILE = "metrics.json"
DROP_REPORT_FILE = "drop_report.json"
CONFIG_FILE = "config.yaml"


def experiment_grid(cfg: ExperimentConfig) -> SkinGrid:
    return skin_grid(cfg.robot, cfg.grid_axial, cfg.grid_radial)


def initial_state(cfg: ExperimentConfig) -> SimState:
    """Vented snake at rest, base at drop_height, pitched by initial_pitch."""
    q = np.zeros(N_DOF)
    q[2] = cfg.drop_height
    q[4] = cfg.initial_pitch
    return SimState(t=0.0, q=q, qdot=np.zeros(N_DOF))


def simulate_drop(cfg: ExperimentConfig) -> Trajectory:
    """Release the vented snake and integrate for settle_time seconds."""
    logger.info(f"Drop test {cfg.name}: release at z={cfg.drop_height} m for {cfg.settle_time} s")
    return integrate(
        initial_state(cfg),
        None,
        cfg.settle_time,
        cfg.integrator,
        cfg.robot,
        experiment_grid(cfg),
        cfg.contact_enabled,
    )


def settle(cfg: ExperimentConfig) -> SimState:
    """State of the snake at the end of the drop phase."""
    return simulate_drop(cfg).final


def _store(cfg: ExperimentConfig, store: Optional[ResultStore]) -> ResultStore:
    return store if store is not None else DirectoryStore(cfg.output_dir)


def _write(results: ExperimentResults, store: ResultStore) -> None:
    results.files = export_plots(results, store)
    store.write_text(CONFIG_FILE, dump_config(results.config))
    summary = DROP_REPORT_FILE if results.metrics is None else METRICS_FILE
    store.write_text(summary, pretty_json(results.summary()))
    results.files += [CONFIG_FILE, summary]
    logger.info(f"Wrote {len(results.files)} result files for {results.name}")


def run_drop_test(cfg: ExperimentConfig, store: Optional[ResultStore] = None, write: bool = True) -> ExperimentResults:
    """Drop the vented snake onto the ground and report how it settles."""
    traj = simulate_drop(cfg)
    report = DropReport.from_trajectory(traj, cfg.robot, cfg.contact_enabled)
    if not report.settled:
        logger.warning(f"{cfg.name}: snake still moving at t={traj.times[-1]:.2f} s")
    results = ExperimentResults(
        config=cfg,
        trajectory=traj,
        backbone=backbone_series(traj, experiment_grid(cfg), cfg.robot),
        drop_report=report,
    )
    if write:
        _write(results, _store(cfg, store))
    return results


def run_gait(
    cfg: ExperimentConfig,
    initial: Optional[SimState] = None,
    store: Optional[ResultStore] = None,
    write: bool = True,
) -> ExperimentResults:
    """Settle the snake, then drive it with the configured gait.

    Args:
        cfg: experiment with a gait.
        initial: pre-settled starting state; the drop phase runs when omitted.
        store: result destination; a directory store on cfg.output_dir by default.
        write: export CSV series, figures and the summary.

    Raises:
        InputDomainError: if the config carries no gait.
    """
    if cfg.gait is None:
        raise InputDomainError(f"experiment {cfg.name} has no gait", "gait", None)
    if initial is None:
        initial = settle(cfg)

    grid = experiment_grid(cfg)
    controller = GaitController(cfg.gait, cfg.robot, t_start=initial.t)
    logger.info(
        f"Gait {cfg.gait.kind.value} at {cfg.gait.frequency} Hz, "
        f"amplitude {cfg.gait.resolved_amplitude(cfg.robot) * 1e3:.1f} mm, from t={initial.t:.2f} s"
    )
    traj = integrate(initial, controller, cfg.gait.duration, cfg.integrator, cfg.robot, grid, cfg.contact_enabled)
    metrics = compute_metrics(traj, cfg.gait)
    results = ExperimentResults(
        config=cfg,
        trajectory=traj,
        backbone=backbone_series(traj, grid, cfg.robot),
        metrics=metrics,
        reference=compare_to_reference(metrics, cfg.gait.kind),
    )
    logger.info(f"{cfg.name}: Vx={metrics.Vx:.2f} cm/s, Vy={metrics.Vy:.2f} cm/s")
    if write:
        _write(results, _store(cfg, store))
    return results


def run_experiment(cfg: ExperimentConfig, store: Optional[ResultStore] = None, write: bool = True) -> ExperimentResults:
    if cfg.is_drop_test:
        return run_drop_test(cfg, store, write)
    return run_gait(cfg, store=store, write=write)


def export_gait_trajectory(cfg: ExperimentConfig, store: Optional[ResultStore] = None, rate: float = 30.0):
    """Sample the configured gait's lengths and pressures and write them with a figure."""
    if cfg.gait is None:
        raise InputDomainError(f"experiment {cfg.name} has no gait", "gait", None)
    trajectory = build_trajectory(cfg.gait, cfg.robot, rate=rate, duration=cfg.gait.duration)
    files = export_joint_trajectory(trajectory, _store(cfg, store))
    return trajectory, files
