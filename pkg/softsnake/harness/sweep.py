"""Parallel runs of independent experiment configurations."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from ..core.exceptions import InputDomainError
from .config import ExperimentConfig
from .experiments import run_experiment

logger = logging.getLogger(__name__)


@dataclass
class SweepRun:
    """Outcome of one config of a sweep."""

    name: str
    output_dir: str
    summary: Dict = field(default_factory=dict)


@dataclass
class SweepResult:
    """Result of a sweep."""

    successful_runs: List[SweepRun]
    failed_runs: List[Tuple[ExperimentConfig, Exception]]
    total_runs: int
    execution_time_ms: float

    @property
    def success_count(self) -> int:
        return len(self.successful_runs)

    @property
    def failure_count(self) -> int:
        return len(self.failed_runs)

    @property
    def success_rate(self) -> float:
        if self.total_runs == 0:
            return 0.0
        return self.success_count / self.total_runs

    def to_dict(self) -> Dict:
        return {
            "total_runs": self.total_runs,
            "succeeded": [run.name for run in self.successful_runs],
            "failed": [
                {"name": cfg.name, "error": type(e).__name__, "message": str(e)} for cfg, e in self.failed_runs
            ],
            "execution_time_ms": self.execution_time_ms,
        }


def isolate_outputs(configs: Sequence[ExperimentConfig]) -> List[ExperimentConfig]:
    """Give configs that share an output directory one sub-directory each, named after the config.

    Raises:
        InputDomainError: if two configs sharing a directory also share a name.
    """
    by_dir: Dict[str, List[ExperimentConfig]] = {}
    for cfg in configs:
        by_dir.setdefault(cfg.output_dir, []).append(cfg)

    isolated = []
    for cfg in configs:
        siblings = by_dir[cfg.output_dir]
        if len(siblings) == 1:
            isolated.append(cfg)
            continue
        names = [c.name for c in siblings]
        if names.count(cfg.name) > 1:
            raise InputDomainError(
                f"configs named {cfg.name} would share {cfg.output_dir}", "name", cfg.name
            )
        isolated.append(cfg.with_overrides(output_dir=str(Path(cfg.output_dir) / cfg.name)))
    return isolated


def _run_one(cfg: ExperimentConfig) -> SweepRun:
    results = run_experiment(cfg)
    return SweepRun(name=cfg.name, output_dir=cfg.output_dir, summary=results.summary())


def run_sweep(
    configs: Sequence[ExperimentConfig],
    parallel: bool = True,
    num_workers: int = 4,
    runner=None,
) -> SweepResult:
    """Run every config to completion, collecting failures instead of stopping.

    Args:
        configs: experiments to run; no two may write to the same directory.
        parallel: run in a process pool of ``num_workers``.
        num_workers: pool size.
        runner: picklable callable mapping a config to a SweepRun.
    """
    runner = runner or _run_one
    configs = isolate_outputs(configs)
    start_time = time.time()
    successful: List[SweepRun] = []
    failed: List[Tuple[ExperimentConfig, Exception]] = []

    if parallel and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=num_workers) as executor:
            future_to_config = {executor.submit(runner, cfg): cfg for cfg in configs}
            for future in as_completed(future_to_config):
                cfg = future_to_config[future]
                try:
                    successful.append(future.result())
                except Exception as e:
                    failed.append((cfg, e))
                    logger.error(f"Sweep run {cfg.name} failed: {e}")
    else:
        for cfg in configs:
            try:
                successful.append(runner(cfg))
            except Exception as e:
                failed.append((cfg, e))
                logger.error(f"Sweep run {cfg.name} failed: {e}")

    # completion order varies between pool runs
    order = {cfg.name: k for k, cfg in enumerate(configs)}
    successful.sort(key=lambda run: order.get(run.name, 0))
    failed.sort(key=lambda item: order.get(item[0].name, 0))

    execution_time = (time.time() - start_time) * 1000
    logger.info(f"Sweep finished: {len(successful)}/{len(configs)} runs succeeded")
    return SweepResult(
        successful_runs=successful,
        failed_runs=failed,
        total_runs=len(configs),
        execution_time_ms=execution_time,
    )
