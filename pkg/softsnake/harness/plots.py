"""CSV series and SVG figures of experiment results.

Every figure is rendered from its CSV twin, so a results directory can be
re-plotted without re-running the simulation. SVG output is deterministic:
fixed hash salt and no date stamp.
"""

import csv
import io
import logging
from typing import Callable, Dict, List, Optional, Sequence

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from ..gaits.rolling import PMA_NAMES, JointTrajectory
from .store import ResultStore

logger = logging.getLogger(__name__)

SVG_SALT = "softsnake"

BASE_POSE = "base_pose"
JOINT_LENGTHS = "joint_lengths"
CONTACT_MAP = "contact_map"
BACKBONE_XY = "backbone_xy"
DROP_Z = "drop_z"
JOINT_TRAJECTORY = "joint_trajectory"


# -- CSV series ----------------------------------------------------------------


def series_csv(header: Sequence[str], rows) -> str:
    """CSV text with a unit-bearing header and full-precision numbers."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def read_series(text: str):
    """Header and (n, columns) array of a series CSV (n may be zero)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float) if rows else np.zeros((0, len(header)))
    return header, data


def _base_pose_rows(trajectory):
    return np.column_stack([trajectory.times, trajectory.q[:, :6]])


def _backbone_header(n: int) -> List[str]:
    return ["t [s]"] + [f"x_{k:02d} [m]" for k in range(n)] + [f"y_{k:02d} [m]" for k in range(n)]


def write_series(results, store: ResultStore) -> List[str]:
    """Write the CSV series of a drop or gait experiment; returns the names written."""
    traj = results.trajectory
    t = traj.times
    written = []

    def put(name: str, header, rows):
        store.write_text(f"{name}.csv", series_csv(header, rows))
        written.append(f"{name}.csv")

    put(
        BASE_POSE,
        ["t [s]", "x_b [m]", "y_b [m]", "z_b [m]", "alpha [rad]", "beta [rad]", "gamma [rad]"],
        _base_pose_rows(traj),
    )
    put(JOINT_LENGTHS, ["t [s]"] + [f"l_{n} [m]" for n in PMA_NAMES], np.column_stack([t, traj.joint_lengths]))

    contact_rows = [row for cmap in traj.contact_maps for row in cmap.rows()]
    put(CONTACT_MAP, ["t [s]", "xi [-]", "sigma [rad]", "F_z [N]"], contact_rows)

    if results.backbone is not None:
        xy = results.backbone[:, :, :2]
        n = xy.shape[1]
        put(BACKBONE_XY, _backbone_header(n), np.column_stack([t, xy[:, :, 0], xy[:, :, 1]]))

    if results.drop_report is not None:
        put(
            DROP_Z,
            ["t [s]", "z_b [m]", "min_z [m]", "max_vz [m/s]"],
            np.column_stack([t, traj.base_positions[:, 2], traj.min_z, traj.max_vz]),
        )
    return written


# -- figures -------------------------------------------------------------------


def _plot_base_pose(fig: Figure, header, data) -> None:
    ax_p, ax_o = fig.subplots(2, 1, sharex=True)
    for k in range(1, 4):
        ax_p.plot(data[:, 0], data[:, k], label=header[k])
    for k in range(4, 7):
        ax_o.plot(data[:, 0], data[:, k], label=header[k])
    ax_p.set_ylabel("position [m]")
    ax_o.set_ylabel("orientation [rad]")
    ax_o.set_xlabel("t [s]")
    ax_p.legend(loc="upper right", fontsize="small")
    ax_o.legend(loc="upper right", fontsize="small")


def _plot_joint_lengths(fig: Figure, header, data) -> None:
    axes = fig.subplots(3, 1, sharex=True)
    for i, ax in enumerate(axes):
        for j in range(3):
            col = 1 + 3 * i + j
            ax.plot(data[:, 0], data[:, col] * 1e3, label=header[col])
        ax.set_ylabel(f"section {i + 1} [mm]")
        ax.legend(loc="upper right", fontsize="small")
    axes[-1].set_xlabel("t [s]")


def _plot_contact_map(fig: Figure, header, data) -> None:
    ax = fig.subplots()
    if data.shape[0]:
        points = ax.scatter(data[:, 0], data[:, 1], c=data[:, 3], s=4, cmap="viridis")
        fig.colorbar(points, ax=ax, label="F_z [N]")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("xi [-]")
    ax.set_ylim(0.0, 3.0)


def _plot_backbone_xy(fig: Figure, header, data) -> None:
    ax = fig.subplots()
    n = (data.shape[1] - 1) // 2
    x, y = data[:, 1:1 + n], data[:, 1 + n:]
    if data.shape[0]:
        ax.plot(x[:, 0], y[:, 0], color="k", linewidth=1.0, label="base")
        step = max(1, data.shape[0] // 15)
        for k in range(0, data.shape[0], step):
            ax.plot(x[k], y[k], color="tab:blue", alpha=0.4, linewidth=0.8)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal", adjustable="datalim")


def _plot_drop_z(fig: Figure, header, data) -> None:
    ax = fig.subplots()
    ax.plot(data[:, 0], data[:, 1], label="z_b")
    ax.plot(data[:, 0], data[:, 2], label="min skin z")
    ax.axhline(0.0, color="k", linewidth=0.5)
    ax.set_xlabel("t [s]")
    ax.set_ylabel("z [m]")
    ax.legend(loc="upper right", fontsize="small")


def _plot_joint_trajectory(fig: Figure, header, data) -> None:
    ax_l, ax_p = fig.subplots(2, 1, sharex=True)
    for k in range(9):
        ax_l.plot(data[:, 0], data[:, 1 + k] * 1e3, linewidth=0.8)
        ax_p.plot(data[:, 0], data[:, 10 + k], linewidth=0.8)
    ax_l.set_ylabel("length change [mm]")
    ax_p.set_ylabel("pressure [bar]")
    ax_p.set_xlabel("t [s]")


RENDERERS: Dict[str, Callable] = {
    BASE_POSE: _plot_base_pose,
    JOINT_LENGTHS: _plot_joint_lengths,
    CONTACT_MAP: _plot_contact_map,
    BACKBONE_XY: _plot_backbone_xy,
    DROP_Z: _plot_drop_z,
    JOINT_TRAJECTORY: _plot_joint_trajectory,
}


def render_svg(name: str, csv_text: str) -> str:
    header, data = read_series(csv_text)
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "path"}):
        fig = Figure(figsize=(8, 5))
        RENDERERS[name](fig, header, data)
        fig.suptitle(name.replace("_", " "))
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def render_plots(store: ResultStore, names: Optional[Sequence[str]] = None) -> List[str]:
    """Render an SVG for every known CSV series present in ``store``."""
    written = []
    for name in names or RENDERERS:
        if not store.exists(f"{name}.csv"):
            continue
        store.write_text(f"{name}.svg", render_svg(name, store.read_text(f"{name}.csv")))
        written.append(f"{name}.svg")
    logger.info(f"Rendered {len(written)} plots")
    return written


def export_plots(results, store: ResultStore) -> List[str]:
    """CSV series and their SVG figures for a drop or gait experiment."""
    written = write_series(results, store)
    return written + render_plots(store, [n[:-4] for n in written])


def export_joint_trajectory(trajectory: JointTrajectory, store: ResultStore) -> List[str]:
    store.write_text(f"{JOINT_TRAJECTORY}.csv", trajectory.to_csv())
    return [f"{JOINT_TRAJECTORY}.csv"] + render_plots(store, [JOINT_TRAJECTORY])
