# infra/report_writer.py

"""CSV/JSON tables and the excess plot for reproduction sweeps."""

import dataclasses
import logging
import math
import os
from typing import Any, Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "bergman-geometry"
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from ..core.errors import IoFailure  # noqa: E402
from .config import OUTPUT_FORMATS  # noqa: E402

logger = logging.getLogger(__name__)

TIMING_COLUMNS = ("wall_time",)


def rows_to_frame(rows: Sequence[Any], include_timing: bool = False) -> pd.DataFrame:
    """One record per row dataclass, columns in field order."""
    records: List[Dict[str, Any]] = [
        dataclasses.asdict(row) if dataclasses.is_dataclass(row) else dict(row) for row in rows
    ]
    frame = pd.DataFrame.from_records(records)
    if not include_timing:
        frame = frame.drop(columns=[c for c in TIMING_COLUMNS if c in frame.columns])
    return frame


def _plot_excess(frame: pd.DataFrame, path: str) -> str:
    usable = frame[(frame["status"] == "ok") & (frame["excess"] > 0)]
    if usable.empty:
        raise ValueError("No successful rows to plot")
    log_r = usable["r"].map(math.log10)
    label = str(usable["theorem"].iloc[0]) if "theorem" in usable.columns else "excess"

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(log_r, usable["excess"], "o-", color="darkblue", linewidth=2, label=f"{label} path excess")
    ax.set_xlabel("log10 r", fontsize=12)
    ax.set_ylabel("path length - pi/2", fontsize=12)
    ax.set_yscale("log")
    ax.invert_xaxis()
    ax.grid(True, alpha=0.3, linestyle="--")
    ax.legend(loc="upper right")
    plt.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path


def emit_report(
    rows: Sequence[Any],
    output_format: str,
    path: str,
    plot: bool = False,
    include_timing: bool = False,
) -> List[str]:
    """
    Write experiment rows as CSV or JSON, optionally with an SVG plot next to them.

    Args:
        rows: ExperimentRow records (any dataclasses or mappings)
        output_format: 'csv' or 'json'
        path: output file; the plot goes to the same stem with an .svg suffix
        plot: also write excess against log10 r
        include_timing: keep the wall_time column

    Returns:
        Paths written
    """
    if not rows:
        raise ValueError("Cannot emit an empty report")
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"Unknown format: {output_format}. Supported formats: {', '.join(OUTPUT_FORMATS)}")

    frame = rows_to_frame(rows, include_timing)
    written = []
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        if output_format == "csv":
            frame.to_csv(path, index=False, float_format="%.15g", lineterminator="\n")
        else:
            frame.to_json(path, orient="records", double_precision=15, indent=2)
        written.append(path)
        logger.info(f"Wrote {len(frame)} rows to {path}")

        if plot:
            svg_path = os.path.splitext(path)[0] + ".svg"
            written.append(_plot_excess(frame, svg_path))
            logger.info(f"Wrote plot to {svg_path}")
    except OSError as e:
        raise IoFailure(f"Could not write report to {path}: {e}") from e
    return written
