from pathlib import Path

import pandas as pd
from matplotlib.figure import Figure

from gompertz_wavelets.models import WaveDetection
from gompertz_wavelets.transform import Scalogram

FLOAT_FORMAT = "%.10g"
DETECTION_COLUMNS = ["a", "b", "date", "index", "y_max", "boundary_flag"]


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_scalogram_csv(s: Scalogram, path: Path) -> Path:
    """Matrix CSV: header row of shifts, first column of scales, Index cells."""
    frame = s.to_frame()
    frame.index = [FLOAT_FORMAT % a for a in s.scales]
    frame.index.name = "scale"
    frame.to_csv(_prepare(path), float_format=FLOAT_FORMAT, lineterminator="\n")
    return Path(path)


def detections_frame(detections: list[WaveDetection]) -> pd.DataFrame:
    rows = [
        {
            "a": d.a,
            "b": d.b,
            "date": d.date.isoformat() if d.date else "",
            "index": d.index_value,
            "y_max": d.y_max_estimate,
            "boundary_flag": d.boundary,
        }
        for d in detections
    ]
    return pd.DataFrame(rows, columns=DETECTION_COLUMNS)


def write_detections_csv(detections: list[WaveDetection], path: Path) -> Path:
    detections_frame(detections).to_csv(
        _prepare(path), index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )
    return Path(path)


def render_scalogram_png(
    s: Scalogram, path: Path, detections: list[WaveDetection] = ()
) -> Path:
    """Heat map of the scalogram with the detected peaks circled."""
    figure = Figure(figsize=(10, 5), dpi=100)
    axes = figure.subplots()
    mesh = axes.pcolormesh(s.shifts, s.scales, s.index_values, cmap="viridis", shading="nearest")
    for d in detections:
        axes.plot(d.b, d.a, marker="o", markerfacecolor="none", markeredgecolor="red")
        axes.annotate(f"{d.index_value:.1f}", (d.b, d.a), color="white", fontsize=8)
    axes.set_xlabel("shift b")
    axes.set_ylabel("scale a")
    axes.set_title(f"{s.series.label} ({s.wavelet.name})")
    figure.colorbar(mesh, ax=axes, label="Index")
    figure.savefig(_prepare(path))
    return Path(path)


__all__ = [
    "write_scalogram_csv",
    "detections_frame",
    "write_detections_csv",
    "render_scalogram_png",
]
