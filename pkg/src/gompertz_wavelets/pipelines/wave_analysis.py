from pathlib import Path

import numpy as np
from prefect import flow, get_run_logger, task, unmapped
from prefect.cache_policies import NO_CACHE
from prefect.task_runners import ThreadPoolTaskRunner
from pydantic import BaseModel

from gompertz_wavelets import config, ingest, synthetic_data, transform
from gompertz_wavelets.models import AnalysisConfig, WaveDetection, WaveletComparison
from gompertz_wavelets.services import export
from gompertz_wavelets.wavelets import MotherWavelet, mother_gompertz, mother_logistic2, mother_wavelet


class AnalysisOutcome(BaseModel):
    wavelet: str
    label: str
    detections: list[WaveDetection]
    scalogram_csv: Path
    detections_csv: Path
    scalogram_png: Path


class ComparisonOutcome(BaseModel):
    label: str
    comparison: WaveletComparison
    comparison_csv: Path


@task(name="load_input", cache_policy=NO_CACHE)
def load_input(cfg: AnalysisConfig) -> transform.TimeSeries:
    logger = get_run_logger()
    if cfg.synthetic is not None:
        ts = synthetic_data.generate_series(cfg.synthetic)
    else:
        ts = ingest.load_series(cfg.source)
    ts = ingest.prepare_pipeline_input(ts, cfg.smooth_window)
    logger.info(
        f"Input {ts.label!r}: {len(ts)} samples, n = {ts.start_index}..{ts.end_index}, "
        f"smoothing window {cfg.smooth_window}"
    )
    return ts


@task(name="compute_scalogram_block", cache_policy=NO_CACHE)
def compute_scalogram_block(
    d: transform.DifferencedSeries, w: MotherWavelet, scales: np.ndarray, shifts: np.ndarray
) -> np.ndarray:
    return transform.scalogram_rows(d, w, scales, shifts)


def build_scalogram(
    d: transform.DifferencedSeries, w: MotherWavelet, cfg: AnalysisConfig
) -> transform.Scalogram:
    """Fan the scale grid out over the task runner; each block fills its own rows."""
    scales = cfg.scale_grid()
    shifts = transform.shift_grid(d, cfg.shift_min, cfg.shift_max)
    chunks = np.array_split(scales, max(1, min(config.SCALOGRAM_WORKERS, scales.size)))
    futures = compute_scalogram_block.map(unmapped(d), unmapped(w), chunks, unmapped(shifts))

    matrix = np.empty((scales.size, shifts.size))
    start = 0
    for chunk, future in zip(chunks, futures):
        matrix[start : start + chunk.size] = future.result()
        start += chunk.size
    return transform.Scalogram(
        scales=scales, shifts=shifts, index_values=matrix, wavelet=w, series=d
    )


@flow(
    name="wave-analysis-pipeline",
    log_prints=True,
    task_runner=ThreadPoolTaskRunner(max_workers=config.SCALOGRAM_WORKERS),
)
def wave_analysis_pipeline(cfg: AnalysisConfig) -> AnalysisOutcome:
    logger = get_run_logger()

    ts = load_input(cfg)
    d = transform.second_differences(ts)
    w = mother_wavelet(cfg.wavelet_family, cfg.wavelet_order)
    s = build_scalogram(d, w, cfg)
    logger.info(f"Scalogram {w.name}: {s.scales.size} scales x {s.shifts.size} shifts")

    detections = transform.detect_peaks(
        s, min_separation=cfg.min_separation, threshold_fraction=cfg.peak_threshold
    )
    if not detections:
        logger.warning("No waves found")

    out = Path(cfg.output_dir)
    outcome = AnalysisOutcome(
        wavelet=w.name,
        label=ts.label,
        detections=detections,
        scalogram_csv=export.write_scalogram_csv(s, out / "scalogram.csv"),
        detections_csv=export.write_detections_csv(detections, out / "detections.csv"),
        scalogram_png=export.render_scalogram_png(s, out / "scalogram.png", detections),
    )
    logger.info(f"Wrote {outcome.scalogram_csv}, {outcome.detections_csv}, {outcome.scalogram_png}")
    return outcome


@flow(
    name="wavelet-comparison-pipeline",
    log_prints=True,
    task_runner=ThreadPoolTaskRunner(max_workers=config.SCALOGRAM_WORKERS),
)
def wavelet_comparison_pipeline(cfg: AnalysisConfig) -> ComparisonOutcome:
    logger = get_run_logger()

    ts = load_input(cfg)
    d = transform.second_differences(ts)
    comparison = WaveletComparison(
        gompertz_peak=transform.best_peak(build_scalogram(d, mother_gompertz(2), cfg)),
        logistic_peak=transform.best_peak(build_scalogram(d, mother_logistic2(), cfg)),
    )
    logger.info(
        f"Best Index: gompertz {comparison.gompertz_peak.index_value:.2f}, "
        f"logistic {comparison.logistic_peak.index_value:.2f}"
    )

    path = Path(cfg.output_dir) / "comparison.csv"
    frame = export.detections_frame([comparison.gompertz_peak, comparison.logistic_peak])
    frame.insert(0, "wavelet", ["gompertz", "logistic"])
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=export.FLOAT_FORMAT, lineterminator="\n")
    return ComparisonOutcome(label=ts.label, comparison=comparison, comparison_csv=path)


__all__ = [
    "AnalysisOutcome",
    "ComparisonOutcome",
    "load_input",
    "build_scalogram",
    "wave_analysis_pipeline",
    "wavelet_comparison_pipeline",
]
