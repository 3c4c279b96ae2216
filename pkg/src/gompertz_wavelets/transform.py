"""Discrete CWT of second differences: scalograms, peak picking and saturation estimates.

Index(a, b) = sum_n d2y_n psi^(a,b)(n) over the integer sample points of the
data, with no dt weighting. Child-wavelet terms outside the mother's effective
support are dropped, and so are terms that fall outside the data.
"""

import datetime as dt
from dataclasses import dataclass
from math import sqrt

import numpy as np
import pandas as pd
from numpy.lib.stride_tricks import sliding_window_view
from prefect.logging import get_logger
from scipy import ndimage

from gompertz_wavelets.exceptions import DomainError
from gompertz_wavelets.models import WaveDetection, WaveletComparison
from gompertz_wavelets.wavelets import (
    ChildWavelet,
    MotherWavelet,
    mother_gompertz,
    mother_logistic2,
    saturation_factor,
)

logger = get_logger(__name__)

DEFAULT_SCALE_GRID = np.arange(1, 65, dtype=float)
DEFAULT_THRESHOLD_FRACTION = 0.2
DEFAULT_MIN_SEPARATION = 10

# detections closer than this many scales to either end of the data are flagged
BOUNDARY_SCALES = 2.0

_NEIGHBOURHOOD = np.array([[True, True, True], [True, False, True], [True, True, True]])


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


def _shift_date(day: dt.date | None, days: int) -> dt.date | None:
    return None if day is None else day + dt.timedelta(days=int(days))


@dataclass(frozen=True, slots=True, eq=False)
class TimeSeries:
    """Samples y_n for n = start_index, start_index + 1, ...

    When ``start_date`` is set, index n falls on start_date + (n - start_index) days.
    """

    start_index: int
    values: np.ndarray
    label: str = ""
    start_date: dt.date | None = None

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1 or values.size == 0:
            raise DomainError("a time series needs a non-empty 1-D array of values")
        if not np.all(np.isfinite(values)):
            raise DomainError(f"series {self.label!r} contains non-finite values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start_index", int(self.start_index))

    def __len__(self) -> int:
        return self.values.size

    @property
    def end_index(self) -> int:
        return self.start_index + len(self) - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start_index, self.end_index + 1)

    def date_of(self, n: float) -> dt.date | None:
        return _shift_date(self.start_date, round(n) - self.start_index)

    def index_of(self, day: dt.date) -> int:
        if self.start_date is None:
            raise DomainError(f"series {self.label!r} has no calendar dates")
        return self.start_index + (day - self.start_date).days

    @property
    def dates(self) -> list[dt.date] | None:
        if self.start_date is None:
            return None
        return [self.start_date + dt.timedelta(days=k) for k in range(len(self))]


@dataclass(frozen=True, slots=True, eq=False)
class DifferencedSeries:
    """First and central second differences, both indexed from ``index_offset``.

    first[k] = y_n - y_(n-1) and second[k] = y_(n+1) - 2 y_n + y_(n-1) with
    n = index_offset + k.
    """

    first: np.ndarray
    second: np.ndarray
    index_offset: int
    initial: float
    label: str = ""
    start_date: dt.date | None = None

    def __post_init__(self):
        object.__setattr__(self, "first", _frozen(self.first))
        object.__setattr__(self, "second", _frozen(self.second))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.index_offset, self.index_offset + self.second.size)

    @property
    def first_index(self) -> int:
        return self.index_offset

    @property
    def last_index(self) -> int:
        return self.index_offset + self.second.size - 1

    def date_of(self, n: float) -> dt.date | None:
        # start_date belongs to index_offset - 1, the first sample of the source series
        return _shift_date(self.start_date, round(n) - self.index_offset + 1)

    def reconstruct(self) -> TimeSeries:
        values = np.concatenate(([self.initial], self.initial + np.cumsum(self.first)))
        return TimeSeries(
            start_index=self.index_offset - 1,
            values=values,
            label=self.label,
            start_date=self.start_date,
        )


@dataclass(frozen=True, slots=True, eq=False)
class Scalogram:
    scales: np.ndarray
    shifts: np.ndarray
    index_values: np.ndarray
    wavelet: MotherWavelet
    series: DifferencedSeries

    def __post_init__(self):
        shape = (self.scales.size, self.shifts.size)
        if self.index_values.shape != shape:
            raise DomainError(f"scalogram matrix {self.index_values.shape} does not match grid {shape}")
        if not np.all(np.isfinite(self.index_values)):
            raise DomainError("scalogram contains non-finite cells")

    def argmax(self) -> tuple[int, int]:
        row, col = np.unravel_index(np.argmax(self.index_values), self.index_values.shape)
        return int(row), int(col)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.index_values, index=self.scales, columns=self.shifts)
        frame.index.name = "scale"
        return frame


def second_differences(ts: TimeSeries) -> DifferencedSeries:
    if len(ts) < 3:
        raise DomainError(f"second differences need at least 3 samples, got {len(ts)}")
    return DifferencedSeries(
        first=np.diff(ts.values),
        second=np.diff(ts.values, n=2),
        index_offset=ts.start_index + 1,
        initial=float(ts.values[0]),
        label=ts.label,
        start_date=ts.start_date,
    )


def moving_average(ts: TimeSeries, window: int) -> TimeSeries:
    """Centered moving mean; each output keeps the index (and date) of its window centre."""
    if window < 1 or window % 2 == 0:
        raise DomainError(f"moving-average window must be odd and positive, got {window}")
    if len(ts) < window:
        raise DomainError(f"series of length {len(ts)} is shorter than the window {window}")
    half = (window - 1) // 2
    values = sliding_window_view(ts.values, window).mean(axis=1)
    return TimeSeries(
        start_index=ts.start_index + half,
        values=values,
        label=ts.label,
        start_date=_shift_date(ts.start_date, half),
    )


def index_at(d: DifferencedSeries, w: ChildWavelet) -> float:
    """Index = sum_n d2y_n psi^(a,b)(n)."""
    standardized = (d.indices - w.b) / w.a
    kernel = w.mother.truncated(standardized) / sqrt(w.a)
    return float(kernel @ d.second)


def _check_scales(scales) -> np.ndarray:
    scales = np.asarray(scales, dtype=float).ravel()
    if scales.size == 0:
        raise DomainError("the scale grid is empty")
    if np.any(scales <= 0) or not np.all(np.isfinite(scales)):
        raise DomainError("scales must be positive and finite")
    if np.any(np.diff(scales) <= 0):
        raise DomainError("scales must be strictly ascending")
    return scales


def shift_grid(d: DifferencedSeries, shift_min: int | None = None, shift_max: int | None = None):
    """Integer shifts covering the data range, optionally clipped to [shift_min, shift_max]."""
    low = d.first_index if shift_min is None else max(shift_min, d.first_index)
    high = d.last_index if shift_max is None else min(shift_max, d.last_index)
    if low > high:
        raise DomainError(f"shift window {shift_min}..{shift_max} misses the data range")
    return np.arange(low, high + 1)


def scalogram_rows(d: DifferencedSeries, w: MotherWavelet, scales, shifts) -> np.ndarray:
    """Index values for a block of scales; rows are independent of each other."""
    samples = d.indices.astype(float)
    shifts = np.asarray(shifts, dtype=float)
    block = np.empty((len(scales), shifts.size))
    for row, a in enumerate(np.asarray(scales, dtype=float)):
        standardized = (samples[None, :] - shifts[:, None]) / a
        kernel = w.truncated(standardized) / sqrt(a)
        block[row] = kernel @ d.second
    return block


def scalogram(d: DifferencedSeries, w: MotherWavelet, scales=None, shifts=None) -> Scalogram:
    scales = _check_scales(DEFAULT_SCALE_GRID if scales is None else scales)
    shifts = shift_grid(d) if shifts is None else np.asarray(shifts, dtype=int)
    logger.debug(
        "Computing %s scalogram over %d scales x %d shifts", w.name, scales.size, shifts.size
    )
    return Scalogram(
        scales=scales,
        shifts=shifts,
        index_values=scalogram_rows(d, w, scales, shifts),
        wavelet=w,
        series=d,
    )


def detection_at(s: Scalogram, row: int, col: int) -> WaveDetection:
    a = float(s.scales[row])
    b = float(s.shifts[col])
    value = float(s.index_values[row, col])
    factor = saturation_factor(s.wavelet)
    near_edge = min(b - s.series.first_index, s.series.last_index - b) < BOUNDARY_SCALES * a
    return WaveDetection(
        wavelet=s.wavelet.name,
        a=a,
        b=b,
        index_value=value,
        y_max_estimate=None if factor is None else factor * a**1.5 * value,
        date=s.series.date_of(b),
        boundary=bool(near_edge),
    )


def detect_peaks(
    s: Scalogram,
    min_separation: int = DEFAULT_MIN_SEPARATION,
    threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION,
) -> list[WaveDetection]:
    """Strict 8-neighbourhood maxima above threshold_fraction of the global maximum.

    Peaks are taken in descending Index order and a peak is dropped when its
    shift is closer than ``min_separation`` to one already kept.
    """
    if not 0 < threshold_fraction < 1:
        raise DomainError(f"threshold_fraction must lie in (0, 1), got {threshold_fraction}")
    values = s.index_values
    peak_value = values.max()
    if not peak_value > 0:
        return []

    neighbours = ndimage.maximum_filter(
        values, footprint=_NEIGHBOURHOOD, mode="constant", cval=-np.inf
    )
    candidates = (values > neighbours) & (values >= threshold_fraction * peak_value)
    rows, cols = np.nonzero(candidates)
    order = np.argsort(-values[rows, cols], kind="stable")

    detections: list[WaveDetection] = []
    for k in order:
        detection = detection_at(s, rows[k], cols[k])
        if all(abs(detection.b - kept.b) >= min_separation for kept in detections):
            detections.append(detection)
    logger.info("Found %d peak(s) on the %s scalogram", len(detections), s.wavelet.name)
    return detections


def best_peak(s: Scalogram) -> WaveDetection:
    return detection_at(s, *s.argmax())


def compare_wavelets(d: DifferencedSeries, scales=None, shifts=None) -> WaveletComparison:
    """Best peak under psi_2 and under the logistic wavelet; both have unit norm."""
    return WaveletComparison(
        gompertz_peak=best_peak(scalogram(d, mother_gompertz(2), scales, shifts)),
        logistic_peak=best_peak(scalogram(d, mother_logistic2(), scales, shifts)),
    )


__all__ = [
    "DEFAULT_SCALE_GRID",
    "TimeSeries",
    "DifferencedSeries",
    "Scalogram",
    "second_differences",
    "moving_average",
    "index_at",
    "shift_grid",
    "scalogram_rows",
    "scalogram",
    "detection_at",
    "detect_peaks",
    "best_peak",
    "compare_wavelets",
]
