import datetime as dt
from enum import StrEnum
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from gompertz_wavelets.wavelets import WaveletFamily


class SeriesFormat(StrEnum):
    PLAIN = "plain"
    OWID = "owid"


class WaveShape(StrEnum):
    GOMPERTZ = "gompertz"
    LOGISTIC = "logistic"


class SeriesSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: Path
    format: SeriesFormat = SeriesFormat.PLAIN
    location_filter: Optional[str] = Field(
        default=None, description="Value of the `location` column to keep (OWID files)"
    )
    date_range: Optional[tuple[dt.date, dt.date]] = Field(
        default=None, description="Inclusive first and last calendar day to keep"
    )

    @model_validator(mode="after")
    def _check_filters(self):
        if self.format is SeriesFormat.OWID and not self.location_filter:
            raise ValueError("OWID sources need a location filter")
        if self.date_range and self.date_range[0] > self.date_range[1]:
            raise ValueError(f"date range is reversed: {self.date_range}")
        return self


class SyntheticWave(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_max: float = Field(gt=0, description="Saturation level of the wave")
    a: float = Field(gt=0, description="Time scale (1 / growth rate)")
    b: float = Field(description="Inflection time")
    shape: WaveShape = WaveShape.GOMPERTZ


class SyntheticSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    components: list[SyntheticWave] = Field(min_length=1)
    domain: tuple[int, int] = Field(description="Inclusive integer sample range")

    @model_validator(mode="after")
    def _check_domain(self):
        low, high = self.domain
        if high - low + 1 < 3:
            raise ValueError(f"domain {self.domain} holds fewer than 3 samples")
        return self


class AnalysisConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: Optional[SeriesSource] = None
    synthetic: Optional[SyntheticSpec] = None
    wavelet_family: WaveletFamily = WaveletFamily.GOMPERTZ
    wavelet_order: int = Field(default=2, ge=2)
    scale_min: int = Field(default=1, ge=1)
    scale_max: int = 64
    log_scale_count: Optional[int] = Field(
        default=None, ge=2, description="Use this many log-spaced scales instead of integers"
    )
    shift_min: Optional[int] = None
    shift_max: Optional[int] = None
    smooth_window: int = Field(default=7, ge=1)
    peak_threshold: float = Field(default=0.2, gt=0, lt=1)
    min_separation: int = Field(default=10, ge=0)
    output_dir: Path = Path("output")

    @model_validator(mode="after")
    def _check_config(self):
        if (self.source is None) == (self.synthetic is None):
            raise ValueError("exactly one of a series source or a synthetic signal is required")
        if self.scale_min > self.scale_max:
            raise ValueError(f"scale_min {self.scale_min} exceeds scale_max {self.scale_max}")
        if self.smooth_window % 2 == 0:
            raise ValueError(f"smooth_window must be odd, got {self.smooth_window}")
        if (
            self.shift_min is not None
            and self.shift_max is not None
            and self.shift_min > self.shift_max
        ):
            raise ValueError(f"shift range {self.shift_min}..{self.shift_max} is reversed")
        return self

    def scale_grid(self) -> np.ndarray:
        if self.log_scale_count:
            return np.geomspace(self.scale_min, self.scale_max, self.log_scale_count)
        return np.arange(self.scale_min, self.scale_max + 1, dtype=float)


class WaveDetection(BaseModel):
    model_config = ConfigDict(frozen=True)

    wavelet: str = Field(description="Mother wavelet name, e.g. gompertz-2")
    a: float = Field(gt=0, description="Scale of the peak")
    b: float = Field(description="Shift of the peak, in series index units")
    index_value: float = Field(description="Scalogram value at the peak")
    y_max_estimate: Optional[float] = Field(
        default=None, description="Saturation level N a^(3/2) Index; order-2 wavelets only"
    )
    date: Optional[dt.date] = Field(default=None, description="Calendar day of shift b")
    boundary: bool = Field(
        default=False, description="Shift lies within 2a of either end of the data"
    )


class WaveletComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    gompertz_peak: WaveDetection
    logistic_peak: WaveDetection

    @property
    def better_family(self) -> WaveletFamily:
        if self.gompertz_peak.index_value >= self.logistic_peak.index_value:
            return WaveletFamily.GOMPERTZ
        return WaveletFamily.LOGISTIC

    @property
    def found(self) -> bool:
        return max(self.gompertz_peak.index_value, self.logistic_peak.index_value) > 0

    @property
    def ratio(self) -> float:
        """Gompertz over logistic best Index; inf or nan when the logistic Index is not positive."""
        g, lg = self.gompertz_peak.index_value, self.logistic_peak.index_value
        if lg > 0:
            return g / lg
        return float("inf") if g > 0 else float("nan")


class VerificationRow(BaseModel):
    check: str
    expected: float
    observed: float
    error: float = Field(description="Relative error, or absolute error when expected is 0")
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, check: str, expected: float, observed: float, tolerance: float):
        error = abs(observed - expected)
        if expected != 0:
            error /= abs(expected)
        return cls(
            check=check,
            expected=expected,
            observed=observed,
            error=error,
            tolerance=tolerance,
            passed=error < tolerance,
        )


__all__ = [
    "SeriesFormat",
    "WaveShape",
    "SeriesSource",
    "SyntheticWave",
    "SyntheticSpec",
    "AnalysisConfig",
    "WaveDetection",
    "WaveletComparison",
    "VerificationRow",
]
