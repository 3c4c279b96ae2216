"""Load cumulative daily series from plain ``date,value`` CSV files or OWID exports.

Dated series are numbered from n = 1 at their first calendar day. Missing days
are forward-filled with the previous cumulative value. Plain files may use
integer sample indices instead of dates (as written by ``synth``); those keep
their own numbering.
"""

import datetime as dt
import warnings
from pathlib import Path

import numpy as np
import pandas as pd
from prefect.logging import get_logger

from gompertz_wavelets import config
from gompertz_wavelets.exceptions import DataQualityWarning, IngestError
from gompertz_wavelets.models import SeriesFormat, SeriesSource
from gompertz_wavelets.transform import TimeSeries, moving_average

logger = get_logger(__name__)

OWID_COLUMNS = ["date", "location", "total_cases"]
FIRST_DAY_INDEX = 1


def _bad_lines(mask: pd.Series) -> list[int]:
    # frames are indexed by 1-based file line
    return [int(i) for i in mask.index[mask.to_numpy()]]


def _parse_number(text) -> float:
    # float() is correctly rounded, so values written with 17 digits reload exactly
    try:
        return float(text)
    except (TypeError, ValueError):
        return np.nan


def _read_lines(path: Path, **kwargs) -> pd.DataFrame:
    frame = pd.read_csv(path, dtype=str, skip_blank_lines=False, **kwargs)
    first_line = 2 if kwargs.get("header", "infer") == "infer" else 1
    frame.index = pd.RangeIndex(first_line, first_line + len(frame))
    return frame.dropna(how="all")


def _read_plain(path: Path) -> tuple[pd.Series, bool]:
    """Return the values keyed by date or integer index, and whether keys are dates."""
    try:
        raw = _read_lines(path, header=None, names=["key", "value"])
    except pd.errors.ParserError as exc:
        raise IngestError(f"{path}: expected two comma-separated columns ({exc})") from exc
    except pd.errors.EmptyDataError as exc:
        raise IngestError(f"{path}: no rows") from exc
    if raw.empty:
        raise IngestError(f"{path}: no rows")

    first_key, first_value = raw.iloc[0]
    if np.isnan(_parse_number(first_value)) and _parse_key(first_key) is None:
        raw = raw.iloc[1:]
    if raw.empty:
        raise IngestError(f"{path}: header only, no data rows")

    keys = raw["key"].str.strip()
    integer_keys = keys.str.fullmatch(r"-?\d+").all()
    if integer_keys:
        parsed_keys = pd.to_numeric(keys, errors="coerce")
    else:
        parsed_keys = pd.to_datetime(keys, format="%Y-%m-%d", errors="coerce")
    values = raw["value"].map(_parse_number)

    bad = parsed_keys.isna() | values.isna()
    if bad.any():
        raise IngestError(f"{path}: unparseable rows at lines {_bad_lines(bad)}")
    series = pd.Series(values.to_numpy(dtype=float), index=parsed_keys.to_numpy())
    return series, not integer_keys


def _parse_key(text) -> object | None:
    if pd.isna(text):
        return None
    text = str(text).strip()
    if text.lstrip("-").isdigit():
        return int(text)
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        return None


def _read_owid(path: Path, location: str) -> pd.Series:
    try:
        frame = _read_lines(path, usecols=OWID_COLUMNS)
    except ValueError as exc:
        raise IngestError(f"{path}: missing OWID columns {OWID_COLUMNS}") from exc
    rows = frame[frame["location"] == location]
    if rows.empty:
        raise IngestError(f"{path}: unknown location {location!r}")

    dates = pd.to_datetime(rows["date"], format="%Y-%m-%d", errors="coerce")
    if dates.isna().any():
        raise IngestError(f"{path}: unparseable dates at lines {_bad_lines(dates.isna())}")

    # empty cells are unreported days; anything else must be a number
    reported = rows["total_cases"].str.strip().replace("", np.nan)
    values = reported.map(_parse_number)
    bad = reported.notna() & values.isna()
    if bad.any():
        raise IngestError(f"{path}: unparseable total_cases at lines {_bad_lines(bad)}")
    return pd.Series(values.to_numpy(dtype=float), index=dates.to_numpy())


def _to_daily(series: pd.Series, path: Path) -> pd.Series:
    if series.index.has_duplicates:
        duplicated = sorted({str(k)[:10] for k in series.index[series.index.duplicated()]})
        raise IngestError(f"{path}: duplicate dates {duplicated}")
    series = series.sort_index()
    calendar = pd.date_range(series.index[0], series.index[-1], freq="D")
    # days before the first report are zero on a cumulative count
    return series.reindex(calendar).ffill().fillna(0.0)


def _to_consecutive(series: pd.Series, path: Path) -> pd.Series:
    if series.index.has_duplicates:
        raise IngestError(f"{path}: duplicate sample indices")
    series = series.sort_index()
    full = np.arange(int(series.index[0]), int(series.index[-1]) + 1)
    return series.reindex(full).ffill()


def check_monotone(ts: TimeSeries, tolerance: float = config.MONOTONICITY_TOLERANCE) -> list:
    """Warn about (and return) the indices or dates where a cumulative series drops."""
    drops = np.flatnonzero(np.diff(ts.values) < -tolerance) + 1
    if drops.size == 0:
        return []
    where = [ts.date_of(ts.start_index + k) or ts.start_index + k for k in drops]
    listed = ", ".join(str(w) for w in where)
    logger.warning("Series %r decreases at %s", ts.label, listed)
    warnings.warn(
        f"cumulative series {ts.label!r} decreases at {listed}", DataQualityWarning, stacklevel=2
    )
    return where


def load_series(src: SeriesSource) -> TimeSeries:
    path = Path(src.path)
    if not path.is_file():
        raise IngestError(f"{path}: no such file")

    if src.format is SeriesFormat.OWID:
        series, dated = _read_owid(path, src.location_filter), True
        label = src.location_filter
    else:
        series, dated = _read_plain(path)
        label = src.location_filter or path.stem

    if dated:
        series = _to_daily(series, path)
        if src.date_range:
            first, last = src.date_range
            days = series.index.date
            series = series[(days >= first) & (days <= last)]
    else:
        if src.date_range:
            raise IngestError(f"{path}: a date range needs a dated series")
        series = _to_consecutive(series, path)

    if series.empty:
        raise IngestError(f"{path}: no rows left after filtering")

    if dated:
        ts = TimeSeries(
            start_index=FIRST_DAY_INDEX,
            values=series.to_numpy(),
            label=label,
            start_date=series.index[0].date(),
        )
    else:
        ts = TimeSeries(start_index=int(series.index[0]), values=series.to_numpy(), label=label)
    logger.info("Loaded %d samples of %r from %s", len(ts), label, path)
    check_monotone(ts)
    return ts


def write_series(ts: TimeSeries, path: Path) -> Path:
    """Write a series as plain CSV: dates when it has them, integer indices otherwise."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    keys = [d.isoformat() for d in ts.dates] if ts.start_date else ts.indices
    frame = pd.DataFrame({"date" if ts.start_date else "n": keys, "value": ts.values})
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    return path


def prepare_pipeline_input(ts: TimeSeries, smooth_window: int = config.DEFAULT_SMOOTH_WINDOW) -> TimeSeries:
    """Smooth with a moving average and relabel the result for the pipeline.

    The first smoothed value keeps the series' first index, and every value is
    dated by the last day of its window: for a daily series starting
    2020-03-12, window 7 puts n = 1 on 2020-03-18. Window 1 is the identity.
    """
    smoothed = moving_average(ts, smooth_window)
    return TimeSeries(
        start_index=ts.start_index,
        values=smoothed.values,
        label=ts.label,
        start_date=ts.date_of(ts.start_index + smooth_window - 1),
    )


__all__ = ["load_series", "write_series", "check_monotone", "prepare_pipeline_input"]
