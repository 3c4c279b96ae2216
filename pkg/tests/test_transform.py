import datetime as dt
from math import sqrt

import numpy as np
import pytest

from gompertz_wavelets import synthetic_data
from gompertz_wavelets.exceptions import DomainError
from gompertz_wavelets.gompertz import GompertzParams, gompertz_derivative
from gompertz_wavelets.models import SyntheticSpec, SyntheticWave, WaveDetection, WaveletComparison, WaveShape
from gompertz_wavelets.transform import (
    TimeSeries,
    best_peak,
    compare_wavelets,
    detect_peaks,
    detection_at,
    index_at,
    moving_average,
    scalogram,
    second_differences,
    shift_grid,
)
from gompertz_wavelets.wavelets import ChildWavelet, WaveletFamily, mother_gompertz, mother_logistic2

PSI2 = mother_gompertz(2)


@pytest.fixture(scope="module")
def two_wave():
    ts = synthetic_data.generate_series(synthetic_data.two_wave_example())
    d = second_differences(ts)
    return d, scalogram(d, PSI2)


def _single_wave(x_max=100_000.0, a=8.0, b=25.0, domain=(0, 350), shape=WaveShape.GOMPERTZ):
    spec = SyntheticSpec(components=[SyntheticWave(x_max=x_max, a=a, b=b, shape=shape)], domain=domain)
    return second_differences(synthetic_data.generate_series(spec))


def test_second_differences_of_squares():
    d = second_differences(TimeSeries(start_index=0, values=[0, 1, 4, 9]))
    assert d.second.tolist() == [2.0, 2.0]
    assert d.first.tolist() == [1.0, 3.0, 5.0]
    assert d.index_offset == 1
    assert d.indices.tolist() == [1, 2]


def test_second_differences_of_constant():
    d = second_differences(TimeSeries(start_index=5, values=np.full(10, 3.5)))
    assert np.all(d.second == 0.0)


def test_second_differences_need_three_samples():
    with pytest.raises(DomainError):
        second_differences(TimeSeries(start_index=0, values=[1.0, 2.0]))


def test_reconstruct_is_exact():
    values = np.cumsum(np.arange(1, 40, dtype=float) ** 2)
    ts = TimeSeries(start_index=3, values=values, start_date=dt.date(2021, 5, 1))
    back = second_differences(ts).reconstruct()
    assert back.start_index == 3
    assert back.start_date == ts.start_date
    np.testing.assert_array_equal(back.values, ts.values)


def test_second_differences_track_the_second_derivative():
    d = _single_wave()
    p = GompertzParams.from_scale(100_000.0, 8.0, 25.0)
    n = np.arange(5, 61)
    exact = gompertz_derivative(p, 2, n.astype(float))
    observed = d.second[n - d.index_offset]
    assert np.max(np.abs(observed - exact)) < 0.01 * np.max(np.abs(exact))


def test_time_series_is_read_only():
    ts = TimeSeries(start_index=0, values=[1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        ts.values[0] = 5.0


def test_time_series_rejects_non_finite():
    with pytest.raises(DomainError):
        TimeSeries(start_index=0, values=[1.0, np.nan, 3.0])


def test_date_mapping_is_a_bijection():
    ts = TimeSeries(start_index=1, values=np.arange(30.0), start_date=dt.date(2020, 3, 12))
    for n in ts.indices:
        assert ts.index_of(ts.date_of(n)) == n
    assert ts.dates[-1] == dt.date(2020, 4, 10)


def test_moving_average_identity():
    ts = TimeSeries(start_index=2, values=[3.0, 1.0, 4.0, 1.0, 5.0])
    out = moving_average(ts, 1)
    assert out.start_index == 2
    np.testing.assert_array_equal(out.values, ts.values)


def test_moving_average_arithmetic_progression():
    ts = TimeSeries(start_index=0, values=[1, 2, 3, 4, 5], start_date=dt.date(2020, 1, 1))
    out = moving_average(ts, 3)
    assert out.values.tolist() == pytest.approx([2.0, 3.0, 4.0])
    assert out.start_index == 1
    assert out.start_date == dt.date(2020, 1, 2)


def test_moving_average_removes_alternating_noise():
    eps = 0.3
    n = np.arange(50, dtype=float)
    ramp = 2.0 * n + 1.0
    ts = TimeSeries(start_index=0, values=ramp + eps * (-1) ** n)
    out = moving_average(ts, 7)
    residual = out.values - ramp[3:-3]
    assert np.max(np.abs(residual)) < eps / 3


@pytest.mark.parametrize("window", [0, 2, -1])
def test_moving_average_rejects_bad_window(window):
    with pytest.raises(DomainError):
        moving_average(TimeSeries(start_index=0, values=np.arange(10.0)), window)


def test_moving_average_rejects_short_series():
    with pytest.raises(DomainError):
        moving_average(TimeSeries(start_index=0, values=np.arange(5.0)), 7)


def test_index_at_zero_signal():
    d = second_differences(TimeSeries(start_index=0, values=np.zeros(50)))
    assert index_at(d, ChildWavelet(PSI2, 4.0, 20.0)) == 0.0


def test_index_at_matched_child():
    d = _single_wave()
    peak = index_at(d, ChildWavelet(PSI2, 8.0, 25.0))
    assert peak == pytest.approx(100_000 / (2 * sqrt(2) * 8**1.5), rel=0.01)
    assert peak == pytest.approx(1551, rel=0.01)
    assert abs(index_at(d, ChildWavelet(PSI2, 8.0, 100.0))) < 0.01 * peak


def test_scalogram_shape_and_defaults(two_wave):
    d, s = two_wave
    assert s.scales.tolist() == list(range(1, 65))
    assert s.shifts[0] == d.first_index and s.shifts[-1] == d.last_index
    assert s.index_values.shape == (64, s.shifts.size)
    frame = s.to_frame()
    assert frame.shape == s.index_values.shape
    assert frame.index.name == "scale"


def test_scalogram_of_zero_input_is_zero():
    d = second_differences(TimeSeries(start_index=0, values=np.zeros(40)))
    s = scalogram(d, PSI2, scales=[1, 2, 3])
    assert np.all(s.index_values == 0.0)
    assert detect_peaks(s) == []


@pytest.mark.parametrize("scales", [[], [3, 2, 1], [0, 1], [-1.0]])
def test_scalogram_rejects_bad_scale_grid(scales):
    d = _single_wave()
    with pytest.raises(DomainError):
        scalogram(d, PSI2, scales=scales)


def test_two_wave_detections(two_wave):
    _, s = two_wave
    detections = detect_peaks(s)
    assert len(detections) >= 2
    first, second = detections[0], detections[1]

    assert abs(first.a - 8) <= 1 and abs(first.b - 25) <= 1
    assert first.index_value == pytest.approx(1551, rel=0.01)
    assert first.y_max_estimate == pytest.approx(99_264, rel=0.01)
    assert first.y_max_estimate == pytest.approx(100_000, rel=0.02)

    assert abs(second.a - 20) <= 1 and abs(second.b - 200) <= 1
    assert second.index_value == pytest.approx(789.5, rel=0.01)
    assert second.y_max_estimate == pytest.approx(199_729, rel=0.01)
    assert second.y_max_estimate == pytest.approx(200_000, rel=0.02)


def test_y_max_estimate_is_exact_conversion(two_wave):
    _, s = two_wave
    for d in detect_peaks(s):
        assert d.y_max_estimate == pytest.approx(2 * sqrt(2) * d.a**1.5 * d.index_value, rel=1e-14)
        assert d.wavelet == "gompertz-2"


def test_detections_respect_separation_and_threshold(two_wave):
    _, s = two_wave
    detections = detect_peaks(s, min_separation=10, threshold_fraction=0.2)
    top = s.index_values.max()
    for i, d in enumerate(detections):
        assert d.index_value >= 0.2 * top
        for other in detections[i + 1 :]:
            assert abs(d.b - other.b) >= 10
            assert other.index_value <= d.index_value


def test_higher_threshold_keeps_only_the_strongest_wave(two_wave):
    _, s = two_wave
    detections = detect_peaks(s, threshold_fraction=0.9)
    assert len(detections) == 1
    assert abs(detections[0].b - 25) <= 1


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.5])
def test_detect_peaks_rejects_bad_threshold(two_wave, fraction):
    _, s = two_wave
    with pytest.raises(DomainError):
        detect_peaks(s, threshold_fraction=fraction)


def test_single_wave_saturation_estimate():
    d = _single_wave(x_max=50_000.0, a=10.0, b=50.0, domain=(0, 150))
    detections = detect_peaks(scalogram(d, PSI2))
    assert detections
    strongest = detections[0]
    assert abs(strongest.a - 10) <= 1 and abs(strongest.b - 50) <= 1
    assert strongest.y_max_estimate == pytest.approx(50_000, rel=0.02)
    assert not strongest.boundary


def test_matched_filter_on_random_waves():
    rng = np.random.default_rng(2024)
    for _ in range(10):
        wave, spec = synthetic_data.random_single_wave(rng)
        d = second_differences(synthetic_data.generate_series(spec))
        s = scalogram(d, PSI2)
        row, col = s.argmax()
        assert abs(s.scales[row] - wave.a) <= 1
        assert abs(s.shifts[col] - wave.b) <= 1
        ceiling = wave.x_max / (2 * sqrt(2) * wave.a**1.5)
        assert s.index_values[row, col] <= ceiling * 1.02


def test_linearity(two_wave):
    d, s = two_wave
    ts = synthetic_data.generate_series(synthetic_data.two_wave_example())
    doubled = scalogram(second_differences(TimeSeries(ts.start_index, 2.0 * ts.values)), PSI2)
    np.testing.assert_array_equal(doubled.index_values, 2.0 * s.index_values)

    other_spec = SyntheticSpec(components=[SyntheticWave(x_max=30_000.0, a=5.0, b=120.0)], domain=(0, 350))
    other_ts = synthetic_data.generate_series(other_spec)
    other = second_differences(other_ts)
    summed = TimeSeries(ts.start_index, ts.values + other_ts.values)
    total = scalogram(second_differences(summed), PSI2, scales=[5, 8, 20])
    parts = scalogram(d, PSI2, scales=[5, 8, 20]).index_values + scalogram(other, PSI2, scales=[5, 8, 20]).index_values
    np.testing.assert_allclose(total.index_values, parts, rtol=1e-9, atol=1e-6)


def test_shift_equivariance():
    ts = synthetic_data.generate_series(synthetic_data.two_wave_example())
    k = 17
    moved = TimeSeries(start_index=ts.start_index + k, values=ts.values)
    base = scalogram(second_differences(ts), PSI2, scales=[4, 8, 20])
    shifted = scalogram(second_differences(moved), PSI2, scales=[4, 8, 20])
    np.testing.assert_array_equal(shifted.shifts, base.shifts + k)
    np.testing.assert_array_equal(shifted.index_values, base.index_values)


def test_physical_translation_moves_the_peak():
    d0 = _single_wave(a=8.0, b=100.0, domain=(0, 400))
    d1 = _single_wave(a=8.0, b=130.0, domain=(0, 400))
    s0, s1 = scalogram(d0, PSI2, scales=[8]), scalogram(d1, PSI2, scales=[8])
    assert s1.shifts[s1.argmax()[1]] - s0.shifts[s0.argmax()[1]] == 30
    np.testing.assert_allclose(s1.index_values[0, 80:300], s0.index_values[0, 50:270], rtol=1e-8, atol=1e-6)


def test_shift_window():
    d = _single_wave()
    assert shift_grid(d, 100, 120).tolist() == list(range(100, 121))
    assert shift_grid(d, -50, 3).tolist() == [1, 2, 3]
    with pytest.raises(DomainError):
        shift_grid(d, 500, 600)

    s = scalogram(d, PSI2, scales=[8], shifts=shift_grid(d, 20, 30))
    assert abs(s.shifts[s.argmax()[1]] - 25) <= 1


def test_boundary_flag(two_wave):
    _, s = two_wave
    assert detection_at(s, 7, 0).boundary
    assert detection_at(s, 7, s.shifts.size - 1).boundary
    middle = int(np.flatnonzero(s.shifts == 120)[0])
    assert not detection_at(s, 7, middle).boundary


def test_detection_dates_follow_the_series():
    values = synthetic_data.generate_series(synthetic_data.two_wave_example()).values
    ts = TimeSeries(start_index=1, values=values, start_date=dt.date(2020, 3, 18))
    s = scalogram(second_differences(ts), PSI2, scales=[8])
    peak = best_peak(s)
    assert peak.date == dt.date(2020, 3, 18) + dt.timedelta(days=int(peak.b) - 1)


def test_compare_prefers_the_matching_family():
    gompertz = compare_wavelets(_single_wave(a=10.0, b=150.0, domain=(0, 400)), scales=range(1, 41))
    assert gompertz.gompertz_peak.index_value > gompertz.logistic_peak.index_value
    assert gompertz.better_family is WaveletFamily.GOMPERTZ

    logistic = compare_wavelets(
        _single_wave(a=10.0, b=150.0, domain=(0, 400), shape=WaveShape.LOGISTIC), scales=range(1, 41)
    )
    assert logistic.logistic_peak.index_value > logistic.gompertz_peak.index_value
    assert logistic.better_family is WaveletFamily.LOGISTIC
    assert logistic.logistic_peak.wavelet == mother_logistic2().name


def test_comparison_ratio_without_logistic_signal():
    def peak(wavelet, value):
        return WaveDetection(wavelet=wavelet, a=1.0, b=1.0, index_value=value)

    silent = WaveletComparison(gompertz_peak=peak("gompertz-2", 0.0), logistic_peak=peak("logistic-2", 0.0))
    assert not silent.found
    assert np.isnan(silent.ratio)

    one_sided = WaveletComparison(gompertz_peak=peak("gompertz-2", 3.0), logistic_peak=peak("logistic-2", -1.0))
    assert one_sided.found
    assert one_sided.ratio == float("inf")
    assert one_sided.better_family is WaveletFamily.GOMPERTZ
