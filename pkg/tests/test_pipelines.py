import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from gompertz_wavelets import config, synthetic_data, transform
from gompertz_wavelets.models import AnalysisConfig, SyntheticSpec, SyntheticWave, VerificationRow
from gompertz_wavelets.pipelines.synthetic_data_generator import synthetic_data_generator_pipeline
from gompertz_wavelets.pipelines.verification import verification_pipeline
from gompertz_wavelets.pipelines.wave_analysis import wave_analysis_pipeline, wavelet_comparison_pipeline
from gompertz_wavelets.wavelets import mother_gompertz


def test_wave_analysis_pipeline_matches_direct_transform(tmp_path):
    cfg = AnalysisConfig(
        synthetic=synthetic_data.two_wave_example(), smooth_window=1, scale_max=24, output_dir=tmp_path
    )
    outcome = wave_analysis_pipeline(cfg)

    d = transform.second_differences(synthetic_data.generate_series(cfg.synthetic))
    direct = transform.scalogram(d, mother_gompertz(2), scales=cfg.scale_grid())
    written = pd.read_csv(outcome.scalogram_csv, index_col=0)
    np.testing.assert_allclose(written.to_numpy(), direct.index_values, rtol=1e-9, atol=1e-9)

    expected = transform.detect_peaks(direct)
    assert [(p.a, p.b) for p in outcome.detections] == [(p.a, p.b) for p in expected]
    assert outcome.scalogram_png.stat().st_size > 0


def test_wave_analysis_pipeline_log_scales(tmp_path):
    cfg = AnalysisConfig(
        synthetic=synthetic_data.two_wave_example(),
        smooth_window=1,
        scale_min=2,
        scale_max=40,
        log_scale_count=25,
        output_dir=tmp_path,
    )
    outcome = wave_analysis_pipeline(cfg)
    written = pd.read_csv(outcome.scalogram_csv, index_col=0)
    assert written.shape[0] == 25
    assert written.index[0] == pytest.approx(2.0)
    assert written.index[-1] == pytest.approx(40.0)


def test_comparison_pipeline(tmp_path):
    spec = SyntheticSpec(components=[SyntheticWave(x_max=1e5, a=10.0, b=150.0)], domain=(0, 400))
    cfg = AnalysisConfig(synthetic=spec, smooth_window=1, scale_max=40, output_dir=tmp_path)
    outcome = wavelet_comparison_pipeline(cfg)
    assert outcome.comparison.better_family == "gompertz"
    assert outcome.comparison.ratio > 1
    assert pd.read_csv(outcome.comparison_csv)["wavelet"].tolist() == ["gompertz", "logistic"]


def test_synthetic_data_generator_pipeline(tmp_path):
    spec = SyntheticSpec(components=[SyntheticWave(x_max=1.0, a=1.0, b=0.0)], domain=(-5, 5))
    path = synthetic_data_generator_pipeline(spec, tmp_path / "wave.csv")
    frame = pd.read_csv(path)
    assert frame["n"].tolist() == list(range(-5, 6))


def test_verification_pipeline():
    rows = verification_pipeline(3)
    assert all(isinstance(row, VerificationRow) for row in rows)
    assert all(row.passed for row in rows), [row.check for row in rows if not row.passed]
    checks = {row.check for row in rows}
    assert "C_psi order 3" in checks
    assert "C_psi order 4" not in checks


def test_analysis_config_validation(tmp_path):
    spec = synthetic_data.two_wave_example()
    with pytest.raises(ValidationError):
        AnalysisConfig(output_dir=tmp_path)
    with pytest.raises(ValidationError):
        AnalysisConfig(synthetic=spec, scale_min=10, scale_max=5)
    with pytest.raises(ValidationError):
        AnalysisConfig(synthetic=spec, scale_min=0)
    with pytest.raises(ValidationError):
        AnalysisConfig(synthetic=spec, wavelet_order=1)
    with pytest.raises(ValidationError):
        AnalysisConfig(synthetic=spec, smooth_window=6)
    with pytest.raises(ValidationError):
        AnalysisConfig(synthetic=spec, shift_min=50, shift_max=10)


def test_verification_row_compare():
    row = VerificationRow.compare("x", 2.0, 2.000001, 1e-5)
    assert row.passed and row.error == pytest.approx(5e-7)
    row = VerificationRow.compare("zero", 0.0, 1e-3, 1e-6)
    assert not row.passed and row.error == pytest.approx(1e-3)


def test_parse_range():
    assert config.parse_range("1..64") == (1, 64)
    assert config.parse_range("-3..7") == (-3, 7)
    with pytest.raises(ValueError):
        config.parse_range("64")
