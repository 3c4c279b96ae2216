from typing import Optional

import numpy as np
from scipy import special

from gompertz_wavelets.gompertz import GompertzParams, gompertz_value
from gompertz_wavelets.models import SyntheticSpec, SyntheticWave, WaveShape
from gompertz_wavelets.transform import TimeSeries


def logistic_value(x_max: float, a: float, b: float, t):
    """Logistic wave x_max / (1 + exp(-(t - b) / a))."""
    return x_max * special.expit((np.asarray(t, dtype=float) - b) / a)


def wave_value(wave: SyntheticWave, t):
    if wave.shape is WaveShape.LOGISTIC:
        return logistic_value(wave.x_max, wave.a, wave.b, t)
    return gompertz_value(GompertzParams.from_scale(wave.x_max, wave.a, wave.b), t)


def generate_series(spec: SyntheticSpec, label: Optional[str] = None) -> TimeSeries:
    """Sample the sum of the component waves at every integer of its domain."""
    low, high = spec.domain
    t = np.arange(low, high + 1, dtype=float)
    values = np.zeros_like(t)
    for wave in spec.components:
        values += wave_value(wave, t)
    return TimeSeries(start_index=low, values=values, label=label or "synthetic")


def random_single_wave(
    rng: np.random.Generator,
    scale_range: tuple[float, float] = (4.0, 32.0),
    length: int = 600,
    x_max: float = 100_000.0,
) -> tuple[SyntheticWave, SyntheticSpec]:
    """One Gompertz wave whose transition lies well inside [0, length].

    The shift leaves 5 scales of data before and 10 scales after the inflection,
    beyond which the order-2 wavelet carries no measurable energy.
    """
    a = float(rng.uniform(*scale_range))
    b = float(rng.uniform(5 * a, length - 10 * a))
    wave = SyntheticWave(x_max=x_max, a=a, b=b)
    return wave, SyntheticSpec(components=[wave], domain=(0, length))


def two_wave_example() -> SyntheticSpec:
    """Waves (100000, a=8, b=25) and (200000, a=20, b=200) sampled on 0..350."""
    return SyntheticSpec(
        components=[
            SyntheticWave(x_max=100_000.0, a=8.0, b=25.0),
            SyntheticWave(x_max=200_000.0, a=20.0, b=200.0),
        ],
        domain=(0, 350),
    )


__all__ = [
    "logistic_value",
    "wave_value",
    "generate_series",
    "random_single_wave",
    "two_wave_example",
]
