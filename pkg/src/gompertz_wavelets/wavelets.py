"""Gompertz mother wavelets psi_n, their children, spectra and admissibility constants.

psi_n is the n-th derivative of the standard Gompertz function exp(-exp(-t))
scaled to unit L2 norm. Its square integral is |B_2n| (2^(2n) - 1) / (2n), so
the normalization comes straight from the Bernoulli table. A logistic
second-derivative wavelet is kept alongside as a comparison baseline.
"""

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from math import factorial, isfinite, pi, sqrt

import numpy as np
from scipy import special

from gompertz_wavelets.exceptions import DomainError
from gompertz_wavelets.gompertz import (
    MAX_DERIVATIVE_ORDER,
    GompertzParams,
    gompertz_derivative,
)
from gompertz_wavelets.quadrature import integrate_1d
from gompertz_wavelets.special_fn import bernoulli, gamma_modulus_sq, stirling2, zeta

ADMISSIBILITY_MAX_ORDER = 8

# spectral energy beyond |xi| = 60 is below 1e-30 for every supported order
_XI_MAX = 60.0


class WaveletFamily(StrEnum):
    GOMPERTZ = "gompertz"
    LOGISTIC = "logistic"


# Effective support of the mother wavelet at scale 1; outside it |psi| < 1e-20.
EFFECTIVE_SUPPORT = {
    WaveletFamily.GOMPERTZ: (-8.0, 60.0),
    WaveletFamily.LOGISTIC: (-50.0, 50.0),
}

QUADRATURE_WINDOW = {
    WaveletFamily.GOMPERTZ: (-30.0, 80.0),
    WaveletFamily.LOGISTIC: (-60.0, 60.0),
}


@dataclass(frozen=True, slots=True)
class MotherWavelet:
    family: WaveletFamily
    order: int
    normalization: float

    def __post_init__(self):
        if self.order < 2:
            raise DomainError(f"wavelet order must be >= 2, got {self.order}")
        if not (isfinite(self.normalization) and self.normalization > 0):
            raise DomainError(f"normalization must be positive, got {self.normalization}")

    @property
    def support(self) -> tuple[float, float]:
        return EFFECTIVE_SUPPORT[self.family]

    @property
    def name(self) -> str:
        return f"{self.family.value}-{self.order}"

    def __call__(self, t):
        if self.family is WaveletFamily.GOMPERTZ:
            shape = gompertz_derivative(GompertzParams.standard(), self.order, t)
        else:
            shape = logistic_second_derivative(t)
        return self.normalization * shape

    def truncated(self, t):
        """psi(t) inside the effective support, 0 outside."""
        t = np.asarray(t, dtype=float)
        low, high = self.support
        inside = (t >= low) & (t <= high)
        return np.where(inside, self(np.clip(t, low, high)), 0.0)


@dataclass(frozen=True, slots=True)
class ChildWavelet:
    mother: MotherWavelet
    a: float
    b: float

    def __post_init__(self):
        if not (isfinite(self.a) and self.a > 0):
            raise DomainError(f"scale a must be positive, got {self.a}")

    def __call__(self, t):
        return evaluate(self, t)


@dataclass(frozen=True, slots=True)
class AdmissibilityResult:
    order: int
    closed_form: float
    quadrature: float
    relative_gap: float


@dataclass(frozen=True, slots=True)
class IntegralFacts:
    mean: float
    abs_integral: float
    sq_integral: float


def logistic_second_derivative(t):
    """f''(t) for f = 1 / (1 + exp(-t)), written as -f (1 - f) tanh(t / 2)."""
    t = np.asarray(t, dtype=float)
    value = -special.expit(t) * special.expit(-t) * np.tanh(t / 2.0)
    return float(value) if value.ndim == 0 else value


def derivative_square_integral(n: int) -> Fraction:
    """Exact value of the integral of (x^(n))^2 at standard parameters."""
    if not 1 <= n <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"order must be in 1..{MAX_DERIVATIVE_ORDER}, got {n}")
    return abs(bernoulli(2 * n)) * (2 ** (2 * n) - 1) / (2 * n)


def derivative_l1_bound(n: int) -> int:
    """Upper bound sum_k {n k} (k-1)! on the L1 norm of x^(n)."""
    if not 1 <= n <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"order must be in 1..{MAX_DERIVATIVE_ORDER}, got {n}")
    return sum(stirling2(n, k) * factorial(k - 1) for k in range(1, n + 1))


def mother_gompertz(n: int) -> MotherWavelet:
    if isinstance(n, bool) or int(n) != n or not 2 <= n <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"Gompertz wavelet order must be in 2..{MAX_DERIVATIVE_ORDER}, got {n!r}")
    n = int(n)
    return MotherWavelet(
        family=WaveletFamily.GOMPERTZ,
        order=n,
        normalization=sqrt(float(1 / derivative_square_integral(n))),
    )


def mother_logistic2() -> MotherWavelet:
    # integral of f''^2 is int_0^1 x (1 - x) (1 - 2x)^2 dx = 1/30
    return MotherWavelet(family=WaveletFamily.LOGISTIC, order=2, normalization=sqrt(30.0))


def mother_wavelet(family: WaveletFamily | str, order: int = 2) -> MotherWavelet:
    family = WaveletFamily(family)
    if family is WaveletFamily.LOGISTIC:
        if order != 2:
            raise DomainError(f"the logistic wavelet is only defined for order 2, got {order}")
        return mother_logistic2()
    return mother_gompertz(order)


def evaluate(w: ChildWavelet, t):
    """psi^(a,b)(t) = psi((t - b) / a) / sqrt(a)."""
    if not w.a > 0:
        raise DomainError(f"scale a must be positive, got {w.a}")
    t = np.asarray(t, dtype=float)
    value = w.mother((t - w.b) / w.a) / sqrt(w.a)
    return float(value) if np.ndim(value) == 0 else value


def saturation_factor(mother: MotherWavelet) -> float | None:
    """C such that y_max = C a^(3/2) Index for a matched order-2 wave."""
    if mother.order != 2:
        return None
    return mother.normalization


def _require_gompertz(w: MotherWavelet) -> None:
    if w.family is not WaveletFamily.GOMPERTZ:
        raise DomainError(f"closed-form spectra exist for Gompertz wavelets only, got {w.name}")


def _spectral_constant(n: int) -> float:
    """n / (|B_2n| (2^(2n) - 1) pi)."""
    return float(Fraction(n) / (abs(bernoulli(2 * n)) * (2 ** (2 * n) - 1))) / pi


def fourier_modulus_sq(w: MotherWavelet, xi):
    _require_gompertz(w)
    xi = np.asarray(xi, dtype=float)
    value = _spectral_constant(w.order) * xi ** (2 * w.order - 2) * gamma_modulus_sq(xi)
    return float(value) if value.ndim == 0 else value


def fourier_transform(w: MotherWavelet, xi):
    """Complex spectrum sqrt(c) (i xi)^(n-1) Gamma(1 + i xi)."""
    _require_gompertz(w)
    xi = np.asarray(xi, dtype=float)
    gamma = np.exp(special.loggamma(1.0 + 1j * xi))
    value = sqrt(_spectral_constant(w.order)) * (1j * xi) ** (w.order - 1) * gamma
    return complex(value) if value.ndim == 0 else value


def fourier_modulus_sq_numeric(
    w: MotherWavelet,
    xi: float,
    lower: float = -20.0,
    upper: float = 40.0,
    step: float = 1e-3,
) -> float:
    """|psi_hat(xi)|^2 from a dense trapezoidal Fourier sum of sampled psi."""
    t = np.arange(lower, upper + step / 2, step)
    integrand = w(t) * np.exp(-1j * xi * t)
    transform = np.trapezoid(integrand, t) / sqrt(2 * pi)
    return float(abs(transform) ** 2)


def admissibility_closed_form(n: int) -> float:
    if not 2 <= n <= ADMISSIBILITY_MAX_ORDER:
        raise DomainError(f"admissibility order must be in 2..{ADMISSIBILITY_MAX_ORDER}, got {n}")
    rational = Fraction(n * (2 ** (2 * n - 1) - 1) * factorial(2 * n - 2)) / (
        abs(bernoulli(2 * n)) * (2 ** (2 * n) - 1) * 2 ** (2 * n - 4)
    )
    return float(rational) * zeta(2 * n - 1) / pi ** (2 * n - 2)


def admissibility_quadrature(n: int) -> float:
    """2 pi times the integral of |psi_hat|^2 / |xi| over the real line."""
    if not 2 <= n <= ADMISSIBILITY_MAX_ORDER:
        raise DomainError(f"admissibility order must be in 2..{ADMISSIBILITY_MAX_ORDER}, got {n}")
    constant = _spectral_constant(n)

    def integrand(xi: float) -> float:
        return constant * xi ** (2 * n - 3) * gamma_modulus_sq(xi)

    # the integrand is even in xi
    return 2 * pi * 2 * integrate_1d(integrand, 0.0, _XI_MAX)


def admissibility_constant(n: int) -> AdmissibilityResult:
    closed = admissibility_closed_form(n)
    numeric = admissibility_quadrature(n)
    return AdmissibilityResult(
        order=n,
        closed_form=closed,
        quadrature=numeric,
        relative_gap=abs(closed - numeric) / closed,
    )


def spectral_energy(w: MotherWavelet) -> float:
    """Integral of |psi_hat|^2, equal to ||psi||^2 = 1 by Plancherel."""
    return 2 * integrate_1d(lambda xi: fourier_modulus_sq(w, xi), 0.0, _XI_MAX)


def _window(w: MotherWavelet | ChildWavelet) -> tuple[float, float, float]:
    if isinstance(w, ChildWavelet):
        low, high = QUADRATURE_WINDOW[w.mother.family]
        return w.b + w.a * low, w.b + w.a * high, w.b
    low, high = QUADRATURE_WINDOW[w.family]
    return low, high, 0.0


def wavelet_mean(w: MotherWavelet | ChildWavelet) -> float:
    low, high, centre = _window(w)
    return integrate_1d(lambda t: float(w(t)), low, high, breakpoints=(centre,))


def wavelet_norm(w: MotherWavelet | ChildWavelet) -> float:
    low, high, centre = _window(w)
    return sqrt(integrate_1d(lambda t: float(w(t)) ** 2, low, high, breakpoints=(centre,)))


def gompertz_integral_facts() -> IntegralFacts:
    """Integrals of x'', |x''| and (x'')^2 at standard parameters."""
    params = GompertzParams.standard()
    low, high = QUADRATURE_WINDOW[WaveletFamily.GOMPERTZ]

    def second(t: float) -> float:
        return gompertz_derivative(params, 2, t)

    return IntegralFacts(
        mean=integrate_1d(second, low, high, breakpoints=(0.0,)),
        abs_integral=integrate_1d(lambda t: abs(second(t)), low, high, breakpoints=(0.0,)),
        sq_integral=integrate_1d(lambda t: second(t) ** 2, low, high, breakpoints=(0.0,)),
    )


def derivative_square_quadrature(n: int) -> float:
    params = GompertzParams.standard()
    low, high = QUADRATURE_WINDOW[WaveletFamily.GOMPERTZ]
    return integrate_1d(lambda t: gompertz_derivative(params, n, t) ** 2, low, high, breakpoints=(0.0,))


__all__ = [
    "ADMISSIBILITY_MAX_ORDER",
    "WaveletFamily",
    "EFFECTIVE_SUPPORT",
    "QUADRATURE_WINDOW",
    "MotherWavelet",
    "ChildWavelet",
    "AdmissibilityResult",
    "IntegralFacts",
    "logistic_second_derivative",
    "derivative_square_integral",
    "derivative_l1_bound",
    "mother_gompertz",
    "mother_logistic2",
    "mother_wavelet",
    "evaluate",
    "saturation_factor",
    "fourier_modulus_sq",
    "fourier_transform",
    "fourier_modulus_sq_numeric",
    "admissibility_closed_form",
    "admissibility_quadrature",
    "admissibility_constant",
    "spectral_energy",
    "wavelet_mean",
    "wavelet_norm",
    "gompertz_integral_facts",
    "derivative_square_quadrature",
]
