"""The Gompertz function x(t) = x_max exp(-exp(-s (t - t0))) and its derivatives."""

from dataclasses import dataclass
from math import exp, isfinite, log, sqrt

import numpy as np
from numpy.polynomial import polynomial

from gompertz_wavelets.exceptions import DomainError
from gompertz_wavelets.special_fn import stirling2

MAX_DERIVATIVE_ORDER = 12

# log(x_max / x) is clipped here; exp(-800) is exactly 0.0 in double precision
_U_CAP_LOG = log(800.0)

GOLDEN_SQUARE = (3.0 + sqrt(5.0)) / 2.0


@dataclass(frozen=True, slots=True)
class GompertzParams:
    x_max: float
    s: float
    t0: float

    def __post_init__(self):
        if not (isfinite(self.x_max) and self.x_max > 0):
            raise DomainError(f"x_max must be positive, got {self.x_max}")
        if not (isfinite(self.s) and self.s > 0):
            raise DomainError(f"s must be positive, got {self.s}")
        if not isfinite(self.t0):
            raise DomainError(f"t0 must be finite, got {self.t0}")

    @classmethod
    def standard(cls) -> "GompertzParams":
        return cls(x_max=1.0, s=1.0, t0=0.0)

    @classmethod
    def from_scale(cls, x_max: float, a: float, b: float) -> "GompertzParams":
        """Wave written as x_max exp(-exp(-(t - b) / a))."""
        if a <= 0:
            raise DomainError(f"scale a must be positive, got {a}")
        return cls(x_max=x_max, s=1.0 / a, t0=b)

    @classmethod
    def from_initial_value(cls, x_max: float, s: float, x0: float) -> "GompertzParams":
        """Solve x(0) = x0 for t0 = log(log(x_max / x0)) / s."""
        if not 0 < x0 < x_max:
            raise DomainError(f"x0 must lie in (0, x_max), got {x0}")
        return cls(x_max=x_max, s=s, t0=log(log(x_max / x0)) / s)


@dataclass(frozen=True, slots=True)
class Landmarks:
    t0: float
    t1: float
    x_at_t0: float
    x_at_t1: float


def _log_ratio(p: GompertzParams, t):
    """u = log(x_max / x(t)) = exp(-s (t - t0)), evaluated without forming x."""
    z = np.minimum(-p.s * (np.asarray(t, dtype=float) - p.t0), _U_CAP_LOG)
    return np.exp(z)


def _as_output(value):
    return float(value) if np.ndim(value) == 0 else value


def check_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"derivative order must be in 1..{MAX_DERIVATIVE_ORDER}, got {n!r}")
    return int(n)


def gompertz_value(p: GompertzParams, t):
    u = _log_ratio(p, t)
    return _as_output(p.x_max * np.exp(-u))


def stirling_coefficients(n: int) -> list[int]:
    """Coefficients of u^0 .. u^n in sum_k (-1)^(n-k) {n k} u^k."""
    n = check_order(n)
    return [0] + [(-1) ** (n - k) * stirling2(n, k) for k in range(1, n + 1)]


def gompertz_derivative(p: GompertzParams, n: int, t):
    """n-th derivative s^n x sum_k (-1)^(n-k) {n k} log^k(x_max / x)."""
    coefficients = stirling_coefficients(n)
    u = _log_ratio(p, t)
    x = p.x_max * np.exp(-u)
    return _as_output(p.s**n * x * polynomial.polyval(u, coefficients))


def gumbel_pdf(t):
    """Standard Gumbel density, identical to x'(t) at standard parameters."""
    return gompertz_derivative(GompertzParams.standard(), 1, t)


def landmarks(p: GompertzParams) -> Landmarks:
    return Landmarks(
        t0=p.t0,
        t1=p.t0 - log(GOLDEN_SQUARE) / p.s,
        x_at_t0=p.x_max / np.e,
        x_at_t1=p.x_max * exp(-GOLDEN_SQUARE),
    )


__all__ = [
    "MAX_DERIVATIVE_ORDER",
    "GompertzParams",
    "Landmarks",
    "check_order",
    "gompertz_value",
    "stirling_coefficients",
    "gompertz_derivative",
    "gumbel_pdf",
    "landmarks",
]
