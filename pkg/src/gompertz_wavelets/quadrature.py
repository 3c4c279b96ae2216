"""Single adaptive quadrature engine (QUADPACK Gauss-Kronrod) for every oracle integral."""

from collections.abc import Callable, Sequence

from scipy import integrate

from gompertz_wavelets.exceptions import DomainError

ABS_TOLERANCE = 1e-12
REL_TOLERANCE = 1e-12
MAX_SUBINTERVALS = 500


def integrate_1d(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    breakpoints: Sequence[float] = (),
) -> float:
    """Integrate ``func`` over [lower, upper].

    Breakpoints split the interval at known zeros or kinks (|x''| at t = 0)
    before the adaptive subdivision starts.
    """
    if not lower < upper:
        raise DomainError(f"Empty integration interval [{lower}, {upper}]")
    inner = sorted(p for p in breakpoints if lower < p < upper)
    edges = [lower, *inner, upper]
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(
            func,
            left,
            right,
            epsabs=ABS_TOLERANCE,
            epsrel=REL_TOLERANCE,
            limit=MAX_SUBINTERVALS,
        )
        total += value
    return total


__all__ = ["integrate_1d", "ABS_TOLERANCE", "REL_TOLERANCE"]
