"""Exact combinatorial tables and the few real special functions the wavelets need.

Stirling numbers of the second kind and Bernoulli numbers are built once at
import time from their recurrences in exact integer / rational arithmetic and
are read-only afterwards.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, pi

import numpy as np
from scipy import special

from gompertz_wavelets.exceptions import DomainError

# Rational carrier for exact values; Fraction keeps lowest terms with a positive denominator.
Rational = Fraction

STIRLING_MAX_N = 32
BERNOULLI_MAX_INDEX = 64

# sinh(x) overflows double precision just above x = 710
_SINH_OVERFLOW = 709.0


@dataclass(frozen=True, slots=True)
class StirlingTable:
    max_n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, max_n: int) -> "StirlingTable":
        rows = [(1,)]
        for n in range(max_n):
            prev = rows[-1]
            row = [0] * (n + 2)
            for k in range(1, n + 2):
                left = prev[k] if k <= n else 0
                row[k] = k * left + prev[k - 1]
            rows.append(tuple(row))
        return cls(max_n=max_n, entries=tuple(rows))

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or n > self.max_n:
            raise DomainError(f"stirling2 supports 0 <= n <= {self.max_n}, got n={n}")
        if k < 0 or k > n:
            return 0
        return self.entries[n][k]


@dataclass(frozen=True, slots=True)
class BernoulliTable:
    max_index: int
    values: tuple[Fraction, ...]

    @classmethod
    def build(cls, max_index: int) -> "BernoulliTable":
        # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1, which fixes B_1 = -1/2
        values = [Fraction(1)]
        for n in range(1, max_index + 1):
            if n >= 3 and n % 2 == 1:
                values.append(Fraction(0))
                continue
            acc = sum(comb(n + 1, j) * values[j] for j in range(n))
            values.append(-acc / (n + 1))
        return cls(max_index=max_index, values=tuple(values))

    def __call__(self, n: int) -> Fraction:
        if n < 0 or n > self.max_index:
            raise DomainError(f"bernoulli supports 0 <= n <= {self.max_index}, got n={n}")
        return self.values[n]


STIRLING_TABLE = StirlingTable.build(STIRLING_MAX_N)
BERNOULLI_TABLE = BernoulliTable.build(BERNOULLI_MAX_INDEX)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind {n brace k}."""
    return STIRLING_TABLE(n, k)


def stirling2_explicit(n: int, k: int) -> int:
    """{n brace k} from the alternating binomial sum, independent of the table."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    total = sum((-1) ** (k - j) * comb(k, j) * j**n for j in range(k + 1))
    return total // factorial(k)


def bell_number(n: int) -> int:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return sum(stirling2(n, k) for k in range(n + 1))


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the B_1 = -1/2 convention."""
    return BERNOULLI_TABLE(n)


def bernoulli_recurrence_holds(n: int) -> bool:
    """Exact check of sum_{j=0}^{n} C(n+1, j) B_j == 0 for n >= 1."""
    return sum(comb(n + 1, j) * bernoulli(j) for j in range(n + 1)) == 0


def gamma_modulus_sq(xi):
    """|Gamma(1 + i xi)|^2 = pi xi / sinh(pi xi), 1 at xi = 0 and 0 past sinh overflow."""
    x = np.abs(np.asarray(xi, dtype=float)) * pi
    finite = x < _SINH_OVERFLOW
    safe = np.where(finite & (x > 0), x, 1.0)
    value = np.where(x > 0, safe / np.sinh(safe), 1.0)
    value = np.where(finite, value, 0.0)
    return float(value) if value.ndim == 0 else value


def zeta(s: int) -> float:
    """Riemann zeta at an integer argument s >= 2."""
    if isinstance(s, bool) or int(s) != s or s < 2:
        raise DomainError(f"zeta is evaluated at integers s >= 2, got {s!r}")
    return float(special.zeta(int(s)))


def zeta_even_closed_form(n: int) -> float:
    """zeta(2n) = (-1)^(n+1) 2^(2n-1) pi^(2n) B_2n / (2n)!."""
    if n < 1 or 2 * n > BERNOULLI_MAX_INDEX:
        raise DomainError(f"n must satisfy 1 <= 2n <= {BERNOULLI_MAX_INDEX}, got {n}")
    coefficient = (-1) ** (n + 1) * Fraction(2 ** (2 * n - 1), factorial(2 * n)) * bernoulli(2 * n)
    return float(coefficient) * pi ** (2 * n)


__all__ = [
    "Rational",
    "StirlingTable",
    "BernoulliTable",
    "STIRLING_TABLE",
    "BERNOULLI_TABLE",
    "stirling2",
    "stirling2_explicit",
    "bell_number",
    "bernoulli",
    "bernoulli_recurrence_holds",
    "gamma_modulus_sq",
    "zeta",
    "zeta_even_closed_form",
]
