from math import e, exp, log, sqrt

import numpy as np
import pytest

from gompertz_wavelets.exceptions import DomainError
from gompertz_wavelets.gompertz import (
    MAX_DERIVATIVE_ORDER,
    GompertzParams,
    check_order,
    gompertz_derivative,
    gompertz_value,
    gumbel_pdf,
    landmarks,
    stirling_coefficients,
)
from gompertz_wavelets.quadrature import integrate_1d

STANDARD = GompertzParams.standard()


def test_value_at_inflection():
    p = GompertzParams(x_max=100.0, s=0.15, t0=10.0)
    assert gompertz_value(p, 10.0) == pytest.approx(100.0 / e, rel=1e-12)
    assert gompertz_value(STANDARD, 0.0) == pytest.approx(1 / e, rel=1e-12)


def test_value_direct():
    assert gompertz_value(STANDARD, 3.0) == pytest.approx(exp(-exp(-3.0)), rel=1e-14)
    assert gompertz_value(STANDARD, 3.0) == pytest.approx(0.951431, abs=1e-6)


def test_value_is_increasing_and_bounded():
    t = np.linspace(-5, 40, 500)
    x = gompertz_value(GompertzParams(x_max=7.0, s=0.5, t0=3.0), t)
    assert np.all(np.diff(x) >= 0)
    assert np.all((x >= 0) & (x <= 7.0))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"x_max": 0.0, "s": 1.0, "t0": 0.0},
        {"x_max": 1.0, "s": -1.0, "t0": 0.0},
        {"x_max": 1.0, "s": 1.0, "t0": float("nan")},
    ],
)
def test_params_reject_invalid(kwargs):
    with pytest.raises(DomainError):
        GompertzParams(**kwargs)


def test_from_scale_and_initial_value():
    p = GompertzParams.from_scale(100_000.0, 8.0, 25.0)
    assert p.s == pytest.approx(1 / 8)
    assert p.t0 == 25.0

    p = GompertzParams.from_initial_value(x_max=10.0, s=0.3, x0=1.0)
    assert gompertz_value(p, 0.0) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        GompertzParams.from_initial_value(x_max=10.0, s=0.3, x0=12.0)


def test_second_derivative_vanishes_at_inflection():
    assert gompertz_derivative(STANDARD, 2, 0.0) == pytest.approx(0.0, abs=1e-15)
    p = GompertzParams(x_max=250.0, s=0.07, t0=-4.0)
    assert gompertz_derivative(p, 2, p.t0) == pytest.approx(0.0, abs=1e-12)


def test_third_derivative_vanishes_at_t1():
    t1 = -log((3 + sqrt(5)) / 2)
    assert gompertz_derivative(STANDARD, 3, t1) == pytest.approx(0.0, abs=1e-14)


def test_first_derivative_solves_ode():
    rng = np.random.default_rng(7)
    t = rng.uniform(-5, 5, 50)
    x = gompertz_value(STANDARD, t)
    assert gompertz_derivative(STANDARD, 1, t) == pytest.approx(x * np.log(1 / x), rel=1e-12)


def test_expanded_forms_for_orders_two_and_three():
    p = GompertzParams(x_max=3.0, s=0.4, t0=1.5)
    t = np.linspace(-3, 12, 40)
    x = gompertz_value(p, t)
    u = np.exp(-p.s * (t - p.t0))
    assert gompertz_derivative(p, 2, t) == pytest.approx(p.s**2 * x * (u**2 - u), rel=1e-12, abs=1e-15)
    assert gompertz_derivative(p, 3, t) == pytest.approx(
        p.s**3 * x * (u**3 - 3 * u**2 + u), rel=1e-12, abs=1e-15
    )


def test_fourth_derivative_matches_finite_differences():
    h = 1e-3
    t = 0.5
    fd = (gompertz_derivative(STANDARD, 3, t + h) - gompertz_derivative(STANDARD, 3, t - h)) / (2 * h)
    assert gompertz_derivative(STANDARD, 4, t) == pytest.approx(fd, rel=1e-5)


@pytest.mark.parametrize("n", range(1, 7))
def test_derivative_chain(n):
    h = 1e-4
    t = np.array([-1.3, -0.2, 0.4, 1.7, 3.1])
    fd = (gompertz_derivative(STANDARD, n, t + h) - gompertz_derivative(STANDARD, n, t - h)) / (2 * h)
    exact = gompertz_derivative(STANDARD, n + 1, t)
    assert exact == pytest.approx(fd, rel=1e-6, abs=1e-9)


def test_derivative_is_finite_far_out():
    t = np.array([-200.0, -20.0, 200.0, 1e4])
    for n in range(1, MAX_DERIVATIVE_ORDER + 1):
        assert np.all(np.isfinite(gompertz_derivative(STANDARD, n, t)))


def test_stirling_coefficients():
    assert stirling_coefficients(2) == [0, -1, 1]
    assert stirling_coefficients(3) == [0, 1, -3, 1]


@pytest.mark.parametrize("n", [0, MAX_DERIVATIVE_ORDER + 1, 2.5, True])
def test_order_out_of_range(n):
    with pytest.raises(DomainError):
        check_order(n)


def test_landmarks():
    lm = landmarks(GompertzParams(x_max=100.0, s=0.15, t0=10.0))
    assert lm.x_at_t0 == pytest.approx(100 / e)
    assert lm.x_at_t1 == pytest.approx(7.29, abs=0.01)

    lm = landmarks(STANDARD)
    assert lm.t1 == pytest.approx(-0.9624, abs=1e-4)
    assert gompertz_derivative(STANDARD, 3, lm.t1) == pytest.approx(0.0, abs=1e-14)


def test_gumbel_identity():
    t = np.linspace(-4, 10, 30)
    assert gumbel_pdf(t) == pytest.approx(np.exp(-np.exp(-t)) * np.exp(-t), rel=1e-13)
    assert integrate_1d(gumbel_pdf, -40.0, 40.0, breakpoints=(0.0,)) == pytest.approx(1.0, abs=1e-10)
