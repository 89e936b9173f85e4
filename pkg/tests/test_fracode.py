import math

import numpy as np
import pytest

from fracspectral.core.fracode import (
    ModeSolution,
    fractional_integral,
    mode_bound,
    mode_power_series,
    mode_series_terms,
    rl_derivative_mode,
    rl_derivative_numeric,
    rl_derivative_power_series,
    solve_mode_ivp,
    x1_solution,
    x2_solution,
)
from fracspectral.core.specialfn import gamma
from fracspectral.errors import DomainError, InvalidParameterError, ResolutionError


def test_zero_eigenvalue_gives_powers():
    mode = ModeSolution(lam=0.0, alpha=1.5, phi=0.7, psi=-0.3)
    for x in (0.1, 0.5, 1.0):
        assert mode(x) == pytest.approx(0.7 * x ** 0.5 - 0.3 * x ** -0.5, rel=1e-13)
        assert mode.scaled(x) == pytest.approx(0.7 * x - 0.3, rel=1e-13)


def test_basis_solutions():
    lam, alpha, x = 3.0, 1.4, 0.8
    assert x1_solution(0.0, alpha, x) == pytest.approx(x ** (alpha - 1) / gamma(alpha), rel=1e-13)
    assert x2_solution(0.0, alpha, x) == pytest.approx(x ** (alpha - 2) / gamma(alpha - 1), rel=1e-13)
    mode = ModeSolution(lam=lam, alpha=alpha, phi=1.0, psi=0.0)
    assert solve_mode_ivp(mode, x) == pytest.approx(gamma(alpha) * x1_solution(lam, alpha, x), rel=1e-14)


def test_initial_conditions_are_recovered():
    mode = ModeSolution(lam=5.0, alpha=1.5, phi=0.7, psi=-0.3)
    assert mode.scaled(1e-3) == pytest.approx(-0.3, abs=1e-3)
    assert mode.scaled(1e-6) == pytest.approx(-0.3, abs=1e-6)
    assert mode.scaled_derivative(1e-8) == pytest.approx(0.7, abs=1e-3)


@pytest.mark.parametrize("lam,x", [(5.0, 0.1), (5.0, 0.5), (5.0, 1.0), (200.0, 0.8), (800.0, 1.0)])
def test_mode_satisfies_fractional_equation(lam, x):
    # both the power rule (lam x^alpha <= 10) and the shift identity (beyond)
    mode = ModeSolution(lam=lam, alpha=1.5, phi=0.4, psi=1.1)
    expected = -lam * mode(x)
    assert rl_derivative_mode(mode, x) == pytest.approx(expected, rel=1e-9, abs=1e-12 * lam)


def test_power_series_sums_to_mode():
    mode = ModeSolution(lam=3.0, alpha=1.7, phi=0.5, psi=0.25)
    x = 0.6
    total = math.fsum(c * x ** e for e, c in mode_power_series(mode))
    assert total == pytest.approx(mode(x), rel=1e-12)
    assert mode.power_series(5) == mode_power_series(mode, 5)


def test_power_rule_annihilates_the_initial_powers():
    alpha = 1.5
    assert rl_derivative_power_series([(alpha - 1.0, 1.0), (alpha - 2.0, 2.0)], alpha, 0.5) == 0.0
    # D^alpha x^2 = 2 x^(2 - alpha) / Gamma(3 - alpha)
    assert rl_derivative_power_series([(2.0, 1.0)], alpha, 0.5) == pytest.approx(2.0 * 0.5 ** 0.5 / gamma(1.5))
    with pytest.raises(DomainError):
        rl_derivative_power_series([(-1.2, 1.0)], alpha, 0.5)


def test_series_term_ratio_vanishes():
    terms = mode_series_terms(1.0, 1.5, 1.5, 1.0, 41)
    assert terms[40] < 1e-20
    ratios = terms[1:] / terms[:-1]
    assert np.all(np.diff(ratios[3:]) < 0.0)
    assert mode_series_terms(0.0, 1.5, 1.5, 1.0, 3)[1] == 0.0


def test_fractional_integral_of_power():
    # I^order tau^p = Gamma(p+1)/Gamma(p+1+order) t^(p+order)
    p, order, t = -0.5, 0.5, 0.7
    expected = gamma(p + 1) / gamma(p + 1 + order) * t ** (p + order)
    assert fractional_integral(lambda tau: tau ** p, order, t, leading_exponent=p) == pytest.approx(expected, rel=1e-10)
    with pytest.raises(DomainError):
        fractional_integral(lambda tau: tau, order, t, leading_exponent=-1.5)


def test_numeric_derivative_of_power():
    alpha, x = 1.5, 0.7
    expected = gamma(3.0) / gamma(3.0 - alpha) * x ** (2.0 - alpha)
    assert rl_derivative_numeric(lambda tau: tau ** 2, alpha, x) == pytest.approx(expected, rel=1e-7)


def test_numeric_derivative_agrees_with_closed_form():
    mode = ModeSolution(lam=4.0, alpha=1.5, phi=0.8, psi=0.6)
    for x in (0.3, 0.9):
        numeric = rl_derivative_numeric(mode.values, mode.alpha, x, leading_exponent=mode.leading_exponent, tolerance=1e-5)
        assert numeric == pytest.approx(rl_derivative_mode(mode, x), rel=1e-5, abs=1e-5)


def test_numeric_derivative_reports_poor_resolution():
    with pytest.raises(ResolutionError):
        rl_derivative_numeric(lambda tau: tau ** 0.3, 1.5, 0.5, panels=2, points=2, tolerance=1e-10)


def test_mode_bound():
    mode = ModeSolution(lam=0.0, alpha=1.5, phi=1.0, psi=1.0)
    # |X| / (1 + 1/x) = x^(alpha - 1)
    assert mode_bound(mode, [0.25, 1.0]) == pytest.approx(1.0)
    assert mode_bound(ModeSolution(3.0, 1.5, 0.0, 0.0), [0.5]) == 0.0


def test_validation():
    with pytest.raises(InvalidParameterError):
        ModeSolution(lam=1.0, alpha=2.0, phi=1.0, psi=0.0)
    with pytest.raises(InvalidParameterError):
        ModeSolution(lam=-1.0, alpha=1.5, phi=1.0, psi=0.0)
    with pytest.raises(DomainError):
        solve_mode_ivp(ModeSolution(lam=1.0, alpha=1.5, phi=1.0, psi=0.0), 0.0)
    assert ModeSolution(lam=1.0, alpha=1.5, phi=0.0, psi=0.0)(0.5) == 0.0


def test_numeric_derivative_solves_mode_equation_at_pi_squared():
    lam = math.pi ** 2
    mode = ModeSolution(lam=lam, alpha=1.5, phi=1.0, psi=0.5)
    for x in (0.25, 0.5, 0.75):
        numeric = rl_derivative_numeric(mode.values, mode.alpha, x, leading_exponent=mode.leading_exponent)
        assert abs(numeric + lam * mode(x)) <= 1e-3 * abs(lam * mode(x))
