from math import comb

import numpy as np
import pytest

from fracspectral.core.specialfn import falling_factorial
from fracspectral.core.substcoeffs import (
    build_coeff_table,
    chain_rule_apply,
    coefficient_by_convolution,
    weighted_falling_sum,
)
from fracspectral.errors import DomainError, InvalidParameterError


def test_table_edges():
    a = 1.5
    table = build_coeff_table(a, 5)
    for j in range(1, 6):
        assert table.coeff(0, j) == pytest.approx(falling_factorial(a, j))
        assert table.coeff(j - 1, j) == pytest.approx(a ** j)
        assert table.coeff(j, j) == 0.0
    assert table.coeff(-1, 3) == 0.0


def test_recurrence_against_hand_expansion():
    # t^2 Y'' coefficients of D_y^3 and D_y^4 applied to Y(y^a), expanded by hand
    a = 1.75
    table = build_coeff_table(a, 4)
    assert table.coeff(1, 3) == pytest.approx(3 * a ** 2 * (a - 1))
    assert table.coeff(1, 4) == pytest.approx(a ** 2 * (a - 1) * (7 * a - 11))


@pytest.mark.parametrize("a", [1.5, 2.0, 3.25])
def test_convolution_identity(a):
    table = build_coeff_table(a, 4)
    for j in range(2, 5):
        for i in range(1, j):
            assert coefficient_by_convolution(table, i, j) == pytest.approx(table.coeff(i, j), rel=1e-12)
    with pytest.raises(DomainError):
        coefficient_by_convolution(table, 0, 3)


@pytest.mark.parametrize("a,p", [(1.5, 2.0), (3.5, 0.7), (2.0, 3.0)])
def test_weighted_falling_sum_matches_power_rule(a, p):
    # D_y^s y^(a p) = (a p)_s y^(a p - s) must agree with the chain rule applied to t^p
    table = build_coeff_table(a, 6)
    for s in range(1, 7):
        assert weighted_falling_sum(table, p, s) == pytest.approx(falling_factorial(a * p, s), rel=1e-10, abs=1e-10)


def test_chain_rule_apply_on_power():
    a, p, y, s = 2.5, 1.3, 0.6, 3
    table = build_coeff_table(a, s)
    t = y ** a
    t_derivatives = [falling_factorial(p, j) * t ** (p - j) for j in range(1, s + 1)]
    expected = falling_factorial(a * p, s) * y ** (a * p - s)
    assert chain_rule_apply(table, t_derivatives, y) == pytest.approx(expected, rel=1e-12)


def test_invalid_arguments():
    with pytest.raises(InvalidParameterError):
        build_coeff_table(1.5, 0)
    table = build_coeff_table(1.5, 2)
    with pytest.raises(DomainError):
        chain_rule_apply(table, [1.0, 1.0], 0.0)
    with pytest.raises(DomainError):
        chain_rule_apply(table, [1.0, 1.0, 1.0], 0.5)
    with pytest.raises(DomainError):
        weighted_falling_sum(table, 1.0, 3)


def test_identities_on_random_pairs():
    rng = np.random.default_rng(2024)
    for a, x in zip(rng.uniform(1.0, 16.0, 100), rng.uniform(0.0, 3.0, 100)):
        table = build_coeff_table(a, 10)
        for s in range(1, 11):
            terms = [falling_factorial(x, j) * table.coeff(j - 1, s) for j in range(1, s + 1)]
            scale = sum(abs(t) for t in terms) + abs(falling_factorial(a * x, s))
            assert abs(weighted_falling_sum(table, x, s) - falling_factorial(a * x, s)) <= 1e-10 * scale
        for j in range(2, 11):
            for i in range(1, j):
                pieces = [comb(j - 1, s) * falling_factorial(a, j - s) * table.coeff(i - 1, s) for s in range(i, j)]
                expected = table.coeff(i, j)
                assert abs(coefficient_by_convolution(table, i, j) - expected) <= 1e-10 * (sum(abs(p) for p in pieces) + abs(expected))
