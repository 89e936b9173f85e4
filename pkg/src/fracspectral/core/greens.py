"""
Green's function of Y^(2k) = f with Y^(s)(0) = Y^(s)(1) = 0, s < k,
and the weighted symmetric kernel of the eigenvalue integral equation
"""

import math
from dataclasses import dataclass
from math import comb, factorial
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial

from fracspectral.errors import DomainError, InvalidParameterError

MAX_K = 8


@dataclass(frozen=True)
class KernelSpec:
    k: int
    m: float

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise InvalidParameterError(f"k={self.k} must lie in [1, {MAX_K}]")
        if not 0.0 <= self.m < self.k:
            raise InvalidParameterError(f"m must satisfy 0 <= m < k, got m={self.m}, k={self.k}")
        if self.m > 0 and float(self.m).is_integer():
            raise InvalidParameterError(f"m must not be a positive integer, got m={self.m}")

    @property
    def a(self) -> float:
        """Substitution exponent 2k - m."""
        return 2 * self.k - self.m

    @property
    def prefactor(self) -> float:
        return -1.0 / factorial(2 * self.k - 1)


def _lower_poly(y, xi, k: int):
    # G1 without the domain check; y, xi broadcast as numpy arrays
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    total = np.zeros(np.broadcast(y, xi).shape)
    for i in range(k):
        outer = (-1) ** i * comb(2 * k - 1, i) * y ** (k - i - 1)
        for j in range(k - i):
            total = total + outer * comb(k - 1 + j, j) * xi ** (j + i)
    return (1.0 - xi) ** k * y ** k * total


def lower_branch(y, xi, k: int):
    """G1 continued off its triangle, vectorized."""
    return _lower_poly(y, xi, k)


def upper_branch(y, xi, k: int):
    """G2 continued off its triangle, vectorized."""
    return _lower_poly(xi, y, k)


def _check_unit(y: float, xi: float) -> None:
    if not (0.0 <= y <= 1.0 and 0.0 <= xi <= 1.0):
        raise DomainError(f"(y, xi)=({y}, {xi}) outside the unit square")


def green_lower(y: float, xi: float, k: int) -> float:
    _check_unit(y, xi)
    if y > xi:
        raise DomainError(f"G1 is defined for y <= xi, got y={y}, xi={xi}")
    return float(_lower_poly(y, xi, k))


def green_upper(y: float, xi: float, k: int) -> float:
    _check_unit(y, xi)
    if xi > y:
        raise DomainError(f"G2 is defined for xi <= y, got y={y}, xi={xi}")
    return float(_lower_poly(xi, y, k))


def green(y: float, xi: float, k: int) -> float:
    _check_unit(y, xi)
    branch = _lower_poly(y, xi, k) if y <= xi else _lower_poly(xi, y, k)
    return float(branch) * -1.0 / factorial(2 * k - 1)


def green_matrix(ys, xis, k: int) -> np.ndarray:
    """G(ys[i], xis[j]) for all pairs."""
    y = np.asarray(ys, dtype=float)[:, None]
    xi = np.asarray(xis, dtype=float)[None, :]
    values = np.where(y <= xi, _lower_poly(y, xi, k), _lower_poly(xi, y, k))
    return values * (-1.0 / factorial(2 * k - 1))


def weighted_kernel_matrix(ys, xis, spec: KernelSpec) -> np.ndarray:
    """Kernel xi^(-m/2) (-1)^k G(y, xi) y^(-m/2), continued by 0 on y = 0 and xi = 0."""
    ys = np.asarray(ys, dtype=float)
    xis = np.asarray(xis, dtype=float)
    values = (-1) ** spec.k * green_matrix(ys, xis, spec.k)
    if spec.m == 0.0:
        return values
    with np.errstate(divide="ignore"):
        left = np.where(ys > 0.0, ys ** (-spec.m / 2.0), 0.0)
        right = np.where(xis > 0.0, xis ** (-spec.m / 2.0), 0.0)
    return left[:, None] * values * right[None, :]


def weighted_kernel(y: float, xi: float, spec: KernelSpec) -> float:
    _check_unit(y, xi)
    return float(weighted_kernel_matrix([y], [xi], spec)[0, 0])


def _branch_polynomials(y: float, k: int) -> Tuple[Polynomial, Polynomial]:
    """G1(y, .) and G2(y, .) without the prefactor, as polynomials in xi."""
    inner = np.zeros(k)
    upper = np.zeros(2 * k)
    for i in range(k):
        for j in range(k - i):
            c = (-1) ** i * comb(2 * k - 1, i) * comb(k - 1 + j, j)
            inner[j + i] += c * y ** (k - i - 1)
            upper[2 * k - i - 1] += c * y ** (j + i)
    lower = Polynomial([1.0, -1.0]) ** k * Polynomial(inner) * y ** k
    return lower, Polynomial(upper) * (1.0 - y) ** k


def weighted_square_norm(y: float, spec: KernelSpec) -> float:
    """int_0^1 xi^(-m) G(y, xi)^2 dxi, integrated monomial by monomial on (0, y) and (y, 1)."""
    _check_unit(y, 0.0)
    if y == 0.0:
        return 0.0
    lower, upper = _branch_polynomials(y, spec.k)
    below_coef = (upper ** 2).coef
    above_coef = (lower ** 2).coef
    # m is 0 or non-integer, so no exponent d + 1 - m vanishes
    below = [c * y ** (d + 1.0 - spec.m) / (d + 1.0 - spec.m) for d, c in enumerate(below_coef)]
    above = [c * (1.0 - y ** (d + 1.0 - spec.m)) / (d + 1.0 - spec.m) for d, c in enumerate(above_coef)]
    return math.fsum(below + above) * spec.prefactor ** 2
