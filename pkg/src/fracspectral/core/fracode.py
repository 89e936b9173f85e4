"""
Per-mode fractional initial value problem D^alpha X = -lambda X, 1 < alpha < 2

X_1(x) = x^(alpha-1) E(-lambda x^alpha, alpha)
X_2(x) = x^(alpha-2) E(-lambda x^alpha, alpha - 1)
X(x)   = Gamma(alpha) phi X_1(x) + Gamma(alpha - 1) psi X_2(x)

with x^(2-alpha) X -> psi and d/dx[x^(2-alpha) X] -> phi as x -> 0+.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import special

from fracspectral.core.specialfn import gamma, mittag_leffler_value, reciprocal_gamma
from fracspectral.errors import DomainError, InvalidParameterError, ResolutionError

PowerTerm = Tuple[float, float]  # (exponent, coefficient)

LIMIT_STEP_FRACTION = 1.0 / 50.0
RL_STEP_FRACTION = 1.0 / 64.0
RL_PANELS = 60
RL_POINTS = 8
RL_GRADING = 1.15
SERIES_SAFE_ARGUMENT = 10.0


def _check_alpha(alpha: float) -> None:
    if not 1.0 < alpha < 2.0:
        raise InvalidParameterError(f"fractional order alpha={alpha} must satisfy 1 < alpha < 2")


def _check_x(x: float) -> None:
    if x <= 0.0:
        raise DomainError(f"mode factors are defined for x > 0, got {x}")


@dataclass(frozen=True)
class ModeSolution:
    lam: float
    alpha: float
    phi: float
    psi: float

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.lam < 0.0:
            raise InvalidParameterError(f"mode eigenvalue must be non-negative, got {self.lam}")

    @property
    def is_zero(self) -> bool:
        return self.phi == 0.0 and self.psi == 0.0

    @property
    def leading_exponent(self) -> float:
        return self.alpha - 2.0 if self.psi != 0.0 else self.alpha - 1.0

    def __call__(self, x: float) -> float:
        return solve_mode_ivp(self, x)

    def values(self, xs) -> np.ndarray:
        return np.array([solve_mode_ivp(self, float(x)) for x in np.atleast_1d(xs)])

    def scaled(self, x: float) -> float:
        """x^(2-alpha) X(x)."""
        _check_x(x)
        if self.is_zero:
            return 0.0
        z = -self.lam * x ** self.alpha
        first = self.phi * gamma(self.alpha) * x * mittag_leffler_value(self.alpha, self.alpha, z) if self.phi else 0.0
        second = self.psi * gamma(self.alpha - 1.0) * mittag_leffler_value(self.alpha, self.alpha - 1.0, z) if self.psi else 0.0
        return first + second

    def scaled_derivative(self, x: float) -> float:
        """d/dx [x^(2-alpha) X(x)] by a 5-point central difference with h = x/50."""
        h = x * LIMIT_STEP_FRACTION
        return (-self.scaled(x + 2 * h) + 8 * self.scaled(x + h) - 8 * self.scaled(x - h) + self.scaled(x - 2 * h)) / (12 * h)

    def power_series(self, count: int = 60) -> List[PowerTerm]:
        return mode_power_series(self, count)


def x1_solution(lam: float, alpha: float, x: float) -> float:
    _check_alpha(alpha)
    _check_x(x)
    return x ** (alpha - 1.0) * mittag_leffler_value(alpha, alpha, -lam * x ** alpha)


def x2_solution(lam: float, alpha: float, x: float) -> float:
    _check_alpha(alpha)
    _check_x(x)
    return x ** (alpha - 2.0) * mittag_leffler_value(alpha, alpha - 1.0, -lam * x ** alpha)


def solve_mode_ivp(mode: ModeSolution, x: float) -> float:
    _check_x(x)
    if mode.is_zero:
        return 0.0
    total = 0.0
    if mode.phi:
        total += gamma(mode.alpha) * mode.phi * x1_solution(mode.lam, mode.alpha, x)
    if mode.psi:
        total += gamma(mode.alpha - 1.0) * mode.psi * x2_solution(mode.lam, mode.alpha, x)
    return total


def mode_series_terms(lam: float, alpha: float, mu: float, x: float, count: int) -> np.ndarray:
    """|(-lam x^alpha)^j / Gamma(alpha j + mu)| for j < count, in log space."""
    j = np.arange(count)
    z = lam * x ** alpha
    if z == 0.0:
        return np.where(j == 0, abs(reciprocal_gamma(mu)), 0.0)
    return np.exp(j * math.log(z) - special.gammaln(alpha * j + mu))


def mode_power_series(mode: ModeSolution, count: int = 60) -> List[PowerTerm]:
    """Truncated power series of X as (exponent, coefficient) pairs."""
    alpha = mode.alpha
    terms: List[PowerTerm] = []
    for j in range(count):
        sign = (-mode.lam) ** j
        if mode.phi:
            terms.append((alpha * j + alpha - 1.0, gamma(alpha) * mode.phi * sign * reciprocal_gamma(alpha * j + alpha)))
        if mode.psi:
            terms.append((alpha * j + alpha - 2.0, gamma(alpha - 1.0) * mode.psi * sign * reciprocal_gamma(alpha * j + alpha - 1.0)))
    return terms


def rl_derivative_power_series(coeffs: Iterable[PowerTerm], alpha: float, x: float) -> float:
    """
    Term-wise Riemann-Liouville derivative sum c Gamma(b+1)/Gamma(b+1-alpha) x^(b-alpha).
    1/Gamma vanishes at the poles, so x^(alpha-1) and x^(alpha-2) map to 0.
    """
    _check_x(x)
    total = []
    for exponent, coefficient in coeffs:
        if exponent <= -1.0:
            raise DomainError(f"exponent {exponent} is not locally integrable at 0")
        if coefficient == 0.0:
            continue
        lower = exponent + 1.0 - alpha
        if lower <= 0.0 and float(lower).is_integer():
            continue
        total.append(coefficient * float(special.poch(lower, alpha)) * x ** (exponent - alpha))
    return math.fsum(total)


def rl_derivative_mode(mode: ModeSolution, x: float) -> float:
    """D^alpha X: the power rule while lam x^alpha <= 10, the Mittag-Leffler shift identity beyond."""
    _check_x(x)
    if mode.is_zero:
        return 0.0
    alpha = mode.alpha
    z = -mode.lam * x ** alpha
    if -z <= SERIES_SAFE_ARGUMENT:
        return rl_derivative_power_series(mode_power_series(mode), alpha, x)
    # D^alpha [x^(b-1) E(z, b)] = x^(b-alpha-1) E(z, b - alpha) = x^(b-alpha-1) [z E(z, b) + 1/Gamma(b - alpha)]
    total = 0.0
    for b, weight in ((alpha, gamma(alpha) * mode.phi), (alpha - 1.0, gamma(alpha - 1.0) * mode.psi)):
        if weight:
            total += weight * x ** (b - alpha - 1.0) * (z * mittag_leffler_value(alpha, b, z) + reciprocal_gamma(b - alpha))
    return total


def _panel_rule(t: float, order: float, leading: float, panels: int, points: int, grading: float):
    # geometric panels toward 0; Jacobi weights absorb tau^leading on the first and (t - tau)^(order-1) on the last
    widths = grading ** np.arange(panels, dtype=float)
    edges = t * np.concatenate(([0.0], np.cumsum(widths))) / widths.sum()
    x, w = np.polynomial.legendre.leggauss(points)
    xl, wl = special.roots_jacobi(points, 0.0, leading)
    xr, wr = special.roots_jacobi(points, order - 1.0, 0.0)
    nodes, weights = [], []
    for index, (left, right) in enumerate(zip(edges[:-1], edges[1:])):
        half = (right - left) / 2.0
        if index == 0:
            tau = left + half * (xl + 1.0)
            weights.append(wl * half ** (leading + 1.0) * tau ** (-leading) * (t - tau) ** (order - 1.0))
        elif index == panels - 1:
            tau = left + half * (xr + 1.0)
            weights.append(wr * half ** order)
        else:
            tau = left + half * (x + 1.0)
            weights.append(w * half * (t - tau) ** (order - 1.0))
        nodes.append(tau)
    return np.concatenate(nodes), np.concatenate(weights)


def fractional_integral(
    f: Callable[[np.ndarray], np.ndarray],
    order: float,
    t: float,
    leading_exponent: float = 0.0,
    panels: int = RL_PANELS,
    points: int = RL_POINTS,
    grading: float = RL_GRADING,
) -> float:
    """(1/Gamma(order)) int_0^t f(tau) (t - tau)^(order-1) dtau for f ~ tau^leading_exponent near 0."""
    if panels < 2:
        raise ResolutionError(f"the graded mesh needs at least 2 panels, got {panels}")
    if leading_exponent <= -1.0:
        raise DomainError(f"leading exponent {leading_exponent} is not integrable at 0")
    nodes, weights = _panel_rule(t, order, leading_exponent, panels, points, grading)
    return float(np.dot(weights, f(nodes))) / gamma(order)


def rl_derivative_numeric(
    f: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    x: float,
    leading_exponent: float = 0.0,
    panels: int = RL_PANELS,
    points: int = RL_POINTS,
    grading: float = RL_GRADING,
    tolerance: Optional[float] = None,
) -> float:
    """
    (1/Gamma(2-alpha)) d^2/dx^2 int_0^x f(tau) (x - tau)^(1-alpha) dtau, the outer
    derivative by a central 5-point stencil with h = x/64.

    With `tolerance` set, the value is recomputed on a mesh with twice the
    points per panel and a ResolutionError is raised when the two disagree.
    """
    _check_alpha(alpha)
    _check_x(x)

    def evaluate(points_per_panel: int) -> float:
        h = x * RL_STEP_FRACTION
        samples = [
            fractional_integral(f, 2.0 - alpha, x + s * h, leading_exponent, panels, points_per_panel, grading)
            for s in (-2, -1, 0, 1, 2)
        ]
        return (-samples[0] + 16 * samples[1] - 30 * samples[2] + 16 * samples[3] - samples[4]) / (12 * h * h)

    value = evaluate(points)
    if tolerance is not None:
        refined = evaluate(2 * points)
        gap = abs(refined - value)
        logger.debug(f"[rl x={x}] graded mesh gap {gap:.2e}")
        if gap > tolerance * max(1.0, abs(refined)):
            raise ResolutionError(f"graded mesh with {panels} panels x {points} points misses tolerance {tolerance:.1e} at x={x} (gap {gap:.2e})")
        return refined
    return value


def mode_bound(mode: ModeSolution, xs: Sequence[float]) -> float:
    """Smallest M1 with |X(x)| <= M1 (|phi| + |psi|/x) over the sampled x."""
    if mode.is_zero:
        return 0.0
    return max(abs(solve_mode_ivp(mode, x)) / (abs(mode.phi) + abs(mode.psi) / x) for x in xs)
