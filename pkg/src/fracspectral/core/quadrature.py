"""
Quadrature rules on (0, 1) and barycentric interpolation on their nodes
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import special

from fracspectral.errors import InvalidParameterError

GAUSS = "gauss"
GRADED = "graded"


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    family: str = GAUSS

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise InvalidParameterError(f"nodes {nodes.shape} and weights {weights.shape} must be matching vectors")
        if nodes[0] <= 0.0 or nodes[-1] >= 1.0 or np.any(np.diff(nodes) <= 0.0):
            raise InvalidParameterError("quadrature nodes must be strictly increasing inside (0, 1)")
        if np.any(weights <= 0.0):
            raise InvalidParameterError("quadrature weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise InvalidParameterError(f"quadrature weights sum to {weights.sum():.15f}, expected 1")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def gauss_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule mapped to (0, 1)."""
    if n < 2:
        raise InvalidParameterError(f"Gauss rule needs n >= 2, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule(nodes=(x + 1.0) / 2.0, weights=w / 2.0)


def graded_rule(panels: int, points_per_panel: int, ratio: float = 0.15) -> QuadratureRule:
    """Composite Gauss-Legendre on panels shrinking geometrically by `ratio` toward y = 0."""
    if panels < 1 or points_per_panel < 2 or not 0.0 < ratio < 1.0:
        raise InvalidParameterError(f"graded rule needs panels >= 1, points >= 2, 0 < ratio < 1; got {panels}, {points_per_panel}, {ratio}")
    breaks = np.concatenate(([0.0], ratio ** np.arange(panels - 1, -1, -1)))
    x, w = np.polynomial.legendre.leggauss(points_per_panel)
    nodes, weights = [], []
    for left, right in zip(breaks[:-1], breaks[1:]):
        half = (right - left) / 2.0
        nodes.append(left + half * (x + 1.0))
        weights.append(half * w)
    return QuadratureRule(nodes=np.concatenate(nodes), weights=np.concatenate(weights), family=GRADED)


def gauss_jacobi_01(n: int, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes/weights with sum w f(s) = int_0^1 s^beta f(s) ds exactly for deg f <= 2n - 1."""
    if beta <= -1.0:
        raise InvalidParameterError(f"Gauss-Jacobi weight s^{beta} is not integrable on (0, 1)")
    x, w = special.roots_jacobi(n, 0.0, beta)
    return (x + 1.0) / 2.0, w * 0.5 ** (beta + 1.0)


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    # 1 / prod_{k != j} (x_j - x_k), rescaled; logs keep 200+ nodes away from under/overflow
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    log_mag = -np.sum(np.log(np.abs(diff)), axis=1)
    sign = np.prod(np.sign(diff), axis=1)
    return sign * np.exp(log_mag - log_mag.max())


def interpolation_matrix(nodes: np.ndarray, bary: np.ndarray, points: np.ndarray) -> np.ndarray:
    """L[p, j] = l_j(points[p]) for the Lagrange basis on `nodes`."""
    points = np.asarray(points, dtype=float).reshape(-1)
    diff = points[:, None] - nodes[None, :]
    exact = diff == 0.0
    diff[exact] = 1.0
    terms = bary[None, :] / diff
    matrix = terms / terms.sum(axis=1, keepdims=True)
    hit_rows = exact.any(axis=1)
    if hit_rows.any():
        matrix[hit_rows] = exact[hit_rows].astype(float)
    return matrix
