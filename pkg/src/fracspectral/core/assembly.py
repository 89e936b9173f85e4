"""
Series solution u(x, y) = sum_n X_n(x) Y_n(y) and its verification suite
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from fracspectral.core.base import BoundaryData
from fracspectral.core.eigensolver import SpectralBasis
from fracspectral.core.fracode import ModeSolution, mode_bound, rl_derivative_mode
from fracspectral.core.greens import KernelSpec, weighted_kernel_matrix
from fracspectral.core.quadrature import gauss_rule
from fracspectral.core.specialfn import gamma
from fracspectral.errors import DomainError, InvalidParameterError, ResolutionError

Function = Union[BoundaryData, Callable[[np.ndarray], np.ndarray]]

INITIAL_PROBES = (1e-1, 1e-2, 1e-3)
MIN_PROBE = 1e-4
LIMIT_TOLERANCE = 1e-3
DERIVATIVE_TOLERANCE = 1e-2
ANALYTIC_RESIDUAL_TOLERANCE = 1e-9
FD_STEP = 1e-3
EXPANSION_POINTS = 101
MERCER_POINTS = 21


@dataclass(frozen=True)
class ProblemSpec:
    k: int
    m: float
    alpha: float
    phi: BoundaryData
    psi: BoundaryData

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise InvalidParameterError(f"fractional order alpha={self.alpha} must satisfy 1 < alpha < 2")
        KernelSpec(self.k, self.m)

    @property
    def kernel(self) -> KernelSpec:
        return KernelSpec(self.k, self.m)


@dataclass(frozen=True)
class SeriesSolution:
    spec: ProblemSpec
    basis: SpectralBasis
    modes: Tuple[ModeSolution, ...]
    truncation: int

    @property
    def phi_coefficients(self) -> np.ndarray:
        return np.array([mode.phi for mode in self.modes])

    @property
    def psi_coefficients(self) -> np.ndarray:
        return np.array([mode.psi for mode in self.modes])

    @property
    def is_zero(self) -> bool:
        return all(mode.is_zero for mode in self.modes)

    def mode_values(self, xs) -> np.ndarray:
        """X_n(x): shape (len(xs), truncation)."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        return np.array([[mode(float(x)) for mode in self.modes] for x in xs]).reshape(xs.size, self.truncation)

    def eigen_values(self, ys) -> np.ndarray:
        """Y_n(y): shape (len(ys), truncation)."""
        return self.basis.extend_unweighted(ys)[:, : self.truncation]


@dataclass(frozen=True)
class Field:
    x_grid: np.ndarray
    y_grid: np.ndarray
    values: np.ndarray  # [i, j] = u(x_i, y_j)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (self.x_grid.size, self.y_grid.size):
            raise InvalidParameterError(f"field values {self.values.shape} do not match grids ({self.x_grid.size}, {self.y_grid.size})")

    def rows(self):
        for i, x in enumerate(self.x_grid):
            for j, y in enumerate(self.y_grid):
                yield float(x), float(y), float(self.values[i, j])


def _json_number(value: float) -> Optional[float]:
    # inf and nan have no plain-JSON spelling
    return float(value) if math.isfinite(value) else None


@dataclass(frozen=True)
class Check:
    value: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.bound)

    def to_dict(self) -> Dict[str, Any]:
        return {"value": _json_number(self.value), "bound": _json_number(self.bound), "pass": self.passed}


Report = Dict[str, Check]


@dataclass(frozen=True)
class Expansion:
    coefficients: np.ndarray
    error: float


def _check_grid(name: str, grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0 or grid[0] <= 0.0 or grid[-1] > 1.0 or np.any(np.diff(grid) <= 0.0):
        raise DomainError(f"{name} must be strictly increasing inside (0, 1]")
    return grid


def _coefficients(f: Function, basis: SpectralBasis, count: int) -> np.ndarray:
    if isinstance(f, BoundaryData):
        return f.coefficients(basis, count)
    rule = basis.rule
    weighted = rule.weights * rule.nodes ** (-basis.spec.m / 2.0) * np.asarray(f(rule.nodes), dtype=float)
    return basis.weighted_samples[:count] @ weighted


def _values(f: Function, ys: np.ndarray) -> np.ndarray:
    if isinstance(f, BoundaryData):
        return f.evaluate(ys)
    return np.asarray(f(ys), dtype=float)


def fourier_coefficient(f: Function, basis: SpectralBasis, n: int) -> float:
    """f_n = int y^(-m) f Y_n dy, n zero-based."""
    if not 0 <= n < basis.mode_count:
        raise DomainError(f"mode index {n} outside [0, {basis.mode_count})")
    return float(_coefficients(f, basis, n + 1)[n])


def assemble(spec: ProblemSpec, basis: SpectralBasis, truncation: int) -> SeriesSolution:
    if not 1 <= truncation <= basis.mode_count:
        raise ResolutionError(f"truncation {truncation} exceeds the {basis.mode_count} solved modes")
    if basis.spec != spec.kernel:
        raise InvalidParameterError(f"basis solved for {basis.spec}, problem needs {spec.kernel}")
    phi = spec.phi.coefficients(basis, truncation)
    psi = spec.psi.coefficients(basis, truncation)
    modes = tuple(
        ModeSolution(lam=float(lam), alpha=spec.alpha, phi=float(a), psi=float(b))
        for lam, a, b in zip(basis.eigenvalues[:truncation], phi, psi)
    )
    logger.info(f"[assemble k={spec.k} m={spec.m} alpha={spec.alpha}] ✓ {truncation} modes, phi={spec.phi.describe()}, psi={spec.psi.describe()}")
    return SeriesSolution(spec=spec, basis=basis, modes=modes, truncation=truncation)


def evaluate(solution: SeriesSolution, x_grid, y_grid) -> Field:
    x_grid = _check_grid("x_grid", x_grid)
    y_grid = _check_grid("y_grid", y_grid)
    if solution.is_zero:
        values = np.zeros((x_grid.size, y_grid.size))
    else:
        values = solution.mode_values(x_grid) @ solution.eigen_values(y_grid).T
    spec = solution.spec
    metadata = {
        "k": spec.k,
        "m": spec.m,
        "alpha": spec.alpha,
        "truncation": solution.truncation,
        "quadrature_nodes": solution.basis.rule.size,
        "scheme": solution.basis.scheme,
    }
    return Field(x_grid=x_grid, y_grid=y_grid, values=values, metadata=metadata)


def _sample_ys(count: int = MERCER_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, count + 2)[1:-1]


def verify_initial_conditions(
    solution: SeriesSolution,
    x_probe: Sequence[float] = INITIAL_PROBES,
    ys: Optional[Sequence[float]] = None,
    limit_tolerance: float = LIMIT_TOLERANCE,
    derivative_tolerance: float = DERIVATIVE_TOLERANCE,
) -> Report:
    """
    Distance of x^(2-alpha) u and d/dx[x^(2-alpha) u] from sum psi_n Y_n and sum phi_n Y_n at the smallest probe.

    Both gaps vanish only as the probe goes to 0; each bound adds the leading
    transient of the mode factors at that probe to the fixed tolerance.
    """
    if min(x_probe) < MIN_PROBE:
        raise DomainError(f"initial-condition probes stop at x={MIN_PROBE}, got {min(x_probe)}")
    ys = _sample_ys() if ys is None else np.asarray(ys, dtype=float)
    eigen = solution.eigen_values(ys)
    targets_psi = eigen @ solution.psi_coefficients
    targets_phi = eigen @ solution.phi_coefficients

    limit_error = derivative_error = 0.0
    for x in sorted(x_probe, reverse=True):
        scaled = eigen @ np.array([mode.scaled(x) for mode in solution.modes])
        slope = eigen @ np.array([mode.scaled_derivative(x) for mode in solution.modes])
        limit_error = float(np.max(np.abs(scaled - targets_psi)))
        derivative_error = float(np.max(np.abs(slope - targets_phi)))
        logger.debug(f"[initial] x={x:.1e}: limit gap {limit_error:.2e}, derivative gap {derivative_error:.2e}")

    # x^(2-alpha) X_n = psi_n [1 - c1 lam x^alpha] + phi_n x [1 - c2 lam x^alpha] + ...
    alpha, x = solution.spec.alpha, min(x_probe)
    lam = solution.basis.eigenvalues[: solution.truncation]
    phi_scale = float(np.max(np.abs(targets_phi)))
    lam_phi = float(np.max(np.abs(eigen @ (lam * solution.phi_coefficients))))
    lam_psi = float(np.max(np.abs(eigen @ (lam * solution.psi_coefficients))))
    psi_rate = gamma(alpha - 1.0) / gamma(2.0 * alpha - 1.0)
    phi_rate = gamma(alpha) / gamma(2.0 * alpha)
    limit_transient = x * phi_scale + psi_rate * x ** alpha * lam_psi
    derivative_transient = alpha * psi_rate * x ** (alpha - 1.0) * lam_psi + (1.0 + alpha) * phi_rate * x ** alpha * lam_phi
    return {
        "initial_limit": Check(limit_error, limit_tolerance + limit_transient),
        "initial_derivative": Check(derivative_error, derivative_tolerance + derivative_transient),
    }


def _second_derivative(solution: SeriesSolution, ys: np.ndarray, h: float) -> np.ndarray:
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    stencil = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
    points = (ys[:, None] + offsets[None, :] * h).ravel()
    values = solution.eigen_values(points).reshape(ys.size, offsets.size, solution.truncation)
    return np.einsum("s,psn->pn", stencil, values) / (h * h)


def verify_residual(solution: SeriesSolution, x_grid, y_grid, fd_step: float = FD_STEP) -> Report:
    """
    max |(-1)^(k+1) D^alpha u - y^m d^(2k)u/dy^(2k)| relative to the field scale.

    Analytic route: D^alpha X_n from the power rule and Y_n^(2k) from the
    eigen-relation. For k = 1 a second route differentiates the extension in y.
    """
    spec = solution.spec
    k, m = spec.k, spec.m
    x_grid = _check_grid("x_grid", x_grid)
    y_grid = _check_grid("y_grid", y_grid)
    if x_grid[0] < 0.05 or y_grid[0] < 0.1 or y_grid[-1] > 0.9:
        raise DomainError("residual grid must satisfy x >= 0.05 and 0.1 <= y <= 0.9")

    report: Report = {}
    if solution.is_zero:
        report["residual_analytic"] = Check(0.0, ANALYTIC_RESIDUAL_TOLERANCE)
        if k == 1:
            report["residual_fd"] = Check(0.0, 1e-4 if m == 0.0 else 5e-4)
        return report

    lam = solution.basis.eigenvalues[: solution.truncation]
    eigen = solution.eigen_values(y_grid)
    x_factor = solution.mode_values(x_grid)
    rl = np.array([[rl_derivative_mode(mode, float(x)) for mode in solution.modes] for x in x_grid])
    sign = (-1) ** (k + 1)

    time_part = sign * rl @ eigen.T
    space_part = ((-1) ** k * x_factor * lam[None, :]) @ eigen.T
    scale = max(float(np.max(np.abs(time_part))), float(np.max(np.abs(space_part))), np.finfo(float).tiny)
    analytic = float(np.max(np.abs(time_part - space_part))) / scale
    report["residual_analytic"] = Check(analytic, ANALYTIC_RESIDUAL_TOLERANCE)

    if k == 1:
        curvature = x_factor @ _second_derivative(solution, y_grid, fd_step).T
        fd_space = curvature * (y_grid ** m)[None, :]
        fd = float(np.max(np.abs(time_part - fd_space))) / scale
        report["residual_fd"] = Check(fd, 1e-4 if m == 0.0 else 5e-4)
    logger.debug(f"[residual] analytic {analytic:.2e}" + (f", finite-difference {report['residual_fd'].value:.2e}" if k == 1 else ""))
    return report


def expand_function(f: Function, basis: SpectralBasis, truncation: int, points: int = EXPANSION_POINTS) -> Expansion:
    """Coefficients of f in the first `truncation` modes and the sup-norm reconstruction error on a uniform grid."""
    if not 1 <= truncation <= basis.mode_count:
        raise ResolutionError(f"truncation {truncation} exceeds the {basis.mode_count} solved modes")
    coefficients = _coefficients(f, basis, truncation)
    ys = np.linspace(0.0, 1.0, points)
    reconstruction = basis.extend_unweighted(ys)[:, :truncation] @ coefficients
    error = float(np.max(np.abs(_values(f, ys) - reconstruction)))
    return Expansion(coefficients=coefficients, error=error)


def expansion_errors(f: Function, basis: SpectralBasis, truncations: Sequence[int]) -> List[float]:
    errors = [expand_function(f, basis, n).error for n in truncations]
    for (n0, e0), (n1, e1) in zip(zip(truncations, errors), zip(truncations[1:], errors[1:])):
        if e1 > e0:
            logger.warning(f"[expand] error grows from {e0:.2e} (N={n0}) to {e1:.2e} (N={n1})")
    return errors


def mercer_reconstruction(basis: SpectralBasis, truncation: int, points: int = MERCER_POINTS) -> float:
    """max |Gbar(y, xi) - sum_n Ybar_n(y) Ybar_n(xi) / lambda_n| on an interior grid."""
    if not 1 <= truncation <= basis.mode_count:
        raise ResolutionError(f"truncation {truncation} exceeds the {basis.mode_count} solved modes")
    ys = _sample_ys(points)
    kernel = weighted_kernel_matrix(ys, ys, basis.spec)
    modes = basis.extend(ys)[:, :truncation]
    approx = (modes / basis.eigenvalues[None, :truncation]) @ modes.T
    return float(np.max(np.abs(kernel - approx)))


def kernel_trace(spec: KernelSpec, nodes: int = 200) -> float:
    """int_0^1 Gbar(y, y) dy."""
    rule = gauss_rule(nodes)
    return rule.integrate(np.diag(weighted_kernel_matrix(rule.nodes, rule.nodes, spec)))


def coefficient_bound_chain(solution: SeriesSolution) -> Optional[Check]:
    """sum lambda_n^4 phi_n^2 against int y^(-m) [(y^m phi^(2k))^(2k)]^2 dy."""
    bound = solution.spec.phi.source_norm()
    if bound is None or not math.isfinite(bound):
        return None
    lam = solution.basis.eigenvalues[: solution.truncation]
    partial = float(np.sum(lam ** 4 * solution.phi_coefficients ** 2))
    return Check(partial, bound * (1.0 + 1e-10))


def tail_bound(solution: SeriesSolution, x_grid, y_grid) -> float:
    """
    Reported bound on sup |sum_{n >= N} X_n Y_n| over the grid: the solved modes
    beyond N are summed with the fitted M1, the rest extrapolated from a
    power-law fit of |phi_n| + |psi_n| / x_min.
    """
    x_grid = _check_grid("x_grid", x_grid)
    y_grid = _check_grid("y_grid", y_grid)
    spec, basis = solution.spec, solution.basis
    phi = spec.phi.coefficients(basis)
    psi = spec.psi.coefficients(basis)
    x_min = float(x_grid[0])
    weights = np.abs(phi) + np.abs(psi) / x_min
    if not np.any(weights):
        return 0.0

    modes = [ModeSolution(float(lam), spec.alpha, float(a), float(b)) for lam, a, b in zip(basis.eigenvalues, phi, psi)]
    m1 = max(mode_bound(mode, x_grid) for mode in modes)
    sup_y = np.max(np.abs(basis.extend_unweighted(y_grid)), axis=0)
    solved = float(np.sum((m1 * weights * sup_y)[solution.truncation:]))

    total = basis.mode_count
    index = np.arange(1, total + 1)
    fit_range = (index > total // 2) & (weights > 0.0)
    remainder = 0.0
    if np.count_nonzero(fit_range) >= 3:
        slope, intercept = np.polyfit(np.log(index[fit_range]), np.log(weights[fit_range]), 1)
        power = -slope
        remainder = math.inf if power <= 1.0 else math.exp(intercept) * total ** (1.0 - power) / (power - 1.0)
        remainder *= m1 * float(sup_y.max())
    logger.debug(f"[tail] M1={m1:.3g}, solved tail {solved:.2e}, extrapolated {remainder:.2e}")
    return solved + remainder
