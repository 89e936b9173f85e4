"""
Eigenpairs of Y^(2k) = (-1)^k lambda y^(-m) Y with Y^(s)(0) = Y^(s)(1) = 0, s < k

The integral-equation form Ybar = lambda int Gbar(y, xi) Ybar(xi) dxi is
discretized by Nystrom's method on a QuadratureRule. Two schemes:

  plain    B_ij = sqrt(w_i) Gbar(y_i, y_j) sqrt(w_j)
  product  the kink of Gbar on the diagonal is integrated exactly against the
           Lagrange interpolant of the unknown (Gauss-Jacobi on each side of y_i),
           then similarity-scaled by W^(1/2) and symmetrized; for m > 1 the integer
           part of m is carried by the interpolated unknown Y / xi^floor(m)

The Frobenius fundamental system, the boundary determinant and the k = 1
Bessel condition provide independent eigenvalue routes.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger
from scipy import linalg, optimize

from fracspectral.core.greens import KernelSpec, lower_branch, upper_branch, weighted_kernel_matrix, weighted_square_norm
from fracspectral.core.quadrature import (
    GAUSS,
    QuadratureRule,
    barycentric_weights,
    gauss_jacobi_01,
    gauss_rule,
    interpolation_matrix,
)
from fracspectral.core.specialfn import (
    MAX_TERMS,
    SERIES_RTOL,
    HypergeometricParams,
    bessel_j,
    bessel_j_zero,
    falling_factorial,
    hyp0fq,
)
from fracspectral.errors import (
    DomainError,
    InvalidParameterError,
    PositivityError,
    ResolutionError,
    SeriesDivergenceError,
)

PLAIN = "plain"
PRODUCT = "product"
SCHEMES = (PLAIN, PRODUCT)

DEFAULT_NODES = 200
NOISE_FACTOR = 10.0
EXTENSION_CHUNK = 48

ROOT_SCAN_STEP = math.pi / 40.0
ROOT_SCAN_START = 0.05
ROOT_MAX_SCAN_STEPS = 20_000


@dataclass(frozen=True)
class ProductData:
    """
    Barycentric weights on the rule nodes plus the Gauss-Jacobi rule for s^(shift-m) on (0, 1).

    shift = floor(m) powers of xi move from the weight into the interpolated
    unknown Y / xi^shift, keeping the Jacobi exponent above -1.
    """

    bary: np.ndarray
    jacobi_nodes: np.ndarray
    jacobi_weights: np.ndarray
    shift: int = 0


@dataclass(frozen=True)
class SpectralBasis:
    spec: KernelSpec
    rule: QuadratureRule
    eigenvalues: np.ndarray  # ascending
    weighted_samples: np.ndarray  # [n, i] = Ybar_n(y_i)
    mode_count: int
    scheme: str = PRODUCT
    product: Optional[ProductData] = None

    def extend(self, ys) -> np.ndarray:
        """Ybar_n(y) for every y in ys and every mode: shape (len(ys), mode_count)."""
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        unweighted = self.extend_unweighted(ys)
        if self.spec.m == 0.0:
            return unweighted
        with np.errstate(divide="ignore"):
            scale = np.where(ys > 0.0, ys ** (-self.spec.m / 2.0), 0.0)
        return unweighted * scale[:, None]

    def extend_unweighted(self, ys) -> np.ndarray:
        """Y_n(y) = y^(m/2) Ybar_n(y), shape (len(ys), mode_count)."""
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        if np.any((ys < 0.0) | (ys > 1.0)):
            raise DomainError(f"extension points must lie in [0, 1], got range [{ys.min()}, {ys.max()}]")
        if self.scheme == PRODUCT:
            rows = _product_rows(self.spec, self.rule, self.product, ys)
            return (rows @ self.weighted_samples.T) * self.eigenvalues[None, :]
        kernel = weighted_kernel_matrix(ys, self.rule.nodes, self.spec) * self.rule.weights[None, :]
        values = (kernel @ self.weighted_samples.T) * self.eigenvalues[None, :]
        return values * (ys ** (self.spec.m / 2.0))[:, None]

    def unweighted_samples(self) -> np.ndarray:
        return self.weighted_samples * self.rule.nodes[None, :] ** (self.spec.m / 2.0)


def _product_data(spec: KernelSpec, rule: QuadratureRule) -> ProductData:
    if rule.family != GAUSS:
        raise InvalidParameterError(f"the product scheme interpolates globally and needs a Gauss rule, got a {rule.family} rule")
    count = rule.size // 2 + spec.k + 2
    shift = math.floor(spec.m)
    s, w = gauss_jacobi_01(count, shift - spec.m)
    return ProductData(bary=barycentric_weights(rule.nodes), jacobi_nodes=s, jacobi_weights=w, shift=shift)


def _product_rows(spec: KernelSpec, rule: QuadratureRule, data: ProductData, points: np.ndarray) -> np.ndarray:
    """R[p, j] with Y(p) = lambda sum_j R[p, j] Ybar_j, integrating G against each Lagrange basis function."""
    k, m = spec.k, spec.m
    # xi^(-m) G Y = xi^(shift-m) G g with g = Y / xi^shift interpolated on the nodes
    frac = m - data.shift
    nodes = rule.nodes
    s, w = data.jacobi_nodes, data.jacobi_weights
    whole_interp = interpolation_matrix(nodes, data.bary, s)
    rows = np.empty((points.size, nodes.size))
    for start in range(0, points.size, EXTENSION_CHUNK):
        p = points[start:start + EXTENSION_CHUNK][:, None]
        whole = (lower_branch(p, s[None, :], k) * w[None, :]) @ whole_interp
        xi = p * s[None, :]
        jump = (upper_branch(p, xi, k) - lower_branch(p, xi, k)) * w[None, :]
        part_interp = interpolation_matrix(nodes, data.bary, xi.ravel()).reshape(p.size, s.size, nodes.size)
        with np.errstate(divide="ignore"):
            scale = np.where(p > 0.0, p ** (1.0 - frac), 0.0)
        part = np.einsum("pq,pqn->pn", jump, part_interp) * scale
        rows[start:start + EXTENSION_CHUNK] = whole + part
    return (-1) ** k * spec.prefactor * rows * nodes[None, :] ** (m / 2.0 - data.shift)


def build_nystrom_matrix(spec: KernelSpec, rule: QuadratureRule, scheme: str = PLAIN) -> np.ndarray:
    """Symmetric matrix whose eigenvalues approximate the kernel eigenvalues 1/lambda_n."""
    root_w = np.sqrt(rule.weights)
    if scheme == PLAIN:
        matrix = root_w[:, None] * weighted_kernel_matrix(rule.nodes, rule.nodes, spec) * root_w[None, :]
    elif scheme == PRODUCT:
        rows = _product_rows(spec, rule, _product_data(spec, rule), rule.nodes)
        collocation = rows * (rule.nodes ** (-spec.m / 2.0))[:, None]
        matrix = root_w[:, None] * collocation / root_w[None, :]
    else:
        raise InvalidParameterError(f"unknown Nystrom scheme '{scheme}', expected one of {SCHEMES}")
    return (matrix + matrix.T) / 2.0


def solve_basis(spec: KernelSpec, rule: QuadratureRule, mode_count: int, scheme: str = PRODUCT) -> SpectralBasis:
    context = f"[eigen k={spec.k} m={spec.m}]"
    if mode_count < 1:
        raise InvalidParameterError(f"mode_count must be positive, got {mode_count}")
    if 4 * mode_count > rule.size:
        raise ResolutionError(f"{mode_count} modes need at least {4 * mode_count} quadrature nodes, rule has {rule.size}")

    matrix = build_nystrom_matrix(spec, rule, scheme)
    mu, vectors = linalg.eigh(matrix)
    order = np.argsort(mu)[::-1]
    mu, vectors = mu[order], vectors[:, order]

    if mu[0] <= 0.0:
        raise PositivityError(f"{context} kernel matrix has no positive eigenvalue (max {mu[0]:.3e})")
    floor = NOISE_FACTOR * np.finfo(float).eps * mu[0]
    retained = int(np.count_nonzero(mu > floor))
    logger.debug(f"{context} {retained} of {mu.size} kernel eigenvalues above noise floor {floor:.2e}, min {mu[-1]:.2e}")
    if retained < mode_count:
        raise PositivityError(f"{context} only {retained} kernel eigenvalues exceed {floor:.2e}, {mode_count} requested")
    if -mu[-1] >= mu[mode_count - 1]:
        raise PositivityError(f"{context} negative kernel eigenvalue {mu[-1]:.3e} dominates retained mode {mu[mode_count - 1]:.3e}")

    mu = mu[:mode_count]
    samples = (vectors[:, :mode_count] / np.sqrt(rule.weights)[:, None]).T
    samples *= np.where(samples[:, 0] < 0.0, -1.0, 1.0)[:, None]

    eigenvalues = 1.0 / mu
    eigenvalues.setflags(write=False)
    samples.setflags(write=False)
    logger.info(f"{context} ✓ {mode_count} modes on {rule.size} nodes ({scheme}), lambda_1={eigenvalues[0]:.10g}")
    return SpectralBasis(
        spec=spec,
        rule=rule,
        eigenvalues=eigenvalues,
        weighted_samples=samples,
        mode_count=mode_count,
        scheme=scheme,
        product=_product_data(spec, rule) if scheme == PRODUCT else None,
    )


def _check_mode(basis: SpectralBasis, n: int) -> None:
    if not 0 <= n < basis.mode_count:
        raise DomainError(f"mode index {n} outside [0, {basis.mode_count})")


def nystrom_extend(basis: SpectralBasis, n: int, y: float) -> float:
    """Ybar_n(y) off the nodes; n is zero-based."""
    _check_mode(basis, n)
    return float(basis.extend([y])[0, n])


def unweighted_eigenfunction(basis: SpectralBasis, n: int, y: float) -> float:
    _check_mode(basis, n)
    return float(basis.extend_unweighted([y])[0, n])


def bessel_eigenvalues_k1(m: float, count: int) -> List[float]:
    """Eigenvalues for k = 1 from the zeros of J_nu, nu = 1/(2 - m)."""
    if not 0.0 <= m < 1.0:
        raise InvalidParameterError(f"the k = 1 Bessel route needs 0 <= m < 1, got {m}")
    nu = 1.0 / (2.0 - m)
    return [((2.0 - m) * bessel_j_zero(nu, n) / 2.0) ** 2 for n in range(1, count + 1)]


def bessel_reduction_k1(m: float, lam: float, y: float, order_sign: int = 1) -> float:
    """sqrt(y) J_{+-nu}(2 sqrt(lam) y^((2-m)/2) / (2-m)); +nu pairs with Y_1, -nu with Y_0."""
    nu = order_sign / (2.0 - m)
    return math.sqrt(y) * bessel_j(nu, 2.0 * math.sqrt(lam) * y ** ((2.0 - m) / 2.0) / (2.0 - m))


@dataclass(frozen=True)
class FundamentalSystem:
    spec: KernelSpec
    lam: float

    @property
    def argument_scale(self) -> float:
        return (-1) ** self.spec.k * self.lam / self.spec.a ** (2 * self.spec.k)

    def lower_params(self, i: int) -> tuple:
        a = self.spec.a
        return tuple((i - s) / a + 1.0 for s in range(2 * self.spec.k) if s != i)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < 2 * self.spec.k:
            raise DomainError(f"fundamental solution index {i} outside [0, {2 * self.spec.k})")

    def value(self, i: int, y: float) -> float:
        self._check_index(i)
        if y < 0.0:
            raise DomainError(f"fundamental solutions live on y >= 0, got {y}")
        params = HypergeometricParams(lower_params=self.lower_params(i), argument=self.argument_scale * y ** self.spec.a)
        return y ** i * hyp0fq(params)

    def derivative(self, i: int, y: float, order: int) -> float:
        """d^order/dy^order Y_i by term-wise differentiation of its power series."""
        self._check_index(i)
        if y < 0.0 or (y == 0.0 and order > i):
            raise DomainError(f"derivative of order {order} of Y_{i} undefined at y={y}")
        a = self.spec.a
        b = np.asarray(self.lower_params(i))
        z = self.argument_scale
        coeff, running = 1.0, 0.0
        terms: List[float] = []
        for j in range(MAX_TERMS):
            power = i + a * j
            ff = falling_factorial(power, order)
            term = coeff * ff * y ** (power - order) if ff != 0.0 else 0.0
            terms.append(term)
            running += term
            ratio = z / ((j + 1) * np.prod(b + j))
            if j > 0 and abs(ratio) * y ** a < 0.5 and abs(term) <= SERIES_RTOL * max(abs(running), np.finfo(float).tiny):
                break
            coeff *= ratio
        else:
            raise SeriesDivergenceError(f"derivative series of Y_{i} at y={y}, lambda={self.lam} did not converge")
        return math.fsum(terms)


def fundamental_system(spec: KernelSpec, lam: float) -> FundamentalSystem:
    return FundamentalSystem(spec=spec, lam=lam)


def frobenius_solution(spec: KernelSpec, lam: float, i: int, y: float) -> float:
    return FundamentalSystem(spec, lam).value(i, y)


def frobenius_derivative(spec: KernelSpec, lam: float, i: int, y: float, order: int) -> float:
    return FundamentalSystem(spec, lam).derivative(i, y, order)


def frobenius_residual(spec: KernelSpec, lam: float, i: int, ys: Sequence[float]) -> float:
    """max |Y_i^(2k) - (-1)^k lam y^(-m) Y_i| over ys."""
    system = FundamentalSystem(spec, lam)
    sign = (-1) ** spec.k
    return max(
        abs(system.derivative(i, y, 2 * spec.k) - sign * lam * y ** (-spec.m) * system.derivative(i, y, 0))
        for y in ys
    )


def characteristic_determinant(spec: KernelSpec, lam: float) -> float:
    """det [d^r/dy^r Y_{k+c}(1)], r, c = 0..k-1."""
    system = FundamentalSystem(spec, lam)
    k = spec.k
    matrix = np.array([[system.derivative(k + c, 1.0, r) for c in range(k)] for r in range(k)])
    return float(np.linalg.det(matrix))


def zero_lambda_determinant(k: int) -> float:
    """The boundary determinant at lambda = 0, where Y_i = y^i; nonzero for every k."""
    matrix = np.array([[falling_factorial(k + c, r) for c in range(k)] for r in range(k)])
    return float(np.linalg.det(matrix))


def characteristic_roots(spec: KernelSpec, count: int, lam_max: Optional[float] = None) -> List[float]:
    """First `count` zeros of the boundary determinant, scanned uniformly in lambda^(1/2k)."""
    power = 2 * spec.k
    s = ROOT_SCAN_START
    f_prev = characteristic_determinant(spec, s ** power)
    roots: List[float] = []
    for _ in range(ROOT_MAX_SCAN_STEPS):
        s_next = s + ROOT_SCAN_STEP
        lam_next = s_next ** power
        if lam_max is not None and lam_next > lam_max:
            break
        f_next = characteristic_determinant(spec, lam_next)
        if f_prev * f_next < 0.0:
            root = optimize.brentq(
                lambda lam: characteristic_determinant(spec, lam),
                s ** power,
                lam_next,
                xtol=1e-12,
                rtol=4 * np.finfo(float).eps,
            )
            roots.append(root)
            logger.debug(f"[det k={spec.k} m={spec.m}] root #{len(roots)} at lambda={root:.12g}")
            if len(roots) == count:
                return roots
        s, f_prev = s_next, f_next
    if lam_max is not None:
        return roots
    raise SeriesDivergenceError(f"found {len(roots)} of {count} determinant roots within {ROOT_MAX_SCAN_STEPS} scan steps")


def _first_derivative(basis: SpectralBasis, ys: np.ndarray) -> np.ndarray:
    # 5-point central stencil on the extension, step kept inside (0, 1)
    h = np.minimum(1e-3, np.minimum(ys, 1.0 - ys) / 3.0)
    offsets = np.array([-2.0, -1.0, 1.0, 2.0])
    stencil = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
    points = (ys[:, None] + offsets[None, :] * h[:, None]).ravel()
    values = basis.extend_unweighted(points).reshape(ys.size, offsets.size, basis.mode_count)
    return np.einsum("s,psn->pn", stencil, values) / h[:, None]


def rayleigh_quotient(basis: SpectralBasis, n: int, points: int = 80) -> float:
    """int (Y_n')^2 dy / int y^(-m) Y_n^2 dy; equals lambda_n for k = 1."""
    if basis.spec.k != 1:
        raise InvalidParameterError(f"the Rayleigh quotient is computed for k = 1 only, got k={basis.spec.k}")
    _check_mode(basis, n)
    rule = gauss_rule(points)
    slope = _first_derivative(basis, rule.nodes)[:, n]
    values = basis.extend(rule.nodes)[:, n]
    return rule.integrate(slope ** 2) / rule.integrate(values ** 2)


@dataclass(frozen=True)
class BesselCheck:
    y: float
    partial_sums: np.ndarray
    bound: float

    @property
    def holds(self) -> bool:
        return bool(np.all(self.partial_sums <= self.bound * (1.0 + 1e-10)))


def bessel_inequality_check(basis: SpectralBasis, ys: Sequence[float]) -> List[BesselCheck]:
    """Partial sums of (Y_n(y)/lambda_n)^2 against int xi^(-m) G(y, xi)^2 dxi."""
    ys = np.asarray(ys, dtype=float)
    values = basis.extend_unweighted(ys) / basis.eigenvalues[None, :]
    checks = []
    for y, row in zip(ys, values):
        check = BesselCheck(y=float(y), partial_sums=np.cumsum(row ** 2), bound=weighted_square_norm(float(y), basis.spec))
        if not check.holds:
            logger.warning(f"[eigen k={basis.spec.k} m={basis.spec.m}] Bessel inequality fails at y={y}")
        checks.append(check)
    return checks
