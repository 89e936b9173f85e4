import math
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from numpy.polynomial import Polynomial

from fracspectral.core.base import BoundaryData
from fracspectral.core.eigensolver import SpectralBasis
from fracspectral.core.greens import KernelSpec
from fracspectral.core.specialfn import falling_factorial
from fracspectral.errors import DomainError, InvalidParameterError


class ZeroData(BoundaryData):
    kind = "zero"

    def _evaluate(self, ys: np.ndarray) -> np.ndarray:
        return np.zeros_like(ys)

    def _coefficients(self, basis: SpectralBasis, count: int) -> np.ndarray:
        return np.zeros(count)

    def _source_norm(self) -> Optional[float]:
        return 0.0

    def _is_zero(self) -> bool:
        return True


class BumpData(BoundaryData):
    """tau(y) = [y(1-y)]^q P(y); every derivative below order q vanishes at both ends."""

    kind = "bump"

    def __init__(self, spec: KernelSpec, q: int, coefficients: Sequence[float]):
        super().__init__(spec)
        if q < 2 * spec.k + 2:
            raise InvalidParameterError(f"bump exponent q={q} must be at least 2k + 2 = {2 * spec.k + 2}")
        self.q = q
        self.coefficients_ = tuple(float(c) for c in coefficients)
        self.polynomial = Polynomial([0.0, 1.0, -1.0]) ** q * Polynomial(self.coefficients_)

    def _evaluate(self, ys: np.ndarray) -> np.ndarray:
        return self.polynomial(ys)

    def _is_zero(self) -> bool:
        return not any(self.coefficients_)

    def derivative(self, order: int) -> Polynomial:
        return self.polynomial.deriv(order)

    def _source_norm(self) -> Optional[float]:
        # (y^m p)^(2k) = sum_i c_i (i+m)_(2k) y^(i+m-2k) with p = tau^(2k); square and integrate against y^(-m)
        k2, m = 2 * self.spec.k, self.spec.m
        coef = self.derivative(k2).coef
        scaled = {i: c * falling_factorial(i + m, k2) for i, c in enumerate(coef) if c != 0.0}
        scaled = {i: v for i, v in scaled.items() if v != 0.0}
        total = []
        for i, vi in scaled.items():
            for j, vj in scaled.items():
                exponent = i + j + m - 2 * k2
                if exponent <= -1.0:
                    logger.warning(f"[bump q={self.q}] source norm diverges at y = 0 (power {exponent})")
                    return math.inf
                total.append(vi * vj / (exponent + 1.0))
        return math.fsum(total)

    def describe(self) -> str:
        return f"bump(q={self.q}, P={list(self.coefficients_)})"


class EigenfunctionData(BoundaryData):
    """scale * Y_index from a solved basis."""

    kind = "eigenfunction"

    def __init__(self, spec: KernelSpec, basis: SpectralBasis, index: int, scale: float = 1.0):
        super().__init__(spec)
        if not 0 <= index < basis.mode_count:
            raise DomainError(f"eigenfunction index {index} outside [0, {basis.mode_count})")
        self.basis = basis
        self.index = index
        self.scale = scale

    def _evaluate(self, ys: np.ndarray) -> np.ndarray:
        return self.scale * self.basis.extend_unweighted(ys)[:, self.index]

    def _coefficients(self, basis: SpectralBasis, count: int) -> np.ndarray:
        if basis is self.basis:
            samples = basis.weighted_samples
            return self.scale * (samples[:count] @ (basis.rule.weights * samples[self.index]))
        return super()._coefficients(basis, count)

    def _is_zero(self) -> bool:
        return self.scale == 0.0

    def describe(self) -> str:
        return f"{self.scale} * Y_{self.index}"
