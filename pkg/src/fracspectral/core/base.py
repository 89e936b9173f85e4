from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from fracspectral.core.eigensolver import SpectralBasis
from fracspectral.core.greens import KernelSpec


class BoundaryData(ABC):
    """A function of y on [0, 1] used as initial data phi or psi."""

    kind: str = ""

    def __init__(self, spec: KernelSpec):
        self.spec = spec

    @abstractmethod
    def _evaluate(self, ys: np.ndarray) -> np.ndarray:
        pass

    def _coefficients(self, basis: SpectralBasis, count: int) -> np.ndarray:
        # int y^(-m) f Y_n = int (y^(-m/2) f) Ybar_n, on the basis nodes
        rule = basis.rule
        weighted = rule.weights * rule.nodes ** (-self.spec.m / 2.0) * self._evaluate(rule.nodes)
        return basis.weighted_samples[:count] @ weighted

    def _source_norm(self) -> Optional[float]:
        return None

    def _is_zero(self) -> bool:
        return False

    def evaluate(self, ys) -> np.ndarray:
        return self._evaluate(np.atleast_1d(np.asarray(ys, dtype=float)))

    def coefficients(self, basis: SpectralBasis, count: Optional[int] = None) -> np.ndarray:
        count = basis.mode_count if count is None else count
        return self._coefficients(basis, count)

    def source_norm(self) -> Optional[float]:
        """int y^(-m) [(y^m f^(2k))^(2k)]^2 dy when it is available in closed form."""
        return self._source_norm()

    @property
    def is_zero(self) -> bool:
        return self._is_zero()

    def describe(self) -> str:
        return self.kind
