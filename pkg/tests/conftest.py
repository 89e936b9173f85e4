import pytest

from fracspectral.core.eigensolver import solve_basis
from fracspectral.core.greens import KernelSpec
from fracspectral.core.quadrature import gauss_rule


@pytest.fixture(scope="session")
def basis_k1_m0():
    return solve_basis(KernelSpec(1, 0.0), gauss_rule(200), 10)


@pytest.fixture(scope="session")
def basis_k1_m05():
    return solve_basis(KernelSpec(1, 0.5), gauss_rule(200), 40)


@pytest.fixture(scope="session")
def basis_k2_m0():
    return solve_basis(KernelSpec(2, 0.0), gauss_rule(120), 6)


@pytest.fixture(scope="session")
def basis_k2_m15():
    return solve_basis(KernelSpec(2, 1.5), gauss_rule(120), 5)
