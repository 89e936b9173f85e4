import math

import numpy as np
import pytest

from fracspectral.core.eigensolver import (
    PLAIN,
    bessel_eigenvalues_k1,
    bessel_inequality_check,
    bessel_reduction_k1,
    build_nystrom_matrix,
    characteristic_determinant,
    characteristic_roots,
    frobenius_residual,
    frobenius_solution,
    fundamental_system,
    nystrom_extend,
    rayleigh_quotient,
    solve_basis,
    unweighted_eigenfunction,
    zero_lambda_determinant,
)
from fracspectral.core.greens import KernelSpec
from fracspectral.core.quadrature import gauss_rule, graded_rule
from fracspectral.errors import DomainError, InvalidParameterError, ResolutionError

# clamped-clamped beam: Y'''' = lambda Y, lambda = beta^4
BEAM_ROOTS = [4.730040744862704, 7.853204624095838, 10.995607838001671]


def test_k1_m0_eigenvalues_are_squares_of_multiples_of_pi(basis_k1_m0):
    expected = [(n * math.pi) ** 2 for n in range(1, 11)]
    np.testing.assert_allclose(basis_k1_m0.eigenvalues, expected, rtol=1e-6)


def test_k1_eigenvalues_match_bessel_zeros(basis_k1_m05):
    expected = bessel_eigenvalues_k1(0.5, 5)
    np.testing.assert_allclose(basis_k1_m05.eigenvalues[:5], expected, rtol=1e-6)


def test_k2_eigenvalues_match_beam(basis_k2_m0):
    np.testing.assert_allclose(basis_k2_m0.eigenvalues[:3], [b ** 4 for b in BEAM_ROOTS], rtol=1e-6)


def test_eigenvalues_ascending_and_positive(basis_k1_m05):
    lam = basis_k1_m05.eigenvalues
    assert np.all(lam > 0.0)
    assert np.all(np.diff(lam) > 0.0)


def test_samples_are_orthonormal_with_fixed_sign(basis_k1_m05):
    samples = basis_k1_m05.weighted_samples
    gram = (samples * basis_k1_m05.rule.weights[None, :]) @ samples.T
    np.testing.assert_allclose(gram, np.eye(basis_k1_m05.mode_count), atol=1e-12)
    assert np.all(samples[:, 0] > 0.0)


def test_extension_reproduces_node_values(basis_k1_m0):
    nodes = basis_k1_m0.rule.nodes
    extended = basis_k1_m0.extend(nodes)[:, :3]
    np.testing.assert_allclose(extended, basis_k1_m0.weighted_samples[:3].T, atol=1e-7)


def test_extension_matches_sine_modes(basis_k1_m0):
    # normalized Dirichlet modes sqrt(2) sin(n pi y), sign fixed by the first node
    ys = np.array([0.1, 0.37, 0.5, 0.93])
    for n in range(3):
        expected = math.sqrt(2.0) * np.sin((n + 1) * math.pi * ys)
        values = np.array([nystrom_extend(basis_k1_m0, n, y) for y in ys])
        np.testing.assert_allclose(values, expected, atol=1e-5)
    assert unweighted_eigenfunction(basis_k1_m0, 0, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert unweighted_eigenfunction(basis_k1_m0, 0, 1.0) == pytest.approx(0.0, abs=1e-10)


def test_extend_rejects_bad_input(basis_k1_m0):
    with pytest.raises(DomainError):
        basis_k1_m0.extend([1.5])
    with pytest.raises(DomainError):
        nystrom_extend(basis_k1_m0, 10, 0.5)


def test_plain_scheme_is_close(basis_k1_m0):
    basis = solve_basis(KernelSpec(1, 0.0), gauss_rule(120), 4, scheme=PLAIN)
    assert basis.eigenvalues[0] == pytest.approx(math.pi ** 2, rel=5e-3)
    assert basis.scheme == PLAIN
    assert basis.extend([0.5])[0, 0] == pytest.approx(math.sqrt(2.0), rel=1e-2)


def test_nystrom_matrix_is_symmetric():
    rule = gauss_rule(40)
    for scheme in ("plain", "product"):
        matrix = build_nystrom_matrix(KernelSpec(2, 0.5), rule, scheme)
        np.testing.assert_array_equal(matrix, matrix.T)
    with pytest.raises(InvalidParameterError):
        build_nystrom_matrix(KernelSpec(1, 0.0), rule, "trapezoid")


def test_solver_resolution_and_rule_checks():
    with pytest.raises(ResolutionError):
        solve_basis(KernelSpec(1, 0.0), gauss_rule(20), 6)
    with pytest.raises(InvalidParameterError):
        solve_basis(KernelSpec(1, 0.0), graded_rule(10, 4), 5)
    with pytest.raises(InvalidParameterError):
        solve_basis(KernelSpec(1, 0.0), gauss_rule(20), 0)


def test_fundamental_system_k1_m0_is_trigonometric():
    spec = KernelSpec(1, 0.0)
    lam = 7.0
    root = math.sqrt(lam)
    for y in (0.2, 0.6, 1.0):
        assert frobenius_solution(spec, lam, 0, y) == pytest.approx(math.cos(root * y), abs=1e-14)
        assert frobenius_solution(spec, lam, 1, y) == pytest.approx(math.sin(root * y) / root, abs=1e-14)
    system = fundamental_system(spec, lam)
    assert system.derivative(1, 0.4, 1) == pytest.approx(math.cos(root * 0.4), abs=1e-13)
    with pytest.raises(DomainError):
        system.value(2, 0.5)


@pytest.mark.parametrize("k,m,lam", [(1, 0.5, 12.0), (2, 0.5, 30.0), (3, 1.5, 5.0)])
def test_frobenius_solutions_satisfy_the_equation(k, m, lam):
    spec = KernelSpec(k, m)
    for i in range(2 * k):
        assert frobenius_residual(spec, lam, i, [0.3, 0.6, 0.9]) < 1e-8


def test_bessel_reduction_is_proportional_to_y1():
    m, lam = 0.5, 9.0
    ys = [0.2, 0.5, 0.9]
    ratios = [bessel_reduction_k1(m, lam, y) / frobenius_solution(KernelSpec(1, m), lam, 1, y) for y in ys]
    assert ratios[1] == pytest.approx(ratios[0], rel=1e-10)
    assert ratios[2] == pytest.approx(ratios[0], rel=1e-10)
    with pytest.raises(InvalidParameterError):
        bessel_eigenvalues_k1(1.2, 3)


def test_determinant_roots():
    roots = characteristic_roots(KernelSpec(1, 0.0), 3)
    np.testing.assert_allclose(roots, [(n * math.pi) ** 2 for n in (1, 2, 3)], rtol=1e-9)
    beam = characteristic_roots(KernelSpec(2, 0.0), 1)
    assert beam[0] == pytest.approx(BEAM_ROOTS[0] ** 4, rel=1e-8)
    assert characteristic_roots(KernelSpec(1, 0.0), 5, lam_max=50.0) == pytest.approx([math.pi ** 2, 4 * math.pi ** 2], rel=1e-9)


def test_determinant_roots_agree_with_nystrom(basis_k1_m05):
    roots = characteristic_roots(KernelSpec(1, 0.5), 3)
    np.testing.assert_allclose(roots, basis_k1_m05.eigenvalues[:3], rtol=1e-6)
    assert abs(characteristic_determinant(KernelSpec(1, 0.5), roots[0])) < 1e-8


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_zero_lambda_determinant_is_nonzero(k):
    assert abs(zero_lambda_determinant(k)) > 0.5


def test_rayleigh_quotient(basis_k1_m05):
    for n in range(3):
        assert rayleigh_quotient(basis_k1_m05, n) == pytest.approx(basis_k1_m05.eigenvalues[n], rel=1e-4)


def test_rayleigh_quotient_needs_k1(basis_k2_m0):
    with pytest.raises(InvalidParameterError):
        rayleigh_quotient(basis_k2_m0, 0)


def test_bessel_inequality(basis_k1_m05, basis_k2_m0):
    for basis in (basis_k1_m05, basis_k2_m0):
        checks = bessel_inequality_check(basis, np.linspace(0.05, 0.95, 7))
        assert all(check.holds for check in checks)
        assert all(np.all(np.diff(check.partial_sums) >= 0.0) for check in checks)


def test_first_mode_is_sine_to_high_accuracy(basis_k1_m0):
    ys = np.linspace(0.0, 1.0, 41)
    values = basis_k1_m0.extend(ys)[:, 0]
    assert np.max(np.abs(values - math.sqrt(2.0) * np.sin(math.pi * ys))) <= 1e-6


@pytest.mark.parametrize("m", [0.25, 0.75])
def test_bessel_oracle_across_degeneracy(m):
    basis = solve_basis(KernelSpec(1, m), gauss_rule(200), 5)
    np.testing.assert_allclose(basis.eigenvalues, bessel_eigenvalues_k1(m, 5), rtol=1e-6)


def test_frobenius_residual_strongly_degenerate():
    spec = KernelSpec(2, 1.5)
    for i in range(4):
        assert frobenius_residual(spec, 50.0, i, np.linspace(0.1, 0.9, 9)) <= 1e-8


def test_determinant_roots_agree_with_nystrom_k2():
    spec = KernelSpec(2, 0.5)
    basis = solve_basis(spec, gauss_rule(120), 3)
    np.testing.assert_allclose(characteristic_roots(spec, 3), basis.eigenvalues, rtol=1e-4)


def test_strongly_degenerate_kernel_is_positive(basis_k2_m15):
    top = np.linalg.eigvalsh(build_nystrom_matrix(KernelSpec(2, 1.5), gauss_rule(120), "product"))[::-1][:5]
    assert np.all(top > 0.0)
    lam = basis_k2_m15.eigenvalues
    assert np.all(lam > 0.0)
    assert np.all(np.diff(lam) > 0.0)
    np.testing.assert_allclose(1.0 / top, lam, rtol=1e-10)


def test_determinant_roots_agree_with_nystrom_strongly_degenerate(basis_k2_m15):
    roots = characteristic_roots(KernelSpec(2, 1.5), 3)
    np.testing.assert_allclose(roots, basis_k2_m15.eigenvalues[:3], rtol=1e-4)


def test_bessel_inequality_strongly_degenerate(basis_k2_m15):
    checks = bessel_inequality_check(basis_k2_m15, np.linspace(0.05, 0.95, 7))
    assert all(check.holds for check in checks)
    assert all(np.isfinite(check.bound) and check.bound > 0.0 for check in checks)


@pytest.mark.parametrize("k,m,nodes", [(1, 0.5, 200), (2, 0.0, 120)])
def test_eigenvalues_stable_under_node_doubling(k, m, nodes):
    spec = KernelSpec(k, m)
    coarse = solve_basis(spec, gauss_rule(nodes), 10).eigenvalues
    fine = solve_basis(spec, gauss_rule(2 * nodes), 10).eigenvalues
    np.testing.assert_allclose(coarse, fine, rtol=1e-7)


def test_first_mode_matches_bessel_shape(basis_k1_m05):
    lam = basis_k1_m05.eigenvalues[0]
    scale = unweighted_eigenfunction(basis_k1_m05, 0, 0.5) / bessel_reduction_k1(0.5, lam, 0.5)
    for y in np.linspace(0.1, 0.9, 10):
        expected = scale * bessel_reduction_k1(0.5, lam, y)
        assert unweighted_eigenfunction(basis_k1_m05, 0, y) == pytest.approx(expected, rel=1e-5)


@pytest.mark.parametrize("basis_name,modes", [("basis_k1_m05", 3), ("basis_k2_m0", 1), ("basis_k2_m15", 1)])
def test_eigenfunctions_vanish_to_order_k_at_origin(basis_name, modes, request):
    basis = request.getfixturevalue(basis_name)
    ys = 2.0 ** -np.arange(4, 13)
    ratios = np.abs(basis.extend_unweighted(ys)[:, :modes]) / (ys ** basis.spec.k)[:, None]
    assert np.all(np.isfinite(ratios))
    assert np.all(ratios.max(axis=0) <= 2.0 * ratios.min(axis=0))
    np.testing.assert_allclose(ratios[-1], ratios[-2], rtol=1e-2)
