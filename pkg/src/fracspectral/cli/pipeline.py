from dataclasses import dataclass

import numpy as np
from loguru import logger

from fracspectral.config import RunConfig
from fracspectral.core.assembly import (
    Check,
    Field,
    ProblemSpec,
    Report,
    SeriesSolution,
    assemble,
    coefficient_bound_chain,
    evaluate,
    kernel_trace,
    tail_bound,
    verify_initial_conditions,
    verify_residual,
)
from fracspectral.core.eigensolver import SpectralBasis, bessel_inequality_check, solve_basis
from fracspectral.core.greens import KernelSpec
from fracspectral.core.manage import load_boundary_data
from fracspectral.core.quadrature import gauss_rule

RESIDUAL_X = np.linspace(0.1, 1.0, 5)
RESIDUAL_Y = np.linspace(0.1, 0.9, 9)
BESSEL_Y = np.linspace(0.05, 0.95, 10)
ZERO_FIELD_TOLERANCE = 1e-14
TAIL_STEP = 5


@dataclass(frozen=True)
class RunResult:
    config: RunConfig
    basis: SpectralBasis
    solution: SeriesSolution
    field: Field
    report: Report


def field_grids(config: RunConfig):
    nx, ny = config.numerics.grid
    return np.linspace(0.0, 1.0, nx + 1)[1:], np.linspace(0.0, 1.0, ny + 1)[1:]


def build_basis(config: RunConfig) -> SpectralBasis:
    spec = KernelSpec(config.problem.k, config.problem.m)
    rule = gauss_rule(config.numerics.quadrature_nodes)
    return solve_basis(spec, rule, config.numerics.modes, scheme=config.numerics.scheme)


def build_problem(config: RunConfig, basis: SpectralBasis) -> ProblemSpec:
    p = config.problem
    return ProblemSpec(
        k=p.k,
        m=p.m,
        alpha=p.alpha,
        phi=load_boundary_data(config.phi, basis.spec, basis),
        psi=load_boundary_data(config.psi, basis.spec, basis),
    )


def verification_report(solution: SeriesSolution, field: Field) -> Report:
    basis = solution.basis
    report: Report = {}
    report.update(verify_initial_conditions(solution))
    report.update(verify_residual(solution, RESIDUAL_X, RESIDUAL_Y))

    trace = float(np.sum(1.0 / basis.eigenvalues))
    report["mercer_trace"] = Check(trace, kernel_trace(basis.spec) + 1e-4)
    ratios = [check.partial_sums[-1] / check.bound for check in bessel_inequality_check(basis, BESSEL_Y)]
    report["bessel_inequality"] = Check(float(max(ratios)), 1.0 + 1e-10)

    chain = coefficient_bound_chain(solution)
    if chain is not None:
        report["coefficient_bound"] = chain

    if basis.mode_count > solution.truncation:
        wider = assemble(solution.spec, basis, min(solution.truncation + TAIL_STEP, basis.mode_count))
        change = float(np.max(np.abs(evaluate(wider, field.x_grid, field.y_grid).values - field.values)))
        report["truncation_tail"] = Check(change, tail_bound(solution, field.x_grid, field.y_grid))

    if solution.spec.phi.is_zero and solution.spec.psi.is_zero:
        report["zero_field"] = Check(float(np.max(np.abs(field.values))), ZERO_FIELD_TOLERANCE)
    return report


def run_pipeline(config: RunConfig) -> RunResult:
    basis = build_basis(config)
    problem = build_problem(config, basis)
    solution = assemble(problem, basis, config.numerics.truncation)
    x_grid, y_grid = field_grids(config)
    field = evaluate(solution, x_grid, y_grid)
    report = verification_report(solution, field)
    failed = [name for name, check in report.items() if not check.passed]
    if failed:
        logger.warning(f"[verify] failing checks: {', '.join(failed)}")
    else:
        logger.info(f"[verify] ✓ all {len(report)} checks pass")
    return RunResult(config=config, basis=basis, solution=solution, field=field, report=report)
