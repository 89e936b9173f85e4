from .greens import KernelSpec
from .quadrature import QuadratureRule, gauss_rule, graded_rule
from .eigensolver import SpectralBasis, solve_basis, build_nystrom_matrix, nystrom_extend, unweighted_eigenfunction
from .fracode import ModeSolution, solve_mode_ivp
from .base import BoundaryData
from .manage import load_boundary_data
from .assembly import ProblemSpec, SeriesSolution, Field, Check, assemble, evaluate

__all__ = ["KernelSpec", "QuadratureRule", "gauss_rule", "graded_rule",
           "SpectralBasis", "solve_basis", "build_nystrom_matrix", "nystrom_extend", "unweighted_eigenfunction",
           "ModeSolution", "solve_mode_ivp", "BoundaryData", "load_boundary_data",
           "ProblemSpec", "SeriesSolution", "Field", "Check", "assemble", "evaluate"]
