"""
fracspectral - spectral solver for a degenerate even-order equation with a Riemann-Liouville time derivative

The solution is built as a series over the eigenfunctions of a weighted
Green operator on (0, 1):
- core: special functions, Green kernel, eigenbasis, mode solutions and assembly
- config: YAML run configuration
- export: CSV/JSON tables and rich console output
- cli: the `fracspectral` command
"""

from .cli import main as cli_main
from .version import __version__

__license__ = "MIT"
__description__ = "Spectral solver for degenerate even-order equations with a Riemann-Liouville derivative"

__all__ = [
    "cli_main",
]
