from pathlib import Path
from typing import Optional

import typer
from loguru import logger

from fracspectral.cli.pipeline import build_basis, build_problem
from fracspectral.cli.util import fail, load_with_overrides
from fracspectral.core.assembly import expansion_errors
from fracspectral.errors import ConfigError, FracSpectralError
from fracspectral.export import print_expansion, write_table


def expand(
    config_path: str = typer.Option("./fracspectral.yaml", "--config", "-c", help="Path to the run config"),
    data: str = typer.Option("psi", "--data", "-d", help="Which boundary function to expand: phi or psi"),
    truncations: Optional[str] = typer.Option(None, "--truncations", "-n", help="Comma-separated mode counts, default 1..modes"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output directory (overrides output.directory)"),
    modes: Optional[int] = typer.Option(None, "--modes", help="Number of eigenmodes to solve for"),
    quad: Optional[int] = typer.Option(None, "--quad", help="Number of quadrature nodes"),
    fmt: Optional[str] = typer.Option(None, "--format", help="Table format: csv or json"),
):
    """
    Expand phi or psi in the eigenbasis and tabulate the sup-norm error against N
    """
    try:
        if data not in ("phi", "psi"):
            raise ConfigError(f"--data expects phi or psi, got '{data}'")
        config = load_with_overrides(config_path, out, modes, quad, None, fmt)
        basis = build_basis(config)
        problem = build_problem(config, basis)
        if truncations is None:
            counts = list(range(1, basis.mode_count + 1))
        else:
            try:
                counts = [int(part) for part in truncations.split(",")]
            except ValueError as e:
                raise ConfigError(f"--truncations expects integers like 5,10,20, got '{truncations}'") from e
        errors = expansion_errors(getattr(problem, data), basis, counts)
        path = write_table(Path(config.output.directory) / f"expansion_{data}", ("N", "error"), zip(counts, errors), config.output.format)
    except FracSpectralError as e:
        fail(e)
    print_expansion(counts, errors, f"{data} = {getattr(problem, data).describe()}")
    logger.info(f"[expand] ✓ wrote {path}")
