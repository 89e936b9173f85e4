import sys
from dataclasses import replace
from typing import Optional, Tuple

import typer
from loguru import logger

from fracspectral.config import RunConfig, load_config
from fracspectral.errors import ConfigError, FracSpectralError


def setup_logging(verbose: bool = False):
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")


def parse_grid(grid: Optional[str]) -> Optional[Tuple[int, int]]:
    if grid is None:
        return None
    try:
        nx, ny = (int(part) for part in grid.split(","))
    except ValueError as e:
        raise ConfigError(f"--grid expects NX,NY, got '{grid}'") from e
    return nx, ny


def load_with_overrides(
    config_path: str,
    out: Optional[str] = None,
    modes: Optional[int] = None,
    quad: Optional[int] = None,
    grid: Optional[str] = None,
    fmt: Optional[str] = None,
) -> RunConfig:
    config = load_config(config_path)
    numerics, output = config.numerics, config.output
    if modes is not None:
        numerics = replace(numerics, modes=modes, truncation=min(numerics.truncation, modes))
    if quad is not None:
        numerics = replace(numerics, quadrature_nodes=quad)
    parsed = parse_grid(grid)
    if parsed is not None:
        numerics = replace(numerics, grid=list(parsed))
    if out is not None:
        output = replace(output, directory=out)
    if fmt is not None:
        output = replace(output, format=fmt)
    return replace(config, numerics=numerics, output=output).validate()


def error_context(error: BaseException) -> str:
    # module of the innermost fracspectral frame
    tb, name = error.__traceback__, "fracspectral"
    while tb is not None:
        module = tb.tb_frame.f_globals.get("__name__", "")
        if module.startswith("fracspectral"):
            name = module.rsplit(".", 1)[-1]
        tb = tb.tb_next
    return name


def fail(error: FracSpectralError):
    logger.error(f"{error_context(error)}: {error}")
    raise typer.Exit(code=1)
