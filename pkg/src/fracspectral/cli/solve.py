import json
from pathlib import Path
from typing import Optional

import typer
from loguru import logger

from fracspectral.cli.pipeline import build_basis, run_pipeline
from fracspectral.cli.util import fail, load_with_overrides
from fracspectral.config import load_config, save_config
from fracspectral.errors import FracSpectralError
from fracspectral.export import print_eigenvalues, print_report, read_report, report_to_dict, write_eigenvalues, write_run

CONFIG_NAME = "config.yaml"
REPORT_NAME = "report.json"


def solve(
    config_path: str = typer.Option("./fracspectral.yaml", "--config", "-c", help="Path to the run config"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output directory (overrides output.directory)"),
    modes: Optional[int] = typer.Option(None, "--modes", help="Number of eigenmodes to solve for"),
    quad: Optional[int] = typer.Option(None, "--quad", help="Number of quadrature nodes"),
    grid: Optional[str] = typer.Option(None, "--grid", help="Field grid size as NX,NY"),
    fmt: Optional[str] = typer.Option(None, "--format", help="Table format: csv or json"),
):
    """
    Run the full pipeline: eigenbasis, mode solutions, field and verification report
    """
    try:
        config = load_with_overrides(config_path, out, modes, quad, grid, fmt)
        result = run_pipeline(config)
        out_dir = Path(config.output.directory)
        save_config(config, str(out_dir / CONFIG_NAME))
        write_run(out_dir, result.basis, result.solution, result.field, result.report, config.output.format)
    except FracSpectralError as e:
        fail(e)
    print_report(result.report, title=f"Verification ({out_dir})")


def eigen(
    config_path: str = typer.Option("./fracspectral.yaml", "--config", "-c", help="Path to the run config"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output directory (overrides output.directory)"),
    modes: Optional[int] = typer.Option(None, "--modes", help="Number of eigenmodes to solve for"),
    quad: Optional[int] = typer.Option(None, "--quad", help="Number of quadrature nodes"),
    fmt: Optional[str] = typer.Option(None, "--format", help="Table format: csv or json"),
):
    """
    Solve the eigenbasis only and write the eigenvalue table
    """
    try:
        config = load_with_overrides(config_path, out, modes, quad, None, fmt)
        basis = build_basis(config)
        path = write_eigenvalues(Path(config.output.directory), basis, config.output.format)
    except FracSpectralError as e:
        fail(e)
    print_eigenvalues(basis)
    logger.info(f"[eigen] ✓ wrote {path}")


def verify(
    run_dir: str = typer.Option("./fracspectral_out", "--run-dir", "-r", help="Directory of a stored run"),
):
    """
    Re-run a stored run from its config.yaml and compare against its report.json
    """
    run_path = Path(run_dir)
    try:
        config = load_config(str(run_path / CONFIG_NAME))
        stored = read_report(run_path / REPORT_NAME)
        result = run_pipeline(config)
    except FileNotFoundError as e:
        logger.error(f"verify: {e}")
        raise typer.Exit(code=1)
    except FracSpectralError as e:
        fail(e)
    print_report(result.report, title=f"Re-verification ({run_dir})")
    regenerated = json.loads(json.dumps(report_to_dict(result.report)))
    if regenerated != stored:
        changed = sorted(set(regenerated) ^ set(stored) | {k for k in regenerated.keys() & stored.keys() if regenerated[k] != stored[k]})
        logger.error(f"verify: report differs from the stored run in {', '.join(changed)}")
        raise typer.Exit(code=1)
    logger.info(f"[verify] ✓ report reproduced for {run_dir}")
