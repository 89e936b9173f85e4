import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from loguru import logger
from rich.console import Console
from rich.table import Table

from fracspectral.core.assembly import Field, Report, SeriesSolution
from fracspectral.core.eigensolver import SpectralBasis
from fracspectral.errors import ConfigError

console = Console()

FORMATS = ("csv", "json")


def _number(value: float) -> str:
    return f"{value:.17g}"


def write_table(path: Path, header: Sequence[str], rows: Iterable[Sequence[float]], fmt: str = "csv") -> Path:
    """Numeric table as CSV (17 significant digits, LF) or as a JSON list of records."""
    if fmt not in FORMATS:
        raise ConfigError(f"unknown output format '{fmt}', expected one of {FORMATS}")
    path = path.with_suffix(f".{fmt}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_number(v) if isinstance(v, float) else v for v in row])
    else:
        records = [dict(zip(header, row)) for row in rows]
        path.write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    logger.debug(f"wrote {path}")
    return path


def report_to_dict(report: Report) -> Dict[str, Dict[str, Any]]:
    return {name: check.to_dict() for name, check in report.items()}


def write_report(path: Path, report: Report) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report_to_dict(report), indent=2, allow_nan=False) + "\n", encoding="utf-8")
    return path


def read_report(path: Path) -> Dict[str, Dict[str, Any]]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_eigenvalues(out_dir: Path, basis: SpectralBasis, fmt: str = "csv") -> Path:
    rows = [(n + 1, float(lam)) for n, lam in enumerate(basis.eigenvalues)]
    return write_table(out_dir / "eigenvalues", ("n", "lambda_n"), rows, fmt)


def write_coefficients(out_dir: Path, solution: SeriesSolution, fmt: str = "csv") -> Path:
    rows = [(n + 1, float(mode.phi), float(mode.psi)) for n, mode in enumerate(solution.modes)]
    return write_table(out_dir / "coefficients", ("n", "phi_n", "psi_n"), rows, fmt)


def write_field(out_dir: Path, field: Field, fmt: str = "csv") -> Path:
    return write_table(out_dir / "field", ("x", "y", "u"), field.rows(), fmt)


def write_run(out_dir: Path, basis: SpectralBasis, solution: SeriesSolution, field: Field, report: Report, fmt: str = "csv") -> List[Path]:
    out_dir = Path(out_dir)
    paths = [
        write_eigenvalues(out_dir, basis, fmt),
        write_coefficients(out_dir, solution, fmt),
        write_field(out_dir, field, fmt),
        write_report(out_dir / "report.json", report),
    ]
    logger.info(f"[export] ✓ {len(paths)} artifacts in {out_dir}")
    return paths


def print_eigenvalues(basis: SpectralBasis):
    table = Table(title=f"Eigenvalues k={basis.spec.k} m={basis.spec.m} ({basis.rule.size} nodes, {basis.scheme})")
    table.add_column("n", justify="right", style="cyan")
    table.add_column("lambda_n", justify="right", style="green")
    table.add_column("lambda_n^(1/2k)", justify="right")
    for n, lam in enumerate(basis.eigenvalues):
        table.add_row(str(n + 1), f"{lam:.12g}", f"{lam ** (1.0 / (2 * basis.spec.k)):.10g}")
    console.print(table)


def print_report(report: Report, title: str = "Verification"):
    table = Table(title=title)
    table.add_column("check", style="cyan")
    table.add_column("value", justify="right")
    table.add_column("bound", justify="right")
    table.add_column("status", justify="center")
    for name, check in report.items():
        status = "[green]✓ pass[/green]" if check.passed else "[red]✗ fail[/red]"
        table.add_row(name, f"{check.value:.3e}", f"{check.bound:.3e}", status)
    console.print(table)


def print_expansion(truncations: Sequence[int], errors: Sequence[float], label: str):
    table = Table(title=f"Expansion of {label}")
    table.add_column("N", justify="right", style="cyan")
    table.add_column("sup error", justify="right", style="green")
    for n, error in zip(truncations, errors):
        table.add_row(str(n), f"{error:.3e}")
    console.print(table)
