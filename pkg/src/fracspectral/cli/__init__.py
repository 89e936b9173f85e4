#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command Line Interface for fracspectral (Typer-based)
"""

import typer

from .init import init_fracspectral
from .solve import solve, eigen, verify
from .expand import expand
from .util import setup_logging

# Main Typer application
app = typer.Typer(
    name="fracspectral",
    help="fracspectral - spectral solver for degenerate even-order equations with a Riemann-Liouville derivative",
    add_completion=False,
    no_args_is_help=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.callback()
def _global_options(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log numerical diagnostics (DEBUG level)"),
):
    setup_logging(verbose)


app.command(name="init")(init_fracspectral)
app.command(name="solve")(solve)
app.command(name="eigen")(eigen)
app.command(name="verify")(verify)
app.command(name="expand")(expand)

def main():
    """Main entry point for the CLI."""
    app()

if __name__ == "__main__":
    main()
