"""``figures`` command-line entry point."""

from __future__ import annotations

import sys

import click

from .loader import FigureDataError
from .plots import FIGURES, render_figure

EXIT_DATA = 2


@click.command()
@click.option("--input", "input_dir",
              type=click.Path(exists=True, file_okay=False), required=True,
              help="Directory holding the sweep CSVs written by `sim sweep`.")
@click.option("--figure", "figure_name",
              type=click.Choice(sorted(FIGURES)), required=True,
              help="Which experiment figure to render.")
@click.option("--out", "out_path", required=True,
              help="Output image path (e.g. fig3.png).")
def main(input_dir: str, figure_name: str, out_path: str) -> None:
    """Render an experiment figure from aggregate sweep results."""
    try:
        render_figure(figure_name, input_dir, out_path)
    except FigureDataError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DATA)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
