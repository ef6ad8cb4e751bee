"""Figure rendering for tn-ntn-sim sweep CSVs."""

from .loader import FigureDataError, load_agg_csv
from .plots import FIGURES, render_figure

__all__ = ["FIGURES", "FigureDataError", "load_agg_csv", "render_figure"]

__version__ = "0.1.0"
