"""Pure CSV-to-image rendering of disorder/coupling sweep results.

This package never recomputes any physics: it reads the long-format sweep CSV
(columns sigma, g, mean_n, stderr, ...) and draws the phase-diagram heatmap
and line cuts with error bands.
"""

__version__ = "0.1.0"

from .table import SweepTable, TableError, load_sweep_table
from .plots import render_cuts, render_heatmap
