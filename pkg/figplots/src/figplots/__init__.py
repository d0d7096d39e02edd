"""Render benchmark CSVs (recovery dumps, MSE sweeps) into figures."""
from .render import render
from .spec import PlotSpec, SpecError, load_spec
from .tables import Table, dump_table, read_table

__version__ = "0.1.0"
__all__ = ["PlotSpec", "SpecError", "Table", "dump_table", "load_spec",
           "read_table", "render", "__version__"]
