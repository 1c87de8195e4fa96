"""Figure reproductions from superlaser run outputs (CSV/JSON only)."""

from .data import MissingColumnError, MissingFileError, read_json, read_table
from .render import render
from .specs import FigureSpec, PanelSpec, available_figures, figure_spec, validate

__version__ = "0.1.0"
