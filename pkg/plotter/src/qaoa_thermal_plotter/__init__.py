"""Figure rendering for qaoa-thermal CSV outputs."""

__version__ = "0.1.0"

from .figures import FigureKind, FigureSpec, SchemaError, render, render_figure

__all__ = ["FigureKind", "FigureSpec", "SchemaError", "render", "render_figure"]
