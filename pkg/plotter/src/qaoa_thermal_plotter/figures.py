"""Render heatmaps, tradeoff scatters, and threshold lines from qaoa-thermal CSVs.

Heatmaps follow the landscape convention: gamma on the y-axis, the mixer angle
(beta_angle) on the x-axis. The fitted-beta heatmap uses a log color scale with
beta_eff = 0 cells masked out and drawn in a distinct flat color.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np
from matplotlib import colormaps
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.colors import LogNorm
from matplotlib.figure import Figure


class SchemaError(ValueError):
    """Input CSV does not carry the columns the figure kind needs."""


class FigureKind(Enum):
    HEATMAP_ENERGY = "heatmap-energy"
    HEATMAP_ENTROPY = "heatmap-entropy"
    HEATMAP_BETA_EFF_LOG = "heatmap-beta-eff-log"
    HEATMAP_TVD = "heatmap-tvd"
    TRADEOFF_SCATTER = "tradeoff-scatter"
    THRESHOLD_LINES = "threshold-lines"


_HEATMAP_COLUMNS = {
    FigureKind.HEATMAP_ENERGY: ("energy", "energy expectation"),
    FigureKind.HEATMAP_ENTROPY: ("entropy", "normalized Shannon entropy"),
    FigureKind.HEATMAP_BETA_EFF_LOG: ("beta_eff", "fitted inverse temperature"),
    FigureKind.HEATMAP_TVD: ("tvd_min", "minimum TVD"),
}


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: FigureKind
    output_image: str
    title: str | None = None
    vmin: float | None = None
    vmax: float | None = None


def load_columns(path: str, names: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Read the named columns as float arrays, rejecting missing or empty ones."""
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        for name in names:
            if name not in header:
                raise SchemaError(f"{path}: missing column '{name}'")
        rows = list(reader)
    out = {}
    for name in names:
        values = [row[name] for row in rows]
        if any(v == "" for v in values):
            raise SchemaError(f"{path}: column '{name}' has empty values")
        out[name] = np.array([float(v) for v in values])
    return out


def pivot_grid(gamma: np.ndarray, beta_angle: np.ndarray, values: np.ndarray):
    """Rebuild the 2-D grid (rows = gamma, cols = beta_angle) from long-format rows."""
    gammas = np.unique(gamma)
    betas = np.unique(beta_angle)
    if gammas.size * betas.size != values.size:
        raise SchemaError(
            f"rows do not form a complete grid: {gammas.size} gammas x {betas.size} "
            f"beta angles != {values.size} rows"
        )
    grid = np.full((gammas.size, betas.size), np.nan)
    row = np.searchsorted(gammas, gamma)
    col = np.searchsorted(betas, beta_angle)
    grid[row, col] = values
    if np.isnan(grid).any():
        raise SchemaError("rows do not cover every (gamma, beta_angle) grid cell")
    return gammas, betas, grid


def _render_heatmap(ax, spec: FigureSpec) -> None:
    column, label = _HEATMAP_COLUMNS[spec.kind]
    data = load_columns(spec.input_csv, ("gamma", "beta_angle", column))
    gammas, betas, grid = pivot_grid(data["gamma"], data["beta_angle"], data[column])
    extent = (betas[0], betas[-1], gammas[0], gammas[-1])
    cmap = colormaps["viridis"].copy()
    norm = None
    if spec.kind is FigureKind.HEATMAP_BETA_EFF_LOG:
        masked = np.ma.masked_less_equal(grid, 0.0)
        if masked.count() == 0:
            raise SchemaError("beta_eff heatmap needs at least one positive value")
        cmap.set_bad("lightgray")
        norm = LogNorm(vmin=spec.vmin or float(masked.min()), vmax=spec.vmax or float(masked.max()))
        grid = masked
        image_kwargs = {"norm": norm}
    else:
        image_kwargs = {"vmin": spec.vmin, "vmax": spec.vmax}
    im = ax.imshow(grid, origin="lower", aspect="auto", extent=extent, cmap=cmap, **image_kwargs)
    ax.set_xlabel("mixer angle")
    ax.set_ylabel("phase angle gamma")
    ax.figure.colorbar(im, ax=ax, label=label)


def _render_tradeoff(ax, spec: FigureSpec) -> None:
    data = load_columns(spec.input_csv, ("t_eff", "tvd_min"))
    ax.scatter(data["t_eff"], data["tvd_min"], s=6)
    ax.set_xlabel("effective temperature")
    ax.set_ylabel("minimum TVD")


def _render_threshold_lines(ax, spec: FigureSpec) -> None:
    data = load_columns(spec.input_csv, ("threshold", "best_beta_eff"))
    order = np.argsort(data["threshold"])
    ax.plot(data["threshold"][order], data["best_beta_eff"][order], marker="o")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("TVD threshold")
    ax.set_ylabel("largest fitted inverse temperature")


def render_figure(spec: FigureSpec) -> Figure:
    """Build the matplotlib Figure for a spec without touching the filesystem output."""
    fig = Figure(figsize=(6.4, 4.8))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    if spec.kind in _HEATMAP_COLUMNS:
        _render_heatmap(ax, spec)
    elif spec.kind is FigureKind.TRADEOFF_SCATTER:
        _render_tradeoff(ax, spec)
    else:
        _render_threshold_lines(ax, spec)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> str:
    """Render and write the image file; returns the output path."""
    fig = render_figure(spec)
    fig.savefig(spec.output_image, dpi=150)
    return spec.output_image
