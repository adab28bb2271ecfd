"""2-D (gamma, beta) angle-grid sweeps and their derived analyses.

A sweep simulates depth-one QAOA at every grid cell, records energy
expectation and normalized entropy, and optionally fits the effective inverse
temperature per cell. Cells are independent, so the work distributes over a
process pool; records are gathered back in row-major grid order, which makes
the output independent of the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fitting import FitConfig, fit_beta
from .ising import EnergyTable, IsingModel, enumerate_energies
from .simulator import MixerKind, QaoaParams, expectation_energy, simulate
from .thermal import shannon_entropy_normalized


@dataclass(frozen=True)
class GridSpec:
    """Inclusive-endpoint angle grid; gamma is the outer (row) axis."""

    gamma_range: tuple[float, float] = (0.0, math.pi / 4)
    beta_range: tuple[float, float] = (0.0, math.pi)
    n_gamma: int = 200
    n_beta: int = 200

    def __post_init__(self):
        if self.n_gamma < 2 or self.n_beta < 2:
            raise ValueError("grid resolution must be >= 2 per axis")
        if self.gamma_range[0] >= self.gamma_range[1] or self.beta_range[0] >= self.beta_range[1]:
            raise ValueError("grid ranges must be nonempty intervals")

    @classmethod
    def default_for(cls, mixer: MixerKind, n_gamma: int = 200, n_beta: int = 200) -> "GridSpec":
        """Full-period defaults: gamma in [0, pi/4]; beta in [0, pi] (X) or [0, 2pi] (Grover)."""
        beta_hi = 2 * math.pi if mixer is MixerKind.GROVER else math.pi
        return cls(beta_range=(0.0, beta_hi), n_gamma=n_gamma, n_beta=n_beta)

    def gammas(self) -> np.ndarray:
        return np.linspace(self.gamma_range[0], self.gamma_range[1], self.n_gamma)

    def betas(self) -> np.ndarray:
        return np.linspace(self.beta_range[0], self.beta_range[1], self.n_beta)


@dataclass(frozen=True)
class SweepRecord:
    """Per-cell results; beta_eff/tvd_min are None when fitting was disabled."""

    gamma: float
    beta_angle: float
    energy_expectation: float
    entropy: float
    beta_eff: float | None
    tvd_min: float | None


@dataclass(frozen=True)
class ThresholdPoint:
    """Largest fitted beta among records with tvd_min <= threshold (None if none qualify)."""

    threshold: float
    best_beta_eff: float | None
    gamma: float | None
    beta_angle: float | None


@dataclass(frozen=True)
class TradeoffPoint:
    t_eff: float
    tvd_min: float
    gamma: float
    beta_angle: float


_CTX: dict = {}


def _init_worker(table: EnergyTable, mixer: MixerKind, gammas, betas, fit_config, fit_enabled):
    _CTX["table"] = table
    _CTX["mixer"] = mixer
    _CTX["gammas"] = gammas
    _CTX["betas"] = betas
    _CTX["fit_config"] = fit_config
    _CTX["fit_enabled"] = fit_enabled


def _cell(idx: int) -> SweepRecord:
    table: EnergyTable = _CTX["table"]
    betas = _CTX["betas"]
    gamma = _CTX["gammas"][idx // betas.size]
    beta_angle = betas[idx % betas.size]
    probs = simulate(table, QaoaParams(gammas=[gamma], betas=[beta_angle], mixer=_CTX["mixer"]))
    energy_expectation = expectation_energy(probs, table)
    entropy = shannon_entropy_normalized(probs, table.n)
    beta_eff = tvd_min = None
    if _CTX["fit_enabled"]:
        fit = fit_beta(probs, table, _CTX["fit_config"])
        beta_eff, tvd_min = fit.beta_eff, fit.tvd_min
    return SweepRecord(
        gamma=float(gamma),
        beta_angle=float(beta_angle),
        energy_expectation=energy_expectation,
        entropy=entropy,
        beta_eff=beta_eff,
        tvd_min=tvd_min,
    )


def sweep(
    model: IsingModel,
    grid: GridSpec,
    mixer: MixerKind,
    fit: FitConfig | None = None,
    fit_enabled: bool = True,
    workers: int | None = None,
) -> list[SweepRecord]:
    """Run the full grid, one record per cell in row-major (gamma outer) order.

    `workers=None` uses all CPUs; `workers=1` runs in-process. Any cell failure
    aborts the whole sweep.
    """
    table = enumerate_energies(model)
    if fit is None:
        fit = FitConfig()
    gammas = grid.gammas()
    betas = grid.betas()
    total = gammas.size * betas.size
    init_args = (table, mixer, gammas, betas, fit, fit_enabled)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers == 1:
        _init_worker(*init_args)
        return [_cell(i) for i in range(total)]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=init_args) as pool:
        chunksize = max(1, total // (workers * 8))
        return list(pool.map(_cell, range(total), chunksize=chunksize))


def threshold_analysis(records: list[SweepRecord], thresholds) -> list[ThresholdPoint]:
    """For each TVD threshold, the largest fitted beta among qualifying cells."""
    if not records:
        raise ValueError("threshold analysis requires a nonempty record list")
    _require_fitted(records)
    points = []
    for t in thresholds:
        best = None
        for rec in records:
            if rec.tvd_min <= t and (
                best is None
                or rec.beta_eff > best.beta_eff
                or (rec.beta_eff == best.beta_eff and rec.tvd_min < best.tvd_min)
            ):
                best = rec
        if best is None:
            points.append(ThresholdPoint(threshold=t, best_beta_eff=None, gamma=None, beta_angle=None))
        else:
            points.append(
                ThresholdPoint(
                    threshold=t,
                    best_beta_eff=best.beta_eff,
                    gamma=best.gamma,
                    beta_angle=best.beta_angle,
                )
            )
    return points


def tradeoff_extract(records: list[SweepRecord], t_eff_max: float) -> list[TradeoffPoint]:
    """(T_eff, tvd_min) pairs for cells with finite effective temperature <= t_eff_max.

    Cells fitted at beta_eff = 0 (infinite temperature) are excluded.
    """
    if t_eff_max <= 0:
        raise ValueError(f"t_eff_max must be positive, got {t_eff_max}")
    _require_fitted(records)
    points = []
    for rec in records:
        if rec.beta_eff > 0 and 1.0 / rec.beta_eff <= t_eff_max:
            points.append(
                TradeoffPoint(
                    t_eff=1.0 / rec.beta_eff,
                    tvd_min=rec.tvd_min,
                    gamma=rec.gamma,
                    beta_angle=rec.beta_angle,
                )
            )
    return points


def _require_fitted(records: list[SweepRecord]) -> None:
    if any(rec.beta_eff is None or rec.tvd_min is None for rec in records):
        raise ValueError("records are missing fit results (sweep was run with fitting disabled)")
