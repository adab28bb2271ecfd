"""Effective-temperature fitting: find the beta whose Boltzmann distribution is TVD-closest.

The protocol has three stages: a derivative-free scalar minimizer restarted
from a bank of initial guesses, a descending log-spaced grid through the
near-zero-beta regime, and a fine linear grid up to a configured beta cap.
Every candidate (beta, TVD) is rounded to a fixed number of decimals and the
global best is returned, ties broken toward larger beta.

Grid stages evaluate the objective through a level-compressed kernel: within a
degenerate energy level the Boltzmann weight is a single number, so the L1
distance against the (pre-sorted) fitted distribution reduces to a binary
search plus prefix sums per level instead of a pass over all 2^n entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from enum import Enum

import numpy as np
from numba import njit
from scipy.optimize import minimize

from .ising import EnergyTable
from .thermal import boltzmann, tvd

_DEFAULT_GUESSES = tuple(float(x) for x in np.logspace(5.0, -8.0, 28))

# Boltzmann weights below this are dropped from the kernel sums; the induced
# TVD error is bounded by 2^n * cutoff, far under the 1e-12 tolerances used.
_WEIGHT_CUTOFF = 1e-25

# log10(beta) box for the minimizer; 10**u stays finite inside it.
_LOG10_MIN, _LOG10_MAX = -320.0, 300.0


class FitSource(Enum):
    MINIMIZER = "minimizer"
    LOG_GRID = "log_grid"
    LINEAR_GRID = "linear_grid"


@dataclass(frozen=True)
class FitConfig:
    """Knobs of the three-stage fitting protocol."""

    initial_guesses: tuple[float, ...] = _DEFAULT_GUESSES
    log_grid_count: int = 100
    log_grid_hi: float = 1e-3
    log_grid_lo: float = 1e-15
    linear_grid_start: float = 1e-4
    linear_grid_step: float = 1e-4
    beta_max: float = 100.0
    rounding_decimals: int = 15
    minimizer_max_iters: int = 500
    minimizer_tolerance: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "initial_guesses", tuple(float(x) for x in self.initial_guesses))
        if any(g <= 0 for g in self.initial_guesses):
            raise ValueError("initial guesses must be positive")
        for name in ("log_grid_hi", "log_grid_lo", "linear_grid_start", "linear_grid_step", "beta_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.rounding_decimals < 1:
            raise ValueError("rounding_decimals must be >= 1")

    def log_grid(self) -> np.ndarray:
        """Descending log10-equispaced betas from log_grid_hi to log_grid_lo."""
        return np.logspace(
            math.log10(self.log_grid_hi), math.log10(self.log_grid_lo), self.log_grid_count
        )

    def linear_grid(self) -> np.ndarray:
        """Ascending betas start, start+step, ... capped at beta_max."""
        count = int(math.floor((self.beta_max - self.linear_grid_start) / self.linear_grid_step + 1e-9)) + 1
        return self.linear_grid_start + self.linear_grid_step * np.arange(count)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["initial_guesses"] = list(self.initial_guesses)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FitConfig":
        return cls(**{**d, "initial_guesses": tuple(d["initial_guesses"])})


@dataclass(frozen=True)
class FitResult:
    """Best-fit inverse temperature for one distribution."""

    beta_eff: float
    tvd_min: float
    evaluations: int
    source: FitSource


@dataclass(frozen=True)
class ScalarMinimizeResult:
    x_best: float
    f_best: float
    evaluations: int
    converged: bool


def objective(p: np.ndarray, energies: EnergyTable, beta: float) -> float:
    """TVD between a distribution and the Boltzmann distribution at beta (direct form)."""
    if beta < 0:
        raise ValueError(f"inverse temperature must be >= 0, got {beta}")
    return tvd(p, boltzmann(energies, beta))


@njit(cache=True)
def _tvd_kernel(betas, gaps, degs, sorted_p, offsets, prefix, out):
    n_levels = gaps.size
    w = np.empty(n_levels)
    total_mass = prefix[offsets[n_levels]]
    for b in range(betas.size):
        beta = betas[b]
        z = 0.0
        lcut = n_levels
        for l in range(n_levels):
            wl = np.exp(-beta * gaps[l])
            w[l] = wl
            z += degs[l] * wl
            if wl < _WEIGHT_CUTOFF:
                lcut = l + 1
                break
        acc = 0.0
        for l in range(lcut):
            q = w[l] / z
            lo = offsets[l]
            hi = offsets[l + 1]
            a, c = lo, hi
            while a < c:
                mid = (a + c) // 2
                if sorted_p[mid] < q:
                    a = mid + 1
                else:
                    c = mid
            below = q * (a - lo) - (prefix[a] - prefix[lo])
            above = (prefix[hi] - prefix[a]) - q * (hi - a)
            acc += below + above
        # truncated levels have (numerically) zero Boltzmann weight
        acc += total_mass - prefix[offsets[lcut]]
        # cancellation in below/above can leave a tiny negative residue
        out[b] = max(0.5 * acc, 0.0)


class LevelObjective:
    """Callable TVD-vs-Boltzmann objective compressed onto the energy levels.

    Algebraically identical to `objective` but O(levels * log degeneracy) per
    beta instead of O(2^n); grid stages with ~1e6 betas depend on this.
    """

    def __init__(self, p: np.ndarray, energies: EnergyTable):
        if p.size != energies.energies.size:
            raise ValueError(
                f"distribution length {p.size} does not match energy table length "
                f"{energies.energies.size}"
            )
        level_energies = np.array([e for e, _ in energies.levels])
        degs = np.array([d for _, d in energies.levels], dtype=float)
        self._gaps = level_energies - energies.e_min
        self._degs = degs
        self._offsets = np.concatenate(([0], np.cumsum(degs.astype(np.int64))))
        order = np.argsort(energies.energies, kind="stable")
        by_level = p[order].copy()
        for l in range(len(degs)):
            seg = by_level[self._offsets[l] : self._offsets[l + 1]]
            seg.sort()
        self._sorted_p = by_level
        self._prefix = np.concatenate(([0.0], np.cumsum(by_level)))

    def batch(self, betas: np.ndarray) -> np.ndarray:
        out = np.empty(betas.size)
        _tvd_kernel(
            np.ascontiguousarray(betas, dtype=float),
            self._gaps,
            self._degs,
            self._sorted_p,
            self._offsets,
            self._prefix,
            out,
        )
        return out

    def __call__(self, beta: float) -> float:
        return float(self.batch(np.array([beta]))[0])


def minimize_scalar(f, x0: float, config: FitConfig) -> ScalarMinimizeResult:
    """Derivative-free 1-D minimization of f over beta > 0, searched in log10(beta).

    Nelder-Mead from log10(x0); tracks the best point ever evaluated, so the
    result is never worse than f(x0) even when the search fails to converge.
    """
    if x0 <= 0:
        raise ValueError(f"starting point must be positive, got {x0}")
    best = {"x": x0, "f": f(x0)}
    nfev = 1

    def wrapped(u):
        nonlocal nfev
        x = 10.0 ** min(max(u[0], _LOG10_MIN), _LOG10_MAX)
        fx = f(x)
        nfev += 1
        if fx < best["f"] or (fx == best["f"] and x > best["x"]):
            best["x"], best["f"] = x, fx
        return fx

    res = minimize(
        wrapped,
        x0=[math.log10(x0)],
        method="Nelder-Mead",
        options={
            "maxiter": config.minimizer_max_iters,
            "xatol": config.minimizer_tolerance,
            "fatol": config.minimizer_tolerance,
        },
    )
    return ScalarMinimizeResult(
        x_best=best["x"], f_best=best["f"], evaluations=nfev, converged=bool(res.success)
    )


def _grid_best(betas: np.ndarray, tvds: np.ndarray, decimals: int) -> tuple[float, float]:
    """Rounded (beta, tvd) of the grid minimum, ties toward larger beta."""
    r = np.round(tvds, decimals)
    rb = np.round(betas, decimals)
    mask = r == r.min()
    idx = np.flatnonzero(mask)[np.argmax(rb[mask])]
    return float(rb[idx]), float(r[idx])


def fit_beta(p: np.ndarray, energies: EnergyTable, config: FitConfig | None = None) -> FitResult:
    """Run the full three-stage protocol and return the global best fit.

    An explicit beta = 0 candidate covers the infinite-temperature floor that
    the log-coordinate minimizer cannot reach.
    """
    if config is None:
        config = FitConfig()
    obj = LevelObjective(p, energies)
    dec = config.rounding_decimals
    evals = 0

    candidates: list[tuple[float, float, FitSource]] = []

    # Stage 1: multi-start minimizer, plus the beta = 0 floor.
    candidates.append((0.0, float(round(obj(0.0), dec)), FitSource.MINIMIZER))
    evals += 1
    for guess in config.initial_guesses:
        res = minimize_scalar(obj, guess, config)
        evals += res.evaluations
        candidates.append(
            (float(round(res.x_best, dec)), float(round(res.f_best, dec)), FitSource.MINIMIZER)
        )

    # Stage 2: descending log grid.
    log_betas = config.log_grid()
    beta2, tvd2 = _grid_best(log_betas, obj.batch(log_betas), dec)
    evals += log_betas.size
    candidates.append((beta2, tvd2, FitSource.LOG_GRID))

    # Stage 3: fine linear grid up to beta_max.
    lin_betas = config.linear_grid()
    beta3, tvd3 = _grid_best(lin_betas, obj.batch(lin_betas), dec)
    evals += lin_betas.size
    candidates.append((beta3, tvd3, FitSource.LINEAR_GRID))

    best_beta, best_tvd, best_source = candidates[0]
    for beta, t, source in candidates[1:]:
        if t < best_tvd or (t == best_tvd and beta > best_beta):
            best_beta, best_tvd, best_source = beta, t, source
    return FitResult(beta_eff=best_beta, tvd_min=best_tvd, evaluations=evals, source=best_source)
