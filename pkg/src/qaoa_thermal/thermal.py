"""Boltzmann distributions over enumerated spectra and distribution measures."""

from __future__ import annotations

import numpy as np

from .ising import EnergyTable


def boltzmann(energies: EnergyTable, beta: float) -> np.ndarray:
    """Boltzmann distribution p(x) proportional to exp(-beta*E(x)).

    The exponent is shifted by e_min before exponentiation so the ground-state
    weight is exactly 1; this keeps the evaluation finite (no overflow or
    0/0) for arbitrarily large beta.
    """
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"inverse temperature must be finite and >= 0, got {beta}")
    w = np.exp(-beta * (energies.energies - energies.e_min))
    return w / w.sum()


def tvd(p: np.ndarray, q: np.ndarray) -> float:
    """Total variation distance (1/2) * sum_x |P(x) - Q(x)|, in [0, 1]."""
    if p.size != q.size:
        raise ValueError(f"distribution lengths differ: {p.size} vs {q.size}")
    return 0.5 * float(np.abs(p - q).sum())


def shannon_entropy_normalized(p: np.ndarray, n: int) -> float:
    """Shannon entropy in base 2^n: 1 for the uniform distribution, 0 for a point mass.

    Computed as -sum p log2(p) / n with the 0*log(0) = 0 convention; log2 is
    exact on powers of two, so the uniform distribution evaluates to exactly 1.
    """
    if p.size != (1 << n):
        raise ValueError(f"distribution length {p.size} does not match 2^{n}")
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum() / n)
