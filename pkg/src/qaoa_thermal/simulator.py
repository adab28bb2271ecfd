"""Exact statevector simulation of depth-p QAOA with X and Grover mixers.

Everything is done at the Hamiltonian level: the phase separator is a diagonal
multiply against the precomputed energy table, the X mixer is the exact
factorized product of single-qubit rotations, and the Grover mixer is the
closed rank-one update exp(-i*beta*|psi><psi|) along the uniform state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ising import DEFAULT_SPIN_CAP, EnergyTable, ResourceLimitError


class MixerKind(Enum):
    TRANSVERSE_X = "x"
    GROVER = "grover"


@dataclass(frozen=True)
class QaoaParams:
    """Angle schedule for a depth-p run: gammas drive the phase separator, betas the mixer."""

    gammas: np.ndarray
    betas: np.ndarray
    mixer: MixerKind

    def __post_init__(self):
        object.__setattr__(self, "gammas", np.atleast_1d(np.asarray(self.gammas, dtype=float)))
        object.__setattr__(self, "betas", np.atleast_1d(np.asarray(self.betas, dtype=float)))
        if self.gammas.ndim != 1 or self.gammas.shape != self.betas.shape or self.gammas.size < 1:
            raise ValueError("gammas and betas must be equal-length 1-D arrays with depth >= 1")

    @property
    def depth(self) -> int:
        return self.gammas.size


def initial_plus_state(n: int, cap: int = DEFAULT_SPIN_CAP) -> np.ndarray:
    """Uniform superposition |+^n>: every amplitude 2^(-n/2), zero imaginary part."""
    if n < 1:
        raise ValueError(f"spin count n must be >= 1, got {n}")
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds the statevector cap of {cap}")
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)


def apply_phase_separator(state: np.ndarray, energies: EnergyTable, gamma: float) -> np.ndarray:
    """Multiply amplitude x by exp(-i*gamma*E(x))."""
    if state.size != energies.energies.size:
        raise ValueError(
            f"state length {state.size} does not match energy table length {energies.energies.size}"
        )
    return state * np.exp(-1j * gamma * energies.energies)


def apply_x_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Apply exp(-i*beta*sum_i X_i) as n independent single-qubit rotations.

    Per qubit this is the exact 2x2 operator
    [[cos b, -i sin b], [-i sin b, cos b]]; the product form is exact because
    the X_i commute.
    """
    n = int(state.size).bit_length() - 1
    c, s = math.cos(beta), math.sin(beta)
    psi = state.reshape((2,) * n)
    for axis in range(n):
        psi = c * psi - 1j * s * np.flip(psi, axis=axis)
    return psi.reshape(-1)


def apply_grover_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Apply exp(-i*beta*|psi><psi|) with |psi> the uniform state.

    Closed form: c' = c - (1 - e^{-i beta}) * <psi|c> * psi, i.e. every
    amplitude is shifted by the same multiple of the mean amplitude.
    """
    shift = (1.0 - np.exp(-1j * beta)) * state.mean()
    return state - shift


def simulate(energies: EnergyTable, params: QaoaParams) -> np.ndarray:
    """Run depth-p QAOA and return the output probability distribution |c_x|^2."""
    state = initial_plus_state(energies.n)
    for gamma, beta in zip(params.gammas, params.betas):
        state = apply_phase_separator(state, energies, gamma)
        if params.mixer is MixerKind.TRANSVERSE_X:
            state = apply_x_mixer(state, beta)
        else:
            state = apply_grover_mixer(state, beta)
    return np.abs(state) ** 2


def expectation_energy(dist: np.ndarray, energies: EnergyTable) -> float:
    """Energy expectation sum_x P(x) E(x)."""
    if dist.size != energies.energies.size:
        raise ValueError(
            f"distribution length {dist.size} does not match energy table length "
            f"{energies.energies.size}"
        )
    return float(np.dot(dist, energies.energies))
