"""Exact QAOA simulation and Boltzmann-distribution fitting for Ising spin glasses."""

__version__ = "0.1.0"

from .ising import (
    IsingModel,
    EnergyTable,
    ModelFormatError,
    ResourceLimitError,
    generate_sk,
    energy,
    enumerate_energies,
    save_model,
    load_model,
)
from .simulator import (
    MixerKind,
    QaoaParams,
    initial_plus_state,
    apply_phase_separator,
    apply_x_mixer,
    apply_grover_mixer,
    simulate,
    expectation_energy,
)
from .thermal import boltzmann, tvd, shannon_entropy_normalized
from .fitting import FitConfig, FitResult, FitSource, objective, minimize_scalar, fit_beta
from .sweep import (
    GridSpec,
    SweepRecord,
    ThresholdPoint,
    TradeoffPoint,
    sweep,
    threshold_analysis,
    tradeoff_extract,
)

__all__ = [
    "IsingModel",
    "EnergyTable",
    "ModelFormatError",
    "ResourceLimitError",
    "generate_sk",
    "energy",
    "enumerate_energies",
    "save_model",
    "load_model",
    "MixerKind",
    "QaoaParams",
    "initial_plus_state",
    "apply_phase_separator",
    "apply_x_mixer",
    "apply_grover_mixer",
    "simulate",
    "expectation_energy",
    "boltzmann",
    "tvd",
    "shannon_entropy_normalized",
    "FitConfig",
    "FitResult",
    "FitSource",
    "objective",
    "minimize_scalar",
    "fit_beta",
    "GridSpec",
    "SweepRecord",
    "ThresholdPoint",
    "TradeoffPoint",
    "sweep",
    "threshold_analysis",
    "tradeoff_extract",
]
