"""Classical Ising models: SK instance generation, energy evaluation, spectrum enumeration.

Bit -> spin encoding convention used everywhere in this package:
bit i of a configuration integer is 0 for spin +1 and 1 for spin -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

# Exhaustive enumeration allocates 2^n doubles; the cap keeps that bounded.
DEFAULT_SPIN_CAP = 24

_ENUM_CHUNK = 1 << 16


class ModelFormatError(ValueError):
    """Raised when a model file is malformed or violates model invariants."""


class ResourceLimitError(RuntimeError):
    """Raised when a request would exceed the configured spin-count cap."""


def spin_vector(bits: int, n: int) -> np.ndarray:
    """Return the length-n array of spins (+1/-1) encoded by the integer `bits`."""
    return 1 - 2 * ((bits >> np.arange(n)) & 1)


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Fully general classical Ising Hamiltonian sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.

    `couplings` maps ordered pairs (i, j) with i < j < n to J_ij. SK-generated
    instances carry all C(n,2) pairs with J_ij, h_i in {-1, +1}, but arbitrary
    real values and sparse coupling sets are accepted.
    """

    n: int
    couplings: dict[tuple[int, int], float]
    fields: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"spin count n must be >= 1, got {self.n}")
        object.__setattr__(self, "fields", np.asarray(self.fields, dtype=float))
        if self.fields.shape != (self.n,):
            raise ValueError(f"fields must have length n={self.n}, got shape {self.fields.shape}")
        for i, j in self.couplings:
            if not (0 <= i < j < self.n):
                raise ValueError(f"coupling pair ({i}, {j}) violates 0 <= i < j < n={self.n}")

    def __eq__(self, other):
        if not isinstance(other, IsingModel):
            return NotImplemented
        return (
            self.n == other.n
            and self.couplings == other.couplings
            and np.array_equal(self.fields, other.fields)
        )


@dataclass(frozen=True)
class EnergyTable:
    """Exhaustive energy spectrum of an n-spin model.

    `energies[x]` is the energy of configuration integer x; `levels` lists the
    distinct energies in ascending order with their degeneracies.
    """

    energies: np.ndarray
    e_min: float
    e_max: float
    levels: list[tuple[float, int]] = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.energies.size).bit_length() - 1

    def __eq__(self, other):
        if not isinstance(other, EnergyTable):
            return NotImplemented
        return (
            np.array_equal(self.energies, other.energies)
            and self.e_min == other.e_min
            and self.e_max == other.e_max
            and self.levels == other.levels
        )


def generate_sk(n: int, seed: int) -> IsingModel:
    """Generate a fully connected SK instance with J_ij, h_i drawn uniformly from {-1, +1}.

    Uses a PCG64 generator so that identical (n, seed) pairs produce
    bitwise-identical models on every platform. Couplings are drawn first, in
    lexicographic (i, j) order, then the n local fields.
    """
    if n < 1:
        raise ValueError(f"spin count n must be >= 1, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    j_vals = rng.integers(0, 2, size=len(pairs)) * 2 - 1
    h_vals = rng.integers(0, 2, size=n) * 2 - 1
    couplings = {pair: float(v) for pair, v in zip(pairs, j_vals)}
    return IsingModel(n=n, couplings=couplings, fields=h_vals.astype(float))


def energy(model: IsingModel, config: int) -> float:
    """Evaluate the model energy of a single configuration integer."""
    if not 0 <= config < (1 << model.n):
        raise ValueError(f"configuration {config} out of range for n={model.n}")
    s = spin_vector(config, model.n)
    e = float(np.dot(model.fields, s))
    for (i, j), jij in model.couplings.items():
        e += jij * s[i] * s[j]
    return e


def enumerate_energies(model: IsingModel, cap: int = DEFAULT_SPIN_CAP) -> EnergyTable:
    """Compute the energy of all 2^n configurations.

    Evaluation is vectorized in chunks so memory stays bounded at large n.
    """
    if model.n > cap:
        raise ResourceLimitError(f"n={model.n} exceeds the enumeration cap of {cap}")
    n = model.n
    size = 1 << n
    pairs = sorted(model.couplings)
    i_idx = np.array([p[0] for p in pairs], dtype=np.int64)
    j_idx = np.array([p[1] for p in pairs], dtype=np.int64)
    j_vals = np.array([model.couplings[p] for p in pairs], dtype=float)

    energies = np.empty(size, dtype=float)
    bit_pos = np.arange(n)
    for start in range(0, size, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, size)
        x = np.arange(start, stop, dtype=np.int64)
        spins = (1 - 2 * ((x[:, None] >> bit_pos) & 1)).astype(np.int8)
        e = spins.astype(float) @ model.fields
        if pairs:
            e += (spins[:, i_idx] * spins[:, j_idx]).astype(float) @ j_vals
        energies[start:stop] = e

    uniq, counts = np.unique(energies, return_counts=True)
    levels = [(float(u), int(c)) for u, c in zip(uniq, counts)]
    return EnergyTable(
        energies=energies,
        e_min=float(uniq[0]),
        e_max=float(uniq[-1]),
        levels=levels,
    )


def save_model(model: IsingModel, path) -> None:
    """Write a model to the JSON model-file schema (n, h, couplings)."""
    doc = {
        "n": model.n,
        "h": list(model.fields),
        "couplings": [
            {"i": i, "j": j, "value": model.couplings[(i, j)]}
            for i, j in sorted(model.couplings)
        ],
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def load_model(path) -> IsingModel:
    """Read a model file, validating the schema and all index invariants."""
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("top level must be an object")
    try:
        n = doc["n"]
        h = doc["h"]
        raw_couplings = doc["couplings"]
    except KeyError as exc:
        raise ModelFormatError(f"missing required field {exc.args[0]!r}") from exc
    if not isinstance(n, int) or n < 1:
        raise ModelFormatError(f"field 'n' must be a positive integer, got {n!r}")
    if not isinstance(h, list) or len(h) != n:
        raise ModelFormatError(f"field 'h' must be a list of length n={n}")
    couplings: dict[tuple[int, int], float] = {}
    for k, entry in enumerate(raw_couplings):
        try:
            i, j, value = entry["i"], entry["j"], entry["value"]
        except (TypeError, KeyError):
            raise ModelFormatError(f"couplings[{k}] must be an object with keys i, j, value")
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < n):
            raise ModelFormatError(
                f"couplings[{k}] pair ({i}, {j}) violates 0 <= i < j < n={n}"
            )
        if (i, j) in couplings:
            raise ModelFormatError(f"couplings[{k}] duplicates pair ({i}, {j})")
        couplings[(i, j)] = float(value)
    return IsingModel(n=n, couplings=couplings, fields=np.array(h, dtype=float))
