"""Command-line interface: instance generation, grid sweeps, and sweep analysis.

Exit codes: 0 success, 2 configuration error, 3 compute error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .fitting import FitConfig
from .ising import IsingModel, ModelFormatError, generate_sk, load_model, save_model
from .simulator import MixerKind
from .sweep import GridSpec, SweepRecord, sweep, threshold_analysis, tradeoff_extract

import os

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3

SWEEP_HEADER = ["gamma", "beta_angle", "energy", "entropy", "beta_eff", "tvd_min"]
THRESHOLDS_HEADER = ["threshold", "best_beta_eff", "t_eff", "gamma", "beta_angle"]
TRADEOFF_HEADER = ["t_eff", "tvd_min", "gamma", "beta_angle"]


@dataclass
class RunConfig:
    """Everything needed to rerun a sweep exactly; serialized into meta.json."""

    mixer: str
    gamma_range: tuple[float, float]
    beta_range: tuple[float, float]
    resolution: tuple[int, int]
    fit_enabled: bool
    output_dir: str
    model_path: str | None = None
    n: int | None = None
    seed: int | None = None
    threads: str | int = "auto"
    fit: dict = field(default_factory=lambda: FitConfig().to_dict())

    def __post_init__(self):
        by_file = self.model_path is not None
        by_seed = self.n is not None and self.seed is not None
        if by_file == by_seed:
            raise ValueError("exactly one of --model or (--n, --seed) must be supplied")

    def load_ising_model(self) -> IsingModel:
        if self.model_path is not None:
            return load_model(self.model_path)
        return generate_sk(self.n, self.seed)

    def mixer_kind(self) -> MixerKind:
        return MixerKind(self.mixer)

    def grid_spec(self) -> GridSpec:
        return GridSpec(
            gamma_range=tuple(self.gamma_range),
            beta_range=tuple(self.beta_range),
            n_gamma=self.resolution[0],
            n_beta=self.resolution[1],
        )

    def fit_config(self) -> FitConfig:
        return FitConfig.from_dict(self.fit)

    def worker_count(self) -> int:
        if self.threads == "auto":
            return os.cpu_count() or 1
        return int(self.threads)

    def to_dict(self) -> dict:
        return {
            "mixer": self.mixer,
            "gamma_range": list(self.gamma_range),
            "beta_range": list(self.beta_range),
            "resolution": list(self.resolution),
            "fit_enabled": self.fit_enabled,
            "output_dir": self.output_dir,
            "model_path": self.model_path,
            "n": self.n,
            "seed": self.seed,
            "threads": self.threads,
            "fit": dict(self.fit),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        kw = {k: v for k, v in d.items() if k in known}
        kw["gamma_range"] = tuple(kw["gamma_range"])
        kw["beta_range"] = tuple(kw["beta_range"])
        kw["resolution"] = tuple(kw["resolution"])
        return cls(**kw)


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(x, ".17g")


def _write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _read_sweep_csv(path) -> list[SweepRecord]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or [c for c in SWEEP_HEADER if c not in reader.fieldnames]:
            missing = [] if reader.fieldnames is None else [
                c for c in SWEEP_HEADER if c not in reader.fieldnames
            ]
            raise ValueError(f"sweep CSV {path} is missing columns: {missing or SWEEP_HEADER}")
        records = []
        for row in reader:
            records.append(
                SweepRecord(
                    gamma=float(row["gamma"]),
                    beta_angle=float(row["beta_angle"]),
                    energy_expectation=float(row["energy"]),
                    entropy=float(row["entropy"]),
                    beta_eff=float(row["beta_eff"]) if row["beta_eff"] else None,
                    tvd_min=float(row["tvd_min"]) if row["tvd_min"] else None,
                )
            )
    return records


def cmd_gen(args) -> int:
    try:
        model = generate_sk(args.n, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    save_model(model, args.out)
    print(f"wrote {args.out}: n={model.n}, {len(model.couplings)} couplings")
    return EXIT_OK


def _run_config_from_args(args) -> RunConfig:
    if args.config:
        with open(args.config) as f:
            cfg = RunConfig.from_dict(json.load(f))
        if args.out_dir is not None:
            cfg.output_dir = args.out_dir
        if args.threads is not None:
            cfg.threads = args.threads if args.threads == "auto" else int(args.threads)
        return cfg
    mixer = MixerKind(args.mixer)
    gamma_range = tuple(args.gamma_range) if args.gamma_range else (0.0, math.pi / 4)
    if args.beta_range:
        beta_range = tuple(args.beta_range)
    else:
        beta_range = (0.0, 2 * math.pi if mixer is MixerKind.GROVER else math.pi)
    fit = FitConfig(beta_max=args.beta_max) if args.beta_max else FitConfig()
    return RunConfig(
        mixer=mixer.value,
        gamma_range=gamma_range,
        beta_range=beta_range,
        resolution=tuple(args.resolution),
        fit_enabled=not args.no_fit,
        output_dir=args.out_dir if args.out_dir is not None else ".",
        model_path=args.model,
        n=args.n,
        seed=args.seed,
        threads=args.threads if args.threads in (None, "auto") else int(args.threads),
        fit=fit.to_dict(),
    )


def cmd_sweep(args) -> int:
    try:
        cfg = _run_config_from_args(args)
        if cfg.threads is None:
            cfg.threads = "auto"
        model = cfg.load_ising_model()
        grid = cfg.grid_spec()
        fit = cfg.fit_config()
    except (ValueError, ModelFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    started_at = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    t0 = time.monotonic()
    try:
        records = sweep(
            model,
            grid,
            cfg.mixer_kind(),
            fit=fit,
            fit_enabled=cfg.fit_enabled,
            workers=cfg.worker_count(),
        )
    except Exception as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    wall = time.monotonic() - t0

    os.makedirs(cfg.output_dir, exist_ok=True)
    rows = [
        [
            _fmt(r.gamma),
            _fmt(r.beta_angle),
            _fmt(r.energy_expectation),
            _fmt(r.entropy),
            _fmt(r.beta_eff),
            _fmt(r.tvd_min),
        ]
        for r in records
    ]
    sweep_path = os.path.join(cfg.output_dir, "sweep.csv")
    _write_csv(sweep_path, SWEEP_HEADER, rows)
    meta = {
        **cfg.to_dict(),
        "version": __version__,
        "started_at": started_at,
        "wall_seconds": wall,
    }
    with open(os.path.join(cfg.output_dir, "meta.json"), "w") as f:
        json.dump(meta, f, indent=1)
        f.write("\n")
    print(f"wrote {sweep_path}: {len(records)} cells in {wall:.1f}s")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        records = _read_sweep_csv(args.sweep)
        thresholds = [float(t) for t in args.thresholds.split(",")]
        if any(r.beta_eff is None or r.tvd_min is None for r in records):
            raise ValueError(f"sweep CSV {args.sweep} has empty fit columns; rerun with fitting enabled")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        points = threshold_analysis(records, thresholds)
        trade = tradeoff_extract(records, args.t_eff_max)
    except Exception as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    os.makedirs(args.out_dir, exist_ok=True)
    threshold_rows = []
    for pt in points:
        t_eff = None
        if pt.best_beta_eff is not None and pt.best_beta_eff > 0:
            t_eff = 1.0 / pt.best_beta_eff
        threshold_rows.append(
            [_fmt(pt.threshold), _fmt(pt.best_beta_eff), _fmt(t_eff), _fmt(pt.gamma), _fmt(pt.beta_angle)]
        )
    _write_csv(os.path.join(args.out_dir, "thresholds.csv"), THRESHOLDS_HEADER, threshold_rows)
    _write_csv(
        os.path.join(args.out_dir, "tradeoff.csv"),
        TRADEOFF_HEADER,
        [[_fmt(p.t_eff), _fmt(p.tvd_min), _fmt(p.gamma), _fmt(p.beta_angle)] for p in trade],
    )

    print(f"{'threshold':>10} {'T_eff':>12} {'beta_angle':>12} {'gamma':>12}")
    for pt in points:
        if pt.best_beta_eff is None:
            print(f"{pt.threshold:>10g} {'absent':>12} {'-':>12} {'-':>12}")
        elif pt.best_beta_eff == 0:
            print(f"{pt.threshold:>10g} {'inf':>12} {pt.beta_angle:>12.6g} {pt.gamma:>12.6g}")
        else:
            print(
                f"{pt.threshold:>10g} {1.0 / pt.best_beta_eff:>12.6g} "
                f"{pt.beta_angle:>12.6g} {pt.gamma:>12.6g}"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-thermal",
        description="QAOA angle-landscape sweeps and Boltzmann-distribution fitting",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an SK instance file")
    p_gen.add_argument("--n", type=int, required=True, help="spin count")
    p_gen.add_argument("--seed", type=int, required=True, help="PRNG seed")
    p_gen.add_argument("--out", required=True, help="output model file path")
    p_gen.set_defaults(func=cmd_gen)

    p_sweep = sub.add_parser("sweep", help="run a (gamma, beta) grid sweep")
    p_sweep.add_argument("--model", help="model file path")
    p_sweep.add_argument("--n", type=int, help="spin count (with --seed, instead of --model)")
    p_sweep.add_argument("--seed", type=int, help="PRNG seed (with --n)")
    p_sweep.add_argument("--mixer", choices=[m.value for m in MixerKind], default="x")
    p_sweep.add_argument("--gamma-range", type=float, nargs=2, metavar=("LO", "HI"))
    p_sweep.add_argument("--beta-range", type=float, nargs=2, metavar=("LO", "HI"))
    p_sweep.add_argument("--resolution", type=int, nargs=2, default=[200, 200], metavar=("NG", "NB"))
    p_sweep.add_argument("--no-fit", action="store_true", help="energy/entropy only")
    p_sweep.add_argument("--beta-max", type=float, help="linear-grid fitting cap")
    p_sweep.add_argument("--out-dir", help="output directory (default '.')")
    p_sweep.add_argument("--threads", help="worker count or 'auto'")
    p_sweep.add_argument("--config", help="rerun from a meta.json written by a previous sweep")
    p_sweep.set_defaults(func=cmd_sweep)

    p_an = sub.add_parser("analyze", help="threshold/tradeoff analysis of a fitted sweep CSV")
    p_an.add_argument("--sweep", required=True, help="sweep.csv path")
    p_an.add_argument("--thresholds", default="0.1,0.01,0.001", help="comma-separated TVD thresholds")
    p_an.add_argument("--t-eff-max", type=float, default=100.0)
    p_an.add_argument("--out-dir", default=".")
    p_an.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
