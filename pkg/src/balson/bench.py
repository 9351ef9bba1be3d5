"""Benchmark harness: seeded data generation, multi-method runs, summary tables.

Within one repetition every method fits the identical training set; noise is
regenerated per repetition from (base_seed, repetition). Per-row solver seeds
derive from (base_seed, repetition, method), so sequential and parallel
schedules produce the same table after the final deterministic sort.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

import numpy as np

from .baselines import BaselineConfig, bayesian_lasso_fit, ip_fit, lasso_fit
from .bench_output import write_outputs
from .exceptions import BalsonError, DegenerateStatisticError
from .metrics import mse, paired_t_test, sparsity
from .model import Dataset, ModelSpec, predict
from .samplers import SamplerConfig
from .solver import BalsonConfig, solve, uniform_prior

PAPER_THETA = (0.0013, 0.0380, 0.0102, 0.9082, 0.0423)
BASELINE_METHODS = ("LASSO", "IP", "BayesianLASSO")
BALSON_METHODS = ("BALSON-RS", "BALSON-IS", "BALSON-RSIRS", "BALSON-ISIRS")
ALL_METHODS = BASELINE_METHODS + BALSON_METHODS


@dataclass(frozen=True)
class ExperimentConfig:
    """Full experiment definition; defaults reproduce the polynomial benchmark."""

    true_theta: tuple[float, ...] = PAPER_THETA
    n_train: int = 100
    n_test: int = 1000
    budget: float = 1.0
    repetitions: int = 100
    methods: tuple[str, ...] = ALL_METHODS
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    baselines: BaselineConfig = field(default_factory=BaselineConfig)
    base_seed: int = 0
    out_dir: str | None = None
    workers: int = 1

    def __post_init__(self):
        theta = tuple(float(t) for t in self.true_theta)
        object.__setattr__(self, "true_theta", theta)
        object.__setattr__(self, "methods", tuple(self.methods))
        if len(theta) < 2 or any(t < 0 or not np.isfinite(t) for t in theta):
            raise ValueError("true_theta must be nonnegative, finite, length >= 2")
        if self.n_train < len(theta) or self.n_train < 2:
            raise ValueError("n_train must be at least the coefficient count (and >= 2)")
        if self.n_test < 2:
            raise ValueError("n_test must be >= 2")
        if not self.budget > 0:
            raise ValueError("budget must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        unknown = set(self.methods) - set(ALL_METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("methods must not repeat")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def order(self) -> int:
        return len(self.true_theta)


@dataclass(frozen=True)
class RunRecord:
    """One (method, repetition) outcome; failures carry the error message."""

    method: str
    repetition: int
    seed: int
    dataset_sha256: str
    mse: float | None
    sparsity: float | None
    acceptance_rate: float | None
    ess_final: float | None
    alpha0_final: float | None
    wall_clock_s: float
    error: str | None
    theta: tuple[float, ...] | None


@dataclass(frozen=True)
class ResultTable:
    config: ExperimentConfig
    rows: tuple[RunRecord, ...]


@dataclass(frozen=True)
class Summary:
    """Per-method metric means plus the significance matrices of the paper tables."""

    method_means: dict  # method -> {"mean_mse", "mean_sparsity", "n_ok"}
    pvalues_mse: dict  # balson method -> baseline -> float | None (degenerate)
    pvalues_sparsity: dict


def generate_dataset(cfg: ExperimentConfig, repetition: int):
    """Equally spaced inputs on [0, 1], unit-variance Gaussian target noise.

    Returns (training dataset, test inputs, noise-free test curve). The noise
    stream is (base_seed, repetition); inputs never vary across repetitions.
    """
    train_x = np.linspace(0.0, 1.0, cfg.n_train)
    rng = np.random.default_rng([cfg.base_seed, repetition])
    train_y = predict(np.asarray(cfg.true_theta), train_x) + rng.standard_normal(cfg.n_train)
    test_x = np.linspace(0.0, 1.0, cfg.n_test)
    test_truth = predict(np.asarray(cfg.true_theta), test_x)
    return Dataset(train_x, train_y), test_x, test_truth


def dataset_digest(data: Dataset) -> str:
    h = hashlib.sha256()
    h.update(data.inputs.tobytes())
    h.update(data.targets.tobytes())
    return h.hexdigest()


def method_seed(base_seed: int, repetition: int, method: str) -> int:
    """Stable per-row seed; independent of which methods were enabled."""
    index = ALL_METHODS.index(method)
    state = np.random.SeedSequence([base_seed, repetition, index]).generate_state(1, np.uint64)
    return int(state[0])


def _fit_one(method: str, train: Dataset, cfg: ExperimentConfig, seed: int):
    spec = ModelSpec(cfg.order, cfg.budget)
    if method == "LASSO":
        return np.asarray(lasso_fit(train, spec, cfg.baselines)), {}
    if method == "IP":
        return ip_fit(train, spec, cfg.baselines).theta, {}
    if method == "BayesianLASSO":
        rng = np.random.default_rng([seed])
        return np.asarray(bayesian_lasso_fit(train, spec, cfg.baselines, rng)), {}
    scheme = method.removeprefix("BALSON-")
    sampler = dataclasses.replace(cfg.sampler, seed=seed)
    balson_cfg = BalsonConfig(
        method=scheme, prior=uniform_prior(cfg.order), spec=spec, sampler=sampler
    )
    report = solve(train, balson_cfg)
    diag = report.diagnostics
    return report.theta_star.theta, {
        "acceptance_rate": diag.acceptance_rate,
        "ess_final": diag.ess_per_round[-1],
        "alpha0_final": diag.alpha0_trajectory[-1],
    }


def _repetition_rows(cfg: ExperimentConfig, repetition: int) -> list[RunRecord]:
    train, test_x, test_truth = generate_dataset(cfg, repetition)
    digest = dataset_digest(train)
    rows = []
    for method in cfg.methods:
        seed = method_seed(cfg.base_seed, repetition, method)
        started = time.perf_counter()
        try:
            theta, diag = _fit_one(method, train, cfg, seed)
            fitted = predict(theta, test_x)
            record = RunRecord(
                method=method,
                repetition=repetition,
                seed=seed,
                dataset_sha256=digest,
                mse=mse(test_truth, fitted),
                sparsity=sparsity(theta),
                acceptance_rate=diag.get("acceptance_rate"),
                ess_final=diag.get("ess_final"),
                alpha0_final=diag.get("alpha0_final"),
                wall_clock_s=time.perf_counter() - started,
                error=None,
                theta=tuple(float(t) for t in theta),
            )
        except BalsonError as err:
            record = RunRecord(
                method=method,
                repetition=repetition,
                seed=seed,
                dataset_sha256=digest,
                mse=None,
                sparsity=None,
                acceptance_rate=None,
                ess_final=None,
                alpha0_final=None,
                wall_clock_s=time.perf_counter() - started,
                error=str(err),
                theta=None,
            )
        rows.append(record)
    return rows


def run_experiment(cfg: ExperimentConfig) -> ResultTable:
    """Run every enabled method on every repetition's shared dataset."""
    reps = range(cfg.repetitions)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(partial(_repetition_rows, cfg), reps))
    else:
        chunks = [_repetition_rows(cfg, rep) for rep in reps]
    rows = [record for chunk in chunks for record in chunk]
    rows.sort(key=lambda r: (cfg.methods.index(r.method), r.repetition))
    return ResultTable(config=cfg, rows=tuple(rows))


def _metric_series(table: ResultTable, method: str, attr: str) -> dict[int, float]:
    return {
        r.repetition: getattr(r, attr)
        for r in table.rows
        if r.method == method and r.error is None
    }


def summarize(table: ResultTable) -> Summary:
    """Per-method means and paired significance of each sampler variant vs each baseline."""
    methods = table.config.methods
    means = {}
    for method in methods:
        ms = _metric_series(table, method, "mse")
        sp = _metric_series(table, method, "sparsity")
        means[method] = {
            "mean_mse": float(np.mean(list(ms.values()))) if ms else None,
            "mean_sparsity": float(np.mean(list(sp.values()))) if sp else None,
            "n_ok": len(ms),
        }
    pvalues = {"mse": {}, "sparsity": {}}
    for attr in ("mse", "sparsity"):
        for variant in BALSON_METHODS:
            if variant not in methods:
                continue
            row = {}
            for baseline in BASELINE_METHODS:
                if baseline not in methods:
                    continue
                a = _metric_series(table, variant, attr)
                b = _metric_series(table, baseline, attr)
                shared = sorted(set(a) & set(b))
                if len(shared) < 2:
                    row[baseline] = None
                    continue
                try:
                    _, p = paired_t_test([a[i] for i in shared], [b[i] for i in shared])
                    row[baseline] = p
                except DegenerateStatisticError:
                    row[baseline] = None
            pvalues[attr][variant] = row
    return Summary(
        method_means=means,
        pvalues_mse=pvalues["mse"],
        pvalues_sparsity=pvalues["sparsity"],
    )


def config_echo(cfg: ExperimentConfig) -> dict:
    """Experiment definition as plain data, excluding scheduling/IO knobs."""
    echo = dataclasses.asdict(cfg)
    echo.pop("out_dir")
    echo.pop("workers")
    echo["true_theta"] = list(cfg.true_theta)
    echo["methods"] = list(cfg.methods)
    return echo


def config_from_mapping(raw: dict) -> ExperimentConfig:
    """Build a config from parsed JSON; omitted fields keep benchmark defaults."""
    raw = dict(raw)
    kwargs = {}
    if "sampler" in raw:
        kwargs["sampler"] = SamplerConfig(**raw.pop("sampler"))
    if "baselines" in raw:
        nested = dict(raw.pop("baselines"))
        sub = {}
        for name, cls in (("lasso", "LassoParams"), ("ip", "IpParams"), ("gibbs", "GibbsParams")):
            if name in nested:
                from . import baselines as _baselines

                sub[name] = getattr(_baselines, cls)(**nested.pop(name))
        if nested:
            raise ValueError(f"unknown baseline config keys: {sorted(nested)}")
        kwargs["baselines"] = BaselineConfig(**sub)
    allowed = {f.name for f in dataclasses.fields(ExperimentConfig)} - {"sampler", "baselines"}
    unknown = set(raw) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in ("true_theta", "methods"):
        if key in raw:
            raw[key] = tuple(raw[key])
    kwargs.update(raw)
    return ExperimentConfig(**kwargs)


def emit_outputs(table: ResultTable, summary: Summary, out_dir, svg: bool = False) -> list[Path]:
    """Write config echo, raw rows, summary, p-value matrices, curve data, and plots.

    Returns the list of files written. With no methods enabled only the config
    echo is produced.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        manifest = [out / "config.json"]
        (out / "config.json").write_text(
            json.dumps(config_echo(table.config), indent=2, sort_keys=True) + "\n"
        )
        if table.config.methods:
            manifest.extend(write_outputs(table, summary, out, svg))
        return manifest
    except OSError as err:
        raise OSError(f"failed writing benchmark outputs under {out}: {err}") from err
