"""End-to-end solver: dataset in, budgeted nonnegative coefficients out.

Pipeline: run the selected Monte-Carlo scheme, moment-match a Dirichlet to
the posterior samples, take its sparse mode, and rescale back to the
coefficient budget. The signed entry point doubles the design columns to
cover ordinary L1 problems.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dirichlet import DirichletParams, SimplexVector, match_moments_per_dim, mode
from .exceptions import ModeUndefinedError
from .model import (
    Dataset,
    ModelSpec,
    ParameterVector,
    design_matrix,
    merge_signed,
    rescale,
)
from .samplers import (
    RoundRecord,
    SamplerConfig,
    WeightedSampleSet,
    _importance,
    _iterated,
    _rejection,
    round_rng,
    weighted_moments,
)

METHODS = ("RS", "IS", "RSIRS", "ISIRS")


def uniform_prior(k: int) -> DirichletParams:
    """Flat Dirichlet prior: no preference among coefficients."""
    return DirichletParams(np.ones(k))


@dataclass(frozen=True)
class BalsonConfig:
    """Which sampling scheme to run, with its prior, model, and Monte-Carlo knobs."""

    method: str
    prior: DirichletParams
    spec: ModelSpec
    sampler: SamplerConfig

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")


@dataclass(frozen=True)
class SolveDiagnostics:
    """Audit trail of one solve: per-round behavior, fallback flag, timing."""

    method: str
    seed: int
    prior_alpha: tuple[float, ...]
    acceptance_rate: float
    ess_per_round: tuple[float, ...]
    alpha0_trajectory: tuple[float, ...]
    mean_fallback: bool
    wall_clock_s: float


@dataclass(frozen=True)
class FitReport:
    """Solver output: coefficients, matched posterior, mode point, diagnostics."""

    theta_star: ParameterVector
    alpha_star: DirichletParams
    omega_star: SimplexVector
    diagnostics: SolveDiagnostics


def _solve_design(design: np.ndarray, targets: np.ndarray, cfg: BalsonConfig) -> FitReport:
    started = time.perf_counter()
    budget = cfg.spec.scale
    trace: list[RoundRecord] = []
    if cfg.method in ("RS", "IS"):
        rng = round_rng(cfg.sampler.seed, 0)
        if cfg.method == "RS":
            batch = _rejection(design, targets, cfg.prior, budget, cfg.sampler, rng)
        else:
            batch = _importance(design, targets, cfg.prior, budget, cfg.sampler, rng)
        mean, variance = weighted_moments(batch)
        alpha_star = match_moments_per_dim(mean, variance)
        trace.append(
            RoundRecord(0, cfg.method.lower(), batch.ess, batch.acceptance_rate, alpha_star.alpha)
        )
    else:
        first = "rs" if cfg.method == "RSIRS" else "is"
        alpha_star = _iterated(design, targets, cfg.prior, budget, cfg.sampler, first, trace)
    try:
        omega_star = mode(alpha_star)
        fallback = False
    except ModeUndefinedError:
        # All concentrations at or below 1: fall back to the posterior mean,
        # which is always a valid simplex point.
        omega_star = SimplexVector(alpha_star.alpha / alpha_star.alpha0)
        fallback = True
    theta_star = rescale(omega_star, budget)
    diagnostics = SolveDiagnostics(
        method=cfg.method,
        seed=cfg.sampler.seed,
        prior_alpha=tuple(float(a) for a in cfg.prior.alpha),
        acceptance_rate=trace[0].acceptance_rate,
        ess_per_round=tuple(r.ess for r in trace),
        alpha0_trajectory=tuple(float(r.alpha.sum()) for r in trace),
        mean_fallback=fallback,
        wall_clock_s=time.perf_counter() - started,
    )
    return FitReport(
        theta_star=theta_star,
        alpha_star=alpha_star,
        omega_star=omega_star,
        diagnostics=diagnostics,
    )


def solve(data: Dataset, cfg: BalsonConfig) -> FitReport:
    """Fit nonnegative budgeted polynomial coefficients to the dataset."""
    if len(cfg.prior) != cfg.spec.order:
        raise ValueError("prior dimension must equal the model order")
    design = design_matrix(data.inputs, cfg.spec.order)
    return _solve_design(design, data.targets, cfg)


def solve_signed(data: Dataset, cfg: BalsonConfig) -> np.ndarray:
    """Fit signed coefficients under an L1 budget via the split reduction.

    The design rows become [phi(x), -phi(x)], the solve runs in dimension
    2 * order on the nonnegative split vector, and the halves are merged
    back to signed coefficients whose absolute sum is at most the budget.
    """
    signed_order = cfg.spec.order
    if len(cfg.prior) != 2 * signed_order:
        raise ValueError("prior dimension must be twice the signed order")
    half = design_matrix(data.inputs, signed_order)
    design = np.concatenate([half, -half], axis=1)
    report = _solve_design(design, data.targets, cfg)
    return merge_signed(report.theta_star)
