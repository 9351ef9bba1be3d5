"""Monte-Carlo estimation of the Dirichlet-approximated posterior.

Four schemes: rejection sampling, importance sampling, and their iterated
importance-resampling variants that re-fit the Dirichlet proposal over R
refinement rounds. All schemes are deterministic given the configured seed;
round ``i`` always consumes the substream ``default_rng([seed, i])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dirichlet import DirichletParams, match_moments_per_dim, sample_batch
from .exceptions import BalsonError, DegenerateWeightsError, RejectionBudgetError
from .model import Dataset, ModelSpec, ResidualForm, design_matrix

DEFAULT_SAMPLE_COUNT = 10_000
DEFAULT_RESAMPLE_ROUNDS = 100
PROPOSAL_BUDGET_FACTOR = 1000
_CHUNK = 50_000


@dataclass(frozen=True)
class SamplerConfig:
    """Monte-Carlo knobs: L, refinement rounds R, RS proposal cap, seed."""

    sample_count: int = DEFAULT_SAMPLE_COUNT
    resample_rounds: int = DEFAULT_RESAMPLE_ROUNDS
    max_proposals: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.sample_count < 100:
            raise ValueError("sample_count must be at least 100")
        if self.resample_rounds < 0:
            raise ValueError("resample_rounds must be >= 0")
        if self.max_proposals is None:
            object.__setattr__(self, "max_proposals", PROPOSAL_BUDGET_FACTOR * self.sample_count)
        if self.max_proposals < self.sample_count:
            raise ValueError("max_proposals must be >= sample_count")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class WeightedSampleSet:
    """L simplex samples with normalized weights and degeneracy diagnostics."""

    samples: np.ndarray  # (L, K), each row on the simplex
    weights: np.ndarray  # (L,), nonnegative, sums to 1
    ess: float
    acceptance_rate: float

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "weights", w)
        if s.ndim != 2 or s.shape[1] < 2 or w.shape != (s.shape[0],):
            raise ValueError("samples must be (L, K>=2) with one weight per row")
        if np.any(s < 0.0) or np.max(np.abs(s.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("every sample must lie on the simplex")
        if np.any(w < 0.0) or abs(float(w.sum()) - 1.0) > 1e-10:
            raise ValueError("weights must be nonnegative and sum to 1")
        if not (1.0 - 1e-9 <= self.ess <= s.shape[0] * (1.0 + 1e-9)):
            raise ValueError("ess must lie in [1, L]")
        object.__setattr__(self, "ess", float(min(max(self.ess, 1.0), s.shape[0])))
        if not (0.0 <= self.acceptance_rate <= 1.0):
            raise ValueError("acceptance_rate must lie in [0, 1]")

    def __len__(self):
        return self.samples.shape[0]


@dataclass(frozen=True)
class RoundRecord:
    """One refinement round: which pass ran and what it produced."""

    index: int
    kind: str  # "rs" or "is"
    ess: float
    acceptance_rate: float
    alpha: np.ndarray = field(repr=False)


def round_rng(seed: int, round_index: int) -> np.random.Generator:
    """Substream for one sampling round, derived from (seed, round index)."""
    return np.random.default_rng([seed, round_index])


def min_rss(design: np.ndarray, targets: np.ndarray) -> float:
    """Unconstrained least-squares residual floor (minimum-norm on rank deficiency)."""
    if targets.shape[0] == 0:
        return 0.0
    theta, *_ = np.linalg.lstsq(design, targets, rcond=None)
    resid = targets - design @ theta
    return max(float(resid @ resid), 0.0)


def rss_lower_bound(data: Dataset, order: int) -> float:
    """Floor of ||y - Phi theta||^2 over all real theta; dominates RSS(C omega)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return min_rss(design_matrix(data.inputs, order), data.targets)


def normalize_log_weights(log_weights: np.ndarray) -> tuple[np.ndarray, float]:
    """Shift by the max, exponentiate, normalize; returns (weights, ess).

    The shift makes the largest weight exactly 1 before normalization, so the
    result (and the effective sample size 1 / sum w^2) is invariant to adding
    any constant to the log weights.
    """
    log_weights = np.asarray(log_weights, dtype=np.float64)
    if not np.all(np.isfinite(log_weights)):
        raise BalsonError("non-finite log weight encountered")
    shifted = np.exp(log_weights - log_weights.max())
    total = float(shifted.sum())
    if total <= 0.0:
        raise BalsonError("all importance weights vanished after stabilization")
    weights = shifted / total
    ess = 1.0 / float(weights @ weights)
    return weights, ess


def _rejection(
    design: np.ndarray,
    targets: np.ndarray,
    prior: DirichletParams,
    budget: float,
    cfg: SamplerConfig,
    rng: np.random.Generator,
) -> WeightedSampleSet:
    form = ResidualForm(design, targets)
    floor = min_rss(design, targets)
    want = cfg.sample_count
    kept = []
    n_kept = 0
    n_proposed = 0
    n_accepted = 0
    while n_kept < want:
        remaining_budget = cfg.max_proposals - n_proposed
        if remaining_budget <= 0:
            raise RejectionBudgetError(
                f"rejection budget exceeded: {n_proposed} proposals "
                f"yielded {n_accepted} acceptances (need {want})"
            )
        m = min(_CHUNK, remaining_budget)
        draws = sample_batch(prior, rng, m)
        gap = form.rss(budget * draws) - floor
        if np.any(np.isnan(gap)):
            raise BalsonError("non-finite residual during rejection sampling")
        accept_prob = np.exp(-0.5 * np.maximum(gap, 0.0))
        accepted = rng.random(m) <= accept_prob
        n_proposed += m
        n_accepted += int(accepted.sum())
        if accepted.any():
            kept.append(draws[accepted])
            n_kept += int(accepted.sum())
    samples = np.concatenate(kept)[:want]
    weights = np.full(want, 1.0 / want)
    return WeightedSampleSet(
        samples=samples,
        weights=weights,
        ess=float(want),
        acceptance_rate=n_accepted / n_proposed,
    )


def _importance(
    design: np.ndarray,
    targets: np.ndarray,
    prior: DirichletParams,
    budget: float,
    cfg: SamplerConfig,
    rng: np.random.Generator,
) -> WeightedSampleSet:
    form = ResidualForm(design, targets)
    draws = sample_batch(prior, rng, cfg.sample_count)
    rss = form.rss(budget * draws)
    if np.any(np.isnan(rss)):
        raise BalsonError("non-finite residual during importance sampling")
    weights, ess = normalize_log_weights(-0.5 * rss)
    return WeightedSampleSet(samples=draws, weights=weights, ess=ess, acceptance_rate=1.0)


def rejection_sample(
    data: Dataset,
    prior: DirichletParams,
    spec: ModelSpec,
    cfg: SamplerConfig,
    rng: np.random.Generator | None = None,
) -> WeightedSampleSet:
    """Draw L posterior samples by rejection from the Dirichlet prior.

    A proposal omega is kept with probability exp(-(RSS(C omega) - floor)/2),
    where the floor is the unconstrained least-squares RSS, so the envelope
    dominates the likelihood everywhere and every acceptance probability lies
    in (0, 1]. Raises :class:`RejectionBudgetError` if ``max_proposals`` runs
    out first.
    """
    if len(prior) != spec.order:
        raise ValueError("prior dimension must equal the model order")
    if rng is None:
        rng = round_rng(cfg.seed, 0)
    design = design_matrix(data.inputs, spec.order)
    return _rejection(design, data.targets, prior, spec.scale, cfg, rng)


def importance_sample(
    data: Dataset,
    prior: DirichletParams,
    spec: ModelSpec,
    cfg: SamplerConfig,
    rng: np.random.Generator | None = None,
) -> WeightedSampleSet:
    """Weight L prior draws by the likelihood: log w_l = -RSS(C omega_l)/2.

    Log weights are shifted by their maximum before exponentiation so the
    normalization cannot underflow at realistic data sizes.
    """
    if len(prior) != spec.order:
        raise ValueError("prior dimension must equal the model order")
    if rng is None:
        rng = round_rng(cfg.seed, 0)
    design = design_matrix(data.inputs, spec.order)
    return _importance(design, data.targets, prior, spec.scale, cfg, rng)


def weighted_moments(sample_set: WeightedSampleSet) -> tuple[np.ndarray, np.ndarray]:
    """Weighted per-component mean and variance of a sample set."""
    if sample_set.ess <= 1.0:
        raise DegenerateWeightsError("degenerate weights: effective sample size <= 1")
    w = sample_set.weights
    s = sample_set.samples
    mean = w @ s
    variance = w @ (s - mean) ** 2
    return mean, variance


def _iterated(
    design: np.ndarray,
    targets: np.ndarray,
    prior: DirichletParams,
    budget: float,
    cfg: SamplerConfig,
    first: str,
    trace: list[RoundRecord] | None = None,
) -> DirichletParams:
    alpha = prior
    for rnd in range(cfg.resample_rounds + 1):
        rng = round_rng(cfg.seed, rnd)
        kind = first if rnd == 0 else "is"
        try:
            if kind == "rs":
                batch = _rejection(design, targets, alpha, budget, cfg, rng)
            else:
                # Proposal and prior are both Dir(alpha), so the weights
                # reduce to the data likelihood alone.
                batch = _importance(design, targets, alpha, budget, cfg, rng)
            mean, variance = weighted_moments(batch)
            alpha = match_moments_per_dim(mean, variance)
        except BalsonError as err:
            raise type(err)(f"resampling round {rnd}: {err}") from err
        if trace is not None:
            trace.append(
                RoundRecord(
                    index=rnd,
                    kind=kind,
                    ess=batch.ess,
                    acceptance_rate=batch.acceptance_rate,
                    alpha=alpha.alpha.copy(),
                )
            )
    return alpha


def rsirs(
    data: Dataset,
    prior: DirichletParams,
    spec: ModelSpec,
    cfg: SamplerConfig,
    trace: list[RoundRecord] | None = None,
) -> DirichletParams:
    """Rejection pass, then R importance-refinement rounds.

    Round 0 rejection-samples against the prior and moment-matches the result;
    each later round importance-samples with proposal and prior both set to
    the previous round's Dirichlet fit, then moment-matches again. Returns the
    final concentration vector.
    """
    if len(prior) != spec.order:
        raise ValueError("prior dimension must equal the model order")
    design = design_matrix(data.inputs, spec.order)
    return _iterated(design, data.targets, prior, spec.scale, cfg, "rs", trace)


def isirs(
    data: Dataset,
    prior: DirichletParams,
    spec: ModelSpec,
    cfg: SamplerConfig,
    trace: list[RoundRecord] | None = None,
) -> DirichletParams:
    """Same refinement loop as :func:`rsirs` but round 0 is an importance pass."""
    if len(prior) != spec.order:
        raise ValueError("prior dimension must equal the model order")
    design = design_matrix(data.inputs, spec.order)
    return _iterated(design, data.targets, prior, spec.scale, cfg, "is", trace)
