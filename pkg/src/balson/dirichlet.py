"""Dirichlet distribution primitives on the probability simplex.

Density, sampling, analytic moments, moment-matched parameter recovery,
and the sparse mode rule (components whose concentration does not exceed
one are placed exactly at zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .exceptions import MomentMatchingError, ModeUndefinedError, UnboundedDensityError

SIMPLEX_SUM_TOL = 1e-12
ALPHA_FLOOR = 1e-6


@dataclass(frozen=True)
class SimplexVector:
    """Point on the (K-1)-simplex: nonnegative weights summing to one, K >= 2."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.shape[0] < 2:
            raise ValueError("simplex point must be 1-D with at least 2 components")
        if not np.all(np.isfinite(values)):
            raise ValueError("simplex point must be finite")
        if np.any(values < 0.0):
            raise ValueError("simplex components must be nonnegative")
        if abs(float(values.sum()) - 1.0) > SIMPLEX_SUM_TOL:
            raise ValueError("simplex components must sum to 1 within 1e-12")

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class DirichletParams:
    """Concentration vector of a Dirichlet distribution (all positive, K >= 2).

    Concentrations above one act like log-barrier weights pulling mass off
    the corresponding boundary face; at or below one the mode sits on it.
    """

    alpha: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=np.float64)
        object.__setattr__(self, "alpha", alpha)
        if alpha.ndim != 1 or alpha.shape[0] < 2:
            raise ValueError("concentration vector must be 1-D with at least 2 components")
        if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0.0):
            raise ValueError("concentrations must be finite and strictly positive")

    def __len__(self):
        return self.alpha.shape[0]

    @property
    def alpha0(self) -> float:
        return float(self.alpha.sum())


def log_density(params: DirichletParams, point: SimplexVector) -> float:
    """Log Dirichlet density: -ln B(alpha) + sum (alpha_i - 1) ln omega_i.

    The multivariate beta normalizer is evaluated through log-gamma.
    Raises :class:`UnboundedDensityError` where the density is +inf
    (some alpha_i < 1 with omega_i = 0); returns -inf where it is 0.
    """
    alpha = params.alpha
    omega = point.values
    if alpha.shape != omega.shape:
        raise ValueError("dimension mismatch between concentrations and point")
    at_zero = omega == 0.0
    if np.any(at_zero & (alpha < 1.0)):
        raise UnboundedDensityError("density unbounded: alpha_i < 1 with omega_i = 0")
    log_norm = float(special.gammaln(alpha).sum() - special.gammaln(alpha.sum()))
    with np.errstate(divide="ignore"):
        # xlogy gives 0 for alpha_i = 1 at omega_i = 0 and -inf for alpha_i > 1.
        terms = special.xlogy(alpha - 1.0, omega)
    return float(terms.sum() - log_norm)


def sample_batch(params: DirichletParams, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` simplex points as rows of a (count, K) array.

    Independent gamma variates with shapes alpha_i and unit scale,
    normalized by their row sum.
    """
    k = len(params)
    draws = rng.standard_gamma(params.alpha, size=(count, k))
    totals = draws.sum(axis=1)
    # Only reachable when every concentration is tiny: all gammas underflow.
    for _ in range(100):
        dead = totals == 0.0
        if not dead.any():
            break
        redraw = rng.standard_gamma(params.alpha, size=(int(dead.sum()), k))
        draws[dead] = redraw
        totals = draws.sum(axis=1)
    else:
        raise MomentMatchingError("gamma draws underflowed to zero for every component")
    return draws / totals[:, None]


def sample(params: DirichletParams, rng: np.random.Generator) -> SimplexVector:
    """Draw one point from Dir(alpha)."""
    return SimplexVector(sample_batch(params, rng, 1)[0])


def moments(params: DirichletParams) -> tuple[np.ndarray, np.ndarray]:
    """Analytic mean and variance per component.

    mean_i = alpha_i / alpha0,
    var_i  = alpha_i (alpha0 - alpha_i) / (alpha0^2 (alpha0 + 1)).
    """
    alpha = params.alpha
    alpha0 = alpha.sum()
    mean = alpha / alpha0
    variance = alpha * (alpha0 - alpha) / (alpha0**2 * (alpha0 + 1.0))
    return mean, variance


def match_moments(mean, variance) -> DirichletParams:
    """Recover concentrations from first and second moments.

    Each dimension gives an estimate alpha0_i = m_i (1 - m_i) / v_i - 1 of the
    total concentration; the estimates are averaged over dimensions that are
    usable (variance >= 1e-12, mean away from the simplex corners, estimate
    finite and positive). Exact on analytic Dirichlet moments.
    """
    m, v = _checked_moment_inputs(mean, variance)
    with np.errstate(divide="ignore", invalid="ignore"):
        estimates = m * (1.0 - m) / v - 1.0
    usable = (
        np.isfinite(estimates)
        & (estimates > 0.0)
        & (v >= 1e-12)
        & (m > 1e-9)
        & (m < 1.0 - 1e-9)
    )
    if not usable.any():
        raise MomentMatchingError("moment matching degenerate: no usable dimension")
    alpha0 = float(estimates[usable].mean())
    alpha = np.maximum(alpha0 * m, ALPHA_FLOOR)
    return DirichletParams(alpha)


def match_moments_per_dim(mean, variance) -> DirichletParams:
    """Recover concentrations dimension by dimension: alpha_i = m_i alpha0_i.

    Unlike :func:`match_moments` no single total concentration is enforced,
    so anisotropy in the moments survives: dimensions whose variance implies
    low concentration keep small alpha_i (possibly below one) while tightly
    determined dimensions grow large. Agrees with :func:`match_moments`
    exactly on analytic Dirichlet moments. Dimensions with unusable
    estimates fall to the positivity floor.
    """
    m, v = _checked_moment_inputs(mean, variance)
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = m * (m * (1.0 - m) / v - 1.0)
    usable = np.isfinite(alpha) & (alpha > 0.0)
    if not usable.any():
        raise MomentMatchingError("moment matching degenerate: no usable dimension")
    alpha = np.where(usable, alpha, ALPHA_FLOOR)
    return DirichletParams(np.clip(alpha, ALPHA_FLOOR, 1e14))


def _checked_moment_inputs(mean, variance) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(mean, dtype=np.float64)
    v = np.asarray(variance, dtype=np.float64)
    if m.shape != v.shape or m.ndim != 1 or m.shape[0] < 2:
        raise ValueError("mean and variance must be 1-D vectors of equal length >= 2")
    if np.any(v < 0.0) or not np.all(np.isfinite(v)):
        raise ValueError("variances must be finite and nonnegative")
    total = float(m.sum())
    if abs(total - 1.0) > 1e-6:
        raise ValueError("means must sum to 1 within 1e-6")
    return m / total, v


def mode(params: DirichletParams) -> SimplexVector:
    """Sparse mode: omega_i = (alpha_i - 1) / sum_{alpha_j > 1} (alpha_j - 1).

    Components with alpha_i <= 1 are exactly zero. Raises
    :class:`ModeUndefinedError` when no concentration exceeds one.
    """
    alpha = params.alpha
    above = alpha > 1.0
    if not above.any():
        raise ModeUndefinedError("mode undefined: no concentration exceeds 1")
    denom = float((alpha[above] - 1.0).sum())
    omega = np.where(above, (alpha - 1.0) / denom, 0.0)
    return SimplexVector(omega)
