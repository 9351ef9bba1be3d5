"""Reference solvers: budgeted LASSO, log-barrier interior point, Bayesian LASSO.

Implemented at the fidelity needed for head-to-head metric comparisons
against the Dirichlet-posterior solver, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import BalsonError
from .model import Dataset, ModelSpec, ParameterVector, design_matrix


@dataclass(frozen=True)
class LassoParams:
    """Penalty search bounds and tolerances for the budget-matched LASSO."""

    lambda_lo: float = 0.0
    lambda_hi: float | None = None  # None: 2 * max|X'y|, which fully shrinks
    budget_tol: float = 1e-4
    max_bisections: int = 200
    max_sweeps: int = 10_000
    sweep_tol: float = 1e-10


@dataclass(frozen=True)
class IpParams:
    """Log-barrier schedule and Newton tolerances."""

    mu0: float = 1.0
    barrier_factor: float = 0.2
    newton_tol: float = 1e-8
    gap_tol: float = 1e-8
    max_outer: int = 60
    max_newton: int = 200


@dataclass(frozen=True)
class GibbsParams:
    """Chain length and shrinkage hyperprior for the Bayesian LASSO."""

    iterations: int = 6000
    burn_in: int = 1000
    hyper_shape: float = 1.0
    hyper_rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.iterations <= self.burn_in:
            raise ValueError("iterations must exceed burn_in")
        if self.hyper_shape <= 0.0 or self.hyper_rate <= 0.0:
            raise ValueError("hyperprior parameters must be positive")


@dataclass(frozen=True)
class BaselineConfig:
    method: str | None = None
    lasso: LassoParams = field(default_factory=LassoParams)
    ip: IpParams = field(default_factory=IpParams)
    gibbs: GibbsParams = field(default_factory=GibbsParams)


def soft_threshold(z: float, threshold: float) -> float:
    if z > threshold:
        return z - threshold
    if z < -threshold:
        return z + threshold
    return 0.0


def lasso_coordinate_descent(
    design: np.ndarray,
    targets: np.ndarray,
    lam: float,
    theta0: np.ndarray | None = None,
    max_sweeps: int = 10_000,
    sweep_tol: float = 1e-10,
    trace: list[float] | None = None,
) -> np.ndarray:
    """Cyclic coordinate descent on ||y - X theta||^2 + lam ||theta||_1.

    The quadratic term is un-halved, so each coordinate update soft-thresholds
    at lam/2. Appends the objective after every sweep to ``trace`` when given;
    raises :class:`BalsonError` if the sweep cap is hit before the largest
    coordinate move falls below ``sweep_tol``.
    """
    gram = design.T @ design
    corr = design.T @ targets
    yty = float(targets @ targets)
    k = design.shape[1]
    theta = np.zeros(k) if theta0 is None else np.asarray(theta0, dtype=np.float64).copy()

    def objective():
        return yty - 2.0 * float(corr @ theta) + float(theta @ gram @ theta) + lam * float(
            np.abs(theta).sum()
        )

    for _ in range(max_sweeps):
        biggest_move = 0.0
        for j in range(k):
            gjj = gram[j, j]
            if gjj == 0.0:
                continue
            rho = corr[j] - float(gram[j] @ theta) + gjj * theta[j]
            new = soft_threshold(rho, 0.5 * lam) / gjj
            biggest_move = max(biggest_move, abs(new - theta[j]))
            theta[j] = new
        if trace is not None:
            trace.append(objective())
        if biggest_move <= sweep_tol:
            return theta
    resid = targets - design @ theta
    raise BalsonError(
        f"lasso coordinate descent did not converge; residual norm {np.linalg.norm(resid):.6g}"
    )


def lasso_fit(data: Dataset, spec: ModelSpec, cfg: BaselineConfig) -> np.ndarray:
    """Budget-matched LASSO: bisect the penalty until ||theta||_1 = C.

    If even the unconstrained least-squares fit satisfies the budget, that
    penalty-free limit is returned directly.
    """
    params = cfg.lasso
    design = design_matrix(data.inputs, spec.order)
    budget = spec.scale
    theta_free, *_ = np.linalg.lstsq(design, data.targets, rcond=None)
    if float(np.abs(theta_free).sum()) <= budget + params.budget_tol:
        return theta_free
    hi = params.lambda_hi
    if hi is None:
        hi = 2.0 * float(np.abs(design.T @ data.targets).max()) * (1.0 + 1e-9)
    lo = params.lambda_lo
    theta = None
    best_feasible = None
    for _ in range(params.max_bisections):
        mid = 0.5 * (lo + hi)
        theta = lasso_coordinate_descent(
            design,
            data.targets,
            mid,
            theta0=theta,
            max_sweeps=params.max_sweeps,
            sweep_tol=params.sweep_tol,
        )
        l1 = float(np.abs(theta).sum())
        if abs(l1 - budget) <= params.budget_tol:
            return theta
        if l1 > budget:
            lo = mid
        else:
            hi = mid
            best_feasible = theta.copy()
    if best_feasible is not None:
        return best_feasible
    raise BalsonError("lasso penalty bisection failed to match the budget")


def ip_fit(
    data: Dataset,
    spec: ModelSpec,
    cfg: BaselineConfig,
    trace: list[np.ndarray] | None = None,
) -> ParameterVector:
    """Log-barrier solve of min RSS(theta) s.t. theta >= 0, sum theta <= C."""
    design = design_matrix(data.inputs, spec.order)
    return ParameterVector(ip_solve(design, data.targets, spec.scale, cfg.ip, trace))


def ip_solve(
    design: np.ndarray,
    targets: np.ndarray,
    budget: float,
    params: IpParams,
    trace: list[np.ndarray] | None = None,
) -> np.ndarray:
    """Primal log-barrier method on an explicit design matrix.

    Damped Newton on RSS - mu (sum ln theta_i + ln(C - sum theta)), with mu
    shrunk geometrically until the (K+1) mu gap proxy is below tolerance.
    Every iterate stays strictly feasible. ``trace`` collects the iterates.
    """
    k = design.shape[1]
    gram2 = 2.0 * (design.T @ design)
    corr2 = 2.0 * (design.T @ targets)
    yty = float(targets @ targets)

    theta = np.full(k, budget / (2.0 * k))
    if trace is not None:
        trace.append(theta.copy())

    def barrier_value(t, mu):
        slack = budget - t.sum()
        rss = yty - float(corr2 @ t) + 0.5 * float(t @ gram2 @ t)
        return rss - mu * (float(np.log(t).sum()) + np.log(slack))

    mu = params.mu0
    for _ in range(params.max_outer):
        for _ in range(params.max_newton):
            slack = budget - theta.sum()
            grad = gram2 @ theta - corr2 - mu / theta + (mu / slack)
            hess = gram2 + np.diag(mu / theta**2) + (mu / slack**2)
            try:
                step = np.linalg.solve(hess, -grad)
            except np.linalg.LinAlgError as err:
                raise BalsonError(f"newton failure at barrier level {mu:.3g}: {err}") from err
            decrement_sq = float(-grad @ step)
            if decrement_sq / 2.0 <= params.newton_tol:
                break
            size = 1.0
            # Pull the step inside the strictly feasible region first.
            while np.any(theta + size * step <= 0.0) or (theta + size * step).sum() >= budget:
                size *= 0.5
                if size < 1e-16:
                    raise BalsonError(f"newton failure at barrier level {mu:.3g}: no feasible step")
            reference = barrier_value(theta, mu)
            while barrier_value(theta + size * step, mu) > reference + 0.25 * size * float(
                grad @ step
            ):
                size *= 0.5
                if size < 1e-16:
                    raise BalsonError(f"newton failure at barrier level {mu:.3g}: line search stalled")
            theta = theta + size * step
            if trace is not None:
                trace.append(theta.copy())
        else:
            raise BalsonError(f"newton failure at barrier level {mu:.3g}: iteration cap")
        if (k + 1) * mu < params.gap_tol:
            break
        mu *= params.barrier_factor
    return theta


def bayesian_lasso_fit(
    data: Dataset,
    spec: ModelSpec,
    cfg: BaselineConfig,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Gibbs sampler for the Laplace-prior linear model; returns the posterior mean.

    Scale-mixture form with unit noise variance: coefficients from their full
    conditional Gaussian, inverse latent scales from inverse-Gaussian full
    conditionals, and the squared shrinkage weight from its gamma full
    conditional under a Gamma(shape, rate) hyperprior.
    """
    params = cfg.gibbs
    if rng is None:
        rng = np.random.default_rng([params.seed])
    design = design_matrix(data.inputs, spec.order)
    gram = design.T @ design
    corr = design.T @ data.targets
    k = spec.order

    tau_sq = np.ones(k)
    lam_sq = 1.0
    total = np.zeros(k)
    for it in range(params.iterations):
        precision = gram + np.diag(1.0 / tau_sq)
        try:
            chol = np.linalg.cholesky(precision)
        except np.linalg.LinAlgError as err:
            raise BalsonError(f"singular conditional covariance at iteration {it}") from err
        mean = np.linalg.solve(chol.T, np.linalg.solve(chol, corr))
        beta = mean + np.linalg.solve(chol.T, rng.standard_normal(k))
        ig_mean = np.sqrt(lam_sq) / np.maximum(np.abs(beta), 1e-12)
        inv_tau_sq = rng.wald(ig_mean, lam_sq)
        tau_sq = np.clip(1.0 / inv_tau_sq, 1e-10, 1e10)
        lam_sq = rng.gamma(
            k + params.hyper_shape, 1.0 / (params.hyper_rate + 0.5 * float(tau_sq.sum()))
        )
        if it >= params.burn_in:
            total += beta
    return total / (params.iterations - params.burn_in)
