"""Evaluation metrics (MSE, normalized L1/L2 sparsity) and the paired t-test.

The Student-t survival function is computed from scratch through the
continued-fraction regularized incomplete beta, so the statistics stack
carries no distribution dependencies.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import DegenerateStatisticError


def mse(actual, fitted) -> float:
    """Mean squared difference (1/N) sum (y_i - yhat_i)^2."""
    a = np.asarray(actual, dtype=np.float64)
    f = np.asarray(fitted, dtype=np.float64)
    if a.shape != f.shape or a.ndim != 1:
        raise ValueError("actual and fitted must be 1-D and the same length")
    if a.shape[0] == 0:
        raise ValueError("mse undefined on empty input")
    d = a - f
    return float(d @ d) / a.shape[0]


def sparsity(theta_hat) -> float:
    """Normalized L1/L2 ratio: (sqrt(K) - |t|_1 / |t|_2) / (sqrt(K) - 1).

    1 for a one-hot vector, 0 for an all-equal vector; scale invariant.
    """
    t = np.asarray(theta_hat, dtype=np.float64)
    if t.ndim != 1 or t.shape[0] < 2:
        raise ValueError("sparsity needs a 1-D vector with K >= 2")
    l1 = float(np.abs(t).sum())
    l2 = float(np.sqrt(t @ t))
    if l2 == 0.0:
        raise DegenerateStatisticError("sparsity undefined for the all-zero vector")
    root_k = math.sqrt(t.shape[0])
    return (root_k - l1 / l2) / (root_k - 1.0)


def _beta_cf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    tiny = 1e-300
    eps = 1e-16
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 400):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise DegenerateStatisticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) by continued fraction, using the symmetry that converges fast."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError("shape parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """One-sided survival P(T > t) for Student-t with ``df`` degrees of freedom."""
    if df < 1 or int(df) != df:
        raise ValueError("degrees of freedom must be a positive integer")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return tail if t > 0.0 else 1.0 - tail


def paired_t_test(a, b) -> tuple[float, float]:
    """Two-sided paired t-test on per-index differences a_i - b_i.

    Uses the (n-1)-denominator standard deviation; returns (t, p).
    Raises :class:`DegenerateStatisticError` when the differences have
    zero variance.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("paired samples must be 1-D and the same length")
    n = a.shape[0]
    if n < 2:
        raise ValueError("paired t-test needs at least 2 pairs")
    d = a - b
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        raise DegenerateStatisticError("degenerate t-test: zero-variance differences")
    t = float(d.mean()) / (sd / math.sqrt(n))
    p = 2.0 * student_t_sf(abs(t), n - 1)
    return t, p
