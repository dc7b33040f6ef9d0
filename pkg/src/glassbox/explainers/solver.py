"""Weighted least-squares core shared by the LIME and Kernel SHAP surrogates."""

from __future__ import annotations

import numpy as np

from glassbox.errors import RankDeficientError, ValidationError


def solve_penalized_wls(
    design: np.ndarray,
    targets: np.ndarray,
    weights: np.ndarray,
    penalty: np.ndarray,
) -> np.ndarray:
    """Minimize sum_i w_i (y_i - x_i . beta)^2 + sum_j penalty_j beta_j^2.

    Normal equations solved through a Cholesky factorization; a failed
    factorization means the regularized system is rank deficient.
    """
    design = np.asarray(design, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    a = design.T @ (weights[:, None] * design) + np.diag(penalty)
    b = design.T @ (weights * targets)
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise RankDeficientError(
            f"normal equations are rank deficient ({design.shape[1]} columns, "
            f"{design.shape[0]} rows)"
        ) from exc
    z = np.linalg.solve(chol, b)
    return np.linalg.solve(chol.T, z)


def weighted_ridge(
    design: np.ndarray,
    targets: np.ndarray,
    weights: np.ndarray,
    ridge_lambda: float,
) -> np.ndarray:
    """Ridge-penalized weighted least squares with an unpenalized intercept.

    ``design`` is N x (M+1) with the intercept in column 0; the penalty
    applies to the M slope coefficients only. Deterministic.
    """
    design = np.asarray(design, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n, m_plus_1 = design.shape
    if ridge_lambda < 0:
        raise ValidationError("ridge lambda must be >= 0")
    if np.any(weights < 0):
        raise ValidationError("weights must be nonnegative")
    if targets.shape != (n,) or weights.shape != (n,):
        raise ValidationError("targets and weights must align with the design rows")
    if n < m_plus_1:
        raise ValidationError(f"need at least {m_plus_1} rows, got {n}")
    if int(np.sum(weights > 0)) < m_plus_1:
        raise ValidationError(f"need at least {m_plus_1} strictly positive weights")
    penalty = np.full(m_plus_1, float(ridge_lambda))
    penalty[0] = 0.0
    return solve_penalized_wls(design, targets, weights, penalty)
