"""Dense symmetric eigensolvers and small statistical helpers.

Two independent eigenvalue routes are kept on purpose: a cyclic Jacobi
rotation solver that produces the full spectrum, and a shifted power
iteration that produces only the dominant pair of a nonnegative matrix.
Each is used to cross-check the other in the test-suite, so neither may be
replaced by a call to the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConvergenceError",
    "EigenPair",
    "LinearFit",
    "jacobi_eigen",
    "power_iteration_top",
    "standardize_columns",
    "correlation_matrix",
    "linear_fit",
    "euclidean_distance",
]


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap; carries the last residual."""

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (final residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual


@dataclass
class EigenPair:
    """One eigenvalue with its unit-norm eigenvector.

    `degenerate` marks the all-zero-matrix fallback, where the eigenvalue 0
    is paired with the uniform vector 1/sqrt(n).
    """

    value: float
    vector: np.ndarray
    degenerate: bool = False


@dataclass
class LinearFit:
    """Ordinary least squares line y = slope * x + intercept."""

    slope: float
    intercept: float
    r_squared: float

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def _check_square_symmetric(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(a).max()))):
        raise ValueError("matrix is not symmetric")
    return a


def jacobi_eigen(a: np.ndarray, *, max_sweeps: int = 100) -> list[EigenPair]:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate every off-diagonal plane (p, q) in row order until the
    largest off-diagonal magnitude falls below 1e-12 (scaled by the matrix
    magnitude). Returns eigenpairs sorted by descending eigenvalue, with
    orthonormal vectors oriented so each vector's largest-magnitude entry is
    positive. Raises ConvergenceError after `max_sweeps` sweeps.
    """
    original = _check_square_symmetric(a)
    n = original.shape[0]
    if n == 1:
        return [EigenPair(float(original[0, 0]), np.array([1.0]))]

    a = (original + original.T) / 2.0  # work on an exactly symmetric copy
    v = np.eye(n)
    tol = 1e-12 * max(1.0, float(np.abs(a).max()))

    def max_offdiag() -> float:
        off = np.abs(a - np.diag(np.diag(a)))
        return float(off.max())

    converged = False
    for _ in range(max_sweeps):
        if max_offdiag() < tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tol:
                    continue
                # Rotation angle from the 2x2 block; the sign(tau) form keeps
                # |t| <= 1, which avoids cancellation for tiny pivots.
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                app, aqq = a[p, p], a[q, q]
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                a[:, p] = new_p
                a[p, :] = new_p
                a[:, q] = new_q
                a[q, :] = new_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0

                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p - s * col_q
                v[:, q] = s * col_p + c * col_q
    else:
        converged = max_offdiag() < tol
    if not converged:
        raise ConvergenceError(
            f"Jacobi sweep limit {max_sweeps} reached", residual=max_offdiag()
        )

    order = np.argsort(-np.diag(a), kind="stable")
    pairs = []
    for idx in order:
        vec = v[:, idx].copy()
        anchor = int(np.argmax(np.abs(vec)))
        if vec[anchor] < 0:
            vec = -vec
        pairs.append(EigenPair(float(a[idx, idx]), vec))
    return pairs


def power_iteration_top(
    a: np.ndarray,
    *,
    tol: float = 1e-12,
    residual_tol: float | None = None,
    max_iter: int = 100_000,
) -> EigenPair:
    """Dominant eigenpair of a symmetric nonnegative matrix by power iteration.

    Iterates on the shifted matrix A + I (shift 1 breaks the +/- eigenvalue
    tie of bipartite-like spectra) from the uniform start vector, so output
    is deterministic. Stops once successive Rayleigh quotients differ by
    less than `tol` AND the residual ||Av - lambda v||_inf is below
    `residual_tol` (default 1e-10 scaled by max(1, ||A||_inf)); the Rayleigh
    rule alone can fire while the vector is still several digits off.

    The all-zero matrix returns EigenPair(0, uniform, degenerate=True).
    Raises ValueError on negative entries, ConvergenceError at `max_iter`.
    """
    a = _check_square_symmetric(a)
    n = a.shape[0]
    if float(a.min()) < 0.0:
        raise ValueError("power_iteration_top requires nonnegative entries")
    uniform = np.full(n, 1.0 / math.sqrt(n))
    if not a.any():
        return EigenPair(0.0, uniform, degenerate=True)

    norm_inf = float(np.abs(a).sum(axis=1).max())
    if residual_tol is None:
        residual_tol = 1e-10 * max(1.0, norm_inf)

    shift = 1.0
    v = uniform
    rayleigh_prev = math.inf
    residual = math.inf
    for _ in range(max_iter):
        y = a @ v + shift * v  # y = (A + I) v without forming A + I
        rayleigh = float(v @ y)
        residual = float(np.abs(y - rayleigh * v).max())
        if abs(rayleigh - rayleigh_prev) < tol and residual < residual_tol:
            return EigenPair(rayleigh - shift, v)
        rayleigh_prev = rayleigh
        v = y / float(np.linalg.norm(y))
    raise ConvergenceError(
        f"power iteration cap {max_iter} reached", residual=residual
    )


def standardize_columns(
    values: np.ndarray, *, ddof: int = 1
) -> tuple[np.ndarray, list[int]]:
    """Center each column and scale to unit standard deviation.

    The default `ddof=1` uses the sample (n - 1) deviation; `ddof=0` uses
    the population form. Columns whose entries are all identical are
    returned as all zeros and reported in the second element (sorted
    column indices). Requires at least 3 rows; fewer leaves the sample
    deviation meaningless for the downstream correlation step.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError(f"expected a 2-d table, got shape {values.shape}")
    n = values.shape[0]
    if n < 3:
        raise ValueError(f"need at least 3 rows to standardize, got {n}")
    if not np.isfinite(values).all():
        raise ValueError("table contains non-finite entries")
    if ddof not in (0, 1):
        raise ValueError(f"ddof must be 0 or 1, got {ddof}")

    means = values.mean(axis=0)
    stds = values.std(axis=0, ddof=ddof)
    # a constant column is one whose entries are all the identical float;
    # testing std == 0 instead would miss columns where the mean rounds a
    # single ulp away from the shared value and leaves std at ~1e-17
    spans = values.max(axis=0) - values.min(axis=0)
    degenerate = [int(j) for j in np.flatnonzero(spans == 0.0)]
    safe = stds.copy()
    safe[spans == 0.0] = 1.0
    out = (values - means) / safe
    if degenerate:
        out[:, degenerate] = 0.0
    return out, degenerate


def correlation_matrix(std_data: np.ndarray, *, ddof: int = 1) -> np.ndarray:
    """Pearson correlation matrix of already-standardized columns.

    Computes X^T X / (n - ddof) with the same ddof the standardization
    used, symmetrizes exactly, and pins the diagonal to 1 for live columns
    and 0 for all-zero (degenerate) columns.
    """
    std_data = np.asarray(std_data, dtype=float)
    n = std_data.shape[0]
    if n < 3:
        raise ValueError(f"need at least 3 rows, got {n}")
    if ddof not in (0, 1):
        raise ValueError(f"ddof must be 0 or 1, got {ddof}")
    c = std_data.T @ std_data / (n - ddof)
    c = (c + c.T) / 2.0
    live = std_data.any(axis=0)
    np.fill_diagonal(c, np.where(live, 1.0, 0.0))
    return c


def linear_fit(x: np.ndarray, y: np.ndarray) -> LinearFit:
    """Least-squares line through (x, y) with the coefficient of determination.

    A constant predictor has no defined slope and raises ValueError. A
    constant response yields r_squared = 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size < 2:
        raise ValueError("need at least 2 points to fit a line")
    xm = x.mean()
    ym = y.mean()
    sxx = float(((x - xm) ** 2).sum())
    if sxx == 0.0:
        raise ValueError("predictor is constant; slope undefined")
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    intercept = ym - slope * xm
    ss_tot = float(((y - ym) ** 2).sum())
    if ss_tot == 0.0:
        return LinearFit(slope, float(intercept), 0.0)
    ss_res = float(((y - (slope * x + intercept)) ** 2).sum())
    r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return LinearFit(slope, float(intercept), r_squared)


def euclidean_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Euclidean distance between two equal-length coordinate vectors."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise ValueError("points must be 1-d arrays of equal length")
    return float(np.sqrt(((p - q) ** 2).sum()))
