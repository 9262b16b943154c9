"""Principal Dirichlet eigenvalue and the heat trace of the discrete Laplacian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import CapacityError, NumericalError
from .grid import Grid
from .linalg import AMG_TINY_SIZE, amg_preconditioner, conjugate_gradient

DENSE_CAP = 4096


def principal_eigenpair(grid: Grid, rtol: float = 1e-8, maxiter: int = 500):
    """Inverse power iteration; returns ``(lambda, unit eigenvector)``."""
    A = grid.laplacian
    M = amg_preconditioner(A, AMG_TINY_SIZE)
    x = np.ones(grid.n_active)
    x /= np.linalg.norm(x)
    lam_old = x @ (A @ x)
    for _ in range(maxiter):
        y, _ = conjugate_gradient(A, x, x0=x / lam_old, rtol=1e-10, M=M)
        x = y / np.linalg.norm(y)
        lam = x @ (A @ x)
        if abs(lam - lam_old) <= rtol * lam:
            return float(lam), x
        lam_old = lam
    raise NumericalError(f"inverse iteration did not converge in {maxiter} iterations", iterations=maxiter)


def principal_eigenvalue(grid: Grid, rtol: float = 1e-8, maxiter: int = 500) -> float:
    return principal_eigenpair(grid, rtol, maxiter)[0]


def discrete_spectrum(grid: Grid) -> np.ndarray:
    """All eigenvalues of -Delta_h, ascending; dense, so capped at DENSE_CAP nodes."""
    if grid.n_active > DENSE_CAP:
        raise CapacityError(
            f"dense eigendecomposition needs N_act <= {DENSE_CAP}, grid has {grid.n_active}; use a coarser h"
        )
    return scipy.linalg.eigh(grid.laplacian.toarray(), eigvals_only=True)


def heat_trace(grid: Grid, t, spectrum: np.ndarray | None = None):
    """sum_i exp(-lambda_i t) over the full discrete spectrum."""
    lam = discrete_spectrum(grid) if spectrum is None else spectrum
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise ValueError("t must be positive")
    vals = np.exp(-np.outer(ts, lam)).sum(axis=1)
    return float(vals[0]) if np.ndim(t) == 0 else vals


@dataclass
class SpectralSummary:
    eigenvalue: float
    t: np.ndarray
    trace: np.ndarray
    spectrum: np.ndarray | None = None


def spectral_summary(grid: Grid, t_samples, keep_spectrum: bool = False) -> SpectralSummary:
    spec = discrete_spectrum(grid)
    ts = np.asarray(t_samples, dtype=float)
    return SpectralSummary(float(spec[0]), ts, heat_trace(grid, ts, spec), spec if keep_spectrum else None)
