"""Conjugate gradients for the SPD systems of the Dirichlet Laplacian."""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from ..errors import NumericalError

# Below this size an unpreconditioned solve is already cheap for well-conditioned systems.
AMG_MIN_SIZE = 4000
# Systems this small converge in at most n CG steps, which the default cap allows.
AMG_TINY_SIZE = 100
_AMG_SEED = 20240101


def default_maxiter(n: int) -> int:
    return max(20, int(math.ceil(10.0 * math.sqrt(n))))


def conjugate_gradient(A, b, x0=None, rtol=1e-10, maxiter=None, M=None):
    """Solve A x = b to ||b - A x|| <= rtol * ||b||.

    ``M`` applies an SPD preconditioner (approximate inverse). Returns
    ``(x, iterations)``; raises ``NumericalError`` with the reached relative
    residual when ``maxiter`` is exhausted.
    """
    n = b.shape[0]
    maxiter = default_maxiter(n) if maxiter is None else maxiter
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros_like(b), 0
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float)
    r = b - A @ x if x0 is not None else b.copy()
    target = rtol * bnorm
    if np.linalg.norm(r) <= target:
        return x, 0
    z = M(r) if M is not None else r
    p = z.copy()
    rz = r @ z
    for it in range(1, maxiter + 1):
        Ap = A @ p
        alpha = rz / (p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        rnorm = np.linalg.norm(r)
        if rnorm <= target:
            true = np.linalg.norm(b - A @ x)
            if true <= 10 * target:
                return x, it
            r = b - A @ x
        z = M(r) if M is not None else r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    relres = float(np.linalg.norm(b - A @ x) / bnorm)
    raise NumericalError(
        f"CG did not reach relative residual {rtol:g} in {maxiter} iterations (reached {relres:.3e})",
        residual=relres,
        iterations=maxiter,
    )


def amg_preconditioner(A: sp.csr_matrix, min_size: int = AMG_MIN_SIZE):
    """Smoothed-aggregation V-cycle as a preconditioner callable, or None below ``min_size``."""
    if A.shape[0] < min_size:
        return None
    import pyamg

    # pyamg's spectral-radius estimate draws from the global numpy RNG; pin it
    # so repeated runs produce identical preconditioners, then restore it.
    state = np.random.get_state()
    np.random.seed(_AMG_SEED)
    try:
        ml = pyamg.smoothed_aggregation_solver(A, symmetry="hermitian")
    finally:
        np.random.set_state(state)
    P = ml.aspreconditioner(cycle="V")
    return lambda r: P @ r
