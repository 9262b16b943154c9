"""Torsion function -Delta w = 1, w = 0 outside, and torsional rigidity P = integral of w."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry.domains import Horn
from .grid import Grid, ScalarField
from .linalg import AMG_TINY_SIZE, amg_preconditioner, conjugate_gradient


@dataclass
class TorsionResult:
    field: ScalarField
    rigidity: float
    sup_norm: float
    iterations: int

    def __iter__(self):
        return iter((self.field, self.rigidity, self.sup_norm))


def torsion(grid: Grid, rtol: float = 1e-10) -> TorsionResult:
    A = grid.laplacian
    b = np.ones(grid.n_active)
    w, its = conjugate_gradient(A, b, rtol=rtol, M=amg_preconditioner(A, AMG_TINY_SIZE))
    return TorsionResult(ScalarField(grid, w, "w"), grid.integrate(w), float(w.max()), its)


def horn_torsion_tail(horn: Horn) -> float:
    """Rigidity of the horn beyond the face, from slab cross-sections 2a^3/3."""
    p = 3.0 * horn.alpha
    if p <= 1.0:
        return np.inf
    return 2.0 / 3.0 * (horn.truncation + 1.0) ** (1.0 - p) / (p - 1.0)
