"""Uniform Cartesian grids with an active-node mask and the 2m+1-point
Dirichlet Laplacian on the active set."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from ..errors import DomainError
from ..geometry.domains import Domain


@dataclass
class Grid:
    domain: Domain
    h: float
    origin: np.ndarray
    shape: tuple[int, ...]
    mask: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.domain.dim

    @cached_property
    def n_active(self) -> int:
        return int(self.mask.sum())

    @property
    def cell_volume(self) -> float:
        return self.h**self.dim

    @property
    def volume(self) -> float:
        """Discrete volume h^m * N_act."""
        return self.cell_volume * self.n_active

    @cached_property
    def index(self) -> np.ndarray:
        idx = np.full(self.shape, -1, dtype=np.int64)
        idx[self.mask] = np.arange(self.n_active)
        return idx

    @cached_property
    def points(self) -> np.ndarray:
        ijk = np.argwhere(self.mask)  # C order, same as ``index``
        return self.origin + self.h * ijk

    @cached_property
    def laplacian(self) -> sp.csr_matrix:
        """Symmetric positive definite matrix of -Delta_h on active nodes."""
        n = self.n_active
        padded = np.pad(self.index, 1, constant_values=-1)
        rows, cols = [], []
        core = tuple(slice(1, -1) for _ in range(self.dim))
        for axis in range(self.dim):
            for step in (-1, 1):
                sl = list(core)
                sl[axis] = slice(1 + step, padded.shape[axis] - 1 + step)
                nb = padded[tuple(sl)][self.mask]
                keep = nb >= 0
                rows.append(np.arange(n)[keep])
                cols.append(nb[keep])
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        off = sp.csr_matrix((np.full(rows.size, -1.0), (rows, cols)), shape=(n, n))
        diag = sp.identity(n, format="csr") * (2.0 * self.dim)
        return ((diag + off) / self.h**2).tocsr()

    def integrate(self, values: np.ndarray) -> float:
        """h^m * sum of nodal values."""
        return self.cell_volume * float(np.sum(values))


def build_grid(domain: Domain, h: float) -> Grid:
    """Nodes at bbox-lower-corner + h * k; active iff strictly inside."""
    if not h > 0:
        raise DomainError(f"grid spacing must be positive, got {h}")
    box = domain.bbox
    origin = box[:, 0].astype(float)
    shape = tuple(int((hi - lo) / h + 1e-9) + 1 for lo, hi in box)
    axes = [origin[i] + h * np.arange(n) for i, n in enumerate(shape)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    mask = domain.contains(pts).reshape(shape)
    if not mask.any():
        raise DomainError(f"grid spacing h={h} leaves no active nodes; refine h")
    return Grid(domain, float(h), origin, shape, mask)


@dataclass
class ScalarField:
    """One value per active node of ``grid``."""

    grid: Grid
    values: np.ndarray
    name: str = "u"

    def integral(self) -> float:
        return self.grid.integrate(self.values)

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))
