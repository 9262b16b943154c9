"""Direction sets on the unit sphere S^{m-1} with area weights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_NODES = {1: 2, 2: 256, 3: 512}


def sphere_area(m: int) -> float:
    """Measure of S^{m-1}: 2, 2*pi, 4*pi."""
    return {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}[m]


@dataclass(frozen=True)
class SphereQuadrature:
    directions: np.ndarray  # (N, m), unit rows
    weights: np.ndarray  # (N,), sum = area of S^{m-1}
    antipodal_shift: int | None = None  # k -> k + shift maps u to -u

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    @property
    def size(self) -> int:
        return self.directions.shape[0]

    @property
    def area(self) -> float:
        return sphere_area(self.dim)


def sphere_quadrature(m: int, n: int | None = None, rotation=None) -> SphereQuadrature:
    """Equal-weight directions: trapezoid angles for m = 2, Fibonacci for m = 3.

    ``rotation`` is an angle (m = 2) or a 3x3 orthogonal matrix (m = 3)
    applied to the whole node set.
    """
    if m not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {m}")
    n = DEFAULT_NODES[m] if n is None else int(n)
    if m == 1:
        return SphereQuadrature(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), 1)
    if n < 4:
        raise ValueError("need at least 4 directions")
    if m == 2:
        theta = 2.0 * math.pi * np.arange(n) / n
        if rotation is not None:
            theta = theta + float(rotation)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        shift = n // 2 if n % 2 == 0 else None
        return SphereQuadrature(dirs, np.full(n, 2.0 * math.pi / n), shift)
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * np.arange(n)
    dirs = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    if rotation is not None:
        dirs = dirs @ np.asarray(rotation, dtype=float).T
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return SphereQuadrature(dirs, np.full(n, 4.0 * math.pi / n))
