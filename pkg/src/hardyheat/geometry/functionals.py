"""Distance functionals: delta, d_u, rho, moments and sublevel volumes.

Area integrals use the midpoint rule on a cell lattice anchored at the lower
corner of the bounding box; a cell counts iff its center is inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .domains import Domain, Horn
from .quadrature import SphereQuadrature, sphere_quadrature

# Upper bound on points x directions evaluated in one vectorized block.
_BLOCK = 1 << 20


def _as_points(domain: Domain, x) -> tuple[np.ndarray, bool]:
    pts = np.asarray(x, dtype=float)
    single = pts.ndim <= 1
    pts = np.atleast_2d(pts.reshape(1, -1) if single else pts)
    if pts.shape[1] != domain.dim:
        raise DomainError(f"point dimension {pts.shape[1]} does not match domain dimension {domain.dim}")
    return pts, single


def _require_inside(domain: Domain, pts: np.ndarray):
    ok = domain.contains(pts)
    if not np.all(ok):
        bad = pts[~ok][0]
        raise DomainError(f"point {bad.tolist()} is not inside the {domain.kind}")


def inside(domain: Domain, x):
    """Strict membership in the open set; scalar for one point."""
    pts, single = _as_points(domain, x)
    res = domain.contains(pts)
    return bool(res[0]) if single else res


def boundary_distance(domain: Domain, x):
    """delta(x), the distance to the nearest boundary point."""
    pts, single = _as_points(domain, x)
    _require_inside(domain, pts)
    d = domain.distance_to_boundary(pts)
    return float(d[0]) if single else d


def _unit_dirs(domain: Domain, u) -> tuple[np.ndarray, bool]:
    dirs = np.asarray(u, dtype=float)
    single = dirs.ndim <= 1
    dirs = np.atleast_2d(dirs.reshape(1, -1) if single else dirs)
    if dirs.shape[1] != domain.dim:
        raise DomainError("direction dimension does not match domain")
    if np.any(np.abs(np.linalg.norm(dirs, axis=1) - 1.0) > 1e-12):
        raise DomainError("direction vectors must have unit length")
    return dirs, single


def directional_distance(domain: Domain, x, u):
    """d_u(x): smallest |t| with x + t u on the boundary, both signs of t.

    Returns ``inf`` when neither ray meets the boundary. Shapes: one point
    and one direction give a float, otherwise ``(P, K)``.
    """
    pts, single_x = _as_points(domain, x)
    dirs, single_u = _unit_dirs(domain, u)
    _require_inside(domain, pts)
    d = np.minimum(domain.ray_exit(pts, dirs), domain.ray_exit(pts, -dirs))
    if single_x and single_u:
        return float(d[0, 0])
    return d


def _rho_block(domain: Domain, pts: np.ndarray, quad: SphereQuadrature) -> np.ndarray:
    fwd = domain.ray_exit(pts, quad.directions)
    if quad.antipodal_shift is not None:
        bwd = np.roll(fwd, -quad.antipodal_shift, axis=1)
    else:
        bwd = domain.ray_exit(pts, -quad.directions)
    d = np.minimum(fwd, bwd)
    s = (quad.weights / d**2).sum(axis=1) / quad.area
    with np.errstate(divide="ignore"):
        return np.where(s > 0, 1.0 / np.sqrt(s), np.inf)


def mean_distance(domain: Domain, x, quad: SphereQuadrature | None = None):
    """rho(x) from 1/rho^2 = mean over the sphere of 1/d_u^2.

    Directions with d_u = inf contribute nothing; if all do, rho = inf.
    """
    pts, single = _as_points(domain, x)
    _require_inside(domain, pts)
    quad = quad or sphere_quadrature(domain.dim)
    if quad.dim != domain.dim:
        raise DomainError("quadrature dimension does not match domain")
    rho = _evaluate_rho(domain, pts, quad)
    return float(rho[0]) if single else rho


def _evaluate_rho(domain, pts, quad):
    step = max(1, _BLOCK // quad.size)
    out = np.empty(len(pts))
    for i in range(0, len(pts), step):
        out[i : i + step] = _rho_block(domain, pts[i : i + step], quad)
    return out


def field_values(domain: Domain, pts: np.ndarray, which: str, quad: SphereQuadrature | None = None) -> np.ndarray:
    """delta or rho at interior points, no membership check."""
    if which == "delta":
        return domain.distance_to_boundary(pts)
    if which == "rho":
        return _evaluate_rho(domain, pts, quad or sphere_quadrature(domain.dim))
    raise ValueError(f"which must be 'delta' or 'rho', got {which!r}")


def cell_centers(domain: Domain, h: float) -> np.ndarray:
    """Centers of lattice cells of side h whose center lies in the domain."""
    if not h > 0:
        raise DomainError(f"cell size must be positive, got {h}")
    box = domain.bbox
    axes = [lo + h * (np.arange(int((hi - lo) / h) + 1) + 0.5) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    return pts[domain.contains(pts)]


@dataclass
class CellField:
    """delta or rho sampled at inside cell centers, in lattice order."""

    domain: Domain
    which: str
    h: float
    values: np.ndarray

    @property
    def cell_volume(self) -> float:
        return self.h**self.domain.dim

    def moment(self, beta: float) -> float:
        if beta == 0:
            return self.cell_volume * len(self.values)
        return self.cell_volume * float(np.sum(self.values**beta))

    def sublevel(self, eps: float) -> float:
        return self.cell_volume * int(np.count_nonzero(self.values < eps))


def cell_field(domain: Domain, which: str, h: float, quad: SphereQuadrature | None = None) -> CellField:
    pts = cell_centers(domain, h)
    return CellField(domain, which, h, field_values(domain, pts, which, quad))


@dataclass(frozen=True)
class MomentIntegral:
    value: float
    h: float
    which: str
    beta: float
    n_cells: int

    def __float__(self):
        return self.value


def moment_integral(domain: Domain, which: str, beta: float, h: float, quad=None) -> MomentIntegral:
    """Midpoint-rule integral of delta^beta or rho^beta over the (truncated) domain."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if not h > 0:
        raise DomainError(f"cell size must be positive, got {h}")
    if beta == 0:
        n = len(cell_centers(domain, h))
        return MomentIntegral(h**domain.dim * n, h, which, beta, n)
    f = cell_field(domain, which, h, quad)
    return MomentIntegral(f.moment(beta), h, which, beta, len(f.values))


def sublevel_volume(domain: Domain, which: str, eps: float, h: float, quad=None) -> float:
    """Midpoint-rule volume of {x : f(x) < eps}; eps = inf gives the full volume."""
    if not h > 0:
        raise DomainError(f"cell size must be positive, got {h}")
    if not eps > 0:
        raise ValueError("threshold must be positive")
    if math.isinf(eps):
        return h**domain.dim * len(cell_centers(domain, h))
    return cell_field(domain, which, h, quad).sublevel(eps)


def horn_tail_moment(horn: Horn, which: str, beta: float) -> float:
    """Integral of f^beta over the part of the horn beyond the truncation face.

    Uses the thin-slab form of the cross-section: delta = a - |x2| and
    rho = sqrt(2) * delta for local half-width a. Exact for beta = 0; for
    delta it over-estimates, since delta never exceeds the vertical gap.
    """
    k = {"delta": 1.0, "rho": math.sqrt(2.0)}[which]
    p = horn.alpha * (beta + 1.0)
    if p <= 1.0:
        return math.inf
    return k**beta * 2.0 / (beta + 1.0) * (horn.truncation + 1.0) ** (1.0 - p) / (p - 1.0)


@dataclass
class DistanceField:
    """delta or rho at the active nodes of a grid."""

    grid: object
    values: np.ndarray
    which: str


def distance_field(grid, which: str, quad: SphereQuadrature | None = None) -> DistanceField:
    """Evaluate delta or rho at every active node of ``grid``."""
    vals = field_values(grid.domain, grid.points, which, quad)
    return DistanceField(grid, vals, which)
