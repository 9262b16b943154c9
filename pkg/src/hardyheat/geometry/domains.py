"""Implicit Euclidean domains.

Every domain answers three vectorized questions about points ``x`` of shape
``(P, m)``: is ``x`` in the open set, how far is the nearest boundary point,
and how far does a ray travel before it first meets the boundary.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np

from ..errors import DomainError, UnsupportedError

# Bisection stop for ray crossings, relative to the domain's length scale.
RAY_TOL = 1e-10
RAY_BISECTIONS = 80

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Domain(ABC):
    """Open region M0 in R^m, m in {1, 2, 3}."""

    kind: str
    dim: int
    is_convex: bool
    is_simply_connected: bool

    @property
    @abstractmethod
    def bbox(self) -> np.ndarray:
        """Per-axis ``[lo, hi]`` intervals, shape ``(m, 2)``."""

    @abstractmethod
    def contains(self, points: np.ndarray) -> np.ndarray:
        """Strict membership; boundary points are outside."""

    @abstractmethod
    def distance_to_boundary(self, points: np.ndarray) -> np.ndarray:
        """delta(x) for interior points (no membership check)."""

    @abstractmethod
    def ray_exit(self, points: np.ndarray, dirs: np.ndarray) -> np.ndarray:
        """Forward distance to the first boundary crossing.

        ``points`` is ``(P, m)``, ``dirs`` is ``(K, m)``; the result is
        ``(P, K)`` with ``inf`` where the ray never meets the boundary.
        """

    @abstractmethod
    def to_dict(self) -> dict:
        ...

    @abstractmethod
    def scaled(self, factor: float) -> "Domain":
        """The image of the domain under x -> factor * x."""

    @property
    def length_scale(self) -> float:
        return float(np.min(self.bbox[:, 1] - self.bbox[:, 0]))

    @property
    def volume(self) -> float:
        """Exact measure of the (truncated) region."""
        raise NotImplementedError

    @property
    def perimeter(self) -> float:
        """Exact (m-1)-measure of the boundary."""
        raise NotImplementedError

    @property
    def inradius(self) -> float:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()})"


class Box(Domain):
    """Axis-aligned box; an interval for m = 1, a rectangle for m = 2."""

    is_convex = True
    is_simply_connected = True

    def __init__(self, lengths, origin=None):
        lengths = np.atleast_1d(np.asarray(lengths, dtype=float))
        if lengths.ndim != 1 or not 1 <= lengths.size <= 3:
            raise DomainError("box needs 1 to 3 side lengths")
        if np.any(~np.isfinite(lengths)) or np.any(lengths <= 0):
            raise DomainError(f"side lengths must be positive, got {lengths.tolist()}")
        origin = np.zeros_like(lengths) if origin is None else np.asarray(origin, dtype=float)
        if origin.shape != lengths.shape:
            raise DomainError("origin and lengths differ in dimension")
        self.lengths = lengths
        self.origin = origin
        self.dim = lengths.size
        self.kind = "interval" if self.dim == 1 else "rectangle"

    @property
    def bbox(self):
        return np.stack([self.origin, self.origin + self.lengths], axis=1)

    def contains(self, points):
        lo, hi = self.origin, self.origin + self.lengths
        return np.all((points > lo) & (points < hi), axis=-1)

    def distance_to_boundary(self, points):
        lo, hi = self.origin, self.origin + self.lengths
        return np.min(np.minimum(points - lo, hi - points), axis=-1)

    def ray_exit(self, points, dirs):
        lo, hi = self.origin, self.origin + self.lengths
        out = np.full((points.shape[0], dirs.shape[0]), np.inf)
        for i in range(self.dim):
            u = dirs[:, i]
            with np.errstate(divide="ignore", invalid="ignore"):
                t_hi = (hi[i] - points[:, i, None]) / u
                t_lo = (lo[i] - points[:, i, None]) / u
            t = np.where(u > 0, t_hi, np.where(u < 0, t_lo, np.inf))
            np.minimum(out, t, out=out)
        return out

    @property
    def volume(self):
        return float(np.prod(self.lengths))

    @property
    def perimeter(self):
        if self.dim == 1:
            return 2.0
        if self.dim == 2:
            return float(2 * self.lengths.sum())
        a, b, c = self.lengths
        return float(2 * (a * b + b * c + a * c))

    @property
    def inradius(self):
        return float(self.lengths.min() / 2)

    def to_dict(self):
        if self.dim == 1:
            a = float(self.origin[0])
            return {"kind": "interval", "a": a, "b": a + float(self.lengths[0])}
        d = {"kind": self.kind, "lengths": self.lengths.tolist()}
        if np.any(self.origin != 0):
            d["origin"] = self.origin.tolist()
        return d

    def scaled(self, factor):
        return Box(self.lengths * factor, self.origin * factor)


class Ball(Domain):
    """Open disk (m = 2) or ball (m = 3)."""

    is_convex = True
    is_simply_connected = True

    def __init__(self, radius, center=None, dim=None):
        if center is None:
            center = np.zeros(2 if dim is None else int(dim))
        center = np.asarray(center, dtype=float)
        if dim is not None and center.size != int(dim):
            raise DomainError("center does not match dim")
        if center.ndim != 1 or center.size not in (2, 3):
            raise DomainError("disk/ball needs dimension 2 or 3")
        if not (np.isfinite(radius) and radius > 0):
            raise DomainError(f"radius must be positive, got {radius}")
        self.radius = float(radius)
        self.center = center
        self.dim = center.size
        self.kind = "disk" if self.dim == 2 else "ball"

    @property
    def bbox(self):
        return np.stack([self.center - self.radius, self.center + self.radius], axis=1)

    def contains(self, points):
        return np.sum((points - self.center) ** 2, axis=-1) < self.radius**2

    def distance_to_boundary(self, points):
        return self.radius - np.linalg.norm(points - self.center, axis=-1)

    def ray_exit(self, points, dirs):
        p = points - self.center
        b = p @ dirs.T
        cc = np.sum(p * p, axis=-1)[:, None] - self.radius**2
        return -b + np.sqrt(np.maximum(b * b - cc, 0.0))

    @property
    def volume(self):
        r = self.radius
        return math.pi * r * r if self.dim == 2 else 4.0 / 3.0 * math.pi * r**3

    @property
    def perimeter(self):
        r = self.radius
        return 2 * math.pi * r if self.dim == 2 else 4 * math.pi * r * r

    @property
    def inradius(self):
        return self.radius

    def to_dict(self):
        d = {"kind": self.kind, "radius": self.radius}
        if np.any(self.center != 0):
            d["center"] = self.center.tolist()
        elif self.dim == 3:
            d["dim"] = 3
        return d

    def scaled(self, factor):
        return Ball(self.radius * factor, self.center * factor)


class ConvexPolygon(Domain):
    """Convex polygon given by its vertices (either orientation)."""

    kind = "convex-polygon"
    dim = 2
    is_convex = True
    is_simply_connected = True

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise DomainError("polygon needs at least 3 planar vertices")
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.all(cross < 0):
            v = v[::-1].copy()
            edges = np.roll(v, -1, axis=0) - v
        elif not np.all(cross > 0):
            raise DomainError("polygon is not strictly convex")
        # Turning angles must sum to one full turn, otherwise the polygon winds twice.
        ang = np.arctan2(edges[:, 1], edges[:, 0])
        turn = np.mod(np.roll(ang, -1) - ang, 2 * np.pi).sum()
        if not math.isclose(turn, 2 * np.pi, rel_tol=1e-9):
            raise DomainError("polygon is not simple")
        lens = np.linalg.norm(edges, axis=1)
        self.vertices = v
        self.normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1) / lens[:, None]
        self.offsets = np.sum(self.normals * v, axis=1)
        self._edge_lengths = lens

    @property
    def bbox(self):
        return np.stack([self.vertices.min(axis=0), self.vertices.max(axis=0)], axis=1)

    def contains(self, points):
        return np.all(points @ self.normals.T < self.offsets, axis=-1)

    def distance_to_boundary(self, points):
        return np.min(self.offsets - points @ self.normals.T, axis=-1)

    def ray_exit(self, points, dirs):
        slack = self.offsets - points @ self.normals.T  # (P, E)
        speed = dirs @ self.normals.T  # (K, E)
        out = np.full((points.shape[0], dirs.shape[0]), np.inf)
        for e in range(len(self.offsets)):
            with np.errstate(divide="ignore"):
                t = np.where(speed[None, :, e] > 0, slack[:, e, None] / speed[None, :, e], np.inf)
            np.minimum(out, t, out=out)
        return out

    @property
    def volume(self):
        x, y = self.vertices.T
        return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def perimeter(self):
        return float(self._edge_lengths.sum())

    def to_dict(self):
        return {"kind": self.kind, "vertices": self.vertices.tolist()}

    def scaled(self, factor):
        return ConvexPolygon(self.vertices * factor)


class Horn(Domain):
    """Truncated horn {0 < x1 < L, |x2| < (x1 + 1)^-alpha}.

    The face x1 = L bounds the region for membership, delta and grids.
    Rays pass through it and see only the wall x1 = 0 and the two
    curved sides, which extend to infinity.
    """

    kind = "horn"
    dim = 2
    is_convex = False
    is_simply_connected = True

    def __init__(self, alpha, truncation):
        if not (np.isfinite(alpha) and alpha > 0):
            raise DomainError(f"horn exponent must be positive, got {alpha}")
        if not (np.isfinite(truncation) and truncation > 0):
            raise DomainError(f"horn truncation must be positive and finite, got {truncation}")
        self.alpha = float(alpha)
        self.truncation = float(truncation)

    def half_width(self, xi):
        return (np.asarray(xi, dtype=float) + 1.0) ** (-self.alpha)

    @property
    def bbox(self):
        return np.array([[0.0, self.truncation], [-1.0, 1.0]])

    @property
    def tail_volume(self) -> float:
        """Volume of the untruncated part beyond the face; inf when alpha <= 1."""
        a, L = self.alpha, self.truncation
        if a <= 1:
            return math.inf
        return 2.0 * (L + 1.0) ** (1.0 - a) / (a - 1.0)

    @property
    def untruncated_volume(self) -> float:
        return math.inf if self.alpha <= 1 else 2.0 / (self.alpha - 1.0)

    @property
    def volume(self):
        a, L = self.alpha, self.truncation
        if a == 1:
            return 2.0 * math.log1p(L)
        return 2.0 * ((L + 1.0) ** (1.0 - a) - 1.0) / (1.0 - a)

    @property
    def inradius(self):
        xs = np.linspace(0.0, min(2.0, self.truncation), 401)[1:-1]
        return float(self.distance_to_boundary(np.stack([xs, np.zeros_like(xs)], axis=1)).max())

    def contains(self, points):
        x, y = points[..., 0], points[..., 1]
        inside = (x > 0) & (x < self.truncation)
        with np.errstate(invalid="ignore"):
            inside &= np.abs(y) < self.half_width(np.where(inside, x, 0.0))
        return inside

    def distance_to_boundary(self, points, samples=33, refinements=60):
        x = points[:, 0]
        y = np.abs(points[:, 1])
        L = self.truncation
        aL = self.half_width(L)
        wall = x
        face = np.where(y <= aL, L - x, np.hypot(L - x, y - aL))
        bound = np.minimum.reduce([x, self.half_width(x) - y, L - x])

        lo = np.maximum(0.0, x - bound)
        hi = np.minimum(L, x + bound)
        frac = np.linspace(0.0, 1.0, samples)
        s = lo[:, None] + (hi - lo)[:, None] * frac  # (P, K)
        f = (s - x[:, None]) ** 2 + (self.half_width(s) - y[:, None]) ** 2
        k = np.argmin(f, axis=1)
        rows = np.arange(len(x))
        best = f[rows, k]
        a = s[rows, np.maximum(k - 1, 0)]
        b = s[rows, np.minimum(k + 1, samples - 1)]

        def obj(t):
            return (t - x) ** 2 + (self.half_width(t) - y) ** 2

        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        fc, fd = obj(c), obj(d)
        for _ in range(refinements):
            left = fc < fd
            a, b = np.where(left, a, c), np.where(left, d, b)
            c, d, fc, fd = (
                np.where(left, b - _GOLDEN * (b - a), d),
                np.where(left, c, a + _GOLDEN * (b - a)),
                fc,
                fd,
            )
            fc, fd = np.where(left, obj(c), fd), np.where(left, fc, obj(d))
        best = np.minimum(best, np.minimum(fc, fd))
        curve = np.sqrt(best)
        return np.minimum.reduce([wall, face, curve])

    def _curve_hit(self, x0, y0, c, s, t_wall):
        """First t in (0, t_wall] with a(x0 + c t) = y0 + s t, else inf.

        h(t) = a(x0 + c t) - (y0 + s t) is convex and positive at t = 0, so a
        root exists iff h dips below zero before its minimizer; that bracket
        is found in closed form and refined by bisection.
        """
        al = self.alpha
        a0 = self.half_width(x0)
        dh0 = -c * al * (x0 + 1.0) ** (-al - 1.0) - s
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            r = -s / (c * al)
            tstar = np.where((c != 0) & (r > 0), (r ** (-1.0 / (al + 1.0)) - 1.0 - x0) / c, np.inf)
            lin = np.where((c >= 0) & (s > 0), (a0 - y0) / s, np.inf)
            flat = np.where(y0 > 0, (y0 ** (-1.0 / al) - 1.0 - x0) / c, np.inf)
        t_hi = np.minimum.reduce([tstar, t_wall, lin])
        t_hi = np.where((c > 0) & (s == 0), flat, t_hi)
        cand = (dh0 < 0) & np.isfinite(t_hi) & (t_hi > 0)
        out = np.full(x0.shape, np.inf)
        if not np.any(cand):
            return out
        x0, y0, c, s, hi = x0[cand], y0[cand], c[cand], s[cand], t_hi[cand]

        def h(t):
            return self.half_width(np.maximum(x0 + c * t, 0.0)) - (y0 + s * t)

        crosses = h(hi) <= 0
        lo = np.zeros_like(hi)
        tol = RAY_TOL * self.length_scale
        for _ in range(RAY_BISECTIONS):
            if np.all(hi - lo <= tol):
                break
            mid = 0.5 * (lo + hi)
            neg = h(mid) <= 0
            hi = np.where(neg, mid, hi)
            lo = np.where(neg, lo, mid)
        res = np.where(crosses, hi, np.inf)
        out[cand] = res
        return out

    def ray_exit(self, points, dirs):
        P, K = points.shape[0], dirs.shape[0]
        x0 = np.repeat(points[:, 0], K)
        y0 = np.repeat(points[:, 1], K)
        c = np.tile(dirs[:, 0], P)
        s = np.tile(dirs[:, 1], P)
        with np.errstate(divide="ignore"):
            t_wall = np.where(c < 0, -x0 / c, np.inf)
        upper = self._curve_hit(x0, y0, c, s, t_wall)
        lower = self._curve_hit(x0, -y0, c, -s, t_wall)
        return np.minimum.reduce([t_wall, upper, lower]).reshape(P, K)

    def to_dict(self):
        return {"kind": "horn", "alpha": self.alpha, "truncation": self.truncation}

    def scaled(self, factor):
        raise UnsupportedError("the horn family is not closed under dilation")


_KEYS = {
    "interval": {"kind", "a", "b", "length"},
    "rectangle": {"kind", "lengths", "origin"},
    "disk": {"kind", "radius", "center", "dim"},
    "ball": {"kind", "radius", "center", "dim"},
    "convex-polygon": {"kind", "vertices"},
    "horn": {"kind", "alpha", "truncation", "tail_budget"},
}


def make_domain(spec: dict | Domain) -> Domain:
    """Build a domain from its JSON form, e.g. ``{"kind": "disk", "radius": 1}``."""
    if isinstance(spec, Domain):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DomainError("domain spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind not in _KEYS:
        raise DomainError(f"unknown domain kind {kind!r}")
    extra = set(spec) - _KEYS[kind]
    if extra:
        raise DomainError(f"unknown keys for {kind}: {sorted(extra)}")
    try:
        if kind == "interval":
            if "length" in spec:
                return Box([spec["length"]])
            a, b = float(spec.get("a", 0.0)), float(spec.get("b", 1.0))
            return Box([b - a], [a])
        if kind == "rectangle":
            return Box(spec["lengths"], spec.get("origin"))
        if kind in ("disk", "ball"):
            dim = spec.get("dim", 2 if kind == "disk" else 3)
            return Ball(float(spec.get("radius", 1.0)), spec.get("center"), dim)
        if kind == "convex-polygon":
            return ConvexPolygon(spec["vertices"])
        horn = Horn(float(spec["alpha"]), float(spec["truncation"]))
    except KeyError as exc:
        raise DomainError(f"missing key {exc} for {kind}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(str(exc)) from None
    budget = spec.get("tail_budget")
    if budget is not None and horn.alpha > 1 and horn.tail_volume > float(budget):
        raise DomainError(
            f"untruncated tail volume {horn.tail_volume:.3g} exceeds budget {budget}; increase truncation"
        )
    return horn
