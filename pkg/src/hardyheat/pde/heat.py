"""Heat content Q(t) = integral of u(x; t) for u(., 0) = 1 with Dirichlet data 0."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..geometry.domains import Horn
from .grid import Grid
from .linalg import AMG_TINY_SIZE, amg_preconditioner, conjugate_gradient

SCHEMES = ("implicit-euler", "crank-nicolson")
SCHEDULES = ("constant", "geometric")

# Use a multigrid preconditioner once the step condition number 1 + 4m dt / h^2 exceeds this.
_AMG_CONDITION = 60.0


@dataclass
class HeatContentCurve:
    t: np.ndarray
    q: np.ndarray
    h: float
    dt: float
    scheme: str
    schedule: str
    volume: float
    tail_volume_bound: float = 0.0
    n_steps: int = 0
    u_min: float = 0.0
    u_max: float = 1.0
    uncertainty: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.uncertainty is None:
            self.uncertainty = np.full(len(self.t), self.tail_volume_bound)

    def __len__(self):
        return len(self.t)

    def at(self, t: float) -> float:
        """Q at a sampled time (exact match required)."""
        i = int(np.flatnonzero(np.isclose(self.t, t, rtol=1e-12, atol=0))[0])
        return float(self.q[i])


def _validate_times(t_samples) -> np.ndarray:
    ts = np.asarray(t_samples, dtype=float).ravel()
    if ts.size == 0 or np.any(ts <= 0) or np.any(np.diff(ts) <= 0):
        raise ValueError("t_samples must be positive and strictly increasing")
    return ts


def time_steps(t_samples, h: float, dt: float | None = None, schedule: str = "constant"):
    """Yield ``(t_end, step, count)`` per sample interval.

    The base step is ``min(t1 / 20, h)`` unless ``dt`` is given. With the
    geometric schedule the step grows in proportion to t (capped at
    ``max(dt, h)``), which keeps the number of steps per decade fixed.
    """
    ts = _validate_times(t_samples)
    if schedule not in SCHEDULES:
        raise ValueError(f"unknown schedule {schedule!r}")
    base = min(ts[0] / 20.0, h) if dt is None else float(dt)
    if not base > 0:
        raise ValueError("time step must be positive")
    prev = 0.0
    for t in ts:
        target = base if schedule == "constant" else max(base, min(base * t / ts[0], h))
        n = max(1, int(math.ceil((t - prev) / target - 1e-9)))
        yield t, (t - prev) / n, n
        prev = t


class _Stepper:
    """Caches the step matrix and an AMG preconditioner on a power-of-two dt ladder."""

    def __init__(self, grid: Grid, scheme: str, rtol: float):
        self.A = grid.laplacian
        self.I = sp.identity(grid.n_active, format="csr")
        self.scheme = scheme
        self.rtol = rtol
        self.dim = grid.dim
        self.h = grid.h
        self._mats = {}
        self._precs = {}

    def _prec(self, dt):
        if 1.0 + 4.0 * self.dim * dt / self.h**2 < _AMG_CONDITION:
            return None
        key = round(math.log2(dt))
        if key not in self._precs:
            ref = 2.0**key
            theta = 1.0 if self.scheme == "implicit-euler" else 0.5
            self._precs[key] = amg_preconditioner((self.I + theta * ref * self.A).tocsr(), AMG_TINY_SIZE)
        return self._precs[key]

    def step(self, u, dt):
        if dt not in self._mats:
            theta = 1.0 if self.scheme == "implicit-euler" else 0.5
            self._mats = {dt: (self.I + theta * dt * self.A).tocsr()}
        B = self._mats[dt]
        rhs = u if self.scheme == "implicit-euler" else u - 0.5 * dt * (self.A @ u)
        x, _ = conjugate_gradient(B, rhs, x0=u, rtol=self.rtol, M=self._prec(dt))
        return x


def heat_content(
    grid: Grid,
    t_samples,
    dt: float | None = None,
    schedule: str = "constant",
    scheme: str = "implicit-euler",
    on_step=None,
    rtol: float = 1e-10,
) -> HeatContentCurve:
    """March u from 1 and record Q(t) = h^m * sum(u) at each requested time.

    ``on_step(t, u)`` is called after every time step. Implicit Euler keeps
    0 <= u <= 1 (M-matrix); Crank-Nicolson does not guarantee it.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    ts = _validate_times(t_samples)
    stepper = _Stepper(grid, scheme, rtol)
    u = np.ones(grid.n_active)
    t = 0.0
    q = np.empty(len(ts))
    n_steps = 0
    u_min, u_max = np.inf, -np.inf
    base = None
    for k, (t_end, step, count) in enumerate(time_steps(ts, grid.h, dt, schedule)):
        base = step if base is None else base
        for _ in range(count):
            u = stepper.step(u, step)
            t += step
            n_steps += 1
            u_min = min(u_min, float(u.min()))
            u_max = max(u_max, float(u.max()))
            if on_step is not None:
                on_step(t, u)
        t = t_end
        q[k] = grid.integrate(u)
    tail = grid.domain.tail_volume if isinstance(grid.domain, Horn) else 0.0
    return HeatContentCurve(
        t=ts,
        q=q,
        h=grid.h,
        dt=base,
        scheme=scheme,
        schedule=schedule,
        volume=grid.volume,
        tail_volume_bound=tail,
        n_steps=n_steps,
        u_min=u_min,
        u_max=u_max,
    )
