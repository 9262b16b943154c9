"""Survival probability of killed Brownian motion, an independent estimate of u(x; t).

The generator is Delta (not Delta / 2), so each coordinate increment has
variance 2 * dtau. A path dies the first time a step lands outside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..geometry.domains import Domain

_BATCH = 256


@dataclass(frozen=True)
class SurvivalEstimate:
    value: float
    stderr: float
    n_paths: int
    n_steps: int


def _path_rng(seed: int, path: int) -> np.random.Generator:
    # Counter-based stream per path: results do not depend on batching.
    return np.random.Generator(np.random.Philox(key=[int(seed), int(path)]))


def mc_survival(domain: Domain, x, t: float, dtau: float, n_paths: int, seed: int = 0) -> SurvivalEstimate:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != domain.dim or not domain.contains(x[None, :])[0]:
        raise DomainError("starting point must lie inside the domain")
    if not (dtau > 0 and t > 0):
        raise ValueError("t and dtau must be positive")
    if n_paths < 100:
        raise ValueError("need at least 100 paths")
    n_steps = max(1, int(math.ceil(t / dtau - 1e-9)))
    sigma = math.sqrt(2.0 * t / n_steps)
    alive = 0
    for start in range(0, n_paths, _BATCH):
        stop = min(n_paths, start + _BATCH)
        incs = np.stack([_path_rng(seed, p).standard_normal((n_steps, domain.dim)) for p in range(start, stop)])
        paths = x + sigma * np.cumsum(incs, axis=1)
        inside = domain.contains(paths.reshape(-1, domain.dim)).reshape(stop - start, n_steps)
        alive += int(np.count_nonzero(inside.all(axis=1)))
    p = alive / n_paths
    return SurvivalEstimate(p, math.sqrt(max(p * (1.0 - p), 0.0) / n_paths), n_paths, n_steps)
