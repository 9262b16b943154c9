"""Power-law fits to heat-content curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DecayFit:
    slope: float
    stderr: float
    intercept: float
    n: int


def fit_decay_exponent(curve, t_window=None, min_samples: int = 5) -> DecayFit:
    """Least-squares slope of log Q against log t inside ``t_window``.

    ``curve`` is a HeatContentCurve or a ``(t, q)`` pair.
    """
    t, q = (curve.t, curve.q) if hasattr(curve, "q") else curve
    t = np.asarray(t, dtype=float)
    q = np.asarray(q, dtype=float)
    if t_window is not None:
        lo, hi = t_window
        sel = (t >= lo * (1 - 1e-12)) & (t <= hi * (1 + 1e-12))
        t, q = t[sel], q[sel]
    if len(t) < min_samples:
        raise ValueError(f"window holds {len(t)} samples, need at least {min_samples}")
    if np.any(q <= 0):
        raise ValueError("log fit needs positive values")
    x, y = np.log(t), np.log(q)
    X = np.stack([x, np.ones_like(x)], axis=1)
    (slope, icpt), res, *_ = np.linalg.lstsq(X, y, rcond=None)
    dof = len(x) - 2
    resid = y - X @ np.array([slope, icpt])
    sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
    stderr = np.sqrt(sigma2 / np.sum((x - x.mean()) ** 2))
    return DecayFit(float(slope), float(stderr), float(icpt), len(t))


def fit_sqrt_coefficient(t, loss) -> float:
    """Coefficient b of sqrt(t) in loss ~ a + b sqrt(t) + c t."""
    t = np.asarray(t, dtype=float)
    X = np.stack([np.ones_like(t), np.sqrt(t), t], axis=1)
    coef = np.linalg.lstsq(X, np.asarray(loss, dtype=float), rcond=None)[0]
    return float(coef[1])
