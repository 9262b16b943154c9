"""Hardy constants and the right-hand sides of the heat-content, torsion and
spectral bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import HypothesisError, UnsupportedError
from ..geometry.domains import Domain

PROVENANCES = ("convex", "simply-connected-planar", "rho-form")


@dataclass(frozen=True)
class HardyParameters:
    """-Delta >= c / f^gamma with f = delta, or f = rho for the rho form."""

    gamma: float
    c: float
    provenance: str
    dim: int

    def __post_init__(self):
        if not 0 < self.gamma <= 2:
            raise HypothesisError(f"gamma must lie in (0, 2], got {self.gamma}")
        if not self.c > 0:
            raise HypothesisError(f"c must be positive, got {self.c}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def field(self) -> str:
        return "rho" if self.provenance == "rho-form" else "delta"

    @property
    def beta_max(self) -> float:
        return 4.0 if self.provenance == "rho-form" else 2.0 * self.gamma


def hardy_parameters(domain: Domain, mode: str = "delta") -> HardyParameters:
    """Constants (gamma, c) from the domain's geometry.

    convex: (2, 1/4); simply connected planar: (2, 1/16); rho mode: (2, m/4).
    """
    if mode == "rho":
        return HardyParameters(2.0, domain.dim / 4.0, "rho-form", domain.dim)
    if mode != "delta":
        raise ValueError(f"mode must be 'delta' or 'rho', got {mode!r}")
    if domain.is_convex:
        return HardyParameters(2.0, 0.25, "convex", domain.dim)
    if domain.dim == 2 and domain.is_simply_connected:
        return HardyParameters(2.0, 1.0 / 16.0, "simply-connected-planar", domain.dim)
    raise UnsupportedError(f"no Hardy constant in delta form for {domain.kind}")


def decay_coefficient(params: HardyParameters, beta: float) -> float:
    """((beta + gamma)^2 / (2 e beta gamma c))^(beta / gamma)."""
    if not 0 < beta <= params.beta_max:
        raise HypothesisError(f"beta must lie in (0, {params.beta_max:g}], got {beta}")
    g, c = params.gamma, params.c
    return ((beta + g) ** 2 / (2.0 * math.e * beta * g * c)) ** (beta / g)


def decay_bound_rhs(params: HardyParameters, beta: float, moment: float, t):
    """Upper bound on Q(t) from the moment integral of f^beta."""
    coef = decay_coefficient(params, beta)
    if not np.isfinite(moment):
        raise HypothesisError("the moment integral must be finite")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    out = coef * moment * t ** (-beta / params.gamma)
    return float(out) if out.ndim == 0 else out


def rho_form_decay_coefficient(m: int, beta: float) -> float:
    """((beta + 2)^2 / (e beta m))^(beta / 2), written out independently."""
    if not 0 < beta <= 4:
        raise HypothesisError(f"beta must lie in (0, 4], got {beta}")
    return ((beta + 2.0) ** 2 / (math.e * beta * m)) ** (beta / 2.0)


def cooling_threshold(params: HardyParameters, t: float) -> float:
    """eps* = (2 c t)^(1 / gamma)."""
    return (2.0 * params.c * t) ** (1.0 / params.gamma)


def cooling_bound_rhs(params: HardyParameters, vol: float, sublevel, t: float):
    """``(vol - sublevel(eps*) / 4, eps*)``; an upper bound on Q(t)."""
    if not np.isfinite(vol):
        raise HypothesisError("the cooling bound needs finite volume")
    if not t > 0:
        raise ValueError("t must be positive")
    eps = cooling_threshold(params, t)
    return vol - 0.25 * sublevel(eps), eps


def torsion_bound_rhs(m: int, rho_moment2: float) -> float:
    """(4 / m) * integral of rho^2."""
    if not np.isfinite(rho_moment2):
        raise HypothesisError("integral of rho^2 must be finite")
    return 4.0 / m * rho_moment2


def sup_torsion_bound_rhs(m: int, vol_eps: float, rho_moment2: float | None = None) -> float:
    """Bound on the sup norm of the torsion function.

    m >= 3: (m / (4 pi (m - 2))) vol^(2/m); m = 2: ((8 / pi) vol * int rho^2)^(1/2).
    """
    if m >= 3:
        return m / (4.0 * math.pi * (m - 2)) * vol_eps ** (2.0 / m)
    if m == 2:
        if rho_moment2 is None:
            raise ValueError("m = 2 needs the integral of rho^2")
        return math.sqrt(8.0 / math.pi * vol_eps * rho_moment2)
    raise UnsupportedError("no sup-norm torsion bound for m = 1")


def heat_kernel_sup(m: int, t: float) -> float:
    """(4 pi t)^(-m/2), the uniform bound on p(x, x; t)."""
    return (4.0 * math.pi * t) ** (-m / 2.0)


def trace_bound_rhs(m: int, q_half_t: float, t: float) -> float:
    """g(t/2) Q(t/2) with g the Euclidean heat-kernel bound."""
    return heat_kernel_sup(m, t / 2.0) * q_half_t


def spectral_gap_threshold(rho_moment2: float) -> float:
    """Lower bound 1 / (2 int rho^2) on the bottom of the spectrum (m = 2)."""
    return 0.5 / rho_moment2


def horn_beta_window(alpha: float, params: HardyParameters) -> tuple[float, float]:
    """Open-closed window (lo, hi] of admissible beta for the horn M(alpha)."""
    lo = max((1.0 - alpha) / alpha, 0.0)
    hi = min(params.beta_max, 4.0)
    if lo >= hi:
        raise HypothesisError(f"no admissible beta for alpha = {alpha:g} (need alpha > 1/5)")
    return lo, hi


def horn_betas(alpha: float, params: HardyParameters) -> list[float]:
    lo, hi = horn_beta_window(alpha, params)
    return [lo + (hi - lo) * f for f in (0.25, 0.5, 0.75)]


def horn_predicted_exponent(alpha: float) -> float:
    """(alpha - 1) / (2 alpha): decay of Q for alpha < 1, growth of vol - Q for alpha > 1."""
    return (alpha - 1.0) / (2.0 * alpha)
