"""End-to-end bound checks: numeric left and right sides at two resolutions.

Each quantity is computed at spacings h, h/2, ..., h/2^refine. The finest
value is reported and its uncertainty is the difference between the two
finest levels. Horn domains add their analytic tail contributions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapacityError, UnsupportedError
from ..geometry.domains import Domain, Horn
from ..geometry.functionals import cell_field, horn_tail_moment
from ..pde.grid import build_grid
from ..pde.heat import heat_content
from ..pde.spectral import DENSE_CAP, heat_trace, principal_eigenvalue
from ..pde.torsion import horn_torsion_tail, torsion
from .formulas import (
    cooling_bound_rhs,
    decay_coefficient,
    hardy_parameters,
    sup_torsion_bound_rhs,
    torsion_bound_rhs,
)
from .report import BoundReport, spectral_gap_check, trace_bound_check, verify

DECAY_IDS = {"delta": "thm1", "rho": "cor3"}
COOLING_IDS = {"delta": "thm2", "rho": "cor4"}


@dataclass(frozen=True)
class Estimate:
    value: float
    err: float


def resolution_levels(h: float, refine: int = 1) -> list[float]:
    if refine < 1:
        raise ValueError("refine must be at least 1")
    return [h / 2**k for k in range(refine + 1)]


def _estimate(values) -> Estimate:
    v = np.asarray(values, dtype=float)
    return Estimate(float(v[-1]), float(abs(v[-1] - v[-2])))


def _estimates(rows) -> list[Estimate]:
    """Per-column estimates from a (levels, n) array."""
    rows = np.asarray(rows, dtype=float)
    return [_estimate(rows[:, j]) for j in range(rows.shape[1])]


def _tail_volume(domain: Domain) -> float:
    return domain.tail_volume if isinstance(domain, Horn) else 0.0


def _tail_moment(domain: Domain, which: str, beta: float) -> float:
    return horn_tail_moment(domain, which, beta) if isinstance(domain, Horn) else 0.0


def heat_estimates(domain: Domain, ts, h: float, refine: int = 1, schedule: str = "constant") -> list[Estimate]:
    rows = [heat_content(build_grid(domain, hh), ts, schedule=schedule).q for hh in resolution_levels(h, refine)]
    return _estimates(rows)


def check_decay(domain, mode, betas, ts, h, refine=1, quad=None, schedule="constant") -> list[BoundReport]:
    """Q(t) <= C(beta) * int f^beta * t^(-beta/gamma) for each beta and t."""
    params = hardy_parameters(domain, mode)
    bid = DECAY_IDS[params.field]
    levels = resolution_levels(h, refine)
    q = heat_estimates(domain, ts, h, refine, schedule)
    fields = [cell_field(domain, params.field, hh, quad) for hh in levels]
    tail_q = _tail_volume(domain)
    reports = []
    for beta in betas:
        coef = decay_coefficient(params, beta)
        mom = _estimate([f.moment(beta) for f in fields])
        mom_total = mom.value + _tail_moment(domain, params.field, beta)
        for t, qe in zip(ts, q):
            scale = coef * float(t) ** (-beta / params.gamma)
            reports.append(
                verify(bid, qe.value, qe.err + tail_q, scale * mom_total, scale * mom.err,
                       t=float(t), beta=float(beta), h=levels[-1])
            )
    return reports


def check_cooling(domain, mode, ts, h, refine=1, quad=None, schedule="constant") -> list[BoundReport]:
    """Q(t) <= vol - sublevel(eps*) / 4 with eps* = (2ct)^(1/gamma)."""
    params = hardy_parameters(domain, mode)
    bid = COOLING_IDS[params.field]
    levels = resolution_levels(h, refine)
    q = heat_estimates(domain, ts, h, refine, schedule)
    fields = [cell_field(domain, params.field, hh, quad) for hh in levels]
    try:
        vol, vol_err = domain.volume, 0.0
    except NotImplementedError:
        v = _estimate([f.moment(0) for f in fields])
        vol, vol_err = v.value, v.err
    reports = []
    for t, qe in zip(ts, q):
        subs = [f.sublevel for f in fields]
        rhs_levels = [cooling_bound_rhs(params, vol, s, float(t))[0] for s in subs]
        eps = cooling_bound_rhs(params, vol, subs[-1], float(t))[1]
        r = _estimate(rhs_levels)
        reports.append(
            verify(bid, qe.value, qe.err + _tail_volume(domain), r.value, r.err + vol_err,
                   t=float(t), eps=eps, h=levels[-1])
        )
    return reports


def rho_moment2(domain, h, refine=1, quad=None) -> Estimate:
    vals = [cell_field(domain, "rho", hh, quad).moment(2.0) for hh in resolution_levels(h, refine)]
    e = _estimate(vals)
    return Estimate(e.value + _tail_moment(domain, "rho", 2.0), e.err)


def _torsion_levels(domain, h, refine):
    return [torsion(build_grid(domain, hh)) for hh in resolution_levels(h, refine)]


def check_torsion(domain, h, refine=1, quad=None) -> BoundReport:
    """P <= (4/m) int rho^2."""
    res = _torsion_levels(domain, h, refine)
    p = _estimate([r.rigidity for r in res])
    tail = horn_torsion_tail(domain) if isinstance(domain, Horn) else 0.0
    i2 = rho_moment2(domain, h, refine, quad)
    m = domain.dim
    return verify("thm6", p.value + tail, p.err, torsion_bound_rhs(m, i2.value), 4.0 / m * i2.err,
                  h=h / 2**refine, rho_moment2=i2.value)


def check_sup_torsion(domain, h, refine=1, quad=None) -> BoundReport:
    """sup w against the volume bound (m >= 3) or the volume and rho bound (m = 2)."""
    m = domain.dim
    if m == 1:
        raise UnsupportedError("no sup-norm torsion bound for m = 1")
    res = _torsion_levels(domain, h, refine)
    w = _estimate([r.sup_norm for r in res])
    levels = resolution_levels(h, refine)
    vols = [r.field.grid.volume for r in res]
    if m >= 3:
        rhs = _estimate([sup_torsion_bound_rhs(m, v) for v in vols])
        return verify("lem8", w.value, w.err, rhs.value, rhs.err, h=levels[-1])
    fields = [cell_field(domain, "rho", hh, quad) for hh in levels]
    rhs = _estimate([sup_torsion_bound_rhs(2, f.moment(0), f.moment(2.0)) for f in fields])
    return verify("lem9", w.value, w.err, rhs.value, rhs.err, h=levels[-1])


def check_spectral_gap(domain, h, refine=1, quad=None) -> BoundReport:
    """lambda >= 1 / (2 int rho^2), planar domains."""
    if domain.dim != 2:
        raise UnsupportedError("the spectral gap bound is stated for m = 2")
    lam = _estimate([principal_eigenvalue(build_grid(domain, hh)) for hh in resolution_levels(h, refine)])
    i2 = rho_moment2(domain, h, refine, quad)
    return spectral_gap_check(lam.value, i2.value, lam.err, i2.err, h=h / 2**refine)


def check_trace(domain, ts, h, refine=1) -> list[BoundReport]:
    """trace(t) <= (2 pi t)^(-m/2) Q(t/2) on grids small enough for a dense spectrum.

    Here h is the finest level; the coarser levels are 2h, 4h, ...
    """
    levels = [h * 2**k for k in range(refine, -1, -1)]
    ts = np.asarray(ts, dtype=float)
    traces, qs = [], []
    for hh in levels:
        g = build_grid(domain, hh)
        if g.n_active > DENSE_CAP:
            raise CapacityError(f"grid at h={hh:g} has {g.n_active} nodes; the trace check needs <= {DENSE_CAP}")
        traces.append(np.atleast_1d(heat_trace(g, ts)))
        qs.append(heat_content(g, ts / 2).q)
    tr, q = _estimates(traces), _estimates(qs)
    return [
        trace_bound_check(domain.dim, a.value, b.value, float(t), a.err, b.err + _tail_volume(domain), h=h)
        for t, a, b in zip(ts, tr, q)
    ]


def run_checks(domain, ids, *, ts, betas, h, refine=1, quad=None, trace_ts=(0.05, 0.1, 0.2),
               trace_h=None) -> list[BoundReport]:
    """Dispatch bound ids in the given order; results keep that order."""
    reports: list[BoundReport] = []
    for bid in ids:
        if bid in ("thm1", "cor3"):
            mode = "delta" if bid == "thm1" else "rho"
            reports += check_decay(domain, mode, betas, ts, h, refine, quad)
        elif bid in ("thm2", "cor4"):
            reports += check_cooling(domain, "delta" if bid == "thm2" else "rho", ts, h, refine, quad)
        elif bid == "thm6":
            reports.append(check_torsion(domain, h, refine, quad))
        elif bid in ("lem8", "lem9"):
            r = check_sup_torsion(domain, h, refine, quad)
            if r.bound_id != bid:
                raise UnsupportedError(f"{bid} does not apply in dimension {domain.dim}; use {r.bound_id}")
            reports.append(r)
        elif bid == "eq72":
            reports.append(check_spectral_gap(domain, h, refine, quad))
        elif bid == "cor7":
            reports += check_trace(domain, trace_ts, trace_h or h, refine)
        else:
            raise ValueError(f"bound id {bid!r} is not an end-to-end check")
    return reports

