"""Verdicts for inequalities of the form lhs <= rhs with error margins."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .formulas import spectral_gap_threshold, trace_bound_rhs

BOUND_IDS = ("thm1", "thm2", "cor3", "cor4", "thm6", "cor7", "lem8", "lem9", "eq72", "horn-exponent")
VERDICTS = ("holds", "holds-within-margin", "violated")
CSV_COLUMNS = ("id", "t", "lhs", "lhs_err", "rhs", "rhs_err", "verdict")


@dataclass
class BoundReport:
    bound_id: str
    lhs: float
    lhs_err: float
    rhs: float
    rhs_err: float
    verdict: str
    inputs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != "violated"

    def to_dict(self) -> dict:
        return {
            "id": self.bound_id,
            "lhs": self.lhs,
            "lhs_err": self.lhs_err,
            "rhs": self.rhs,
            "rhs_err": self.rhs_err,
            "verdict": self.verdict,
            "inputs": dict(self.inputs),
        }

    def csv_row(self) -> list:
        t = self.inputs.get("t", "")
        return [self.bound_id, t, self.lhs, self.lhs_err, self.rhs, self.rhs_err, self.verdict]


def verify(bound_id: str, lhs: float, lhs_err: float, rhs: float, rhs_err: float, **inputs) -> BoundReport:
    """Judge lhs <= rhs.

    violated only if lhs - lhs_err > rhs + rhs_err; holds-within-margin when
    lhs > rhs but the error bars overlap.
    """
    if bound_id not in BOUND_IDS:
        raise ValueError(f"unknown bound id {bound_id!r}")
    if not (lhs_err >= 0 and rhs_err >= 0):
        raise ValueError("uncertainties must be nonnegative")
    if lhs <= rhs:
        verdict = "holds"
    elif lhs - lhs_err <= rhs + rhs_err:
        verdict = "holds-within-margin"
    else:
        verdict = "violated"
    return BoundReport(bound_id, float(lhs), float(lhs_err), float(rhs), float(rhs_err), verdict, inputs)


def trace_bound_check(m, trace_at_t, q_at_half_t, t, trace_err=0.0, q_err=0.0, **inputs) -> BoundReport:
    """trace(t) <= (4 pi t / 2)^(-m/2) Q(t/2)."""
    if min(trace_at_t, q_at_half_t, t) <= 0:
        raise ValueError("trace, Q and t must be positive")
    rhs = trace_bound_rhs(m, q_at_half_t, t)
    return verify("cor7", trace_at_t, trace_err, rhs, rhs * q_err / q_at_half_t, t=t, **inputs)


def spectral_gap_check(lam, rho_moment2, lam_err=0.0, moment_err=0.0, **inputs) -> BoundReport:
    """lambda >= 1 / (2 int rho^2), reported as threshold (lhs) <= lambda (rhs)."""
    if lam <= 0 or rho_moment2 <= 0:
        raise ValueError("eigenvalue and moment must be positive")
    thr = spectral_gap_threshold(rho_moment2)
    thr_err = 0.5 * moment_err / rho_moment2**2 if math.isfinite(moment_err) else math.inf
    return verify("eq72", thr, thr_err, lam, lam_err, **inputs)
