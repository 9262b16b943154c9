"""Small-time heat content of horns M(alpha) and its power-law exponent.

The grid solve covers the horn up to the truncation face, where it imposes
Dirichlet data. Two slab corrections restore the heat of the analytic horn:

* the face correction puts back the heat lost through the artificial face,
  which at small t is a strip of depth ~ sqrt(t) across the exit width 2a(L);
* the tail term adds the heat held beyond the face, treating each vertical
  cross-section of width 2a(xi) as an interval (thin-slab approximation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..geometry.domains import Horn
from ..pde.grid import build_grid
from ..pde.heat import heat_content
from ..pde.oracles import interval_heat_content
from .fit import DecayFit, fit_decay_exponent
from .formulas import horn_predicted_exponent
from .report import BoundReport, verify

ADMISSIBLE_MIN_ALPHA = 0.2
EXPONENT_TOLERANCE = 0.08


def horn_alpha_admissible(alpha: float) -> bool:
    """alpha in (1/5, 1) or (1, inf)."""
    return alpha > ADMISSIBLE_MIN_ALPHA and alpha != 1.0


def slab_tail_heat(horn: Horn, t: float) -> float:
    """Heat beyond the face: int_L^inf Q_(0, 2a(xi))(t) dxi, integrated in a."""
    al, a_face = horn.alpha, float(horn.half_width(horn.truncation))

    def integrand(a):
        return interval_heat_content(2.0 * a, t) / al * a ** (-1.0 / al - 1.0)

    brk = [min(a_face, math.sqrt(t))]
    val, _ = quad(integrand, 0.0, a_face, points=brk, limit=200)
    return val


def face_correction(horn: Horn, t: float) -> float:
    """Heat lost through the Dirichlet face: (2 sqrt(t / pi)) * Q_(0, 2a(L))(t)."""
    a_face = float(horn.half_width(horn.truncation))
    return 2.0 * math.sqrt(t / math.pi) * interval_heat_content(2.0 * a_face, t)


@dataclass
class HornStudy:
    alpha: float
    truncation: float
    h: float
    t: np.ndarray
    q_grid: np.ndarray
    q_face: np.ndarray
    q_tail: np.ndarray
    n_active: int
    n_steps: int

    @property
    def q(self) -> np.ndarray:
        """Corrected heat content of the untruncated horn."""
        return self.q_grid + self.q_face + self.q_tail

    @property
    def finite_volume(self) -> bool:
        return self.alpha > 1.0

    @property
    def observable(self) -> np.ndarray:
        """Q(t) when alpha < 1; vol - Q(t) when alpha > 1."""
        if not self.finite_volume:
            return self.q
        horn = Horn(self.alpha, self.truncation)
        vol = self.n_active * self.h**2 + horn.tail_volume
        return vol - self.q

    @property
    def predicted(self) -> float:
        return horn_predicted_exponent(self.alpha)

    def fit(self, t_window=None) -> DecayFit:
        return fit_decay_exponent((self.t, self.observable), t_window)


def horn_heat_study(alpha, truncation, h, t_samples, schedule="geometric") -> HornStudy:
    horn = Horn(alpha, truncation)
    grid = build_grid(horn, h)
    ts = np.asarray(t_samples, dtype=float)
    curve = heat_content(grid, ts, schedule=schedule)
    face = np.array([face_correction(horn, t) for t in ts])
    tail = np.array([slab_tail_heat(horn, t) for t in ts])
    return HornStudy(horn.alpha, horn.truncation, h, ts, curve.q, face, tail, grid.n_active, curve.n_steps)


@dataclass
class ExponentRow:
    alpha: float
    fitted: float
    stderr: float
    predicted: float
    gap: float
    observable: str
    status: str

    def report(self, tolerance=EXPONENT_TOLERANCE) -> BoundReport:
        return verify("horn-exponent", self.gap, self.stderr, tolerance, 0.0, alpha=self.alpha)


def exponent_row(alpha, truncation, h, t_samples, t_window=None, schedule="geometric") -> ExponentRow:
    """Fitted vs predicted exponent; inadmissible alpha yields a warning row."""
    pred = horn_predicted_exponent(alpha)
    if not horn_alpha_admissible(alpha):
        nan = float("nan")
        return ExponentRow(alpha, nan, nan, pred, nan, "", "warning: alpha outside (1/5, 1) or (1, inf)")
    study = horn_heat_study(alpha, truncation, h, t_samples, schedule)
    fit = study.fit(t_window)
    obs = "vol-Q" if study.finite_volume else "Q"
    return ExponentRow(alpha, fit.slope, fit.stderr, pred, abs(fit.slope - pred), obs, "ok")
