from .grid import Grid, ScalarField, build_grid
from .heat import HeatContentCurve, heat_content, time_steps
from .linalg import conjugate_gradient
from .montecarlo import SurvivalEstimate, mc_survival
from .spectral import (
    DENSE_CAP,
    SpectralSummary,
    discrete_spectrum,
    heat_trace,
    principal_eigenpair,
    principal_eigenvalue,
    spectral_summary,
)
from .torsion import TorsionResult, horn_torsion_tail, torsion

__all__ = [
    "DENSE_CAP",
    "Grid",
    "HeatContentCurve",
    "ScalarField",
    "SpectralSummary",
    "SurvivalEstimate",
    "TorsionResult",
    "build_grid",
    "conjugate_gradient",
    "discrete_spectrum",
    "heat_content",
    "heat_trace",
    "horn_torsion_tail",
    "mc_survival",
    "principal_eigenpair",
    "principal_eigenvalue",
    "spectral_summary",
    "time_steps",
    "torsion",
]
