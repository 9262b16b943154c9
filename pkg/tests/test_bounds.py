import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from hardyheat.bounds import (
    BoundReport,
    HardyParameters,
    check_cooling,
    check_decay,
    check_spectral_gap,
    check_sup_torsion,
    check_torsion,
    check_trace,
    cooling_bound_rhs,
    decay_bound_rhs,
    exponent_row,
    fit_decay_exponent,
    hardy_parameters,
    horn_beta_window,
    horn_betas,
    horn_predicted_exponent,
    rho_form_decay_coefficient,
    rho_moment2,
    spectral_gap_check,
    sup_torsion_bound_rhs,
    torsion_bound_rhs,
    trace_bound_check,
    verify,
)
from hardyheat.bounds.horn import face_correction, horn_alpha_admissible, slab_tail_heat
from hardyheat.errors import HypothesisError, UnsupportedError
from hardyheat.geometry import Ball, Box, ConvexPolygon, Domain, Horn
from hardyheat.pde.oracles import interval_heat_content, interval_heat_trace


class _Annulus(Domain):
    """Minimal non-simply-connected stand-in for the unsupported-constant branch."""

    kind = "annulus"
    dim = 2
    is_convex = False
    is_simply_connected = False
    bbox = np.array([[-1.0, 1.0], [-1.0, 1.0]])

    def contains(self, points):
        r = np.linalg.norm(points, axis=1)
        return (r > 0.5) & (r < 1)

    def distance_to_boundary(self, points):
        r = np.linalg.norm(points, axis=1)
        return np.minimum(r - 0.5, 1 - r)

    def ray_exit(self, points, dirs):
        raise NotImplementedError

    def to_dict(self):
        return {"kind": self.kind}

    def scaled(self, factor):
        raise NotImplementedError


# hardy_parameters


def test_hardy_parameters_examples():
    p = hardy_parameters(Box([1.0, 1.0]), "delta")
    assert (p.gamma, p.c, p.provenance) == (2.0, 0.25, "convex")
    p = hardy_parameters(Horn(1.0, 10.0), "delta")
    assert (p.gamma, p.c, p.provenance) == (2.0, 1 / 16, "simply-connected-planar")
    p = hardy_parameters(Horn(1.0, 10.0), "rho")
    assert (p.gamma, p.c, p.provenance) == (2.0, 0.5, "rho-form")
    assert hardy_parameters(Ball(1.0, dim=3), "rho").c == 0.75


def test_hardy_parameters_unsupported():
    with pytest.raises(UnsupportedError):
        hardy_parameters(_Annulus(), "delta")
    with pytest.raises(ValueError):
        hardy_parameters(Box([1.0]), "sigma")


def test_hardy_parameters_invariants():
    with pytest.raises(HypothesisError):
        HardyParameters(2.5, 0.25, "convex", 2)
    with pytest.raises(HypothesisError):
        HardyParameters(2.0, 0.0, "convex", 2)


# decay_bound_rhs


def test_decay_bound_example():
    p = HardyParameters(2.0, 0.25, "convex", 2)
    assert decay_bound_rhs(p, 2.0, 1.0, 1.0) == pytest.approx(8 / math.e, rel=1e-14)


def test_decay_bound_power_law():
    p = HardyParameters(1.5, 0.3, "convex", 2)
    for beta in (0.5, 1.0, 3.0):
        r1 = decay_bound_rhs(p, beta, 2.0, 0.3)
        r4 = decay_bound_rhs(p, beta, 2.0, 1.2)
        assert r4 == pytest.approx(r1 * 4 ** (-beta / 1.5), rel=1e-13)


def test_decay_bound_beta_range():
    p = HardyParameters(2.0, 0.25, "convex", 2)
    for beta in (0.0, -1.0, 4.0001):
        with pytest.raises(HypothesisError):
            decay_bound_rhs(p, beta, 1.0, 1.0)
    rho = hardy_parameters(Box([1.0, 1.0]), "rho")
    decay_bound_rhs(rho, 4.0, 1.0, 1.0)
    with pytest.raises(HypothesisError):
        decay_bound_rhs(rho, 4.5, 1.0, 1.0)
    with pytest.raises(HypothesisError):
        decay_bound_rhs(p, 1.0, math.inf, 1.0)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_rho_form_reduction_identity(m):
    params = HardyParameters(2.0, m / 4.0, "rho-form", m)
    for beta in np.linspace(0.08, 4.0, 50):
        assert decay_bound_rhs(params, beta, 1.0, 1.0) == pytest.approx(
            rho_form_decay_coefficient(m, beta), rel=1e-12
        )


def test_rho_form_m2_coefficient():
    params = hardy_parameters(Box([1.0, 1.0]), "rho")
    for beta in (0.5, 1.0, 2.0, 4.0):
        expected = ((beta + 2) ** 2 / (2 * math.e * beta)) ** (beta / 2)
        assert decay_bound_rhs(params, beta, 1.0, 1.0) == pytest.approx(expected, rel=1e-12)


# cooling_bound_rhs


def test_cooling_bound_example():
    p = HardyParameters(2.0, 0.25, "convex", 2)
    rhs, eps = cooling_bound_rhs(p, 1.0, lambda e: 0.2, 0.5)
    assert rhs == pytest.approx(0.95)
    assert eps == pytest.approx(0.5)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cooling_rho_form_threshold(m):
    params = HardyParameters(2.0, m / 4.0, "rho-form", m)
    for t in (1e-3, 0.1, 1.0, 7.0):
        _, eps = cooling_bound_rhs(params, 1.0, lambda e: 0.0, t)
        assert eps == pytest.approx(math.sqrt(m * t / 2), rel=1e-12)
    _, eps = cooling_bound_rhs(hardy_parameters(Box([1.0, 1.0]), "rho"), 1.0, lambda e: 0.0, 1.0)
    assert eps == 1.0


def test_cooling_small_time_limit():
    disk = Ball(1.0)
    p = hardy_parameters(disk, "delta")
    collar = lambda e: math.pi * (1 - (1 - min(e, 1.0)) ** 2)  # noqa: E731
    rhs, _ = cooling_bound_rhs(p, math.pi, collar, 1e-12)
    assert rhs == pytest.approx(math.pi, rel=1e-5)


def test_cooling_requires_finite_volume():
    with pytest.raises(HypothesisError):
        cooling_bound_rhs(HardyParameters(2.0, 0.25, "convex", 2), math.inf, lambda e: 0.0, 1.0)


# torsion bounds


def test_torsion_bound_examples():
    assert torsion_bound_rhs(2, 1.0) == 2.0
    assert torsion_bound_rhs(3, 3.0) == 4.0


def test_sup_torsion_examples():
    assert sup_torsion_bound_rhs(3, 1.0) == pytest.approx(3 / (4 * math.pi))
    assert sup_torsion_bound_rhs(2, 1.0, 1.0) == pytest.approx(math.sqrt(8 / math.pi))
    assert sup_torsion_bound_rhs(2, 1.0, 1.0) == pytest.approx(1.5958, abs=1e-4)
    with pytest.raises(UnsupportedError):
        sup_torsion_bound_rhs(1, 1.0)
    with pytest.raises(ValueError):
        sup_torsion_bound_rhs(2, 1.0)


# verify and the report helpers


def test_verify_examples():
    assert verify("thm1", 1.0, 0.01, 2.0, 0.0).verdict == "holds"
    assert verify("thm1", 2.005, 0.01, 2.0, 0.0).verdict == "holds-within-margin"
    assert verify("thm1", 3.0, 0.01, 2.0, 0.01).verdict == "violated"


@settings(max_examples=200)
@given(
    st.floats(-10, 10), st.floats(0, 5), st.floats(-10, 10), st.floats(0, 5),
)
def test_verify_invariant(lhs, le, rhs, re):
    r = verify("thm6", lhs, le, rhs, re)
    assert (r.verdict == "violated") == (lhs - le > rhs + re)
    assert (r.verdict == "holds") == (lhs <= rhs)


def test_verify_rejects():
    with pytest.raises(ValueError):
        verify("thm1", 1.0, -0.1, 2.0, 0.0)
    with pytest.raises(ValueError):
        verify("thm99", 1.0, 0.0, 2.0, 0.0)


def test_report_serialisation():
    r = verify("cor7", 1.0, 0.1, 2.0, 0.2, t=0.1, h=0.5)
    d = r.to_dict()
    assert d["id"] == "cor7" and d["inputs"]["t"] == 0.1
    assert r.csv_row() == ["cor7", 0.1, 1.0, 0.1, 2.0, 0.2, "holds"]
    assert isinstance(r, BoundReport) and r.ok


def test_trace_check_interval_series():
    t = 0.05
    r = trace_bound_check(1, interval_heat_trace(t), interval_heat_content(1.0, t / 2), t)
    assert r.verdict == "holds"
    assert r.rhs == pytest.approx((2 * math.pi * t) ** -0.5 * interval_heat_content(1.0, t / 2))


def test_trace_check_synthetic_violation():
    t = 0.1
    r = trace_bound_check(2, 1.0, 0.1, t)
    doubled = trace_bound_check(2, 2 * r.rhs, 0.1, t)
    assert doubled.verdict == "violated"
    with pytest.raises(ValueError):
        trace_bound_check(2, 0.0, 0.1, t)


def test_spectral_gap_threshold():
    r = spectral_gap_check(1.0, 1.0)
    assert r.lhs == 0.5 and r.rhs == 1.0 and r.verdict == "holds"
    assert spectral_gap_check(0.4, 1.0).verdict == "violated"


# fit_decay_exponent


def test_fit_exact_power_law():
    t = np.geomspace(1e-4, 1e-2, 9)
    fit = fit_decay_exponent((t, 3.0 * t**-0.5))
    assert fit.slope == pytest.approx(-0.5, abs=1e-12)
    assert fit.stderr < 1e-10 and fit.n == 9


def test_fit_window_and_errors():
    t = np.geomspace(1e-4, 1.0, 20)
    q = np.where(t < 1e-2, t**-0.25, 10 * t**-0.75)
    assert fit_decay_exponent((t, q), (1e-4, 9e-3)).slope == pytest.approx(-0.25, abs=1e-12)
    with pytest.raises(ValueError):
        fit_decay_exponent((t, q), (1e-4, 3e-4))
    with pytest.raises(ValueError):
        fit_decay_exponent((t, -q))


# horn helpers


def test_horn_beta_window():
    p = hardy_parameters(Horn(0.5, 10.0), "delta")
    assert horn_beta_window(0.5, p) == (1.0, 4.0)
    assert horn_betas(0.5, p) == [1.75, 2.5, 3.25]
    assert horn_beta_window(2.0, p) == (0.0, 4.0)
    with pytest.raises(HypothesisError):
        horn_beta_window(0.1, p)


def test_horn_predicted_exponent():
    assert horn_predicted_exponent(0.5) == -0.5
    assert horn_predicted_exponent(0.75) == pytest.approx(-1 / 6)
    assert horn_predicted_exponent(2.0) == 0.25


def test_horn_admissibility():
    assert horn_alpha_admissible(0.5) and horn_alpha_admissible(2.0)
    assert not horn_alpha_admissible(0.1) and not horn_alpha_admissible(1.0)
    row = exponent_row(0.1, 10.0, 1 / 8, np.geomspace(1e-3, 1e-2, 6))
    assert row.status.startswith("warning") and math.isnan(row.fitted)
    assert row.predicted == pytest.approx(-4.5)


def test_slab_tail_deficit_scaling():
    # the tail heat tends to the tail volume; the deficit comes from cold slabs
    # of width below sqrt(t) and scales like t^((alpha - 1) / (2 alpha))
    horn = Horn(2.0, 10.0)
    ts = np.array([1e-12, 1e-10, 1e-8])
    deficit = horn.tail_volume - np.array([slab_tail_heat(horn, t) for t in ts])
    assert np.all(deficit > 0) and deficit[0] < 0.03 * horn.tail_volume
    slope = np.polyfit(np.log(ts), np.log(deficit), 1)[0]
    assert slope == pytest.approx(0.25, abs=0.01)


def test_face_correction_scaling():
    horn = Horn(0.5, 100.0)
    a = 2 * 101**-0.5
    # width far above sqrt(t): slab heat is ~ a, so the correction is ~ 2 sqrt(t / pi) a
    assert face_correction(horn, 1e-6) == pytest.approx(2 * math.sqrt(1e-6 / math.pi) * a, rel=0.02)


# end-to-end checks on small grids


def test_check_decay_square_and_rho_form():
    ts = np.geomspace(1e-3, 1.0, 6)
    for mode, bid in (("delta", "thm1"), ("rho", "cor3")):
        reports = check_decay(Box([1.0, 1.0]), mode, [1.0, 2.0, 4.0], ts, 1 / 16)
        assert len(reports) == 18
        assert all(r.bound_id == bid and r.ok for r in reports)


def test_check_cooling_square_disk():
    ts = np.geomspace(1e-3, 1.0, 6)
    for domain in (Box([1.0, 1.0]), Ball(1.0)):
        for mode in ("delta", "rho"):
            reports = check_cooling(domain, mode, ts, 1 / 16)
            assert all(r.ok for r in reports)


def test_check_torsion_and_gap():
    for domain in (Box([1.0, 1.0]), Ball(1.0)):
        assert check_torsion(domain, 1 / 16).verdict == "holds"
        assert check_spectral_gap(domain, 1 / 16).verdict == "holds"
    assert check_torsion(Horn(2.0, 10.0), 1 / 16).ok


def test_disk_torsion_bound_with_exact_rigidity():
    i2 = rho_moment2(Ball(1.0), 1 / 32)
    assert math.pi / 8 <= torsion_bound_rhs(2, i2.value)


def test_check_sup_torsion_dimensions():
    r = check_sup_torsion(Box([1.0, 1.0]), 1 / 16)
    assert r.bound_id == "lem9" and r.verdict == "holds"
    r3 = check_sup_torsion(Box([1.0, 1.0, 1.0]), 1 / 8)
    assert r3.bound_id == "lem8" and r3.verdict == "holds"
    with pytest.raises(UnsupportedError):
        check_sup_torsion(Box([1.0]), 1 / 16)
    with pytest.raises(UnsupportedError):
        check_spectral_gap(Box([1.0]), 1 / 16)


def test_check_trace_polygon():
    tri = ConvexPolygon([[0, 0], [2, 0], [1, 1.5]])
    reports = check_trace(tri, [0.05, 0.1], 1 / 16)
    assert [r.bound_id for r in reports] == ["cor7", "cor7"]
    assert all(r.verdict == "holds" for r in reports)
    assert_allclose([r.inputs["t"] for r in reports], [0.05, 0.1])
