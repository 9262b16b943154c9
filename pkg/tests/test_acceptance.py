"""The twelve acceptance criteria, each at its stated tolerance.

A summary line per criterion is printed at the end of the session.
"""

import json
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from hardyheat.bounds import (
    check_cooling,
    check_decay,
    check_spectral_gap,
    check_sup_torsion,
    check_torsion,
    check_trace,
    cooling_bound_rhs,
    decay_bound_rhs,
    exponent_row,
    fit_sqrt_coefficient,
    HardyParameters,
    rho_form_decay_coefficient,
)
from hardyheat.geometry import (
    Ball,
    Box,
    ConvexPolygon,
    Horn,
    boundary_distance,
    mean_distance,
    moment_integral,
    sphere_quadrature,
)
from hardyheat.pde import build_grid, heat_content, principal_eigenvalue, torsion

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

# Frozen oracle values.
SQUARE_RIGIDITY = 0.0351442536853562
INTERVAL_Q = {0.01: 0.774324166581016, 0.05: 0.49591217979745145, 0.1: 0.3021180937732732}
DISK_B1 = 2 / math.sqrt(math.pi) * 2 * math.pi  # 7.0898154036220635

T_GRID = np.geomspace(1e-3, 1.0, 20)
SQUARE = Box([1.0, 1.0])
DISK = Ball(1.0)


def note(record_property, text):
    record_property("detail", text)
    print(text)


def verdicts_ok(reports):
    return all(r.verdict in ("holds", "holds-within-margin") for r in reports)


def summary(reports):
    counts = {}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))


@pytest.mark.criterion(1)
def test_c01_interval_oracle(record_property):
    t0 = time.perf_counter()
    c = heat_content(build_grid(Box([1.0]), 1 / 256), [0.01, 0.05, 0.1])
    elapsed = time.perf_counter() - t0
    errs = [abs(c.at(t) / q - 1) for t, q in INTERVAL_Q.items()]
    note(record_property, f"max rel err {max(errs):.2e} (tol 1e-2), {elapsed:.2f} s (limit 10 s)")
    assert max(errs) <= 0.01 and elapsed < 10


@pytest.mark.criterion(2)
def test_c02_disk_boundary_coefficient(record_property):
    t0 = time.perf_counter()
    g = build_grid(DISK, 1 / 512)
    ts = np.geomspace(1e-5, 1e-3, 21)
    c = heat_content(g, ts, schedule="geometric")
    b = fit_sqrt_coefficient(ts, g.volume - c.q)
    elapsed = time.perf_counter() - t0
    rel = abs(b / DISK_B1 - 1)
    note(record_property, f"b = {b:.4f} vs {DISK_B1:.4f}, rel err {rel:.2e} (tol 3e-2), {elapsed:.1f} s (limit 120 s)")
    assert rel <= 0.03 and elapsed < 120


@pytest.mark.criterion(3)
def test_c03_torsion_oracles(record_property):
    disk = torsion(build_grid(DISK, 1 / 256)).rigidity / (math.pi / 8) - 1
    interval = torsion(build_grid(Box([1.0]), 1 / 256)).rigidity * 12 - 1
    square = torsion(build_grid(SQUARE, 1 / 256)).rigidity / SQUARE_RIGIDITY - 1
    note(record_property, f"rel err disk {disk:+.2e} (1e-2), interval {interval:+.2e} (5e-3), square {square:+.2e} (5e-3)")
    assert abs(disk) <= 0.01 and abs(interval) <= 0.005 and abs(square) <= 0.005


@pytest.mark.criterion(4)
def test_c04_time_integrated_heat_content(record_property):
    g = build_grid(SQUARE, 1 / 64)
    P = torsion(g).rigidity
    lam = principal_eigenvalue(g)
    ts = np.geomspace(1e-4, 20 / lam, 60)
    q = heat_content(g, ts, dt=1e-4).q
    integral = np.trapezoid(np.concatenate([[g.volume], q]), np.concatenate([[0.0], ts]))
    rel = abs(integral / P - 1)
    note(record_property, f"int Q dt = {integral:.6f}, P = {P:.6f}, rel diff {rel:.2e} (tol 2e-2)")
    assert rel <= 0.02


@pytest.mark.criterion(5)
def test_c05_decay_bound_square(record_property):
    reports = check_decay(SQUARE, "delta", [1.0, 2.0, 4.0], T_GRID, 1 / 32)
    reports += check_decay(SQUARE, "rho", [1.0, 2.0, 4.0], T_GRID, 1 / 32)
    note(record_property, f"{len(reports)} reports: {summary(reports)}")
    assert len(reports) == 120 and verdicts_ok(reports)


@pytest.mark.criterion(6)
def test_c06_cooling_bound_square_disk(record_property):
    reports = []
    for domain in (SQUARE, DISK):
        for mode in ("delta", "rho"):
            reports += check_cooling(domain, mode, T_GRID, 1 / 32)
    note(record_property, f"{len(reports)} reports: {summary(reports)}")
    assert len(reports) == 80 and verdicts_ok(reports)


@pytest.mark.criterion(7)
def test_c07_torsion_bound(record_property):
    horn = Horn(2.0, 10.0)
    reports = [check_torsion(d, 1 / 32) for d in (SQUARE, DISK, horn)]
    text = "; ".join(f"P={r.lhs:.4f} <= {r.rhs:.4f} {r.verdict}" for r in reports)
    note(record_property, text)
    assert verdicts_ok(reports)


@pytest.mark.criterion(8)
def test_c08_spectral_gap_and_sup_torsion(record_property):
    reports = [check_spectral_gap(SQUARE, 1 / 32), check_spectral_gap(DISK, 1 / 32), check_sup_torsion(SQUARE, 1 / 32)]
    text = "; ".join(f"{r.bound_id}: {r.lhs:.4f} <= {r.rhs:.4f} {r.verdict}" for r in reports)
    note(record_property, text)
    assert [r.bound_id for r in reports] == ["eq72", "eq72", "lem9"] and verdicts_ok(reports)


@pytest.mark.criterion(9)
def test_c09_trace_bound_square(record_property):
    h = 1 / 64
    assert build_grid(SQUARE, h).n_active <= 4096
    reports = check_trace(SQUARE, [0.05, 0.1, 0.2], h)
    text = "; ".join(f"t={r.inputs['t']}: {r.lhs:.4f} <= {r.rhs:.4f} {r.verdict}" for r in reports)
    note(record_property, text)
    assert verdicts_ok(reports)


@pytest.mark.criterion(10)
def test_c10_horn_sharpness(record_property):
    lines, ok = [], True
    for name in ("horn_alpha_0.5.json", "horn_alpha_0.75.json"):
        cfg = json.loads((CONFIGS / name).read_text())
        ts = np.geomspace(cfg["t"]["min"], cfg["t"]["max"], cfg["t"]["points"])
        for alpha in cfg["alphas"]:
            t0 = time.perf_counter()
            row = exponent_row(alpha, cfg["truncation"], cfg["h"], ts, cfg.get("t_window"))
            elapsed = time.perf_counter() - t0
            ok &= row.gap <= 0.08 and elapsed < 600
            lines.append(f"alpha={alpha}: fitted {row.fitted:.4f} vs {row.predicted:.4f}, gap {row.gap:.3f} (tol 0.08), {elapsed:.0f} s")
    note(record_property, "; ".join(lines))
    assert ok


def _random_interior(domain, n, rng):
    box = domain.bbox
    pts = np.empty((0, domain.dim))
    while len(pts) < n:
        cand = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((4 * n, domain.dim))
        pts = np.concatenate([pts, cand[domain.contains(cand)]])
    return pts[:n]


@pytest.mark.criterion(11)
def test_c11_property_suites(record_property):
    rng = np.random.default_rng(2024)
    kinds = {
        "interval": Box([1.0]),
        "rectangle": Box([2.0, 1.0]),
        "disk": DISK,
        "convex-polygon": ConvexPolygon([[0, 0], [2, 0], [2.5, 1], [1, 2], [-0.5, 1]]),
        "horn": Horn(1.0, 10.0),
    }
    failures = []
    for name, d in kinds.items():
        pts = _random_interior(d, 1000, rng)
        if not np.all(mean_distance(d, pts) >= boundary_distance(d, pts) * (1 - 1e-12)):
            failures.append(f"rho>=delta {name}")
    for name, d in kinds.items():
        state = {"ok": True}

        def check(t, u, state=state):
            state["ok"] &= bool(u.min() >= 0.0 and u.max() <= 1.0)

        c = heat_content(build_grid(d, 1 / 16), np.geomspace(1e-3, 1.0, 10), on_step=check)
        if not state["ok"]:
            failures.append(f"0<=u<=1 {name}")
        if not np.all(np.diff(c.q) <= 0):
            failures.append(f"Q monotone {name}")
    q = sphere_quadrature(2, 128)
    for name in ("rectangle", "disk", "convex-polygon"):
        d = kinds[name]
        pts = _random_interior(d, 100, rng)
        for lam in (0.5, 2.0):
            ds = d.scaled(lam)
            if not np.allclose(boundary_distance(ds, lam * pts), lam * boundary_distance(d, pts), rtol=1e-10):
                failures.append(f"delta scaling {name} {lam}")
            if not np.allclose(mean_distance(ds, lam * pts, q), lam * mean_distance(d, pts, q), rtol=1e-10):
                failures.append(f"rho scaling {name} {lam}")
            for which, beta in (("delta", 1.0), ("rho", 2.0)):
                m = moment_integral(d, which, beta, 1 / 32, q).value
                ms = moment_integral(ds, which, beta, lam / 32, q).value
                if not math.isclose(ms, lam ** (2 + beta) * m, rel_tol=1e-10):
                    failures.append(f"moment scaling {name} {which} {lam}")
    worst = 0.0
    for m in (1, 2, 3):
        params = HardyParameters(2.0, m / 4.0, "rho-form", m)
        for beta in np.linspace(0.08, 4.0, 50):
            got = decay_bound_rhs(params, beta, 1.0, 1.0)
            worst = max(worst, abs(got / rho_form_decay_coefficient(m, beta) - 1))
        for t in (1e-3, 0.1, 1.0):
            eps = cooling_bound_rhs(params, 1.0, lambda e: 0.0, t)[1]
            worst = max(worst, abs(eps / math.sqrt(m * t / 2) - 1))
    if worst > 1e-12:
        failures.append(f"reduction identities {worst:.1e}")
    note(record_property, f"failures: {failures or 'none'}; reduction max rel dev {worst:.1e}")
    assert not failures


@pytest.mark.criterion(12)
def test_c12_determinism(record_property, tmp_path):
    cfg = {
        "domain": {"kind": "disk", "radius": 1.0},
        "h": 0.0625,
        "t": {"min": 0.001, "max": 1.0, "points": 6},
        "bounds": ["thm1", "thm2", "thm6", "eq72", "lem9"],
        "quadrature": 128,
        "seed": 11,
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    same = []
    for command, files in (("verify", ["bounds.csv"]), ("heat", ["q_curve.csv"]), ("rho-field", ["rho_field.csv"])):
        outs = []
        for k in range(2):
            out = tmp_path / f"{command}{k}"
            res = subprocess.run(
                [sys.executable, "-m", "hardyheat.cli.main", command, "--config", str(path), "--out", str(out),
                 "--seed", "11"],
                capture_output=True, text=True,
            )
            assert res.returncode == 0, res.stderr
            outs.append(out)
        same += [(outs[0] / f).read_bytes() == (outs[1] / f).read_bytes() for f in files]
    note(record_property, f"{sum(same)}/{len(same)} CSV outputs byte-identical across processes")
    assert all(same)
