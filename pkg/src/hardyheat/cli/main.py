"""``hardyheat`` command line: heat, torsion, rho-field, verify, horn, eigen."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .. import io
from ..bounds.checks import heat_estimates, resolution_levels, run_checks
from ..bounds.horn import exponent_row
from ..bounds.report import BOUND_IDS
from ..errors import CapacityError, ConfigError, HardyHeatError, NumericalError
from ..geometry.domains import Horn, make_domain
from ..geometry.functionals import field_values
from ..geometry.quadrature import sphere_quadrature
from ..pde.grid import build_grid
from ..pde.spectral import DENSE_CAP, heat_trace, principal_eigenvalue
from ..pde.torsion import torsion
from .config import ExperimentConfig, load_config

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _domain(cfg: ExperimentConfig):
    if cfg.domain is None:
        raise ConfigError("this command needs a 'domain'")
    return make_domain(cfg.domain)


def _quad(cfg, domain):
    return sphere_quadrature(domain.dim, cfg.quadrature) if cfg.quadrature else None


def _emit(out: Path, name: str, cfg: ExperimentConfig, command: str) -> None:
    """Metadata JSON next to each output file, echoing the resolved config."""
    io.write_json(out / f"{name}.meta.json", {"command": command, "file": name, "config": cfg.to_dict()})


def cmd_heat(cfg: ExperimentConfig, out: Path) -> list[str]:
    domain = _domain(cfg)
    ts = cfg.t.samples()
    est = heat_estimates(domain, ts, cfg.h, cfg.refine, cfg.schedule)
    tail = domain.tail_volume if isinstance(domain, Horn) else 0.0
    q = np.array([e.value for e in est])
    err = np.array([e.err + tail for e in est])
    io.write_curve_csv(out / "q_curve.csv", ts, q, err)
    io.svg_loglog(out / "q_curve.svg", [("Q(t)", ts, q)], title=f"heat content, {domain.kind}", ylabel="Q")
    return ["q_curve.csv", "q_curve.svg"]


def cmd_torsion(cfg: ExperimentConfig, out: Path) -> list[str]:
    domain = _domain(cfg)
    results = [torsion(build_grid(domain, hh)) for hh in resolution_levels(cfg.h, cfg.refine)]
    fine = results[-1]
    summary = {
        "rigidity": fine.rigidity,
        "rigidity_err": abs(fine.rigidity - results[-2].rigidity),
        "sup_norm": fine.sup_norm,
        "sup_norm_err": abs(fine.sup_norm - results[-2].sup_norm),
        "h": fine.field.grid.h,
        "n_active": fine.field.grid.n_active,
    }
    io.write_json(out / "torsion.json", summary)
    io.write_field_csv(out / "torsion_field.csv", fine.field.grid.points, fine.field.values, "w")
    return ["torsion.json", "torsion_field.csv"]


def cmd_rho_field(cfg: ExperimentConfig, out: Path) -> list[str]:
    domain = _domain(cfg)
    grid = build_grid(domain, cfg.h)
    quad = _quad(cfg, domain)
    pts = grid.points
    delta = field_values(domain, pts, "delta")
    rho = field_values(domain, pts, "rho", quad)
    io.write_csv(
        out / "rho_field.csv",
        [f"x{i + 1}" for i in range(domain.dim)] + ["delta", "rho"],
        (list(p) + [d, r] for p, d, r in zip(pts.tolist(), delta.tolist(), rho.tolist())),
    )
    return ["rho_field.csv"]


def cmd_verify(cfg: ExperimentConfig, out: Path) -> list[str]:
    if not cfg.bounds:
        raise ConfigError("'bounds' must list at least one bound id")
    bad = [b for b in cfg.bounds if b not in BOUND_IDS or b == "horn-exponent"]
    if bad:
        raise ConfigError(f"unknown or non-end-to-end bound ids: {bad}")
    domain = _domain(cfg)
    reports = run_checks(
        domain, cfg.bounds, ts=cfg.t.samples(), betas=cfg.betas, h=cfg.h, refine=cfg.refine,
        quad=_quad(cfg, domain), trace_ts=cfg.trace_t, trace_h=cfg.trace_h,
    )
    io.write_reports_csv(out / "bounds.csv", reports)
    io.write_json(out / "bounds.json", [r.to_dict() for r in reports])
    return ["bounds.csv", "bounds.json"]


def cmd_horn(cfg: ExperimentConfig, out: Path) -> list[str]:
    if not cfg.alphas:
        raise ConfigError("'alphas' must list at least one exponent")
    ts = cfg.t.samples()
    rows = []
    for alpha in cfg.alphas:
        if not alpha > 0:
            raise ConfigError(f"alpha must be positive, got {alpha}")
        r = exponent_row(alpha, cfg.truncation, cfg.h, ts, cfg.t_window, schedule="geometric")
        if r.status != "ok":
            print(json.dumps({"warning": r.status, "alpha": alpha}), file=sys.stderr)
        rows.append([r.alpha, r.fitted, r.stderr, r.predicted, r.gap, r.observable, r.status])
    header = ["alpha", "fitted", "stderr", "predicted", "gap", "observable", "status"]
    io.write_csv(out / "exponents.csv", header, rows)
    return ["exponents.csv"]


def cmd_eigen(cfg: ExperimentConfig, out: Path) -> list[str]:
    domain = _domain(cfg)
    levels = resolution_levels(cfg.h, cfg.refine)
    lams = [principal_eigenvalue(build_grid(domain, hh)) for hh in levels]
    io.write_json(out / "eigen.json", {"eigenvalue": lams[-1], "eigenvalue_err": abs(lams[-1] - lams[-2]),
                                       "h": levels[-1]})
    files = ["eigen.json"]
    trace_h = cfg.trace_h or cfg.h
    g = build_grid(domain, trace_h)
    if g.n_active <= DENSE_CAP:
        coarse = build_grid(domain, 2 * trace_h)
        ts = np.asarray(cfg.trace_t)
        tr, trc = heat_trace(g, ts), heat_trace(coarse, ts)
        io.write_curve_csv(out / "trace.csv", ts, tr, np.abs(tr - trc))
        files.append("trace.csv")
    return files


COMMANDS = {
    "heat": cmd_heat,
    "torsion": cmd_torsion,
    "rho-field": cmd_rho_field,
    "verify": cmd_verify,
    "horn": cmd_horn,
    "eigen": cmd_eigen,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hardyheat", description="Heat content, torsion and Hardy-type bound checks.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", required=True, help="JSON experiment config")
        s.add_argument("--out", help="output directory (overrides the config)")
        s.add_argument("--seed", type=int, help="RNG seed (overrides the config)")
        s.add_argument("--refine", type=int, help="number of halvings of h for error margins")
    return p


def _fail(code: int, kind: str, exc: Exception) -> int:
    print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.out is not None:
            cfg.out = args.out
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed must be nonnegative")
            cfg.seed = args.seed
        if args.refine is not None:
            if args.refine < 1:
                raise ConfigError("refine must be at least 1")
            cfg.refine = args.refine
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        files = COMMANDS[args.command](cfg, out)
        for name in files:
            _emit(out, name, cfg, args.command)
    except (NumericalError, CapacityError) as exc:
        return _fail(EXIT_NUMERIC, "numerical", exc)
    except (ConfigError, HardyHeatError, ValueError) as exc:
        return _fail(EXIT_CONFIG, "config", exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
