"""Strict JSON experiment configuration."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError

TOP_KEYS = {
    "domain", "h", "refine", "t", "bounds", "betas", "quadrature", "seed", "out",
    "schedule", "trace_h", "trace_t", "alphas", "truncation", "t_window",
}
T_KEYS = {"min", "max", "points"}


@dataclass
class TimeGrid:
    t_min: float
    t_max: float
    points: int

    def samples(self) -> np.ndarray:
        return np.geomspace(self.t_min, self.t_max, self.points)


@dataclass
class ExperimentConfig:
    domain: dict | None
    h: float
    refine: int = 1
    t: TimeGrid = field(default_factory=lambda: TimeGrid(1e-3, 1.0, 20))
    bounds: list = field(default_factory=list)
    betas: list = field(default_factory=lambda: [1.0, 2.0, 4.0])
    quadrature: int | None = None
    seed: int = 0
    out: str = "out"
    schedule: str = "constant"
    trace_h: float | None = None
    trace_t: list = field(default_factory=lambda: [0.05, 0.1, 0.2])
    alphas: list = field(default_factory=list)
    truncation: float = 100.0
    t_window: list | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["t"] = {"min": self.t.t_min, "max": self.t.t_max, "points": self.t.points}
        return d


def _num(d, key, kind=float, positive=True):
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key!r} must be a number")
    v = kind(v)
    if kind is int and v != d[key]:
        raise ConfigError(f"{key!r} must be an integer")
    if positive and not v > 0:
        raise ConfigError(f"{key!r} must be positive")
    return v


def parse_config(d: dict) -> ExperimentConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(d) - TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "h" not in d:
        raise ConfigError("config needs 'h'")
    cfg = ExperimentConfig(domain=d.get("domain"), h=_num(d, "h"))
    if cfg.domain is not None and not isinstance(cfg.domain, dict):
        raise ConfigError("'domain' must be an object")
    if "refine" in d:
        cfg.refine = _num(d, "refine", int)
    if "t" in d:
        t = d["t"]
        if not isinstance(t, dict) or set(t) != T_KEYS:
            raise ConfigError(f"'t' must have exactly the keys {sorted(T_KEYS)}")
        grid = TimeGrid(_num(t, "min"), _num(t, "max"), _num(t, "points", int))
        if grid.t_min >= grid.t_max:
            raise ConfigError("t.min must be below t.max")
        if grid.points < 2:
            raise ConfigError("t.points must be at least 2")
        cfg.t = grid
    for key in ("bounds", "betas", "trace_t", "alphas"):
        if key in d:
            if not isinstance(d[key], list):
                raise ConfigError(f"{key!r} must be a list")
            setattr(cfg, key, list(d[key]))
    for key in ("betas", "trace_t", "alphas"):
        vals = getattr(cfg, key)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals):
            raise ConfigError(f"{key!r} must hold numbers")
        setattr(cfg, key, [float(v) for v in vals])
    if "quadrature" in d and d["quadrature"] is not None:
        cfg.quadrature = _num(d, "quadrature", int)
    if "seed" in d:
        cfg.seed = _num(d, "seed", int, positive=False)
        if cfg.seed < 0:
            raise ConfigError("'seed' must be nonnegative")
    if "out" in d:
        cfg.out = str(d["out"])
    if "schedule" in d:
        if d["schedule"] not in ("constant", "geometric"):
            raise ConfigError("'schedule' must be 'constant' or 'geometric'")
        cfg.schedule = d["schedule"]
    if d.get("trace_h") is not None:
        cfg.trace_h = _num(d, "trace_h")
    if "truncation" in d:
        cfg.truncation = _num(d, "truncation")
    if d.get("t_window") is not None:
        w = d["t_window"]
        if not (isinstance(w, list) and len(w) == 2 and 0 < w[0] < w[1]):
            raise ConfigError("'t_window' must be [lo, hi] with 0 < lo < hi")
        cfg.t_window = [float(w[0]), float(w[1])]
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config(data)
