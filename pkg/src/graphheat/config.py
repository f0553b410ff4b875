"""Experiment configuration in a small ``key = value`` text format."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .suites import SUITES


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    suites: tuple[str, ...] = tuple(SUITES)
    seed: int = 0
    out_dir: str = "reports"
    graph: str | None = None  # optional extra graph checked by the "graph" suite
    anchor: int = 0
    metric: str = "degree"
    gamma: float = 0.5  # anti-tree family of the ratio suite
    t_grid: tuple[float, float, float] = (10368.0, 80000.0, math.sqrt(2.0))
    n: float | None = None  # None means 2d
    tol: float = 1e-9

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")
        if self.metric not in ("degree", "combinatorial"):
            raise ConfigError(f"unknown metric kind {self.metric!r}")
        a, b, ratio = self.t_grid
        if not (0 < a <= b and ratio > 1):
            raise ConfigError("t_grid needs 0 < start <= stop and ratio > 1")
        if not 0 <= self.gamma < 2:
            raise ConfigError("gamma must lie in [0, 2)")
        if self.n is not None and not self.n > 2:
            raise ConfigError("n must exceed 2")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.anchor < 0:
            raise ConfigError("anchor must be a vertex index")


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, tuple):
        if not value:
            return "none"
        return ",".join(_fmt(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None


def parse_t_grid(text: str) -> tuple[float, float, float]:
    """``start:stop[:ratio]`` (colons) or ``start,stop,ratio``."""
    parts = text.replace(":", ",").split(",")
    if len(parts) not in (2, 3):
        raise ConfigError(f"bad time grid {text!r}")
    vals = [_parse_float(p) for p in parts]
    if len(vals) == 2:
        vals.append(math.sqrt(2.0))
    return tuple(vals)


_PARSERS = {
    "suites": lambda v: tuple(s for s in (x.strip() for x in v.split(",")) if s and s != "none"),
    "seed": _parse_int,
    "out_dir": str,
    "graph": lambda v: None if v == "none" else v,
    "anchor": _parse_int,
    "metric": str,
    "gamma": _parse_float,
    "t_grid": parse_t_grid,
    "n": lambda v: None if v == "none" else _parse_float(v),
    "tol": _parse_float,
}


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _PARSERS[key](val)
    return replace(base or ExperimentConfig(), **values)


def canonical(cfg: ExperimentConfig) -> str:
    return "".join(f"{f.name} = {_fmt(getattr(cfg, f.name))}\n" for f in fields(cfg))


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    return parse_config(text)


def override(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    """Apply flag overrides, ignoring those left unset (None)."""
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
