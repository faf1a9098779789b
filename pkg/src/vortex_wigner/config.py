"""Flat ``key = value`` run configuration.

Recognised keys::

    mass, sigma_over_m, pbar_over_m, ell, n_r,
    oracle.order, oracle.kspan, tolerances.<name>

Blank lines and ``#`` comments are ignored.  ``serialize`` writes every key
in a fixed order with ``repr`` floats, so ``parse(serialize(c)) == c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .kinematics import PacketSpec


class ConfigError(ValueError):
    """Malformed configuration text or an out-of-range value."""


@dataclass(frozen=True)
class RunConfig:
    mass: float = 1.0
    sigma_over_m: float = 0.01
    pbar_over_m: float = 0.0
    ell: int = 0
    n_r: int = 0
    oracle_order: int = 48
    oracle_kspan: float = 10.0
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("mass", "sigma_over_m", "oracle_kspan"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"{_key(name)} must be positive and finite, got {v!r}")
        if not math.isfinite(self.pbar_over_m):
            raise ConfigError(f"pbar_over_m must be finite, got {self.pbar_over_m!r}")
        if self.n_r < 0:
            raise ConfigError(f"n_r must be >= 0, got {self.n_r}")
        if self.oracle_order < 2:
            raise ConfigError(f"oracle.order must be >= 2, got {self.oracle_order}")
        for k, v in self.tolerances.items():
            if not (isinstance(v, float) and math.isfinite(v) and v >= 0):
                raise ConfigError(f"tolerances.{k} must be a non-negative float, got {v!r}")

    def packet(self) -> PacketSpec:
        try:
            return PacketSpec.from_ratios(self.sigma_over_m, self.pbar_over_m, self.ell,
                                          self.n_r, self.mass)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


_TYPES = {"mass": float, "sigma_over_m": float, "pbar_over_m": float, "ell": int,
          "n_r": int, "oracle_order": int, "oracle_kspan": float}


def _key(attr: str) -> str:
    return attr.replace("oracle_", "oracle.")


def _attr(key: str) -> str:
    return key.replace("oracle.", "oracle_")


def _convert(key, text, kind):
    try:
        if kind is int:
            return int(text)
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {text!r}") from None


def parse(text: str) -> RunConfig:
    values, tols = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("tolerances."):
            name = key[len("tolerances."):]
            if not name or name in tols:
                raise ConfigError(f"line {lineno}: bad or duplicate key {key!r}")
            tols[name] = _convert(key, value, float)
            continue
        attr = _attr(key)
        if attr not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if attr in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[attr] = _convert(key, value, _TYPES[attr])
    return RunConfig(**values, tolerances=tols)


def serialize(cfg: RunConfig) -> str:
    lines = []
    for f in fields(cfg):
        if f.name == "tolerances":
            continue
        lines.append(f"{_key(f.name)} = {getattr(cfg, f.name)!r}")
    for name in sorted(cfg.tolerances):
        lines.append(f"tolerances.{name} = {cfg.tolerances[name]!r}")
    return "\n".join(lines) + "\n"


def load(path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ConfigError(f"config {path} is not UTF-8 text") from None
    return parse(text)
