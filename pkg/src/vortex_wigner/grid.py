"""Phase-space grids: parsing, chunked evaluation and CSV/JSON export.

A grid is written as comma-separated items, ``var:min:max:count`` for an
axis and ``var=value`` for a fixed coordinate, for example
``rho:0:3:41,p_perp:0:3:41,z=0.5``.  Values are in packet units:

* ``rho``, ``z``: multiples of ``sigma_perp(0) = 1/sigma``
* ``p_perp``: multiples of ``sigma``
* ``p_z``: offset from ``pbar`` in multiples of ``sigma``
* ``t``: multiples of ``t_d``
* ``phi_r``, ``phi_p`` (fixed only): radians

Exported coordinates are in natural units (lengths in ``1/m``, momenta in ``m``).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .kinematics import PacketSpec, PhasePoint
from .parallel import pmap
from .wigner import WignerForm, wigner_closed

AXIS_VARS = ("rho", "z", "p_perp", "p_z", "t")
FIXED_VARS = AXIS_VARS + ("phi_r", "phi_p")
COLUMNS = ("rho", "phi_r", "z", "p_perp", "phi_p", "p_z", "t")
HEADER = ",".join(COLUMNS + ("value",))


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    var: str
    lo: float
    hi: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 3:
            raise GridError(f"a grid needs 1 to 3 axes, got {len(self.axes)}")
        names = [a.var for a in self.axes]
        if len(set(names)) != len(names):
            raise GridError(f"repeated axis in {names}")
        for a in self.axes:
            if a.var not in AXIS_VARS:
                raise GridError(f"unknown axis {a.var!r}; choose from {AXIS_VARS}")
            if a.count < 2:
                raise GridError(f"axis {a.var}: count must be >= 2, got {a.count}")
            if not (math.isfinite(a.lo) and math.isfinite(a.hi) and a.lo < a.hi):
                raise GridError(f"axis {a.var}: need finite min < max, got {a.lo}, {a.hi}")
        for k, v in self.fixed.items():
            if k not in FIXED_VARS:
                raise GridError(f"unknown fixed variable {k!r}; choose from {FIXED_VARS}")
            if k in names:
                raise GridError(f"{k!r} is both an axis and a fixed value")
            if not math.isfinite(v):
                raise GridError(f"fixed {k} must be finite")
        for a in self.axes:
            if a.var in ("rho", "p_perp") and a.lo < 0:
                raise GridError(f"axis {a.var} is a radius and must be >= 0")
        for k in ("rho", "p_perp"):
            if self.fixed.get(k, 0.0) < 0:
                raise GridError(f"fixed {k} is a radius and must be >= 0")

    @property
    def shape(self) -> tuple:
        return tuple(a.count for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def describe(self) -> str:
        items = [f"{a.var}:{a.lo!r}:{a.hi!r}:{a.count}" for a in self.axes]
        items += [f"{k}={v!r}" for k, v in sorted(self.fixed.items())]
        return ",".join(items)

    def to_dict(self) -> dict:
        return {"axes": [{"var": a.var, "min": a.lo, "max": a.hi, "count": a.count}
                         for a in self.axes],
                "fixed": dict(sorted(self.fixed.items())),
                "units": {"rho": "1/sigma", "z": "1/sigma", "p_perp": "sigma",
                          "p_z": "sigma, offset from pbar", "t": "t_d",
                          "phi_r": "rad", "phi_p": "rad"}}

    def coordinates(self, spec: PacketSpec) -> np.ndarray:
        """Natural-unit columns ``COLUMNS`` for every grid point, first axis slowest."""
        scaled = {k: np.full(self.shape, float(self.fixed.get(k, 0.0))) for k in FIXED_VARS}
        mesh = np.meshgrid(*(a.values() for a in self.axes), indexing="ij")
        for a, m in zip(self.axes, mesh):
            scaled[a.var] = m
        s = spec.sigma
        cols = {
            "rho": scaled["rho"] / s,
            "phi_r": scaled["phi_r"],
            "z": scaled["z"] / s,
            "p_perp": scaled["p_perp"] * s,
            "phi_p": scaled["phi_p"],
            "p_z": spec.pbar + scaled["p_z"] * s,
            "t": scaled["t"] * spec.t_d,
        }
        return np.stack([cols[c].ravel() for c in COLUMNS], axis=-1)


def parse_grid(text: str) -> GridSpec:
    axes, fixed = [], {}
    if not text or not text.strip():
        raise GridError("empty grid")
    for item in text.split(","):
        item = item.strip()
        try:
            if "=" in item:
                k, v = item.split("=", 1)
                k = k.strip()
                if k in fixed:
                    raise GridError(f"duplicate fixed value {k!r}")
                fixed[k] = float(v)
            else:
                parts = item.split(":")
                if len(parts) != 4:
                    raise GridError(f"axis item must be var:min:max:count, got {item!r}")
                axes.append(Axis(parts[0].strip(), float(parts[1]), float(parts[2]),
                                 int(parts[3])))
        except ValueError as exc:
            if isinstance(exc, GridError):
                raise
            raise GridError(f"cannot parse grid item {item!r}") from None
    return GridSpec(tuple(axes), fixed)


def evaluate_grid(spec: PacketSpec, grid: GridSpec, form=WignerForm.MOMENTUM,
                  threads=None, chunk: int = 4096, **form_kwargs) -> np.ndarray:
    """Rows ``(*COLUMNS, value)`` in grid order.

    Chunks are evaluated independently on a thread pool and concatenated in
    order, so the result does not depend on ``threads`` or ``chunk``.
    """
    form = WignerForm(form)
    coords = grid.coordinates(spec)
    bounds = [(i, min(i + chunk, len(coords))) for i in range(0, len(coords), chunk)]

    def run(b):
        c = coords[b[0]:b[1]]
        pt = PhasePoint(c[:, 0], c[:, 1], c[:, 2], c[:, 3], c[:, 4], c[:, 5], c[:, 6])
        return np.asarray(wigner_closed(spec, pt, form, **form_kwargs), dtype=float).reshape(-1)

    values = np.concatenate(pmap(run, bounds, threads))
    return np.column_stack([coords, values])


def write_csv(stream, rows) -> None:
    stream.write(HEADER + "\n")
    for row in rows:
        stream.write(",".join(repr(float(v)) for v in row) + "\n")


def sidecar(spec: PacketSpec, grid: GridSpec, form, extra=None) -> dict:
    meta = {
        "packet": {"mass": spec.mass, "sigma": spec.sigma, "pbar": spec.pbar,
                   "ell": spec.ell, "n_r": spec.n_r,
                   "sigma_over_m": spec.sigma_over_m, "t_d": spec.t_d, "ebar": spec.ebar},
        "form": WignerForm(form).value,
        "grid": {**grid.to_dict(), "spec": grid.describe()},
        "version": __version__,
    }
    if extra:
        meta.update(extra)
    return meta


def sidecar_path(csv_path):
    """``out.csv`` -> ``out.json``; any other name gets ``.json`` appended."""
    csv_path = Path(csv_path)
    if csv_path.suffix == ".csv":
        return csv_path.with_suffix(".json")
    return csv_path.with_name(csv_path.name + ".json")


def write_sidecar(path, meta: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
