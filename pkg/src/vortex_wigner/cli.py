"""``vortex-wigner`` command-line driver.

Exit codes: 0 success (all checks pass), 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, load
from .grid import (COLUMNS, GridError, evaluate_grid, parse_grid, sidecar, sidecar_path,
                   write_csv, write_sidecar)
from .kinematics import ParaxialityError, ParaxialityWarning, PhasePoint
from .observables import mean_pperp, mean_radius
from .parallel import pmap
from .oracle import OracleError, OracleSettings, marginal_numeric, oracle_batch
from .verify import SUITES, run_suites
from .wigner import WignerForm, marginal_p_alt, marginal_p_closed, marginal_x_closed, wigner_closed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMS = [f.value for f in WignerForm]


class UsageError(Exception):
    pass


def _add_packet_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("packet (overrides config keys)")
    g.add_argument("--config", type=Path, help="flat key = value config file")
    g.add_argument("--mass", type=float)
    g.add_argument("--sigma-over-m", type=float, dest="sigma_over_m")
    g.add_argument("--pbar-over-m", type=float, dest="pbar_over_m")
    g.add_argument("--ell", type=int)
    g.add_argument("--n-r", type=int, dest="n_r")
    g.add_argument("--threads", type=int, help="worker threads (capped by VORTEX_WIGNER_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vortex-wigner",
                                     description="Wigner functions of vortex wave packets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="closed-form Wigner function on a grid -> CSV + JSON")
    _add_packet_flags(p)
    p.add_argument("--form", choices=FORMS, default="momentum")
    p.add_argument("--grid", required=True,
                   help="e.g. 'rho:0:3:41,p_perp:0:3:41,z=0'; rho, z in 1/sigma, "
                        "p_perp and p_z - pbar in sigma, t in t_d")
    p.add_argument("--out", type=Path, required=True, help="CSV path; sidecar gets .json")
    p.add_argument("--velocity", choices=["mean", "local"], default="mean")

    p = sub.add_parser("oracle", help="brute-force Wigner integral on a grid -> CSV")
    _add_packet_flags(p)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--form", choices=FORMS, default="momentum",
                   help="closed form written next to the oracle value")
    p.add_argument("--kind", choices=["scalar", "dirac_conjugate", "hermitian_conjugate"],
                   default="scalar")
    p.add_argument("--spin", choices=["up", "down"], default="up")

    p = sub.add_parser("marginal", help="numerical vs closed-form marginal at one point")
    _add_packet_flags(p)
    p.add_argument("--which", choices=["over_x", "over_p"], required=True)
    p.add_argument("--at", required=True,
                   help="Cartesian 'x,y,z' in natural units: a momentum for over_x, "
                        "a position for over_p")
    p.add_argument("--form", choices=FORMS + ["oracle"], default="momentum")
    p.add_argument("--out", type=Path, help="JSON path (default: stdout)")

    p = sub.add_parser("observables", help="<rho>, <p_perp> and their product over ell -> CSV")
    _add_packet_flags(p)
    p.add_argument("--ells", default="0:10",
                   help="'lo:hi' inclusive range or comma list, e.g. '0,1,5,40'")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("verify", help="run verification suites -> JSON report")
    _add_packet_flags(p)
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"],
                   help="repeatable; default all")
    p.add_argument("--report", type=Path, help="JSON report path (default: stdout)")
    return parser


def _config(args) -> RunConfig:
    cfg = load(args.config) if args.config else RunConfig()
    return cfg.with_(mass=args.mass, sigma_over_m=args.sigma_over_m,
                     pbar_over_m=args.pbar_over_m, ell=args.ell, n_r=args.n_r)


def _writable(path: Path) -> None:
    parent = path.resolve().parent
    if not parent.is_dir():
        raise UsageError(f"output directory {parent} does not exist")


def _open_out(path: Path):
    try:
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_eval(args) -> int:
    cfg = _config(args)
    spec = cfg.packet()
    grid = parse_grid(args.grid)
    _writable(args.out)
    rows = evaluate_grid(spec, grid, args.form, threads=args.threads, velocity=args.velocity)
    with _open_out(args.out) as fh:
        write_csv(fh, rows)
    write_sidecar(sidecar_path(args.out), sidecar(spec, grid, args.form,
                                                  {"velocity": args.velocity}))
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = _config(args)
    spec = cfg.packet()
    grid = parse_grid(args.grid)
    _writable(args.out)
    if grid.size > 10_000:
        raise UsageError(f"oracle grids are limited to 10000 points, got {grid.size}")
    coords = grid.coordinates(spec)
    pts = [PhasePoint(*c) for c in coords]
    settings = OracleSettings(order=cfg.oracle_order, kspan=cfg.oracle_kspan)
    failed = 0

    def one(pt):
        try:
            return oracle_batch(spec, [pt], settings, args.kind, args.spin, threads=1)[0]
        except OracleError:
            return None

    results = pmap(one, pts, args.threads)
    with _open_out(args.out) as fh:
        fh.write(",".join(COLUMNS + ("value", "error", "closed")) + "\n")
        for c, pt, res in zip(coords, pts, results):
            closed = float(wigner_closed(spec, pt, args.form))
            if res is None:
                failed += 1
                value, err = math.nan, math.nan
            else:
                value, err = res.value, res.error
            fh.write(",".join(repr(float(v)) for v in (*c, value, err, closed)) + "\n")
    if failed:
        print(f"oracle did not converge at {failed} point(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise UsageError(f"expected 'x,y,z', got {text!r}") from None
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise UsageError(f"expected three finite numbers, got {text!r}")
    return v


def cmd_marginal(args) -> int:
    spec = _config(args).packet()
    at = _vector(args.at)
    numeric = marginal_numeric(spec, args.which, at, source=args.form)
    if args.which == "over_x":
        closed = {"momentum_density": float(marginal_x_closed(spec, at))}
    else:
        closed = {"momentum_form": float(marginal_p_closed(spec, at)),
                  "position_density": float(marginal_p_alt(spec, at))}
    result = {"which": args.which, "at": at.tolist(), "source": args.form,
              "numeric": numeric, "closed": closed}
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.out:
        _writable(args.out)
        with _open_out(args.out) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _ells(text: str) -> list:
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --ells {text!r}; use 'lo:hi' or a comma list") from None


def cmd_observables(args) -> int:
    cfg = _config(args)
    ells = _ells(args.ells)
    _writable(args.out)
    rows = []
    for ell in ells:
        spec = cfg.with_(ell=ell).packet()
        mr, mp = mean_radius(spec), mean_pperp(spec)
        rows.append((ell, mr, mp, mr * mp, mr * mp / abs(ell) if ell else math.nan))
    with _open_out(args.out) as fh:
        fh.write("ell,mean_rho,mean_pperp,product,product_per_ell\n")
        for ell, *vals in rows:
            fh.write(",".join([str(ell)] + [repr(float(v)) for v in vals]) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    cfg.packet()
    if args.report:
        _writable(args.report)
    names = args.suite or ["all"]
    report = run_suites(list(SUITES) if "all" in names else names, cfg)
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.report:
        with _open_out(args.report) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in report.records:
        print(f"{r.status.upper():4s} {r.check_id}  measured={r.measured:.3e}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"eval": cmd_eval, "oracle": cmd_oracle, "marginal": cmd_marginal,
            "observables": cmd_observables, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", ParaxialityWarning)
            return COMMANDS[args.command](args)
    except (ConfigError, GridError, UsageError, ParaxialityError) as exc:
        print(f"vortex-wigner: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
