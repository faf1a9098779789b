"""Radial moments of the packet and the ``<rho> <p_perp> ~ |ell|`` estimate."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinematics import PacketSpec
from .specfun import quad_nodes
from .wavepacket import amp_momentum, amp_position
from .wigner import marginal_p_alt, marginal_p_closed, marginal_x_closed

X_SOURCES = ("x_density", "position_form", "momentum_form")
P_SOURCES = ("p_density", "momentum_form", "position_form")


def _radial_moment(density, scale, power, a, order=64):
    """``<s**power>`` for a cylindrical density ``density(s, zeta)``.

    ``s = radius / scale``; ``zeta`` is the longitudinal Hermite node.  The
    radial integral runs in ``u = s**2`` against ``u**alpha exp(-u)`` with
    ``alpha = |ell| + power/2``, so a Laguerre-Gaussian density is integrated
    exactly.
    """
    zr = quad_nodes("hermite", 16)
    zeta = zr.nodes[None, :]
    zw = zr.weights * np.exp(zr.nodes**2)

    def integral(alpha, extra):
        rule = quad_nodes("laguerre", order, alpha)
        u = rule.nodes[:, None]
        f = density(np.sqrt(u), zeta) * u ** (extra / 2.0)
        unweight = np.exp(u - alpha * np.log(u))
        return np.sum(rule.weights[:, None] * zw[None, :] * f * unweight)

    num = integral(a + power / 2.0, power)
    den = integral(float(a), 0)
    return float(num / den) * scale**power


def mean_radius(spec: PacketSpec, source: str = "x_density", order: int = 64) -> float:
    """Mean beam radius ``<rho>`` at ``t = 0`` under the chosen position density.

    ``x_density`` is ``2 ebar |Psi(r, 0)|^2``; ``position_form`` and
    ``momentum_form`` use the position marginals of the two Wigner forms.
    """
    a = spec.abs_ell
    lz = spec.mass / (spec.ebar * spec.sigma)

    def cart(s, zeta):
        rho = s / spec.sigma
        return np.stack(np.broadcast_arrays(rho, 0.0 * rho, zeta * lz), axis=-1)

    if source == "x_density":
        dens = lambda s, zeta: 2.0 * spec.ebar * amp_position(spec, cart(s, zeta), 0.0).modulus2  # noqa: E731
    elif source == "position_form":
        dens = lambda s, zeta: marginal_p_alt(spec, cart(s, zeta))  # noqa: E731
    elif source == "momentum_form":
        dens = lambda s, zeta: marginal_p_closed(spec, cart(s, zeta))  # noqa: E731
        a = 0
    else:
        raise ValueError(f"unknown position source {source!r}; choose from {X_SOURCES}")
    return _radial_moment(dens, 1.0 / spec.sigma, 1, a, order)


def mean_pperp(spec: PacketSpec, source: str = "p_density", order: int = 64) -> float:
    """Mean absolute transverse momentum ``<p_perp>``.

    ``p_density`` and ``momentum_form`` are both ``|Psi(p)|^2 / (2 ebar)``;
    ``position_form`` integrates that form over ``d^3x``, leaving a Gaussian.
    """
    a = spec.abs_ell
    lz = spec.sigma * spec.ebar / spec.mass

    def cart(s, zeta):
        pp = s * spec.sigma
        return np.stack(np.broadcast_arrays(pp, 0.0 * pp, spec.pbar + zeta * lz), axis=-1)

    if source in ("p_density", "momentum_form"):
        dens = lambda s, zeta: marginal_x_closed(spec, cart(s, zeta))  # noqa: E731
    elif source == "position_form":
        dens = lambda s, zeta: np.exp(-s * s - zeta * zeta) + 0.0 * s  # noqa: E731
        a = 0
    else:
        raise ValueError(f"unknown momentum source {source!r}; choose from {P_SOURCES}")
    return _radial_moment(dens, spec.sigma, 1, a, order)


def rms_radius(spec: PacketSpec, source: str = "x_density") -> float:
    a = spec.abs_ell
    lz = spec.mass / (spec.ebar * spec.sigma)

    def dens(s, zeta):
        rho = s / spec.sigma
        r = np.stack(np.broadcast_arrays(rho, 0.0 * rho, zeta * lz), axis=-1)
        return amp_position(spec, r, 0.0).modulus2

    if source != "x_density":
        raise ValueError("rms radius is only tabulated for the x density")
    return math.sqrt(_radial_moment(dens, 1.0 / spec.sigma, 2, a))


def rms_pperp(spec: PacketSpec) -> float:
    a = spec.abs_ell

    def dens(s, zeta):
        pp = s * spec.sigma
        p = np.stack(np.broadcast_arrays(pp, 0.0 * pp, spec.pbar + 0.0 * zeta), axis=-1)
        return amp_momentum(spec, p).modulus2

    return math.sqrt(_radial_moment(dens, spec.sigma, 2, a))


def oam_product(spec: PacketSpec, x_source: str = "x_density",
                p_source: str = "p_density") -> float:
    """``<rho> <p_perp>``; independent of ``sigma``, approaches ``|ell|`` for large ``|ell|``."""
    return mean_radius(spec, x_source) * mean_pperp(spec, p_source)


@dataclass(frozen=True)
class MomentReport:
    ell: int
    n_r: int
    mean_rho: float
    mean_pperp: float
    product: float
    rms_rho: float
    rms_pperp: float
    source: str

    @property
    def product_per_ell(self) -> float:
        return self.product / abs(self.ell) if self.ell else math.nan


def moment_report(spec: PacketSpec, source: str = "density") -> MomentReport:
    """Moments from the exact densities (``"density"``) or one Wigner form's marginals."""
    if source == "density":
        xs, ps = "x_density", "p_density"
    elif source in ("momentum_form", "position_form"):
        xs = ps = source
    else:
        raise ValueError(f"unknown source {source!r}")
    mr, mp = mean_radius(spec, xs), mean_pperp(spec, ps)
    return MomentReport(spec.ell, spec.n_r, mr, mp, mr * mp,
                        rms_radius(spec), rms_pperp(spec), source)
