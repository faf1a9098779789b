"""Paraxial Laguerre-Gaussian amplitudes in momentum and position space.

Momentum-space amplitudes use the relativistic normalization

    int d^3p / (2 pi)^3  |Psi(p)|^2 / (2 ebar) = 1,

and position-space amplitudes ``int d^3x 2 ebar |Psi(r, t)|^2 = 1``.
Cartesian inputs have shape ``(..., 3)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .kinematics import PacketSpec
from .specfun import log_norm_factor, quad_nodes

RELATIVISTIC = "relativistic"
NONRELATIVISTIC = "nonrelativistic"


@dataclass(frozen=True)
class ComplexAmplitude:
    """A wave-function value tagged with its normalization convention.

    ``relativistic`` values are ``Psi``; ``nonrelativistic`` values are
    ``psi = Psi / sqrt(2 energy)``.
    """

    value: complex | np.ndarray
    convention: str = RELATIVISTIC

    def __post_init__(self):
        if self.convention not in (RELATIVISTIC, NONRELATIVISTIC):
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def modulus2(self):
        return np.abs(self.value) ** 2

    def to_nonrelativistic(self, energy) -> "ComplexAmplitude":
        if self.convention == NONRELATIVISTIC:
            return self
        return ComplexAmplitude(self.value / np.sqrt(2.0 * energy), NONRELATIVISTIC)

    def to_relativistic(self, energy) -> "ComplexAmplitude":
        if self.convention == RELATIVISTIC:
            return self
        return ComplexAmplitude(self.value * np.sqrt(2.0 * energy), RELATIVISTIC)


def sigma_perp(spec: PacketSpec, t):
    """Transverse width ``sigma_perp(t) = sqrt(1 + (t/t_d)**2) / sigma``."""
    return np.sqrt(1.0 + (np.asarray(t, dtype=float) / spec.t_d) ** 2) / spec.sigma


def gouy_phase(spec: PacketSpec, t):
    """``-(2 n_r + |ell| + 3/2) atan(t / t_d)``."""
    return -(2 * spec.n_r + spec.abs_ell + 1.5) * np.arctan(np.asarray(t, dtype=float) / spec.t_d)


def _transverse(x, y, ell):
    rho = np.hypot(x, y)
    phi = np.where(rho == 0.0, 0.0, np.arctan2(y, x))
    return rho, phi


def _radial_log_factor(n, a, s):
    """``log(s**a)`` and ``L_n^a(s**2)`` for the scaled radius ``s >= 0``."""
    with np.errstate(divide="ignore"):
        logpow = a * np.log(s) if a else np.zeros_like(s)
    return logpow, _kernels.laguerre(n, a, s * s)


def amp_momentum(spec: PacketSpec, p) -> ComplexAmplitude:
    """Relativistic momentum-space amplitude ``Psi_{ell,n}(p)``."""
    p = np.asarray(p, dtype=float)
    a, n, sigma = spec.abs_ell, spec.n_r, spec.sigma
    p_perp, phi_p = _transverse(p[..., 0], p[..., 1], spec.ell)
    s = p_perp / sigma
    logpow, lag = _radial_log_factor(n, a, s)
    mu = spec.mass / spec.ebar
    log_mod = (0.5 * log_norm_factor(n, a) + 1.5 * math.log(2.0 * math.sqrt(math.pi) / sigma)
               + 0.5 * math.log(2.0 * spec.mass) + logpow
               - 0.5 * s * s - 0.5 * (mu * (p[..., 2] - spec.pbar) / sigma) ** 2)
    value = lag * np.exp(log_mod + 1j * spec.ell * phi_p)
    return ComplexAmplitude(_squeeze(value), RELATIVISTIC)


def _position_value(spec: PacketSpec, r, t, rest_phase=True):
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    a, n = spec.abs_ell, spec.n_r
    rho, phi_r = _transverse(r[..., 0], r[..., 1], spec.ell)
    z = r[..., 2]
    tau = t / spec.t_d
    width = sigma_perp(spec, t)
    s = rho / width
    logpow, lag = _radial_log_factor(n, a, s)
    axial = spec.ebar * (z - spec.ubar * t) / spec.mass
    quad = (rho**2 + axial**2) / (2.0 * width**2)
    log_mod = (0.5 * log_norm_factor(n, a) - 0.75 * math.log(math.pi)
               - 0.5 * math.log(2.0 * spec.mass) - 1.5 * np.log(width) + logpow - quad)
    # i**(2n + |ell|): the Fourier image of the vortex factor carries |ell|
    phase = (0.5 * math.pi * ((2 * n + a) % 4) + spec.ell * phi_r
             + gouy_phase(spec, t) + tau * quad + spec.pbar * z)
    if rest_phase:
        phase = phase - spec.ebar * t
    else:
        # nonrelativistic limit: drop only the rest-energy phase m t
        phase = phase - (spec.ebar - spec.mass) * t
    return _squeeze(lag * np.exp(log_mod + 1j * phase))


def amp_position(spec: PacketSpec, r, t=0.0) -> ComplexAmplitude:
    """Relativistic position-space amplitude ``Psi_{ell,n}(r, t)``.

    Includes the plane-wave phase ``-i (ebar t - pbar z)``, the Gouy phase
    and the complex Gaussian factor ``(1 - i t/t_d) / (2 sigma_perp(t)**2)``.
    """
    return ComplexAmplitude(_position_value(spec, r, t), RELATIVISTIC)


def amp_nonrel(spec: PacketSpec, r, t=0.0) -> ComplexAmplitude:
    """Schrodinger wave function ``sqrt(2m) Psi(r, t) exp(i m t)`` at ``pbar = 0``."""
    if spec.pbar != 0.0:
        raise ValueError("the nonrelativistic limit requires pbar = 0")
    value = math.sqrt(2.0 * spec.mass) * _position_value(spec, r, t, rest_phase=False)
    return ComplexAmplitude(value, NONRELATIVISTIC)


def momentum_norm(spec: PacketSpec, order=None, measure: str = "mean") -> float:
    """``int d^3p/(2pi)^3 |Psi(p)|^2 / (2 eps)`` by Gauss-Hermite quadrature.

    ``measure="mean"`` uses ``eps = ebar`` (exactly 1 for the paraxial
    packet); ``measure="exact"`` uses ``eps = energy(p)``.
    """
    order = order or _default_order(spec)
    rule = quad_nodes("hermite", order)
    sigma, stretch = spec.sigma, spec.ebar / spec.mass
    x = rule.nodes
    px, py, pz = np.meshgrid(sigma * x, sigma * x, spec.pbar + sigma * stretch * x, indexing="ij")
    w = _weights3(rule.weights, np.exp(x * x))
    p = np.stack([px, py, pz], axis=-1)
    dens = amp_momentum(spec, p).modulus2
    eps = spec.ebar if measure == "mean" else np.sqrt(px**2 + py**2 + pz**2 + spec.mass**2)
    jac = sigma**3 * stretch / (2.0 * math.pi) ** 3
    return float(jac * np.sum(w * dens / (2.0 * eps)))


def position_norm(spec: PacketSpec, t=0.0, order=None) -> float:
    """``int d^3x 2 ebar |Psi(r, t)|^2`` by Gauss-Hermite quadrature."""
    order = order or _default_order(spec)
    rule = quad_nodes("hermite", order)
    width = float(sigma_perp(spec, t))
    lz = width * spec.mass / spec.ebar
    x = rule.nodes
    rx, ry, rz = np.meshgrid(width * x, width * x, spec.ubar * t + lz * x, indexing="ij")
    w = _weights3(rule.weights, np.exp(x * x))
    dens = amp_position(spec, np.stack([rx, ry, rz], axis=-1), t).modulus2
    return float(width**2 * lz * np.sum(w * 2.0 * spec.ebar * dens))


def _weights3(weights, unweight):
    w = weights * unweight
    return w[:, None, None] * w[None, :, None] * w[None, None, :]


def _default_order(spec: PacketSpec) -> int:
    # integrand / weight is a polynomial of degree 2|ell| + 4 n_r per axis
    return max(16, spec.abs_ell + 2 * spec.n_r + 8)


def _squeeze(v):
    v = np.asarray(v)
    return complex(v) if v.ndim == 0 else v
