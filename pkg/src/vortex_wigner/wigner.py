"""Closed-form paraxial Wigner functions of the vortex packet and their marginals.

All representations share the Gaussian factor

    exp(-sigma**2 X - P / sigma**2),

with ``X`` and ``P`` the invariant quadratic forms of :mod:`kinematics`, and
differ only in the Laguerre-bearing prefactor:

``momentum``
    ``(p_perp/sigma)**(2|ell|) [L_n^|ell|(p_perp**2/sigma**2)]**2``
``position``
    ``(sigma rho)**(2|ell|) [L_n^|ell|(sigma**2 rho**2)]**2``
``symmetric``
    ``(rho p_perp)**|ell| [L_n^|ell|((sigma**2 rho**2 + p_perp**2/sigma**2) / 2)]**2``
``symmetric_product``
    ``(rho p_perp)**|ell| [L_n^|ell|(rho p_perp)]**2``, kept for cross-checks.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import _kernels
from .kinematics import PacketSpec, PhasePoint
from .wavepacket import amp_momentum, amp_position


class WignerForm(str, enum.Enum):
    MOMENTUM = "momentum"
    POSITION = "position"
    SYMMETRIC = "symmetric"
    SYMMETRIC_PRODUCT = "symmetric_product"


_FORM_CODES = {
    WignerForm.MOMENTUM: 0,
    WignerForm.POSITION: 1,
    WignerForm.SYMMETRIC: 2,
    WignerForm.SYMMETRIC_PRODUCT: 3,
}


def _velocity_code(velocity: str) -> int:
    if velocity == "mean":
        return 0
    if velocity == "local":
        return 1
    raise ValueError(f"unknown velocity convention {velocity!r}")


def wigner_closed(spec: PacketSpec, pt: PhasePoint, form=WignerForm.MOMENTUM,
                  velocity: str = "mean", covariant: bool = False):
    """Paraxial Wigner function ``n(r, p, t)`` of the scalar vortex packet.

    Parameters
    ----------
    form : WignerForm or str
        Which prefactor representation to use.
    velocity : {"mean", "local"}
        Drift velocity in the position form: ``ubar`` (exactly invariant) or
        ``p_z / energy(p)``.
    covariant : bool
        Use the exactly boost-invariant rewrite of the momentum form,
        see :func:`kinematics.invariant_p_form`.

    Returns
    -------
    float or numpy.ndarray
        Non-negative values, broadcast over the fields of ``pt``.
    """
    form = WignerForm(form)
    a, n = spec.abs_ell, spec.n_r
    lognorm = math.lgamma(n + 1) - math.lgamma(n + a + 1)
    out = _kernels.wigner_closed(
        _FORM_CODES[form], n, a, lognorm, spec.sigma, spec.mass, spec.ebar, spec.pbar,
        pt.rho, pt.z, pt.p_perp, pt.p_z, pt.t, _velocity_code(velocity), bool(covariant))
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def prefactor(spec: PacketSpec, pt: PhasePoint, form=WignerForm.MOMENTUM):
    """The Laguerre-bearing factor alone, without ``8 n!/(n+|ell|)!``."""
    form = WignerForm(form)
    a, n = spec.abs_ell, spec.n_r
    rho = np.asarray(pt.rho, dtype=float)
    pp = np.asarray(pt.p_perp, dtype=float)
    if form is WignerForm.MOMENTUM:
        s = pp / spec.sigma
        return s ** (2 * a) * _kernels.laguerre(n, a, s * s) ** 2
    if form is WignerForm.POSITION:
        s = spec.sigma * rho
        return s ** (2 * a) * _kernels.laguerre(n, a, s * s) ** 2
    if form is WignerForm.SYMMETRIC:
        arg = 0.5 * ((spec.sigma * rho) ** 2 + (pp / spec.sigma) ** 2)
        return (rho * pp) ** a * _kernels.laguerre(n, a, arg) ** 2
    return (rho * pp) ** a * _kernels.laguerre(n, a, rho * pp) ** 2


def wigner_fermion_paraxial(spec: PacketSpec, pt: PhasePoint, form=WignerForm.MOMENTUM,
                            **kwargs):
    """Paraxial Wigner function of the spin-1/2 packet; the spin drops out."""
    return wigner_closed(spec, pt, form, **kwargs)


def marginal_x_closed(spec: PacketSpec, p):
    """``int d^3x n = |Psi(p)|^2 / (2 ebar)`` for the momentum form."""
    return amp_momentum(spec, p).modulus2 / (2.0 * spec.ebar)


def marginal_p_closed(spec: PacketSpec, r):
    """``int d^3p/(2pi)^3 n`` of the momentum form at ``t = 0``.

    ``(ebar/m) (sigma/sqrt(pi))**3 exp(-sigma**2 (rho**2 + ebar**2 z**2 / m**2))``,
    the same for every ``ell`` and ``n_r``.
    """
    r = np.asarray(r, dtype=float)
    rho2 = r[..., 0] ** 2 + r[..., 1] ** 2
    axial = spec.ebar * r[..., 2] / spec.mass
    value = (spec.ebar / spec.mass) * (spec.sigma / math.sqrt(math.pi)) ** 3 \
        * np.exp(-spec.sigma**2 * (rho2 + axial**2))
    return float(value) if np.ndim(value) == 0 else value


def marginal_p_alt(spec: PacketSpec, r):
    """``int d^3p/(2pi)^3 n`` of the position form at ``t = 0``: ``2 ebar |Psi(r, 0)|^2``."""
    return 2.0 * spec.ebar * amp_position(spec, r, 0.0).modulus2
