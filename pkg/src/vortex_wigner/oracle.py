"""Brute-force quadrature of the defining integrals.

The Wigner oracle evaluates

    n(r, p, t) = int d^3k/(2pi)^3 exp(i k.r) psi*(p - k/2, t) psi(p + k/2, t),
    psi(p, t) = Psi(p) exp(-i t energy(p)) / sqrt(2 energy(p)),

with the exact dispersion, on a tensor-product Gauss-Hermite grid aligned to
the Gaussian envelope of the amplitude pair.  The fermionic variants insert
the bispinor pairing in either conjugation convention.  Nothing here relies
on the paraxial closed forms, so the oracle can falsify them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import _kernels
from .kinematics import PacketSpec, PhasePoint
from .parallel import pmap
from .specfun import log_norm_factor, quad_nodes
from .wavepacket import amp_momentum
from .wigner import WignerForm, wigner_closed


class OracleError(RuntimeError):
    """The requested evaluation cannot be resolved by the quadrature."""


@dataclass(frozen=True)
class OracleSettings:
    """Quadrature controls.

    ``order`` Hermite nodes per axis, compared against ``2 * order`` for the
    error estimate.  ``kspan`` is the half-width of the effective ``k``
    support in units of ``sigma`` used by the oscillation safeguard.
    """

    order: int = 48
    kspan: float = 10.0
    max_order: int = 160
    rtol: float = 1e-6
    atol: float = 1e-10

    def __post_init__(self):
        if self.order < 2 or self.max_order < self.order:
            raise ValueError("need 2 <= order <= max_order")
        if self.kspan <= 0:
            raise ValueError("kspan must be positive")


@dataclass(frozen=True)
class OracleResult:
    value: float
    error: float
    imag: float
    order: int
    converged: bool

    def __iter__(self):
        yield self.value
        yield self.error


_MODES = {"scalar": 0, "dirac_conjugate": 1, "hermitian_conjugate": 2}
_SPINS = {"up": 1.0, "down": -1.0}


def required_order(spec: PacketSpec, pt: PhasePoint, settings: OracleSettings) -> int:
    """Hermite order needed to resolve the phase ``k.(r - v t)`` on the support.

    The phase across ``|k| <= kspan * sigma`` must stay below ``order / 2``.
    """
    p = pt.p
    eps = math.sqrt(float(p @ p) + spec.mass**2)
    d = pt.r - p / eps * pt.t
    span = settings.kspan * spec.sigma
    phase = span * (math.hypot(d[0], d[1]) + spec.gamma_ratio * abs(d[2]))
    need = max(settings.order, 2 * math.ceil(phase))
    return need + (need % 2)


def _prefactor(spec: PacketSpec, p) -> float:
    # Jacobian of the scaled k grid, squared amplitude normalization and the
    # p-dependent part of the Gaussian envelope
    sigma, gr = spec.sigma, spec.gamma_ratio
    jac = (2.0 * sigma) ** 3 * gr / (2.0 * math.pi) ** 3
    norm2 = math.exp(log_norm_factor(spec.n_r, spec.abs_ell)) \
        * (2.0 * math.sqrt(math.pi) / sigma) ** 3 * 2.0 * spec.mass
    p_perp2 = p[0] ** 2 + p[1] ** 2
    env = math.exp(-p_perp2 / sigma**2 - ((p[2] - spec.pbar) / (gr * sigma)) ** 2)
    return jac * norm2 * env


def _oracle(spec, pt, settings, mode, spin):
    settings = settings or OracleSettings()
    if np.ndim(pt.rho) or np.ndim(pt.p_perp) or np.ndim(pt.t):
        raise ValueError("the oracle evaluates one phase-space point at a time")
    order = required_order(spec, pt, settings)
    if order > settings.max_order:
        raise OracleError(
            f"phase k.(r - v t) needs Hermite order {order} > max_order {settings.max_order}; "
            "the point lies too far outside the packet for this quadrature")
    p, r = pt.p, pt.r
    sums = []
    for n in (order, 2 * order):
        rule = quad_nodes("hermite", n)
        sums.append(_kernels.oracle_sum(
            mode, spin, spec.n_r, spec.ell, spec.sigma, spec.mass, spec.ebar, spec.pbar,
            p, r, float(pt.t), rule.nodes, rule.weights, rule.nodes, rule.weights))
    pref = _prefactor(spec, p)
    value = pref * sums[1]
    error = pref * abs(sums[1] - sums[0])
    converged = error <= settings.rtol * abs(value.real) + settings.atol
    return OracleResult(float(value.real), float(error), float(value.imag), 2 * order,
                        bool(converged))


def wigner_oracle_scalar(spec: PacketSpec, pt: PhasePoint, settings=None) -> OracleResult:
    """Wigner function of the scalar packet from its defining integral."""
    return _oracle(spec, pt, settings, 0, 1.0)


def wigner_oracle_fermion(spec: PacketSpec, pt: PhasePoint, spin: str = "up",
                          convention: str = "dirac_conjugate", settings=None) -> OracleResult:
    """Wigner function of the spin-1/2 packet ``Psi_f = u(p, spin) Psi(p) / sqrt(2E)``.

    ``dirac_conjugate`` uses ``(1/2m) Psibar_f Psi_f``; ``hermitian_conjugate``
    uses ``Psi_f^dagger Psi_f / sqrt(2E_- 2E_+)``.
    """
    if convention not in ("dirac_conjugate", "hermitian_conjugate"):
        raise ValueError(f"unknown convention {convention!r}")
    if spin not in _SPINS:
        raise ValueError(f"spin must be 'up' or 'down', got {spin!r}")
    return _oracle(spec, pt, settings, _MODES[convention], _SPINS[spin])


def oracle_batch(spec: PacketSpec, points, settings=None, kind: str = "scalar",
                 spin: str = "up", threads=None) -> list[OracleResult]:
    """Evaluate the oracle at many points on a thread pool, in input order."""
    if kind == "scalar":
        fn = lambda pt: wigner_oracle_scalar(spec, pt, settings)  # noqa: E731
    else:
        fn = lambda pt: wigner_oracle_fermion(spec, pt, spin, kind, settings)  # noqa: E731
    return pmap(fn, points, threads)


# -- position-space Fourier oracle ---------------------------------------

def _legendre(order, half_width):
    x, w = leggauss(order)
    return half_width * x, half_width * w


def amp_position_oracle(spec: PacketSpec, r, t=0.0, order: int = 160,
                        dispersion: str = "paraxial", measure: str = "mean",
                        half_width: float = 10.0):
    """Position amplitude by direct quadrature of the momentum-space Fourier integral.

    ``Psi(r, t) = int d^3p/(2pi)^3 w(p) Psi(p) exp(-i energy t + i p.r)``.

    Parameters
    ----------
    r : array_like, shape (..., 3)
        Positions; all share the time ``t``.
    dispersion : {"paraxial", "exact"}
        ``energy`` expanded to second order about ``pbar`` (separable, the
        integral factorizes into transverse and longitudinal parts) or exact.
    measure : {"mean", "exact", "wigner"}
        ``w = 1/(2 ebar)``, ``1/(2 energy)`` or ``1/sqrt(2 energy)``; the last
        gives the position wave function of ``psi`` whose square is the exact
        position marginal of the Wigner integral.
    half_width : float
        Truncation of the scaled momentum box ``|p - pbar| <= half_width sigma``.

    Returns
    -------
    numpy.ndarray
        Complex amplitudes with the shape of ``r[..., 0]``.
    """
    r = np.asarray(r, dtype=float)
    shape = r.shape[:-1]
    r = r.reshape(-1, 3)
    t = float(t)
    sigma, gr, m = spec.sigma, spec.gamma_ratio, spec.mass
    x, w = _legendre(order, half_width)
    # plane-wave part of the phase is factored out and restored at the end
    carrier = np.exp(1j * (spec.pbar * r[:, 2] - spec.ebar * t))
    zeta = r[:, 2] - spec.ubar * t
    separable = dispersion == "paraxial" and measure == "mean"
    if separable:
        px, py = np.meshgrid(sigma * x, sigma * x, indexing="ij")
        wt = np.outer(w, w) * sigma**2
        pz = spec.pbar + sigma * gr * x
        wz = w * sigma * gr
        trans = amp_momentum(spec, np.stack([px, py, np.full_like(px, spec.pbar)], axis=-1)).value
        lon = np.exp(-0.5 * ((pz - spec.pbar) / (gr * sigma)) ** 2)
        chirp_t = np.exp(-1j * t * (px**2 + py**2) / (2.0 * spec.ebar))
        chirp_z = np.exp(-1j * t * m**2 * (pz - spec.pbar) ** 2 / (2.0 * spec.ebar**3))
        ft = (wt * trans * chirp_t).ravel()
        fz = wz * lon * chirp_z
        kt = np.stack([px.ravel(), py.ravel()], axis=-1)
        out = np.empty(len(r), dtype=complex)
        for i, ri in enumerate(r):
            a = ft @ np.exp(1j * (kt @ ri[:2]))
            b = fz @ np.exp(1j * (pz - spec.pbar) * zeta[i])
            out[i] = a * b
        out /= 2.0 * spec.ebar * (2.0 * math.pi) ** 3
    else:
        px, py, pz = np.meshgrid(sigma * x, sigma * x, spec.pbar + sigma * gr * x, indexing="ij")
        wgt = (w[:, None, None] * w[None, :, None] * w[None, None, :]) * sigma**3 * gr
        amp = amp_momentum(spec, np.stack([px, py, pz], axis=-1)).value
        eps = np.sqrt(px**2 + py**2 + pz**2 + m**2)
        if dispersion == "paraxial":
            delta = (px**2 + py**2) / (2.0 * spec.ebar) + m**2 * (pz - spec.pbar) ** 2 / (2.0 * spec.ebar**3)
        elif dispersion == "exact":
            delta = (px**2 + py**2 + (pz - spec.pbar) * (pz + spec.pbar)) / (eps + spec.ebar) \
                - spec.ubar * (pz - spec.pbar)
        else:
            raise ValueError(f"unknown dispersion {dispersion!r}")
        if measure == "mean":
            dens = 1.0 / (2.0 * spec.ebar)
        elif measure == "exact":
            dens = 1.0 / (2.0 * eps)
        elif measure == "wigner":
            dens = 1.0 / np.sqrt(2.0 * eps)
        else:
            raise ValueError(f"unknown measure {measure!r}")
        f = (wgt * amp * dens * np.exp(-1j * t * delta)).ravel()
        kk = np.stack([px.ravel(), py.ravel(), (pz - spec.pbar).ravel()], axis=-1)
        out = np.empty(len(r), dtype=complex)
        for i, ri in enumerate(r):
            out[i] = f @ np.exp(1j * (kk @ np.array([ri[0], ri[1], zeta[i]])))
        out /= (2.0 * math.pi) ** 3
    out = out * carrier
    return out.reshape(shape) if shape else complex(out[0])


# -- numeric marginals and norms ------------------------------------------

def _hermite3(order):
    rule = quad_nodes("hermite", order)
    x = rule.nodes
    w = rule.weights * np.exp(x * x)
    return x, w[:, None, None] * w[None, :, None] * w[None, None, :]


def marginal_numeric(spec: PacketSpec, which: str, fixed, t=0.0, source=WignerForm.MOMENTUM,
                     order: int = 48, **form_kwargs) -> float:
    """Integrate a Wigner representation over one half of phase space.

    Parameters
    ----------
    which : {"over_x", "over_p"}
        ``over_x`` integrates ``d^3x`` at the fixed Cartesian momentum;
        ``over_p`` integrates ``d^3p/(2pi)^3`` at the fixed Cartesian position.
    source : WignerForm, str or "oracle"
        A closed form, or ``"oracle"`` for the exact Wigner integral, whose
        marginals reduce to ``|psi(p, t)|^2`` and ``|psi(r, t)|^2``.
    """
    fixed = np.asarray(fixed, dtype=float)
    if which not in ("over_x", "over_p"):
        raise ValueError(f"which must be 'over_x' or 'over_p', got {which!r}")
    if source == "oracle":
        if which == "over_x":
            eps = math.sqrt(float(fixed @ fixed) + spec.mass**2)
            return float(abs(amp_momentum(spec, fixed).value) ** 2 / (2.0 * eps))
        amp = amp_position_oracle(spec, fixed, t, dispersion="exact", measure="wigner",
                                  order=max(order, 64))
        return float(abs(amp) ** 2)

    x, w = _hermite3(order)
    sigma, gr = spec.sigma, spec.gamma_ratio
    if which == "over_x":
        center = spec.ubar * float(t)
        if form_kwargs.get("velocity") == "local":
            center = fixed[2] / math.sqrt(float(fixed @ fixed) + spec.mass**2) * float(t)
        rx, ry, rz = np.meshgrid(x / sigma, x / sigma, center + x / (sigma * gr), indexing="ij")
        pt = PhasePoint.from_cartesian(np.stack([rx, ry, rz], axis=-1),
                                       np.broadcast_to(fixed, rx.shape + (3,)), t)
        vals = wigner_closed(spec, pt, source, **form_kwargs)
        return float(np.sum(w * vals) / (sigma**3 * gr))
    px, py, pz = np.meshgrid(sigma * x, sigma * x, spec.pbar + sigma * gr * x, indexing="ij")
    pt = PhasePoint.from_cartesian(np.broadcast_to(fixed, px.shape + (3,)),
                                   np.stack([px, py, pz], axis=-1), t)
    vals = wigner_closed(spec, pt, source, **form_kwargs)
    return float(np.sum(w * vals) * sigma**3 * gr / (2.0 * math.pi) ** 3)


def full_norm_numeric(spec: PacketSpec, representation=WignerForm.MOMENTUM,
                      order: int = 64) -> float:
    """``int d^3x d^3p/(2pi)^3 n`` using the separable structure of each form.

    Exact Gaussian factors are integrated analytically; the remaining
    Laguerre-bearing factor by Gaussian quadrature.
    """
    sigma, gr = spec.sigma, spec.gamma_ratio
    a, n = spec.abs_ell, spec.n_r
    # d^3x of exp(-sigma^2 X) and d^3p/(2pi)^3 of exp(-P/sigma^2)
    gauss_x = math.pi ** 1.5 / (sigma**3 * gr)
    gauss_p = math.pi ** 1.5 * sigma**3 * gr / (2.0 * math.pi) ** 3
    norm = 8.0 * math.exp(log_norm_factor(n, a))
    if representation == "oracle":
        from .wavepacket import momentum_norm
        return momentum_norm(spec, order, measure="exact")
    form = WignerForm(representation)
    if form in (WignerForm.MOMENTUM, WignerForm.POSITION):
        # radial factor u**a L_n^a(u)**2 against exp(-u) on [0, inf), d^2 -> pi du
        rule = quad_nodes("laguerre", max(order, n + 2), float(a))
        radial = np.sum(rule.weights * _kernels.laguerre(n, a, rule.nodes) ** 2)
        return float(norm * radial * gauss_x * gauss_p)
    # (rho p_perp)**a couples the two radial integrals
    rule = quad_nodes("laguerre", order, 0.5 * a)
    u = rule.nodes[:, None]
    v = rule.nodes[None, :]
    ww = rule.weights[:, None] * rule.weights[None, :]
    if form is WignerForm.SYMMETRIC:
        lag = _kernels.laguerre(n, a, 0.5 * (u + v))
    else:
        lag = _kernels.laguerre(n, a, np.sqrt(u * v))
    radial = np.sum(ww * lag**2)
    return float(norm * radial * gauss_x * gauss_p)
