"""Packet parameters, phase-space points and longitudinal Lorentz boosts.

Natural units throughout (hbar = c = 1).  Masses, energies and momenta carry
units of ``mass``; lengths and times carry units of ``1 / mass``.  All
functions accept numpy arrays wherever a scalar coordinate is expected and
broadcast in the usual way.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

PARAXIAL_WARN = 0.05
PARAXIAL_HARD = 0.2

TWO_PI = 2.0 * math.pi


class ParaxialityError(ValueError):
    """Packet width is too large for the paraxial description."""


class ParaxialityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PacketSpec:
    """Physical parameters of a paraxial Laguerre-Gaussian packet.

    Parameters
    ----------
    mass : float
        Particle mass ``m > 0``.
    sigma : float
        Momentum-space width (absolute, same units as ``mass``).
    pbar : float
        Mean longitudinal momentum.
    ell : int
        Orbital angular momentum (winding number).
    n_r : int
        Radial index, ``n_r + 1`` radial maxima.
    """

    mass: float = 1.0
    sigma: float = 0.01
    pbar: float = 0.0
    ell: int = 0
    n_r: int = 0

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass!r}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma!r}")
        if not math.isfinite(self.pbar):
            raise ValueError(f"pbar must be finite, got {self.pbar!r}")
        if int(self.ell) != self.ell:
            raise ValueError(f"ell must be an integer, got {self.ell!r}")
        if int(self.n_r) != self.n_r or self.n_r < 0:
            raise ValueError(f"n_r must be a non-negative integer, got {self.n_r!r}")
        object.__setattr__(self, "ell", int(self.ell))
        object.__setattr__(self, "n_r", int(self.n_r))
        ratio = self.sigma / self.mass
        if ratio > PARAXIAL_HARD:
            raise ParaxialityError(
                f"sigma/m = {ratio:g} exceeds the hard paraxiality bound {PARAXIAL_HARD}"
            )
        if ratio > PARAXIAL_WARN:
            warnings.warn(
                f"sigma/m = {ratio:g} is above {PARAXIAL_WARN}; paraxial corrections "
                "may exceed the 1e-3 level",
                ParaxialityWarning,
                stacklevel=3,
            )

    @classmethod
    def from_ratios(cls, sigma_over_m, pbar_over_m=0.0, ell=0, n_r=0, mass=1.0):
        return cls(mass=mass, sigma=sigma_over_m * mass, pbar=pbar_over_m * mass,
                   ell=ell, n_r=n_r)

    @property
    def abs_ell(self) -> int:
        return abs(self.ell)

    @property
    def ebar(self) -> float:
        """Mean energy ``sqrt(pbar**2 + m**2)``."""
        return math.hypot(self.pbar, self.mass)

    @property
    def ubar(self) -> float:
        """Mean longitudinal velocity ``pbar / ebar``."""
        return self.pbar / self.ebar

    @property
    def t_d(self) -> float:
        """Diffraction time ``ebar / sigma**2``."""
        return self.ebar / self.sigma**2

    @property
    def compton(self) -> float:
        return 1.0 / self.mass

    @property
    def sigma_over_m(self) -> float:
        return self.sigma / self.mass

    @property
    def gamma_ratio(self) -> float:
        """``ebar / m``; stretches the longitudinal scales of the packet."""
        return self.ebar / self.mass

    def with_(self, **changes) -> "PacketSpec":
        return replace(self, **changes)


def _wrap_angle(phi):
    phi = np.mod(phi, TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    return np.where(phi >= TWO_PI, 0.0, phi)


@dataclass(frozen=True)
class PhasePoint:
    """A point ``(r, p, t)`` in cylindrical decomposition.

    Fields may be floats or broadcastable numpy arrays.  Azimuths are folded
    into ``[0, 2*pi)``; on the axis (``rho == 0`` or ``p_perp == 0``) the
    corresponding azimuth is set to 0.
    """

    rho: float = 0.0
    phi_r: float = 0.0
    z: float = 0.0
    p_perp: float = 0.0
    phi_p: float = 0.0
    p_z: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if np.any(np.asarray(self.rho) < 0) or np.any(np.asarray(self.p_perp) < 0):
            raise ValueError("rho and p_perp must be non-negative")
        phi_r = np.where(np.asarray(self.rho) == 0, 0.0, self.phi_r)
        phi_p = np.where(np.asarray(self.p_perp) == 0, 0.0, self.phi_p)
        object.__setattr__(self, "phi_r", _as_scalar(_wrap_angle(phi_r)))
        object.__setattr__(self, "phi_p", _as_scalar(_wrap_angle(phi_p)))

    @classmethod
    def from_cartesian(cls, r, p, t=0.0) -> "PhasePoint":
        r = np.asarray(r, dtype=float)
        p = np.asarray(p, dtype=float)
        rho = np.hypot(r[..., 0], r[..., 1])
        p_perp = np.hypot(p[..., 0], p[..., 1])
        return cls(
            rho=_as_scalar(rho),
            phi_r=_as_scalar(np.arctan2(r[..., 1], r[..., 0])),
            z=_as_scalar(r[..., 2]),
            p_perp=_as_scalar(p_perp),
            phi_p=_as_scalar(np.arctan2(p[..., 1], p[..., 0])),
            p_z=_as_scalar(p[..., 2]),
            t=_as_scalar(np.asarray(t, dtype=float)),
        )

    @property
    def r(self) -> np.ndarray:
        """Cartesian position, shape ``(..., 3)``."""
        return np.stack(np.broadcast_arrays(
            self.rho * np.cos(self.phi_r), self.rho * np.sin(self.phi_r), self.z), axis=-1)

    @property
    def p(self) -> np.ndarray:
        """Cartesian momentum, shape ``(..., 3)``."""
        return np.stack(np.broadcast_arrays(
            self.p_perp * np.cos(self.phi_p), self.p_perp * np.sin(self.phi_p), self.p_z), axis=-1)

    def with_(self, **changes) -> "PhasePoint":
        return replace(self, **changes)


def _as_scalar(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class BoostParameter:
    """Longitudinal boost along ``z`` with rapidity ``eta``.

    The boosted frame moves with velocity ``tanh(eta)`` along the beam axis,
    so ``t' = t cosh(eta) - z sinh(eta)`` and ``z' = z cosh(eta) - t sinh(eta)``.
    """

    rapidity: float = 0.0

    @property
    def velocity(self) -> float:
        return math.tanh(self.rapidity)

    def inverse(self) -> "BoostParameter":
        return BoostParameter(-self.rapidity)

    def then(self, other: "BoostParameter") -> "BoostParameter":
        return BoostParameter(self.rapidity + other.rapidity)

    def apply(self, time, axial):
        """Transform a ``(time, axial)`` pair of a two-vector."""
        ch, sh = math.cosh(self.rapidity), math.sinh(self.rapidity)
        return time * ch - axial * sh, axial * ch - time * sh


def _as_boost(eta) -> BoostParameter:
    return eta if isinstance(eta, BoostParameter) else BoostParameter(float(eta))


def energy(spec: PacketSpec, p) -> np.ndarray | float:
    """Relativistic energy ``sqrt(p**2 + m**2)`` of Cartesian momenta ``(..., 3)``."""
    p = np.asarray(p, dtype=float)
    e = np.sqrt(np.sum(p * p, axis=-1) + spec.mass**2)
    return float(e) if np.ndim(e) == 0 else e


def point_energy(spec: PacketSpec, pt: PhasePoint):
    return np.sqrt(np.asarray(pt.p_perp) ** 2 + np.asarray(pt.p_z) ** 2 + spec.mass**2)


def boost_spec(spec: PacketSpec, eta) -> PacketSpec:
    """Packet parameters seen from a longitudinally boosted frame."""
    _, pbar = _as_boost(eta).apply(spec.ebar, spec.pbar)
    return spec.with_(pbar=float(pbar))


def boost_point(spec: PacketSpec, pt: PhasePoint, eta) -> PhasePoint:
    boost = _as_boost(eta)
    t, z = boost.apply(pt.t, pt.z)
    _, p_z = boost.apply(point_energy(spec, pt), pt.p_z)
    return pt.with_(t=_as_scalar(t), z=_as_scalar(z), p_z=_as_scalar(p_z))


def boost_all(spec: PacketSpec, pt: PhasePoint, eta):
    """Boost packet parameters and a phase-space point together.

    ``(t, z)``, ``(energy(p), p_z)`` and ``(ebar, pbar)`` transform as
    two-vectors; transverse quantities, ``sigma``, ``m``, ``ell`` and ``n_r``
    are untouched.  Raises :class:`ParaxialityError` if the boosted packet
    leaves the paraxial domain.
    """
    return boost_spec(spec, eta), boost_point(spec, pt, eta)


def invariant_x_form(spec: PacketSpec, pt: PhasePoint, velocity: str = "mean"):
    """``rho**2 + ebar**2 (z - u t)**2 / m**2``.

    With ``velocity="mean"`` (default) ``u = ubar`` and the form is evaluated
    as ``rho**2 + (ebar z - pbar t)**2 / m**2``, which is exactly boost
    invariant.  ``velocity="local"`` uses ``u = p_z / energy(p)`` instead.
    """
    rho = np.asarray(pt.rho)
    if velocity == "mean":
        axial = (spec.ebar * np.asarray(pt.z) - spec.pbar * np.asarray(pt.t)) / spec.mass
    elif velocity == "local":
        u = np.asarray(pt.p_z) / point_energy(spec, pt)
        axial = spec.ebar * (np.asarray(pt.z) - u * np.asarray(pt.t)) / spec.mass
    else:
        raise ValueError(f"unknown velocity convention {velocity!r}")
    return _as_scalar(rho**2 + axial**2)


def invariant_p_form(spec: PacketSpec, pt: PhasePoint, covariant: bool = False):
    """``p_perp**2 + m**2 (p_z - pbar)**2 / ebar**2``.

    This form is boost invariant only to leading paraxial order.  With
    ``covariant=True`` the longitudinal term is replaced by
    ``(ebar p_z - pbar energy(p))**2 / m**2``, which agrees with it to that
    order and is exactly invariant.
    """
    p_perp = np.asarray(pt.p_perp)
    if covariant:
        # (ebar p_z - pbar eps)/m = m_perp sinh(y - ybar) with rapidities y; this
        # avoids the cancellation between the two products in fast frames
        m_perp = np.sqrt(np.asarray(pt.p_perp) ** 2 + spec.mass**2)
        axial = m_perp * np.sinh(np.arcsinh(np.asarray(pt.p_z) / m_perp)
                                 - math.asinh(spec.pbar / spec.mass))
    else:
        axial = spec.mass * (np.asarray(pt.p_z) - spec.pbar) / spec.ebar
    return _as_scalar(p_perp**2 + axial**2)
