"""Positive-energy Dirac bispinors in the standard representation.

Spin is quantized along ``z`` in the rest frame.  Normalization follows
``ubar u = 2m`` and ``u^dagger u = 2 energy``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinematics import PacketSpec, energy

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

GAMMA0 = np.block([[_I2, _Z2], [_Z2, -_I2]])
GAMMA = np.array([np.block([[_Z2, s], [-s, _Z2]]) for s in PAULI])

SPIN_STATES = {
    "up": np.array([1, 0], dtype=complex),
    "down": np.array([0, 1], dtype=complex),
}


def _chi(s):
    try:
        return SPIN_STATES[s]
    except KeyError:
        raise ValueError(f"spin must be 'up' or 'down', got {s!r}") from None


@dataclass(frozen=True)
class Bispinor:
    components: np.ndarray
    momentum: np.ndarray
    spin: str
    mass: float

    @property
    def energy(self) -> float:
        return math.sqrt(float(self.momentum @ self.momentum) + self.mass**2)

    def bar(self) -> np.ndarray:
        """Dirac conjugate ``u^dagger gamma^0`` as a row vector."""
        return self.components.conj() @ GAMMA0

    def scalar_norm(self) -> complex:
        return complex(self.bar() @ self.components)

    def vector_norm(self) -> complex:
        return complex(self.components.conj() @ self.components)

    def dirac_residual(self) -> float:
        """``|| (gamma^mu p_mu - m) u ||``."""
        slash = GAMMA0 * self.energy - np.einsum("i,ijk->jk", self.momentum, GAMMA)
        return float(np.linalg.norm((slash - self.mass * np.eye(4)) @ self.components))


def dirac_u(spec: PacketSpec, p, s: str = "up") -> Bispinor:
    """Bispinor ``(sqrt(E+m) chi, (sigma.p) chi / sqrt(E+m))``."""
    p = np.asarray(p, dtype=float)
    e = energy(spec, p)
    chi = _chi(s)
    root = math.sqrt(e + spec.mass)
    sigma_p = np.einsum("i,ijk->jk", p, PAULI)
    comps = np.concatenate([root * chi, sigma_p @ chi / root])
    return Bispinor(comps, p, s, spec.mass)


def pairing_ratio(spec: PacketSpec, p, k, s: str = "up", s2: str = "up",
                  convention: str = "dirac_conjugate") -> complex:
    """Spinor factor of the fermionic Wigner integrand relative to the scalar one.

    ``dirac_conjugate``: ``ubar(p-k/2, s) u(p+k/2, s2) / (2m sqrt(2E_- 2E_+))``.
    ``hermitian_conjugate``: ``u^dagger(p-k/2, s) u(p+k/2, s2) / (2E_- 2E_+)``.
    Both reduce to ``1/(2 energy(p))`` at ``k = 0`` for equal spins.
    """
    p = np.asarray(p, dtype=float)
    k = np.asarray(k, dtype=float)
    lo = dirac_u(spec, p - 0.5 * k, s)
    hi = dirac_u(spec, p + 0.5 * k, s2)
    if convention == "dirac_conjugate":
        return complex(lo.bar() @ hi.components) / (
            2.0 * spec.mass * math.sqrt(4.0 * lo.energy * hi.energy))
    if convention == "hermitian_conjugate":
        return complex(lo.components.conj() @ hi.components) / (4.0 * lo.energy * hi.energy)
    raise ValueError(f"unknown convention {convention!r}")


def pairing_matrix(spec: PacketSpec, p, k, convention: str = "dirac_conjugate") -> np.ndarray:
    """2x2 array of :func:`pairing_ratio` over ``(s, s2)`` in ``(up, down)`` order."""
    spins = ("up", "down")
    return np.array([[pairing_ratio(spec, p, k, a, b, convention) for b in spins] for a in spins])
