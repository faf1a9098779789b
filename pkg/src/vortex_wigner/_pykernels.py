"""Pure numpy implementation of the hot kernels.

Mirrors ``_core.pyx`` function by function; ``_kernels`` picks one of the two
at import time.
"""
from __future__ import annotations

import math

import numpy as np

LOG8 = math.log(8.0)

FORM_MOMENTUM, FORM_POSITION, FORM_SYMMETRIC, FORM_SYMMETRIC_PRODUCT = 0, 1, 2, 3
MODE_SCALAR, MODE_DIRAC, MODE_HERMITIAN = 0, 1, 2


def laguerre(n, alpha, x):
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = alpha + 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + alpha + 1 - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def _log_power(base, power):
    # log(base**power) with 0**0 = 1 and log(0) -> -inf
    if power == 0:
        return np.zeros_like(base)
    with np.errstate(divide="ignore"):
        return power * np.log(base)


def wigner_closed(form, n, alpha, lognorm, sigma, mass, ebar, pbar,
                  rho, z, p_perp, p_z, t, velocity, covariant):
    rho = np.asarray(rho, dtype=float)
    z = np.asarray(z, dtype=float)
    p_perp = np.asarray(p_perp, dtype=float)
    p_z = np.asarray(p_z, dtype=float)
    t = np.asarray(t, dtype=float)

    if form == FORM_MOMENTUM:
        base = p_perp / sigma
        logpref = _log_power(base, 2 * alpha)
        lag = laguerre(n, alpha, base * base)
    elif form == FORM_POSITION:
        base = sigma * rho
        logpref = _log_power(base, 2 * alpha)
        lag = laguerre(n, alpha, base * base)
    elif form == FORM_SYMMETRIC:
        base = rho * p_perp
        logpref = _log_power(base, alpha)
        lag = laguerre(n, alpha, 0.5 * ((sigma * rho) ** 2 + (p_perp / sigma) ** 2))
    elif form == FORM_SYMMETRIC_PRODUCT:
        base = rho * p_perp
        logpref = _log_power(base, alpha)
        lag = laguerre(n, alpha, base)
    else:
        raise ValueError(f"unknown form code {form}")
    with np.errstate(divide="ignore"):
        logpref = logpref + 2.0 * np.log(np.abs(lag))

    if velocity == 0:
        axial_x = (ebar * z - pbar * t) / mass
    else:
        eps = np.sqrt(p_perp**2 + p_z**2 + mass**2)
        axial_x = ebar * (z - p_z / eps * t) / mass
    if covariant:
        # (ebar p_z - pbar eps)/m = m_perp sinh(y - Y) in rapidities; better conditioned
        m_perp = np.sqrt(p_perp**2 + mass**2)
        axial_p = m_perp * np.sinh(np.arcsinh(p_z / m_perp) - math.asinh(pbar / mass))
    else:
        axial_p = mass * (p_z - pbar) / ebar
    expo = -sigma**2 * (rho**2 + axial_x**2) - (p_perp**2 + axial_p**2) / sigma**2
    return np.exp(LOG8 + lognorm + logpref + expo)


def _reduced_amp(qx, qy, n, ell, sigma):
    a = abs(ell)
    s = 1.0 if ell >= 0 else -1.0
    lag = laguerre(n, a, (qx * qx + qy * qy) / (sigma * sigma))
    if a == 0:
        return lag.astype(complex)
    return ((qx + 1j * s * qy) / sigma) ** a * lag


def _integrand_slab(mode, spin, n, ell, sigma, mass, p, r, t, kx, ky, kz):
    px, py, pz = p
    mx, my, mz = px - 0.5 * kx, py - 0.5 * ky, pz - 0.5 * kz
    qx, qy, qz = px + 0.5 * kx, py + 0.5 * ky, pz + 0.5 * kz
    m2 = mass * mass
    em = np.sqrt(mx * mx + my * my + mz * mz + m2)
    ep = np.sqrt(qx * qx + qy * qy + qz * qz + m2)
    de = 2.0 * (px * kx + py * ky + pz * kz) / (em + ep)
    phase = kx * r[0] + ky * r[1] + kz * r[2] - t * de
    amp = np.conj(_reduced_amp(mx, my, n, ell, sigma)) * _reduced_amp(qx, qy, n, ell, sigma)
    if mode == MODE_SCALAR:
        dens = 1.0 / np.sqrt(4.0 * em * ep)
    else:
        root = np.sqrt((em + mass) * (ep + mass))
        dot = mx * qx + my * qy + mz * qz
        cross = mx * qy - my * qx
        pair = (dot + 1j * spin * cross) / root
        if mode == MODE_DIRAC:
            dens = (root - pair) / (2.0 * mass * np.sqrt(4.0 * em * ep))
        else:
            dens = (root + pair) / (4.0 * em * ep)
    return amp * dens * (np.cos(phase) + 1j * np.sin(phase))


def oracle_sum(mode, spin, n, ell, sigma, mass, ebar, pbar, p, r, t,
               x_t, w_t, x_z, w_z):
    """Weighted sum over the tensor-product Hermite grid in ``k``.

    ``k_perp = 2 sigma x`` and ``k_z = 2 sigma (ebar/m) x`` so that the
    Gaussian envelope of the amplitude pair is exactly ``exp(-|x|**2)``.
    """
    x_t = np.asarray(x_t, dtype=float)
    w_t = np.asarray(w_t, dtype=float)
    x_z = np.asarray(x_z, dtype=float)
    w_z = np.asarray(w_z, dtype=float)
    ky = (2.0 * sigma * x_t)[:, None]
    kz = (2.0 * sigma * (ebar / mass) * x_z)[None, :]
    wyz = w_t[:, None] * w_z[None, :]
    total = 0.0 + 0.0j
    for xi, wi in zip(x_t, w_t):
        kx = 2.0 * sigma * xi
        f = _integrand_slab(mode, spin, n, ell, sigma, mass, p, r, t, kx, ky, kz)
        total += wi * np.sum(wyz * f)
    return complex(total)
