# cython: language_level=3
"""Compiled kernels; see ``_pykernels.py`` for the reference numpy version."""
import numpy as np
from libc.math cimport sqrt, exp, log, fabs, cos, sin, sinh, asinh


cdef double LOG8 = log(8.0)


cdef inline double lag(int n, double alpha, double x) noexcept nogil:
    cdef double prev = 1.0, cur, nxt
    cdef int k
    if n == 0:
        return 1.0
    cur = alpha + 1.0 - x
    for k in range(1, n):
        nxt = ((2 * k + alpha + 1.0 - x) * cur - (k + alpha) * prev) / (k + 1)
        prev = cur
        cur = nxt
    return cur


def laguerre(int n, int alpha, x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = lag(n, alpha, xv[i])
    return out.reshape(np.shape(x))


cdef inline double log_power(double base, int power) noexcept nogil:
    if power == 0:
        return 0.0
    if base == 0.0:
        return -1e308
    return power * log(base)


def wigner_closed(int form, int n, int alpha, double lognorm, double sigma,
                  double mass, double ebar, double pbar,
                  rho, z, p_perp, p_z, t, int velocity, bint covariant):
    b = np.broadcast_arrays(*(np.asarray(v, dtype=np.float64) for v in (rho, z, p_perp, p_z, t)))
    shape = b[0].shape
    cdef const double[::1] rv = np.ascontiguousarray(b[0]).ravel()
    cdef const double[::1] zv = np.ascontiguousarray(b[1]).ravel()
    cdef const double[::1] pv = np.ascontiguousarray(b[2]).ravel()
    cdef const double[::1] pzv = np.ascontiguousarray(b[3]).ravel()
    cdef const double[::1] tv = np.ascontiguousarray(b[4]).ravel()
    out = np.empty(rv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double base, logpref, L, eps, ax, ap, expo, mp
    cdef double s2 = sigma * sigma
    cdef double ybar = asinh(pbar / mass)
    with nogil:
        for i in range(rv.shape[0]):
            if form == 0:
                base = pv[i] / sigma
                logpref = log_power(base, 2 * alpha)
                L = lag(n, alpha, base * base)
            elif form == 1:
                base = sigma * rv[i]
                logpref = log_power(base, 2 * alpha)
                L = lag(n, alpha, base * base)
            elif form == 2:
                base = rv[i] * pv[i]
                logpref = log_power(base, alpha)
                L = lag(n, alpha, 0.5 * (s2 * rv[i] * rv[i] + pv[i] * pv[i] / s2))
            else:
                base = rv[i] * pv[i]
                logpref = log_power(base, alpha)
                L = lag(n, alpha, base)
            if L == 0.0 or logpref <= -1e308:
                ov[i] = 0.0
                continue
            logpref = logpref + 2.0 * log(fabs(L))
            eps = sqrt(pv[i] * pv[i] + pzv[i] * pzv[i] + mass * mass)
            if velocity == 0:
                ax = (ebar * zv[i] - pbar * tv[i]) / mass
            else:
                ax = ebar * (zv[i] - pzv[i] / eps * tv[i]) / mass
            if covariant:
                mp = sqrt(pv[i] * pv[i] + mass * mass)
                ap = mp * sinh(asinh(pzv[i] / mp) - ybar)
            else:
                ap = mass * (pzv[i] - pbar) / ebar
            expo = -s2 * (rv[i] * rv[i] + ax * ax) - (pv[i] * pv[i] + ap * ap) / s2
            ov[i] = exp(LOG8 + lognorm + logpref + expo)
    return out.reshape(shape)


cdef inline void reduced_amp(double qx, double qy, int n, int a, double s,
                             double sigma, double* re, double* im) noexcept nogil:
    cdef double br = qx / sigma, bi = s * qy / sigma
    cdef double pr = 1.0, pi = 0.0, tmp
    cdef double L = lag(n, a, (qx * qx + qy * qy) / (sigma * sigma))
    cdef int j
    for j in range(a):
        tmp = pr * br - pi * bi
        pi = pr * bi + pi * br
        pr = tmp
    re[0] = pr * L
    im[0] = pi * L


def oracle_sum(int mode, double spin, int n, int ell, double sigma, double mass,
               double ebar, double pbar, p, r, double t,
               x_t, w_t, x_z, w_z):
    cdef const double[::1] xt = np.ascontiguousarray(x_t, dtype=np.float64)
    cdef const double[::1] wt = np.ascontiguousarray(w_t, dtype=np.float64)
    cdef const double[::1] xz = np.ascontiguousarray(x_z, dtype=np.float64)
    cdef const double[::1] wz = np.ascontiguousarray(w_z, dtype=np.float64)
    cdef double px = p[0], py = p[1], pz = p[2]
    cdef double rx = r[0], ry = r[1], rz = r[2]
    cdef int a = ell if ell >= 0 else -ell
    cdef double s = 1.0 if ell >= 0 else -1.0
    cdef double m2 = mass * mass
    cdef double lz = 2.0 * sigma * ebar / mass
    cdef Py_ssize_t i, j, k
    cdef double kx, ky, kz, mx, my, mz, qx, qy, qz, em, ep, de, ph
    cdef double ar, ai, br, bi, cr, ci, dr, di, root, dot, cross, norm, w
    cdef double fr, fi, c, sn
    cdef double tot_r = 0.0, tot_i = 0.0, row_r, row_i, col_r, col_i
    with nogil:
        for i in range(xt.shape[0]):
            kx = 2.0 * sigma * xt[i]
            row_r = 0.0
            row_i = 0.0
            for j in range(xt.shape[0]):
                ky = 2.0 * sigma * xt[j]
                col_r = 0.0
                col_i = 0.0
                for k in range(xz.shape[0]):
                    kz = lz * xz[k]
                    mx = px - 0.5 * kx
                    my = py - 0.5 * ky
                    mz = pz - 0.5 * kz
                    qx = px + 0.5 * kx
                    qy = py + 0.5 * ky
                    qz = pz + 0.5 * kz
                    em = sqrt(mx * mx + my * my + mz * mz + m2)
                    ep = sqrt(qx * qx + qy * qy + qz * qz + m2)
                    de = 2.0 * (px * kx + py * ky + pz * kz) / (em + ep)
                    ph = kx * rx + ky * ry + kz * rz - t * de
                    reduced_amp(mx, my, n, a, s, sigma, &ar, &ai)
                    reduced_amp(qx, qy, n, a, s, sigma, &br, &bi)
                    # conj(a) * b
                    cr = ar * br + ai * bi
                    ci = ar * bi - ai * br
                    if mode == 0:
                        dr = 1.0 / sqrt(4.0 * em * ep)
                        di = 0.0
                    else:
                        root = sqrt((em + mass) * (ep + mass))
                        dot = (mx * qx + my * qy + mz * qz) / root
                        cross = spin * (mx * qy - my * qx) / root
                        if mode == 1:
                            norm = 2.0 * mass * sqrt(4.0 * em * ep)
                            dr = (root - dot) / norm
                            di = -cross / norm
                        else:
                            norm = 4.0 * em * ep
                            dr = (root + dot) / norm
                            di = cross / norm
                    fr = cr * dr - ci * di
                    fi = cr * di + ci * dr
                    c = cos(ph)
                    sn = sin(ph)
                    w = wz[k]
                    col_r = col_r + w * (fr * c - fi * sn)
                    col_i = col_i + w * (fr * sn + fi * c)
                row_r = row_r + wt[j] * col_r
                row_i = row_i + wt[j] * col_i
            tot_r = tot_r + wt[i] * row_r
            tot_i = tot_i + wt[i] * row_i
    return complex(tot_r, tot_i)
