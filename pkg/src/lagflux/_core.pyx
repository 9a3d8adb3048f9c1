# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled step kernel; same contract as ``_core_py.lf_step``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, fabs

cnp.import_array()


def lf_step(double[:, ::1] Ue, double gamma, double alpha, double beta, double dt_over_h):
    cdef Py_ssize_t m = Ue.shape[1]
    cdef Py_ssize_t n = m - 2
    cdef Py_ssize_t i
    cdef double gm1 = gamma - 1.0
    cdef Py_ssize_t bad = -1
    cdef double smax = 0.0
    cdef double rho, vel, p, dL, dR, dm, dm2, VL, VR, ps, ptp, qs, us, rcL, rcR

    u_a = np.empty(m)
    p_a = np.empty(m)
    rc_a = np.empty(m)
    eta_a = np.empty(m)
    flux_a = np.empty((3, m - 1))
    us_a = np.empty(m - 1)
    pip_a = np.empty(m - 1)
    pim_a = np.empty(m - 1)
    psi_a = np.empty(m - 1)
    new_a = np.empty((3, n))
    eta_new_a = np.empty(n)
    cdef double[::1] u = u_a, pr = p_a, rc = rc_a, eta = eta_a
    cdef double[::1] eta_new = eta_new_a
    cdef double[::1] ust = us_a, pip = pip_a, pim = pim_a, psi = psi_a
    cdef double[:, ::1] F = flux_a, Un = new_a

    for i in range(m):
        rho = Ue[0, i]
        vel = Ue[1, i] / rho
        p = gm1 * (Ue[2, i] - 0.5 * Ue[1, i] * vel)
        u[i] = vel
        pr[i] = p
        rc[i] = rho * sqrt(gamma * p / rho)
        eta[i] = -rho * (log(p) - gamma * log(rho))

    for i in range(m - 1):
        us = 0.5 * (u[i] + u[i + 1])
        dL = us - u[i]
        dR = u[i + 1] - us
        dm = dL if dL < 0.0 else 0.0
        VL = -alpha * rc[i] * dm - beta * Ue[0, i] * fabs(dL) * dm
        dm2 = dm * dm
        pip[i] = alpha * rc[i] * dm2 + beta * Ue[0, i] * fabs(dL) * dm2
        dm = dR if dR < 0.0 else 0.0
        VR = -alpha * rc[i + 1] * dm - beta * Ue[0, i + 1] * fabs(dR) * dm
        dm2 = dm * dm
        pim[i] = alpha * rc[i + 1] * dm2 + beta * Ue[0, i + 1] * fabs(dR) * dm2
        ps = 0.5 * (pr[i] + pr[i + 1]) + VL + VR
        ptp = 0.5 * (pr[i] + ps) + VL
        qs = pr[i] * u[i] + ptp * dL + u[i] * (ps - pr[i])
        ust[i] = us
        if us >= 0.0:
            F[0, i] = Ue[0, i] * us
            F[1, i] = Ue[1, i] * us + ps
            F[2, i] = Ue[2, i] * us + qs
            psi[i] = eta[i] * us
        else:
            F[0, i] = Ue[0, i + 1] * us
            F[1, i] = Ue[1, i + 1] * us + ps
            F[2, i] = Ue[2, i + 1] * us + qs
            psi[i] = eta[i + 1] * us

    for i in range(n):
        Un[0, i] = Ue[0, i + 1] - dt_over_h * (F[0, i + 1] - F[0, i])
        Un[1, i] = Ue[1, i + 1] - dt_over_h * (F[1, i + 1] - F[1, i])
        Un[2, i] = Ue[2, i + 1] - dt_over_h * (F[2, i + 1] - F[2, i])
        rho = Un[0, i]
        if not rho > 0.0:
            if bad < 0:
                bad = i
            continue
        vel = Un[1, i] / rho
        p = gm1 * (Un[2, i] - 0.5 * Un[1, i] * vel)
        if not p > 0.0:
            if bad < 0:
                bad = i
            continue
        eta_new[i] = -rho * (log(p) - gamma * log(rho))
        smax = max(smax, fabs(vel) + sqrt(gamma * p / rho))

    return new_a, flux_a, us_a, pip_a, pim_a, psi_a, eta_a, eta_new_a, smax, bad
