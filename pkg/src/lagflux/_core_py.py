"""Pure numpy implementation of the step kernel (fallback backend)."""
import numpy as np

from .euler import ConservativeState, GasModel, entropy_eta
from .lagrange_flux import ViscosityParams, interface_flux


def lf_step(Ue, gamma, alpha, beta, dt_over_h):
    gas = GasModel(gamma)
    params = ViscosityParams(alpha, beta)
    Ue = np.asarray(Ue, dtype=float)
    UL = ConservativeState.from_array(Ue[:, :-1])
    UR = ConservativeState.from_array(Ue[:, 1:])
    flux, res = interface_flux(UL, UR, params, gas)
    eta = entropy_eta(ConservativeState.from_array(Ue), gas)
    us = res.u_star
    psi = eta[:-1] * np.maximum(us, 0.0) + eta[1:] * np.minimum(us, 0.0)
    U_new = Ue[:, 1:-1] - dt_over_h * (flux[:, 1:] - flux[:, :-1])
    rho = U_new[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        vel = U_new[1] / rho
        p = (gamma - 1.0) * (U_new[2] - 0.5 * U_new[1] * vel)
        invalid = ~((rho > 0.0) & (p > 0.0))
        if invalid.any():
            return U_new, flux, us, res.pi_plus, res.pi_minus, psi, eta, None, np.nan, int(np.flatnonzero(invalid)[0])
        eta_new = -rho * (np.log(p) - gamma * np.log(rho))
        smax = float(np.max(np.abs(vel) + np.sqrt(gamma * p / rho)))
    return U_new, flux, us, res.pi_plus, res.pi_minus, psi, eta, eta_new, smax, -1
