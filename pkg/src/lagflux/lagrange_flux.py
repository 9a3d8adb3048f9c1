"""Interface solver of the semi-discrete Lagrange-Flux scheme.

At each interface between a left cell L and a right cell R the scheme uses a
centred velocity u*, one pseudo-viscous pressure per adjacent half cell, the
interface pressure p* (mean of the two half-cell pressures) and an energy flux
scalar q* consistent with p*u. The numerical flux is

    Phi = U_upw * u* + (0, p*, q*)

where U_upw is the left cell average when u* >= 0 and the right one otherwise.

All functions accept scalar or array states, so a whole grid of interfaces
can be resolved in one call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .euler import (
    ConservativeState,
    GasModel,
    PrimitiveState,
    primitive_from_conservative,
    sound_speed,
)


@dataclass(frozen=True)
class ViscosityParams:
    """Linear (``alpha``) and quadratic (``beta``) pseudo-viscosity coefficients."""

    alpha: float = 0.5
    beta: float = 1.2

    def __post_init__(self):
        if not (self.alpha >= 0.0 and self.beta >= 0.0):
            raise ValueError("pseudo-viscosity coefficients must be >= 0")

    @classmethod
    def for_gas(cls, gas: GasModel, alpha: float = 0.5) -> ViscosityParams:
        """Default coefficients: alpha = 1/2, beta = (gamma + 1)/2."""
        return cls(alpha=alpha, beta=0.5 * (gas.gamma + 1.0))


@dataclass(frozen=True)
class InterfaceResolution:
    u_star: float | np.ndarray
    p_tilde_plus: float | np.ndarray
    p_tilde_minus: float | np.ndarray
    p_star: float | np.ndarray
    q_star: float | np.ndarray
    pi_plus: float | np.ndarray
    pi_minus: float | np.ndarray


def interface_velocity(uL, uR):
    return 0.5 * (uL + uR)


def viscosity_increment(W: PrimitiveState, delta, params: ViscosityParams, gas: GasModel):
    """Additive pseudo-viscous pressure of a half cell.

    ``delta`` is the velocity jump across the half cell (u* - u_j on the
    right half of cell j, u_{j+1} - u* on the left half of cell j+1). The
    increment is non-negative and vanishes in expansion (delta >= 0).
    """
    dm = np.minimum(0.0, delta)
    rc = W.rho * sound_speed(W, gas)
    return -params.alpha * rc * dm - params.beta * W.rho * np.abs(delta) * dm


def half_cell_production(W: PrimitiveState, delta, params: ViscosityParams, gas: GasModel):
    """Entropy production alpha rho c [delta_-]^2 + beta rho |delta| [delta_-]^2."""
    dm2 = np.minimum(0.0, delta) ** 2
    rc = W.rho * sound_speed(W, gas)
    return params.alpha * rc * dm2 + params.beta * W.rho * np.abs(delta) * dm2


def resolve_interface(
    WL: PrimitiveState, WR: PrimitiveState, params: ViscosityParams, gas: GasModel
) -> InterfaceResolution:
    """Solve the interface quantities in closed form.

    With u* fixed the half-cell pressures and p* form a linear system:

        pt+ = (pL + p*)/2 + VL,  pt- = (pR + p*)/2 + VR,  p* = (pt+ + pt-)/2

    whose solution is p* = (pL + pR)/2 + VL + VR.
    """
    u_star = interface_velocity(WL.u, WR.u)
    dL = u_star - WL.u
    dR = WR.u - u_star
    VL = viscosity_increment(WL, dL, params, gas)
    VR = viscosity_increment(WR, dR, params, gas)
    p_star = 0.5 * (WL.p + WR.p) + VL + VR
    pt_plus = 0.5 * (WL.p + p_star) + VL
    pt_minus = 0.5 * (WR.p + p_star) + VR
    q_star = WL.p * WL.u + pt_plus * dL + WL.u * (p_star - WL.p)
    return InterfaceResolution(
        u_star=u_star,
        p_tilde_plus=pt_plus,
        p_tilde_minus=pt_minus,
        p_star=p_star,
        q_star=q_star,
        pi_plus=half_cell_production(WL, dL, params, gas),
        pi_minus=half_cell_production(WR, dR, params, gas),
    )


def q_star_from_right(res: InterfaceResolution, WR: PrimitiveState):
    """q* obtained from the right half-cell compatibility relation instead."""
    return (
        WR.p * WR.u
        - res.p_tilde_minus * (WR.u - res.u_star)
        - WR.u * (WR.p - res.p_star)
    )


def compatibility_residuals(
    res: InterfaceResolution, WL: PrimitiveState, WR: PrimitiveState, relative=False
):
    """Residuals (r_sum, r_diff) of the two compatibility checks.

    r_sum measures pt+ (u* - uL) + pt- (uR - u*) = p* (uR - uL);
    r_diff is the disagreement between the left and right expressions of q*.
    With ``relative=True`` each residual is divided by max(1, largest term).
    """
    a = res.p_tilde_plus * (res.u_star - WL.u)
    b = res.p_tilde_minus * (WR.u - res.u_star)
    c = res.p_star * (WR.u - WL.u)
    r_sum = np.abs(a + b - c)
    q_right = q_star_from_right(res, WR)
    r_diff = np.abs(res.q_star - q_right)
    if relative:
        s1 = np.maximum.reduce([np.ones_like(c), np.abs(a), np.abs(b), np.abs(c)])
        s2 = np.maximum.reduce(
            [
                np.ones_like(c),
                np.abs(WL.p * WL.u),
                np.abs(WR.p * WR.u),
                np.abs(a),
                np.abs(b),
                np.abs(WL.u * (res.p_star - WL.p)),
                np.abs(WR.u * (WR.p - res.p_star)),
            ]
        )
        r_sum = r_sum / s1
        r_diff = r_diff / s2
    return r_sum, r_diff


def interface_flux(
    UL: ConservativeState, UR: ConservativeState, params: ViscosityParams, gas: GasModel
):
    """Numerical flux together with the interface resolution it came from."""
    WL = primitive_from_conservative(UL, gas)
    WR = primitive_from_conservative(UR, gas)
    res = resolve_interface(WL, WR, params, gas)
    # tie-break at u* = 0 goes to the left state
    left = res.u_star >= 0.0
    flux = np.array(
        [
            np.where(left, UL.rho, UR.rho) * res.u_star,
            np.where(left, UL.mom, UR.mom) * res.u_star + res.p_star,
            np.where(left, UL.etot, UR.etot) * res.u_star + res.q_star,
        ],
        dtype=float,
    )
    return flux, res


def numerical_flux(
    UL: ConservativeState, UR: ConservativeState, params: ViscosityParams, gas: GasModel
) -> np.ndarray:
    return interface_flux(UL, UR, params, gas)[0]
