"""Exact Riemann solver for the ideal-gas Euler equations.

Used as the reference solution for shock-tube validation. The star pressure
is found by Newton iteration on the usual pressure function (shock branch
from the Rankine-Hugoniot conditions, rarefaction branch from the isentropic
relations) and can be cross-checked by plain bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import VacuumGenerated
from .euler import GasModel, PrimitiveState, sound_speed


@dataclass(frozen=True)
class RiemannProblem:
    left: PrimitiveState
    right: PrimitiveState
    x_diaphragm: float = 0.5


SOD = RiemannProblem(PrimitiveState(1.0, 0.0, 1.0), PrimitiveState(0.125, 0.0, 0.1), 0.5)


@dataclass(frozen=True)
class StarRegion:
    p_star_exact: float
    u_star_exact: float
    rho_star_L: float
    rho_star_R: float
    iterations: int = 0


@dataclass(frozen=True)
class WaveSpeeds:
    """Bounding speeds of the two acoustic waves.

    For a shock ``head == tail`` is the shock speed; for a rarefaction the
    head is the edge facing the undisturbed state.
    """

    left_kind: str
    left_head: float
    left_tail: float
    contact: float
    right_kind: str
    right_head: float
    right_tail: float


def _scalars(W: PrimitiveState):
    return float(W.rho), float(W.u), float(W.p)


def _branch(p, rho_k, p_k, c_k, g):
    """Value and derivative of f_K(p) for one side."""
    if p > p_k:
        a = 2.0 / ((g + 1.0) * rho_k)
        b = (g - 1.0) / (g + 1.0) * p_k
        root = math.sqrt(a / (p + b))
        return (p - p_k) * root, root * (1.0 - 0.5 * (p - p_k) / (p + b))
    ratio = p / p_k
    f = 2.0 * c_k / (g - 1.0) * (ratio ** ((g - 1.0) / (2.0 * g)) - 1.0)
    df = ratio ** (-(g + 1.0) / (2.0 * g)) / (rho_k * c_k)
    return f, df


def pressure_function(p, WL: PrimitiveState, WR: PrimitiveState, gas: GasModel):
    """f(p) = f_L(p) + f_R(p) + (uR - uL); its root is the star pressure."""
    g = gas.gamma
    rL, uL, pL = _scalars(WL)
    rR, uR, pR = _scalars(WR)
    fL, _ = _branch(p, rL, pL, float(sound_speed(WL, gas)), g)
    fR, _ = _branch(p, rR, pR, float(sound_speed(WR, gas)), g)
    return fL + fR + uR - uL


def _check_vacuum(WL, WR, gas):
    cL = float(sound_speed(WL, gas))
    cR = float(sound_speed(WR, gas))
    if 2.0 * (cL + cR) / (gas.gamma - 1.0) <= float(WR.u) - float(WL.u):
        raise VacuumGenerated("initial data generate a vacuum")
    return cL, cR


def _complete(p, WL, WR, gas, iterations):
    g = gas.gamma
    rL, uL, pL = _scalars(WL)
    rR, uR, pR = _scalars(WR)
    cL = float(sound_speed(WL, gas))
    cR = float(sound_speed(WR, gas))
    fL, _ = _branch(p, rL, pL, cL, g)
    fR, _ = _branch(p, rR, pR, cR, g)
    u = 0.5 * (uL + uR) + 0.5 * (fR - fL)
    g6 = (g - 1.0) / (g + 1.0)

    def rho_star(rho_k, p_k):
        if p > p_k:
            r = p / p_k
            return rho_k * (r + g6) / (g6 * r + 1.0)
        return rho_k * (p / p_k) ** (1.0 / g)

    return StarRegion(p, u, rho_star(rL, pL), rho_star(rR, pR), iterations)


def solve_star(WL: PrimitiveState, WR: PrimitiveState, gas: GasModel, tol=1e-12, max_iter=100) -> StarRegion:
    """Newton iteration from the two-rarefaction guess."""
    g = gas.gamma
    cL, cR = _check_vacuum(WL, WR, gas)
    rL, uL, pL = _scalars(WL)
    rR, uR, pR = _scalars(WR)
    z = (g - 1.0) / (2.0 * g)
    p = ((cL + cR - 0.5 * (g - 1.0) * (uR - uL)) / (cL / pL**z + cR / pR**z)) ** (1.0 / z)
    for it in range(1, max_iter + 1):
        fL, dfL = _branch(p, rL, pL, cL, g)
        fR, dfR = _branch(p, rR, pR, cR, g)
        f = fL + fR + uR - uL
        step = f / (dfL + dfR)
        p_new = p - step
        if p_new <= 0.0:
            p_new = 0.5 * p
        converged = abs(p_new - p) <= 1e-15 * p_new
        p = p_new
        if converged or abs(f) <= 0.1 * tol:
            break
    if abs(pressure_function(p, WL, WR, gas)) > tol:
        raise ArithmeticError("Newton iteration for the star pressure did not converge")
    return _complete(p, WL, WR, gas, it)


def solve_star_bisection(WL: PrimitiveState, WR: PrimitiveState, gas: GasModel, xtol=1e-14) -> StarRegion:
    """Independent bracketing solve; f is increasing in p."""
    _check_vacuum(WL, WR, gas)
    lo = 0.0
    hi = max(float(WL.p), float(WR.p))
    while pressure_function(hi, WL, WR, gas) < 0.0:
        lo, hi = hi, 2.0 * hi
    it = 0
    while hi - lo > xtol * hi and it < 400:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pressure_function(mid, WL, WR, gas) < 0.0:
            lo = mid
        else:
            hi = mid
        it += 1
    return _complete(0.5 * (lo + hi), WL, WR, gas, it)


def wave_speeds(WL: PrimitiveState, WR: PrimitiveState, gas: GasModel, star: StarRegion | None = None) -> WaveSpeeds:
    g = gas.gamma
    star = star or solve_star(WL, WR, gas)
    rL, uL, pL = _scalars(WL)
    rR, uR, pR = _scalars(WR)
    cL = float(sound_speed(WL, gas))
    cR = float(sound_speed(WR, gas))
    ps, us = star.p_star_exact, star.u_star_exact
    z = (g - 1.0) / (2.0 * g)
    if ps > pL:
        s = uL - cL * math.sqrt((g + 1.0) / (2.0 * g) * ps / pL + z)
        left = ("shock", s, s)
    else:
        left = ("rarefaction", uL - cL, us - cL * (ps / pL) ** z)
    if ps > pR:
        s = uR + cR * math.sqrt((g + 1.0) / (2.0 * g) * ps / pR + z)
        right = ("shock", s, s)
    else:
        right = ("rarefaction", uR + cR, us + cR * (ps / pR) ** z)
    return WaveSpeeds(*left, us, *right)


def sample(WL: PrimitiveState, WR: PrimitiveState, gas: GasModel, xi, star: StarRegion | None = None) -> PrimitiveState:
    """Self-similar solution at xi = x/t (scalar or array)."""
    g = gas.gamma
    star = star or solve_star(WL, WR, gas)
    ws = wave_speeds(WL, WR, gas, star)
    rL, uL, pL = _scalars(WL)
    rR, uR, pR = _scalars(WR)
    cL = float(sound_speed(WL, gas))
    cR = float(sound_speed(WR, gas))
    ps, us = star.p_star_exact, star.u_star_exact
    xi = np.asarray(xi, dtype=float)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)

    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    def fill(mask, r, v, q):
        rho[mask], u[mask], p[mask] = r, v, q

    a = 2.0 / (g + 1.0)
    b = 0.5 * (g - 1.0)
    left_side = xi < us
    # left of the contact
    fill(left_side & (xi < ws.left_head), rL, uL, pL)
    fill(left_side & (xi >= ws.left_tail), star.rho_star_L, us, ps)
    if ws.left_kind == "rarefaction":
        fan = left_side & (xi >= ws.left_head) & (xi < ws.left_tail)
        c = a * (cL + b * (uL - xi[fan]))
        fill(fan, rL * (c / cL) ** (1.0 / b), a * (cL + b * uL + xi[fan]), pL * (c / cL) ** (g / b))
    # right of the contact
    right_side = ~left_side
    fill(right_side & (xi > ws.right_head), rR, uR, pR)
    fill(right_side & (xi <= ws.right_tail), star.rho_star_R, us, ps)
    if ws.right_kind == "rarefaction":
        fan = right_side & (xi <= ws.right_head) & (xi > ws.right_tail)
        c = a * (cR - b * (uR - xi[fan]))
        fill(fan, rR * (c / cR) ** (1.0 / b), a * (-cR + b * uR + xi[fan]), pR * (c / cR) ** (g / b))

    if scalar:
        return PrimitiveState(float(rho[0]), float(u[0]), float(p[0]))
    return PrimitiveState(rho, u, p)


def reference_profile(problem: RiemannProblem, grid, t: float, gas: GasModel) -> PrimitiveState:
    """Exact solution sampled at the cell centres of ``grid`` at time t > 0."""
    if not t > 0.0:
        raise ValueError("reference profile needs t > 0")
    xi = (grid.centers - problem.x_diaphragm) / t
    return sample(problem.left, problem.right, gas, xi)


def l1_error(numeric: PrimitiveState, reference: PrimitiveState, h: float):
    """Per-variable discrete L1 errors (rho, u, p)."""
    return tuple(
        float(h * np.sum(np.abs(np.asarray(a) - np.asarray(b))))
        for a, b in (
            (numeric.rho, reference.rho),
            (numeric.u, reference.u),
            (numeric.p, reference.p),
        )
    )
