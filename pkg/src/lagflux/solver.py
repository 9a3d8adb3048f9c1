"""Uniform-grid finite-volume driver with forward-Euler time stepping.

Cell data are stored as a (3, N) float array whose rows are rho, rho*u and
rho*E. One ghost cell per side is added for the first-order stencil.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .errors import InvalidState
from .euler import (
    ConservativeState,
    GasModel,
    conservative_from_primitive,
    entropy_eta,
    primitive_from_conservative,
    sound_speed,
)
from .lagrange_flux import ViscosityParams

log = logging.getLogger("lagflux")


@dataclass(frozen=True)
class Grid1D:
    n_cells: int
    x_min: float = 0.0
    x_max: float = 1.0

    def __post_init__(self):
        if self.n_cells < 2:
            raise ValueError("need at least 2 cells")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.h

    @property
    def faces(self) -> np.ndarray:
        return self.x_min + np.arange(self.n_cells + 1) * self.h


class BoundaryCondition(str, Enum):
    TRANSMISSIVE = "transmissive"
    PERIODIC = "periodic"


@dataclass
class SolverState:
    t: float
    cells: np.ndarray

    @property
    def conservative(self) -> ConservativeState:
        return ConservativeState.from_array(self.cells)

    def primitive(self, gas: GasModel):
        return primitive_from_conservative(self.conservative, gas)

    @classmethod
    def from_primitive(cls, W, gas: GasModel, t=0.0) -> SolverState:
        U = conservative_from_primitive(W, gas)
        cells = np.ascontiguousarray(np.broadcast_arrays(U.rho, U.mom, U.etot), dtype=float)
        return cls(t, cells)

    @classmethod
    def riemann(cls, problem, grid: Grid1D, gas: GasModel) -> SolverState:
        """Piecewise-constant data; a cell centred exactly on the diaphragm goes right."""
        left = grid.centers < problem.x_diaphragm
        L = conservative_from_primitive(problem.left, gas).as_array()
        R = conservative_from_primitive(problem.right, gas).as_array()
        cells = np.where(left[None, :], L[:, None], R[:, None])
        return cls(0.0, np.ascontiguousarray(cells))


@dataclass
class DiagnosticsRecord:
    step: int
    t: float
    dt: float
    totals: tuple
    Pi: np.ndarray
    pi_half_sum: float
    flux_left: np.ndarray
    flux_right: np.ndarray
    max_speed: float = float("nan")


def with_ghosts(cells: np.ndarray, bc: BoundaryCondition) -> np.ndarray:
    bc = BoundaryCondition(bc)
    out = np.empty((3, cells.shape[1] + 2))
    out[:, 1:-1] = cells
    if bc is BoundaryCondition.PERIODIC:
        out[:, 0] = cells[:, -1]
        out[:, -1] = cells[:, 0]
    else:
        out[:, 0] = cells[:, 0]
        out[:, -1] = cells[:, -1]
    return out


def max_wave_speed(state: SolverState, gas: GasModel) -> float:
    W = state.primitive(gas)
    return float(np.max(np.abs(W.u) + sound_speed(W, gas)))


def compute_dt(state: SolverState, gas: GasModel, cfl: float, h: float, t_final=None, max_speed=None) -> float:
    """CFL time step cfl*h/max(|u| + c), capped so that t + dt <= t_final.

    ``max_speed`` may be passed when already known for ``state``.
    """
    if not 0.0 < cfl < 0.5:
        raise ValueError("cfl must lie in (0, 0.5)")
    if max_speed is None:
        max_speed = max_wave_speed(state, gas)
    dt = cfl * h / max_speed
    if t_final is not None:
        dt = min(dt, t_final - state.t)
    return dt


def entropy_flux_psi(U_up_L: ConservativeState, U_up_R: ConservativeState, u_star, gas: GasModel):
    """Upwind entropy flux eta(U_L) (u*)_+ + eta(U_R) (u*)_-."""
    return entropy_eta(U_up_L, gas) * np.maximum(u_star, 0.0) + entropy_eta(
        U_up_R, gas
    ) * np.minimum(u_star, 0.0)


def entropy_residual(eta_old, eta_new, psi, dt, h):
    """Per-cell discrete entropy balance; negative means dissipation."""
    psi = np.asarray(psi)
    return np.asarray(eta_new) - np.asarray(eta_old) + (dt / h) * (psi[1:] - psi[:-1])


def conservation_totals(state: SolverState, h: float):
    """(mass, momentum, energy) integrated over the grid."""
    s = state.cells.sum(axis=1)
    return float(h * s[0]), float(h * s[1]), float(h * s[2])


def step(
    state: SolverState,
    params: ViscosityParams,
    gas: GasModel,
    bc,
    dt: float,
    grid: Grid1D,
    step_index: int = 0,
    kernel=None,
):
    """Advance one forward-Euler step; returns (new state, diagnostics)."""
    lf_step = kernel or kernels.lf_step
    h = grid.h
    Ue = with_ghosts(state.cells, bc)
    U_new, flux, _, pi_p, pi_m, psi, eta_old, eta_new, smax, bad = lf_step(
        Ue, gas.gamma, params.alpha, params.beta, dt / h
    )
    if np.any(pi_p < 0.0) or np.any(pi_m < 0.0):
        raise RuntimeError(f"negative half-cell entropy production at step {step_index}")
    if bad >= 0:
        raise InvalidState(
            f"non-positive density or internal energy in cell {bad} after step {step_index}",
            cell=bad,
            step=step_index,
        )
    new = SolverState(state.t + dt, U_new)
    Pi = entropy_residual(eta_old[1:-1], eta_new, psi, dt, h)
    record = DiagnosticsRecord(
        step=step_index,
        t=new.t,
        dt=dt,
        totals=conservation_totals(new, h),
        Pi=Pi,
        pi_half_sum=float(np.sum(pi_p) + np.sum(pi_m)),
        flux_left=flux[:, 0].copy(),
        flux_right=flux[:, -1].copy(),
        max_speed=smax,
    )
    return new, record


@dataclass
class Snapshot:
    t: float
    state: SolverState
    Pi: np.ndarray


@dataclass
class RunResult:
    state: SolverState
    grid: Grid1D
    snapshots: list = field(default_factory=list)
    times: np.ndarray = None
    dts: np.ndarray = None
    totals: np.ndarray = None
    pi_max: np.ndarray = None
    pi_half_sum: np.ndarray = None
    backend: str = ""

    @property
    def n_steps(self) -> int:
        return len(self.dts)


def run(config, on_step=None, kernel=None) -> RunResult:
    """Integrate ``config.problem`` up to ``config.t_final``.

    Per-step scalars (time, dt, totals, max Pi, summed half-cell
    productions) are kept for the whole run; full Pi arrays are only kept
    in snapshots, and every full DiagnosticsRecord is passed to ``on_step``.
    """
    gas = config.gas
    params = config.params
    grid = config.grid
    state = SolverState.riemann(config.problem, grid, gas)
    targets = sorted({float(t) for t in config.output_times if 0.0 <= t <= config.t_final} | {config.t_final})

    times, dts, pi_max, pi_half = [0.0], [], [], []
    totals = [conservation_totals(state, grid.h)]
    snapshots = []
    if targets[0] == 0.0:
        snapshots.append(Snapshot(0.0, state, np.zeros(grid.n_cells)))
        targets.pop(0)

    n = 0
    speed = max_wave_speed(state, gas)
    for target in targets:
        while state.t < target:
            dt = compute_dt(state, gas, config.cfl, grid.h, target, speed)
            state, rec = step(state, params, gas, config.bc, dt, grid, n, kernel)
            if target - state.t <= 1e-14 * max(1.0, target):
                state.t = target
            speed = rec.max_speed
            n += 1
            times.append(state.t)
            dts.append(dt)
            totals.append(rec.totals)
            pi_max.append(float(rec.Pi.max()))
            pi_half.append(rec.pi_half_sum)
            if on_step is not None:
                on_step(rec)
            if n % 500 == 0:
                log.debug("step %d t=%.6g dt=%.3g max Pi=%.3g", n, state.t, dt, pi_max[-1])
        snapshots.append(Snapshot(state.t, state, rec.Pi if n else np.zeros(grid.n_cells)))
    log.info("finished %d steps at t=%g", n, state.t)
    return RunResult(
        state=state,
        grid=grid,
        snapshots=snapshots,
        times=np.array(times),
        dts=np.array(dts),
        totals=np.array(totals),
        pi_max=np.array(pi_max),
        pi_half_sum=np.array(pi_half),
        backend="custom" if kernel is not None else kernels.BACKEND,
    )
