"""Comparison of numerical runs against the exact Riemann solution."""
from __future__ import annotations

from .io import ConvergenceRow
from .riemann import l1_error, reference_profile
from .solver import SolverState, run


def reference_for(config, grid, t):
    """Exact profile of ``config.problem`` at time t (initial data at t = 0)."""
    if t > 0.0:
        return reference_profile(config.problem, grid, t, config.gas)
    return SolverState.riemann(config.problem, grid, config.gas).primitive(config.gas)


def run_errors(config):
    """Run ``config`` and return (result, (err_rho, err_u, err_p))."""
    result = run(config)
    ref = reference_for(config, result.grid, result.state.t)
    return result, l1_error(result.state.primitive(config.gas), ref, result.grid.h)


def convergence_study(config, n_list) -> list:
    rows = []
    for n in n_list:
        cfg = config.replace(n_cells=int(n), output_times=())
        result, errs = run_errors(cfg)
        rows.append(ConvergenceRow(int(n), result.grid.h, *errs))
    return rows
