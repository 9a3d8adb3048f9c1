"""CSV serialisation of snapshots and convergence sweeps."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .euler import PrimitiveState, internal_energy, log_specific_entropy

SNAPSHOT_COLUMNS = ["x", "rho", "u", "p", "e", "eta", "Pi"]
REFERENCE_COLUMNS = ["rho_ref", "u_ref", "p_ref"]
CONVERGENCE_COLUMNS = ["n_cells", "h", "err_rho_l1", "err_u_l1", "err_p_l1", "observed_order"]


def fmt(v: float) -> str:
    # 17 significant digits: exact float round trip
    return f"{v + 0.0:.16e}"  # +0.0 drops negative zero


def _open_for_write(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", newline="")


def write_snapshot_csv(path, x, W: PrimitiveState, gas, Pi, reference: PrimitiveState | None = None):
    """One row per cell, ordered by x; raises OSError on I/O failure."""
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="stable")
    e = internal_energy(W, gas)
    eta = -W.rho * log_specific_entropy(W, gas)
    cols = [x, W.rho, W.u, W.p, e, eta, Pi]
    header = list(SNAPSHOT_COLUMNS)
    if reference is not None:
        cols += [reference.rho, reference.u, reference.p]
        header += REFERENCE_COLUMNS
    cols = [np.broadcast_to(np.asarray(c, dtype=float), x.shape)[order] for c in cols]
    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([fmt(v) for v in row])
    return Path(path)


def read_csv_columns(path) -> dict:
    """Read a CSV written by this module into {column: float array}.

    Empty fields become NaN.
    """
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) if v != "" else math.nan for v in r] for r in reader]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


@dataclass(frozen=True)
class ConvergenceRow:
    n_cells: int
    h: float
    err_rho: float
    err_u: float
    err_p: float


def observed_orders(rows) -> list:
    """Density L1 order between consecutive rows; None where undefined."""
    out = [None]
    for a, b in zip(rows, rows[1:]):
        if a.err_rho > 0.0 and b.err_rho > 0.0 and a.h != b.h:
            out.append(math.log(a.err_rho / b.err_rho) / math.log(a.h / b.h))
        else:
            out.append(None)
    return out


def write_convergence_csv(path, rows):
    rows = list(rows)
    if len(rows) < 2:
        raise ValueError("a convergence table needs at least two grids")
    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CONVERGENCE_COLUMNS)
        for r, order in zip(rows, observed_orders(rows)):
            w.writerow(
                [str(r.n_cells), fmt(r.h), fmt(r.err_rho), fmt(r.err_u), fmt(r.err_p),
                 "" if order is None else fmt(order)]
            )
    return Path(path)
