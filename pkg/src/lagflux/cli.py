"""Command-line driver: ``lagflux run`` and ``lagflux convergence``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import kernels
from .config import build_config, read_config_file
from .errors import InvalidState, UsageError, VacuumGenerated
from .io import observed_orders, write_convergence_csv, write_snapshot_csv
from .riemann import l1_error
from .solver import run
from .study import convergence_study, reference_for

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_STATE = 3
EXIT_IO = 4

log = logging.getLogger("lagflux")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _float_list(text):
    try:
        return tuple(float(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--problem", choices=["sod", "custom"])
    common.add_argument("--left", type=_float_list, metavar="RHO,U,P")
    common.add_argument("--right", type=_float_list, metavar="RHO,U,P")
    common.add_argument("--x-diaphragm", type=float)
    common.add_argument("--n-cells", metavar="N[,N...]")
    common.add_argument("--x-min", type=float)
    common.add_argument("--x-max", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--cfl", type=float)
    common.add_argument("--t-final", type=float)
    common.add_argument("--bc", choices=["transmissive", "periodic"])
    common.add_argument("--config", metavar="FILE")
    common.add_argument("--output", metavar="DIR")
    common.add_argument("--output-times", type=_float_list, metavar="T[,T...]")
    common.add_argument("--emit-plots", action="store_true", default=None)
    common.add_argument("--with-reference", action="store_true", default=None)

    parser = _Parser(prog="lagflux", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("run", parents=[common], help="integrate one problem")
    sub.add_parser("convergence", parents=[common], help="grid sweep against the exact solution")
    return parser


@dataclass(frozen=True)
class Invocation:
    command: str
    config: object
    sweep: tuple = ()


_FLAG_TO_KEY = {
    "problem": "problem",
    "left": "left",
    "right": "right",
    "x_diaphragm": "x_diaphragm",
    "x_min": "x_min",
    "x_max": "x_max",
    "gamma": "gamma",
    "alpha": "alpha",
    "beta": "beta",
    "cfl": "cfl",
    "t_final": "t_final",
    "bc": "bc",
    "output": "output_path",
    "output_times": "output_times",
    "emit_plots": "emit_plots",
    "with_reference": "with_reference",
}


def _int_list(text):
    try:
        return tuple(int(v) for v in str(text).replace(",", " ").split())
    except ValueError:
        raise UsageError(f"--n-cells expects integers, got {text!r}") from None


def parse_cli(argv) -> Invocation:
    """Flags override config-file values, which override defaults."""
    ns = _build_parser().parse_args(argv)
    values = read_config_file(ns.config) if ns.config else {}
    for flag, key in _FLAG_TO_KEY.items():
        v = getattr(ns, flag)
        if v is not None:
            values[key] = v
    sweep = ()
    if ns.n_cells is not None:
        counts = _int_list(ns.n_cells)
        if ns.command == "run":
            if len(counts) != 1:
                raise UsageError("run takes a single --n-cells value")
            values["n_cells"] = counts[0]
        else:
            sweep = counts
    if ns.command == "convergence":
        sweep = sweep or ((values["n_cells"],) if "n_cells" in values else (400, 4000))
        if len(sweep) < 2:
            raise UsageError("convergence needs at least two grid sizes")
        if any(n < 2 for n in sweep):
            raise UsageError("n_cells must be >= 2")
        values.setdefault("n_cells", sweep[0])
    config = build_config(values)
    if ns.command == "convergence" and config.bc.value != "transmissive":
        raise UsageError("convergence against the exact solution needs transmissive boundaries")
    return Invocation(ns.command, config, sweep)


def _snapshot_name(t):
    return f"snapshot_t{t:.6f}"


def cmd_run(config) -> int:
    gas = config.gas
    t0 = time.perf_counter()
    result = run(config)
    elapsed = time.perf_counter() - t0
    out = Path(config.output_path)
    for snap in result.snapshots:
        W = snap.state.primitive(gas)
        ref = None
        if config.with_reference:
            ref = reference_for(config, result.grid, snap.t)
        path = write_snapshot_csv(out / f"{_snapshot_name(snap.t)}.csv", result.grid.centers, W, gas, snap.Pi, ref)
        print(f"wrote {path}")
        if config.emit_plots:
            from .svg import emit_svg_plots

            for p in emit_svg_plots(out / _snapshot_name(snap.t), path):
                print(f"wrote {p}")
    print(
        f"{config.problem_name}: N={config.n_cells} steps={result.n_steps} t={result.state.t:.6g} "
        f"backend={result.backend} elapsed={elapsed:.3f}s"
    )
    if config.with_reference and result.state.t > 0.0:
        errs = l1_error(result.state.primitive(gas), reference_for(config, result.grid, result.state.t), result.grid.h)
        print("L1 error rho={:.6e} u={:.6e} p={:.6e}".format(*errs))
    return EXIT_OK


def cmd_convergence(config, sweep) -> int:
    rows = convergence_study(config, sweep)
    path = write_convergence_csv(Path(config.output_path) / "convergence.csv", rows)
    for r, order in zip(rows, observed_orders(rows)):
        o = "" if order is None else f"{order:.4f}"
        print(f"N={r.n_cells:6d} h={r.h:.4e} err_rho={r.err_rho:.6e} err_u={r.err_u:.6e} err_p={r.err_p:.6e} order={o}")
    print(f"wrote {path}")
    return EXIT_OK


def _setup_logging():
    level = os.environ.get("LAGFLUX_LOG", "warn").lower()
    levels = {"error": logging.ERROR, "warn": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    try:
        inv = parse_cli(sys.argv[1:] if argv is None else argv)
        log.info("kernel backend: %s", kernels.BACKEND)
        if inv.command == "run":
            return cmd_run(inv.config)
        return cmd_convergence(inv.config, inv.sweep)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidState, VacuumGenerated) as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
