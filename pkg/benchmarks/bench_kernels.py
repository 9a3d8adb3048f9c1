"""Compare the compiled and numpy step kernels.

    python benchmarks/bench_kernels.py [--repeat 20]

Times a single kernel call on Sod-like data for several grid sizes, then a
full Sod run to t = 0.23 with each backend.
"""
import argparse
import time
import timeit

import numpy as np

from lagflux import kernels
from lagflux.config import SolverConfig
from lagflux.solver import SolverState, run, with_ghosts


def kernel_table(sizes, repeat):
    cfg = SolverConfig()
    print(f"{'N':>8} " + " ".join(f"{name + ' [us]':>16}" for name in kernels.AVAILABLE) + "   speedup")
    for n in sizes:
        cfg_n = cfg.replace(n_cells=n)
        state = SolverState.riemann(cfg_n.problem, cfg_n.grid, cfg_n.gas)
        Ue = with_ghosts(state.cells, cfg_n.bc)
        dt_h = 0.1
        times = {}
        for name, fn in kernels.AVAILABLE.items():
            number = max(1, 20000 // n)
            t = min(timeit.repeat(lambda: fn(Ue, 1.4, 0.5, 1.2, dt_h), number=number, repeat=repeat)) / number
            times[name] = t
        line = f"{n:8d} " + " ".join(f"{1e6 * times[k]:16.1f}" for k in kernels.AVAILABLE)
        if "compiled" in times:
            line += f"   {times['python'] / times['compiled']:7.1f}x"
        print(line)


def run_table(sizes):
    print(f"\n{'N':>8} {'backend':>10} {'steps':>7} {'wall [s]':>10}")
    for n in sizes:
        cfg = SolverConfig(n_cells=n)
        for name, fn in kernels.AVAILABLE.items():
            t0 = time.perf_counter()
            res = run(cfg, kernel=fn)
            print(f"{n:8d} {name:>10} {res.n_steps:7d} {time.perf_counter() - t0:10.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="100,400,4000,40000")
    ap.add_argument("--run-sizes", default="400,4000")
    args = ap.parse_args()
    np.seterr(all="raise")
    kernel_table([int(s) for s in args.sizes.split(",")], args.repeat)
    run_table([int(s) for s in args.run_sizes.split(",")])


if __name__ == "__main__":
    main()
