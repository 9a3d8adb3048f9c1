"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (section "acceptance criteria").
"""
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_primitive
from lagflux import cli, kernels
from lagflux.euler import GasModel, PrimitiveState, conservative_from_primitive, physical_flux
from lagflux.lagrange_flux import ViscosityParams, compatibility_residuals, numerical_flux, resolve_interface
from lagflux.riemann import (
    SOD,
    l1_error,
    pressure_function,
    reference_profile,
    sample,
    solve_star,
    solve_star_bisection,
    wave_speeds,
)
from lagflux.solver import Grid1D, SolverState, compute_dt, conservation_totals, run, step

GAS = GasModel(1.4)
PARAMS = ViscosityParams(0.5, 1.2)
N_RANDOM = 10_000


def report(n, title, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} AC{n}: {title} | {detail}")
    assert ok, detail


def sod_config(n):
    argv = ["run", "--problem", "sod", "--n-cells", str(n), "--t-final", "0.23", "--cfl", "0.25", "--gamma", "1.4"]
    return cli.parse_cli(argv).config


class CountingKernel:
    """Wraps the active kernel and counts negative half-cell productions."""

    def __init__(self):
        self.inner = kernels.lf_step
        self.violations = 0
        self.checked = 0

    def __call__(self, *args):
        out = self.inner(*args)
        pip, pim = out[3], out[4]
        self.violations += int(np.count_nonzero(pip < 0.0) + np.count_nonzero(pim < 0.0))
        self.checked += pip.size + pim.size
        return out


@pytest.fixture(scope="module")
def sod_runs():
    runs = {}
    for n in (400, 4000):
        cfg = sod_config(n)
        kern = CountingKernel()
        windows = []

        def on_step(rec, windows=windows, n=n):
            if n == 400:
                windows.append((rec.t, np.flatnonzero(rec.Pi > 1e-7), float(rec.Pi.max())))

        t0 = time.perf_counter()
        res = run(cfg, on_step=on_step, kernel=kern)
        elapsed = time.perf_counter() - t0
        ref = reference_profile(cfg.problem, res.grid, res.state.t, cfg.gas)
        errs = l1_error(res.state.primitive(cfg.gas), ref, res.grid.h)
        runs[n] = dict(cfg=cfg, res=res, elapsed=elapsed, errs=errs, kernel=kern, windows=windows)
    return runs


def _wave_features(res, gas):
    x = res.grid.centers
    h = res.grid.h
    W = res.state.primitive(gas)
    dp = np.abs(np.diff(W.p))
    drho = np.abs(np.diff(W.rho))
    i_shock = int(np.argmax(dp))
    x_shock = 0.5 * (x[i_shock] + x[i_shock + 1])
    left = np.arange(len(drho)) < i_shock - 5
    # contact: biggest density jump left of the shock where pressure is flat
    quiet = left & (dp < 0.05 * dp.max())
    i_contact = int(np.flatnonzero(quiet)[np.argmax(drho[quiet])])
    x_contact = 0.5 * (x[i_contact] + x[i_contact + 1])
    # rarefaction: the velocity rises gradually from 0 to the plateau
    fan = np.flatnonzero((W.u > 0.05) & (W.u < 0.85) & (x < x_contact))
    monotone = bool(np.all(np.diff(W.u[fan[0] : fan[-1] + 1]) >= -1e-10)) if fan.size else False
    return dict(x_shock=x_shock, x_contact=x_contact, fan=fan, fan_width=fan.size * h, fan_monotone=monotone,
                x_fan=float(x[fan].mean()) if fan.size else math.nan)


def test_ac1_sod_reproduction(sod_runs):
    r = sod_runs[400]
    f = _wave_features(r["res"], GAS)
    ws = wave_speeds(SOD.left, SOD.right, GAS)
    t = r["res"].state.t
    order_ok = f["x_fan"] < f["x_contact"] < f["x_shock"]
    where_ok = abs(f["x_contact"] - (0.5 + ws.contact * t)) < 0.02 and abs(f["x_shock"] - (0.5 + ws.right_head * t)) < 0.02
    fan_ok = f["fan_monotone"] and f["fan_width"] > 0.1
    err = r["errs"][0]
    ok = order_ok and where_ok and fan_ok and err <= 0.05 and r["elapsed"] <= 5.0 and t == 0.23
    report(1, "Sod N=400 rarefaction/contact/shock, L1(rho)<=0.05, <=5 s", ok,
           f"fan@{f['x_fan']:.3f} (width {f['fan_width']:.3f}) contact@{f['x_contact']:.4f} shock@{f['x_shock']:.4f} "
           f"L1(rho)={err:.4e} runtime={r['elapsed']:.2f}s backend={kernels.BACKEND}")


def test_ac2_grid_convergence(sod_runs):
    e400, e4000 = sod_runs[400]["errs"][0], sod_runs[4000]["errs"][0]
    order = math.log(e400 / e4000) / math.log(10.0)
    total = sod_runs[400]["elapsed"] + sod_runs[4000]["elapsed"]
    ok = e4000 <= 0.4 * e400 and order >= 0.6 and total <= 180.0
    report(2, "err(4000)<=0.4 err(400), order>=0.6, <=3 min", ok,
           f"err400={e400:.4e} err4000={e4000:.4e} ratio={e4000 / e400:.4f} order={order:.4f} runtime={total:.2f}s")


def test_ac3_production_sign(sod_runs):
    rng = np.random.default_rng(2023)
    WL, WR = random_primitive(rng, N_RANDOM), random_primitive(rng, N_RANDOM)
    r = resolve_interface(WL, WR, PARAMS, GAS)
    rand_bad = int(np.count_nonzero(r.pi_plus < 0) + np.count_nonzero(r.pi_minus < 0))
    run_bad = sum(sod_runs[n]["kernel"].violations for n in (400, 4000))
    checked = sum(sod_runs[n]["kernel"].checked for n in (400, 4000))
    ok = rand_bad == 0 and run_bad == 0 and checked > 0
    report(3, "pi+ >= 0 and pi- >= 0 everywhere", ok,
           f"run violations={run_bad}/{checked} half-cells, random violations={rand_bad}/{2 * N_RANDOM}")


def test_ac4_expansion_transparency():
    rng = np.random.default_rng(4)
    WL, WR = random_primitive(rng, N_RANDOM), random_primitive(rng, N_RANDOM)
    lo, hi = np.minimum(WL.u, WR.u), np.maximum(WL.u, WR.u)
    WL, WR = PrimitiveState(WL.rho, lo, WL.p), PrimitiveState(WR.rho, hi, WR.p)
    r = resolve_interface(WL, WR, PARAMS, GAS)
    bad_pi = int(np.count_nonzero(r.pi_plus != 0.0) + np.count_nonzero(r.pi_minus != 0.0))
    bad_p = int(np.count_nonzero(r.p_star != 0.5 * (WL.p + WR.p)))
    ok = bad_pi == 0 and bad_p == 0
    report(4, "uR >= uL gives pi = 0 and p* = (pL+pR)/2 exactly", ok,
           f"nonzero pi={bad_pi}, p* mismatches={bad_p} over {N_RANDOM} pairs")


def test_ac5_cubic_order():
    c = math.sqrt(1.4)
    pis = []
    for jump in (100 * c, 200 * c, 400 * c):
        r = resolve_interface(PrimitiveState(1.0, 0.5 * jump, 1.0), PrimitiveState(1.0, -0.5 * jump, 1.0), PARAMS, GAS)
        pis.append(float(r.pi_plus))
    ratios = [pis[1] / pis[0], pis[2] / pis[1]]
    ok = all(7.0 <= q <= 8.0 for q in ratios)
    report(5, "pi(2 dU)/pi(dU) in [7, 8] for |dU| in {100c, 200c, 400c}", ok,
           "ratios=" + ", ".join(f"{q:.6f}" for q in ratios))


def test_ac6_compatibility_identities():
    rng = np.random.default_rng(6)
    WL, WR = random_primitive(rng, N_RANDOM), random_primitive(rng, N_RANDOM)
    r = resolve_interface(WL, WR, PARAMS, GAS)
    r_sum, r_diff = compatibility_residuals(r, WL, WR, relative=True)
    ok = r_sum.max() <= 1e-12 and r_diff.max() <= 1e-12
    report(6, "compatibility residuals <= 1e-12 relative", ok,
           f"max r_sum={r_sum.max():.3e} max r_diff={r_diff.max():.3e} over {N_RANDOM} pairs")


def test_ac7_flux_consistency():
    rng = np.random.default_rng(7)
    U = conservative_from_primitive(random_primitive(rng, N_RANDOM), GAS)
    F = physical_flux(U, GAS)
    Phi = numerical_flux(U, U, PARAMS, GAS)
    rel = np.abs(Phi - F) / np.maximum(np.abs(F), np.finfo(float).tiny)
    ok = rel.max() <= 1e-14
    report(7, "Phi(U,U) = F(U) to 1e-14 relative", ok, f"max relative deviation={rel.max():.3e} over {N_RANDOM} states")


def test_ac8_conservation():
    rng = np.random.default_rng(8)
    grid = Grid1D(256)
    k = 2 * np.pi * grid.centers
    W = PrimitiveState(
        1.0 + 0.3 * rng.uniform(0.5, 1) * np.sin(k + rng.uniform(0, 6)),
        0.5 * rng.uniform(-1, 1) * np.sin(2 * k + rng.uniform(0, 6)),
        1.0 + 0.3 * rng.uniform(0.5, 1) * np.cos(k + rng.uniform(0, 6)),
    )
    s = SolverState.from_primitive(W, GAS)
    t0 = np.array(conservation_totals(s, grid.h))
    for n in range(1000):
        s, _ = step(s, PARAMS, GAS, "periodic", compute_dt(s, GAS, 0.25, grid.h), grid, n)
    t1 = np.array(conservation_totals(s, grid.h))
    # momentum starts near zero: measure it against the energy scale
    scale = np.array([abs(t0[0]), max(abs(t0[1]), abs(t0[2])), abs(t0[2])])
    periodic_drift = float(np.max(np.abs(t1 - t0) / scale))

    recs = []
    res = run(sod_config(400).replace(t_final=0.3), on_step=recs.append)
    ledger = 0.0
    for rec, before, after in zip(recs, res.totals[:-1], res.totals[1:]):
        expected = np.asarray(before) + rec.dt * (rec.flux_left - rec.flux_right)
        ledger = max(ledger, float(np.max(np.abs(np.asarray(after) - expected) / np.maximum(1.0, np.abs(expected)))))
    ok = periodic_drift <= 1e-11 and ledger <= 1e-11
    report(8, "periodic drift <= 1e-11 over 1000 steps; boundary ledger <= 1e-11/step", ok,
           f"periodic drift={periodic_drift:.3e}, transmissive ledger max={ledger:.3e} over {len(recs)} steps")


def test_ac9_entropy_residual_locality(sod_runs):
    r = sod_runs[400]
    n = r["cfg"].n_cells
    length = r["cfg"].x_max - r["cfg"].x_min
    x = r["res"].grid.centers
    c_left = math.sqrt(1.4)
    max_cells, max_dist, noncontig, steps_with_defect = 0, 0.0, 0, 0
    for t, idx, _ in r["windows"]:
        if idx.size == 0:
            continue
        steps_with_defect += 1
        max_cells = max(max_cells, idx.size)
        if idx[-1] - idx[0] + 1 != idx.size:
            noncontig += 1
        head = 0.5 - c_left * t
        max_dist = max(max_dist, float(np.max(np.abs(x[idx] - head))))
    ok = noncontig == 0 and max_cells <= 0.03 * n and max_dist <= 0.03 * length
    report(9, "Pi > 1e-7 only in one window of <= 3% cells at the rarefaction head", ok,
           f"steps with defect={steps_with_defect}/{len(r['windows'])}, widest window={max_cells} cells, "
           f"max distance to head={max_dist:.4f}, non-contiguous steps={noncontig}")


def test_ac10_oracle_self_test():
    newton = solve_star(SOD.left, SOD.right, GAS)
    bis = solve_star_bisection(SOD.left, SOD.right, GAS)
    star_ok = abs(newton.p_star_exact - 0.30313) <= 1e-4 and abs(newton.u_star_exact - 0.92745) <= 1e-4
    agree = max(abs(newton.p_star_exact - bis.p_star_exact), abs(newton.u_star_exact - bis.u_star_exact))
    resid = abs(pressure_function(newton.p_star_exact, SOD.left, SOD.right, GAS))
    S = wave_speeds(SOD.left, SOD.right, GAS, newton).right_head
    a = sample(SOD.left, SOD.right, GAS, S - 1e-9, newton)
    b = sample(SOD.left, SOD.right, GAS, S + 1e-9, newton)
    Ua, Ub = conservative_from_primitive(a, GAS), conservative_from_primitive(b, GAS)
    rh = float(np.max(np.abs(physical_flux(Ub, GAS) - physical_flux(Ua, GAS) - S * (Ub.as_array() - Ua.as_array()))))
    ok = star_ok and agree <= 1e-10 and rh <= 1e-10 and resid <= 1e-12
    report(10, "oracle star state, Newton vs bisection, Rankine-Hugoniot", ok,
           f"p*={newton.p_star_exact:.8f} u*={newton.u_star_exact:.8f} newton-bisection={agree:.2e} "
           f"|f(p*)|={resid:.2e} RH residual={rh:.2e}")
