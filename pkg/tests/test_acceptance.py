"""End-to-end acceptance checks; each test records a one-line verdict.

The verdicts are printed by the terminal-summary hook in conftest.py.
"""

import time

import numpy as np
import pytest

from tripartite_mpc.families import (
    ghz_w_cab,
    ghz_w_mpc,
    ghz_w_state,
    ghz_w_tangle,
    ghz_w_wt_mpc,
    ghz_w_wt_state,
    ghz_w_wt_tangle,
    p_grid,
    thresholds,
    xi,
)
from tripartite_mpc.linalg import partial_trace
from tripartite_mpc.measures import gmc, measure_report, mpc, wootters_concurrence
from tripartite_mpc.props import FAIL_THRESHOLD, run_property_suite
from tripartite_mpc.roof import minimize_tangle
from tripartite_mpc.sampling import haar_pure_state, make_rng
from tripartite_mpc.schmidt import pairwise_all_via_reshape, reconstruction_fidelity, schmidt_decompose
from tripartite_mpc.states import ghz, psi5, psi6, w_state

from .conftest import ACCEPTANCE

pytestmark = pytest.mark.slow


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    assert ok, f"criterion {n}: {detail}"


def wootters_ab(rho):
    return wootters_concurrence(partial_trace(rho, "AB"))


def test_criterion_1_named_states():
    t0 = time.perf_counter()
    g, w = mpc(ghz()), mpc(w_state())
    dt = time.perf_counter() - t0
    ok = abs(g - 1) <= 1e-9 and abs(w - 2 / 3) <= 1e-9 and dt < 1.0
    record(1, ok, f"mpc(GHZ)={g:.12f} mpc(W)={w:.12f} time={dt:.3f}s")


def test_criterion_2_discrimination():
    g5, g6 = gmc(psi5()), gmc(psi6())
    m5, m6 = mpc(psi5()), mpc(psi6())
    ok = (abs(g5 - 0.6) <= 1e-9 and abs(g6 - 0.6) <= 1e-9 and abs(m5 - 0.2) <= 1e-9
          and abs(m6 - 0.424) <= 5e-4 and abs(m6 - 0.4243) <= 1e-4
          and abs(m6 - 6 / np.sqrt(200)) <= 1e-9)
    record(2, ok, f"gmc5={g5:.10f} gmc6={g6:.10f} mpc5={m5:.10f} mpc6={m6:.10f}")


def test_criterion_3_thresholds():
    a, b = thresholds(1), thresholds(2)
    ok = (abs(a.p0 - 0.2918) <= 5e-5 and abs(a.p1 - 0.6269) <= 5e-5 and abs(a.p2 - 0.7087) <= 5e-5
          and b.p0 == 0.25 and b.p1 == 0.75 and abs(b.p2 - 0.9330) <= 5e-5)
    record(3, ok, f"ghz-w p=({a.p0:.6f},{a.p1:.6f},{a.p2:.6f}) rank3 p=({b.p0},{b.p1},{b.p2:.6f})")


def test_criterion_4_ghz_w_curve():
    t0 = time.perf_counter()
    grid = p_grid(1001)
    t = thresholds(1)
    mpcs = np.array([ghz_w_mpc(p) for p in grid])
    taus = np.array([ghz_w_tangle(p) for p in grid])
    cab_err = max(abs(ghz_w_cab(p) - wootters_ab(ghz_w_state(p))) for p in grid)
    window = (grid >= t.p0) & (grid <= t.p1)
    dt = time.perf_counter() - t0
    ok = (np.all(mpcs >= taus) and np.all(mpcs[window] == 0.0)
          and abs(mpcs[0] - 2 / 3) <= 1e-9 and abs(mpcs[-1] - 1) <= 1e-9
          and cab_err <= 1e-9 and dt < 10.0)
    record(4, ok, f"zero-window points={window.sum()} max|C_AB err|={cab_err:.2e} time={dt:.2f}s")


def test_criterion_5_rank3_curve():
    grid = p_grid(1001)
    mpcs = np.array([ghz_w_wt_mpc(p, 2) for p in grid])
    taus = np.array([ghz_w_wt_tangle(p, 2) for p in grid])
    window = (grid >= 0.25) & (grid <= 0.75)
    x0 = xi(0.0, 2)
    numeric = wootters_ab(ghz_w_wt_state(0.0, 2))
    ok = (np.all(mpcs >= taus) and np.all(mpcs[window] == 0.0)
          and abs(x0 - 1 / 3) <= 1e-9 and abs(numeric - 1 / 3) <= 1e-9)
    record(5, ok, f"zero-window points={window.sum()} xi(0)={x0:.12f} wootters={numeric:.12f}")


def test_criterion_6_reshape_equivalence():
    t0 = time.perf_counter()
    rng = make_rng(2024)
    worst = 0.0
    for _ in range(10_000):
        psi = haar_pure_state(rng)
        r = measure_report(psi)
        got = pairwise_all_via_reshape(psi)
        worst = max(worst, abs(got["AB"] - r.pc_ab), abs(got["AC"] - r.pc_ac), abs(got["BC"] - r.pc_bc))
    dt = time.perf_counter() - t0
    record(6, worst <= 1e-8 and dt < 60.0, f"max gap={worst:.2e} time={dt:.1f}s")


def test_criterion_7_property_suite():
    rep = run_property_suite(10_000, 7)
    asserted = ["monogamy", "pairwise_identity", "condition_f_mpc", "local_unitary_invariance",
                "biseparable_zero", "filter_monotonicity_mpc"]
    props = rep.properties
    fails = [n for n in asserted if props[n].margin < FAIL_THRESHOLD or props[n].violations]
    fill_v = props["condition_f_fill"].violations
    gbc_v = props["condition_f_gbc"].violations
    ok = not fails and rep.passed and fill_v >= 1 and gbc_v >= 1
    worst = min(props[n].margin for n in asserted)
    record(7, ok, f"worst asserted margin={worst:.2e} failing={fails or 'none'} "
                  f"fill(f) violations={fill_v} gbc(f) violations={gbc_v}")


def test_criterion_8_convex_roof():
    t0 = time.perf_counter()
    gaps = {}
    for p in (0.3, 0.5, 0.65, 0.8, 0.9, 1.0):
        res = minimize_tangle(ghz_w_state(p), m=4, restarts=32, seed=0)
        gaps[p] = abs(res.estimate - ghz_w_tangle(p))
    dt = time.perf_counter() - t0
    worst = max(gaps.values())
    record(8, worst <= 2e-3 and dt < 300.0, f"max gap={worst:.2e} time={dt:.1f}s")


def test_criterion_9_schmidt_round_trip():
    rng = make_rng(99)
    worst_fid, worst_norm, bad = 1.0, 0.0, 0
    for _ in range(10_000):
        psi = haar_pure_state(rng)
        form, lu = schmidt_decompose(psi)
        worst_fid = min(worst_fid, reconstruction_fidelity(psi, form, lu))
        lam = np.array(form.lambdas)
        worst_norm = max(worst_norm, abs(np.sum(lam**2) - 1))
        if np.any(lam < 0) or not 0 <= form.phi <= np.pi or not lu.is_unitary(1e-10):
            bad += 1
    ok = worst_fid >= 1 - 1e-9 and worst_norm <= 1e-10 and bad == 0
    record(9, ok, f"min fidelity=1-{1 - worst_fid:.1e} max|sum lambda^2 - 1|={worst_norm:.1e} "
                  f"invariant breaches={bad}")
