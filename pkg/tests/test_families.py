import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from tripartite_mpc.families import (
    Branch,
    alpha_1,
    alpha_2,
    branch_of,
    g_1,
    g_2,
    ghz_w_cab,
    ghz_w_mpc,
    ghz_w_point,
    ghz_w_state,
    ghz_w_tangle,
    ghz_w_wt_cab,
    ghz_w_wt_mpc,
    ghz_w_wt_state,
    ghz_w_wt_tangle,
    mixed_mpc,
    p_grid,
    solve_thresholds,
    sweep,
    thresholds,
    xi,
)
from tripartite_mpc.linalg import ket_to_dm, partial_trace
from tripartite_mpc.measures import wootters_concurrence
from tripartite_mpc.states import ghz, w_state, w_tilde

GRID = p_grid(1001)


def numeric_cab(rho):
    return wootters_concurrence(partial_trace(rho, "AB"))


# -- thresholds ----------------------------------------------------------------

def test_ghz_w_thresholds_match_printed_decimals():
    t = thresholds(1)
    assert t.p0 == pytest.approx(0.2918, abs=5e-5)
    assert t.p1 == pytest.approx(0.6269, abs=5e-5)
    assert t.p2 == pytest.approx(0.7087, abs=5e-5)


def test_rank3_thresholds_n2():
    t = thresholds(2)
    assert t.p0 == 0.25 and t.p1 == 0.75
    assert t.p2 == pytest.approx(0.9330, abs=5e-5)


@pytest.mark.parametrize("n", [1, 2])
def test_root_finding_reproduces_closed_forms(n):
    t, s = thresholds(n), solve_thresholds(n)
    assert_allclose([s.p0, s.p1, s.p2], [t.p0, t.p1, t.p2], atol=1e-12)


@pytest.mark.parametrize("n", [3, 4, 7, 20])
def test_thresholds_general_n(n):
    t = thresholds(n)
    assert 0 < t.p0 < t.p1 < t.p2 < 1
    assert xi(t.p0, n) == pytest.approx(0.0, abs=1e-12)
    assert alpha_1(t.p1, n) == pytest.approx(0.0, abs=1e-12)
    assert alpha_1(t.p2, n) == pytest.approx(alpha_2(t.p2, n), abs=1e-12)


def test_family_with_n1_is_ghz_w():
    for p in GRID[::50]:
        assert alpha_1(p, 1) == pytest.approx(g_1(p), abs=1e-14)
        assert ghz_w_wt_mpc(p, 1) == pytest.approx(ghz_w_mpc(p), abs=1e-12)
        assert_allclose(ghz_w_wt_state(p, 1), ghz_w_state(p), atol=1e-15)


# -- GHZ/W --------------------------------------------------------------------

def test_ghz_w_state_endpoints_and_spectrum():
    assert_allclose(ghz_w_state(1.0), ket_to_dm(ghz()), atol=1e-15)
    assert_allclose(ghz_w_state(0.0), ket_to_dm(w_state()), atol=1e-15)
    assert_allclose(np.linalg.eigvalsh(ghz_w_state(0.5))[::-1], [0.5, 0.5] + [0] * 6, atol=1e-14)


def test_ghz_w_tangle_examples():
    t = thresholds(1)
    assert ghz_w_tangle(t.p1) == 0.0
    assert g_1(t.p1) == pytest.approx(0.0, abs=1e-12)
    assert ghz_w_tangle(1.0) == pytest.approx(1.0, abs=1e-15)
    assert ghz_w_tangle(0.3) == 0.0


def test_ghz_w_continuity():
    t = thresholds(1)
    assert g_1(t.p2) == pytest.approx(g_2(t.p2), abs=1e-9)
    eps = 1e-12
    for p in (t.p0, t.p1, t.p2):
        assert ghz_w_mpc(p - eps) == pytest.approx(ghz_w_mpc(p + eps), abs=1e-5)
    assert ghz_w_cab(t.p0 - 1e-15) == pytest.approx(0.0, abs=1e-9)


def test_ghz_w_cab_examples():
    assert ghz_w_cab(0.0) == pytest.approx(2 / 3, abs=1e-15)
    assert ghz_w_cab(thresholds(1).p0) == 0.0
    assert ghz_w_cab(0.1) == pytest.approx(0.6 - math.sqrt(0.07), abs=1e-15)
    assert ghz_w_cab(0.1) == pytest.approx(numeric_cab(ghz_w_state(0.1)), abs=1e-9)


def test_ghz_w_cab_matches_numeric_wootters_on_grid():
    worst = max(abs(ghz_w_cab(p) - numeric_cab(ghz_w_state(p))) for p in GRID)
    assert worst <= 1e-9


def test_ghz_w_mpc_branches():
    t = thresholds(1)
    assert ghz_w_mpc(0.0) == pytest.approx(2 / 3, abs=1e-15)
    assert ghz_w_mpc(1.0) == pytest.approx(1.0, abs=1e-15)
    for p in GRID[(GRID >= t.p0) & (GRID <= t.p1)]:
        assert ghz_w_mpc(p) == 0.0
    for p in GRID:
        assert ghz_w_mpc(p) == pytest.approx(math.sqrt(ghz_w_cab(p) ** 2 + ghz_w_tangle(p)), abs=1e-15)
        assert ghz_w_mpc(p) >= ghz_w_tangle(p)


def test_detection_window():
    t = thresholds(1)
    for p in GRID[GRID < t.p0]:
        assert ghz_w_tangle(p) == 0.0 and ghz_w_mpc(p) > 0.0


def test_branch_labels():
    assert branch_of(0.1, 1) is Branch.BELOW_P0
    assert branch_of(0.5, 1) is Branch.P0_TO_P1
    assert branch_of(0.65, 1) is Branch.P1_TO_P2
    assert branch_of(0.9, 1) is Branch.ABOVE_P2
    assert ghz_w_point(0.9).branch is Branch.ABOVE_P2


# -- GHZ/W/W~ ----------------------------------------------------------------

def test_rank3_state_examples():
    assert_allclose(ghz_w_wt_state(1.0, 2), ket_to_dm(ghz()), atol=1e-15)
    assert_allclose(ghz_w_wt_state(0.0, 2), (ket_to_dm(w_state()) + ket_to_dm(w_tilde())) / 2, atol=1e-15)
    assert_allclose(np.linalg.eigvalsh(ghz_w_wt_state(0.5, 2))[::-1],
                    [0.5, 0.25, 0.25] + [0] * 5, atol=1e-14)


def test_rank3_tangle_examples():
    t = thresholds(2)
    assert ghz_w_wt_tangle(0.5, 2) == 0.0
    assert ghz_w_wt_tangle(1.0, 2) == pytest.approx(1.0, abs=1e-15)
    assert alpha_1(t.p2, 2) == pytest.approx(alpha_2(t.p2, 2), abs=1e-9)
    assert alpha_1(0.75, 2) == pytest.approx(0.0, abs=1e-12)


def test_rank3_mpc_examples():
    assert xi(0.0, 2) == pytest.approx(1 / 3, abs=1e-15)
    assert ghz_w_wt_mpc(0.0, 2) == pytest.approx(numeric_cab(ghz_w_wt_state(0.0, 2)), abs=1e-9)
    assert ghz_w_wt_mpc(1.0, 2) == pytest.approx(1.0, abs=1e-15)
    for p in GRID[(GRID >= 0.25) & (GRID <= 0.75)]:
        assert ghz_w_wt_mpc(p, 2) == 0.0


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_xi_branch_matches_numeric_wootters(n):
    for p in GRID[::10]:
        assert ghz_w_wt_cab(p, n) == pytest.approx(numeric_cab(ghz_w_wt_state(p, n)), abs=1e-9)


@pytest.mark.parametrize("n", [2, 3])
def test_rank3_dominance_and_continuity(n):
    for p in GRID:
        assert ghz_w_wt_mpc(p, n) >= ghz_w_wt_tangle(p, n)
    t = thresholds(n)
    for p in (t.p0, t.p1, t.p2):
        assert ghz_w_wt_mpc(p - 1e-12, n) == pytest.approx(ghz_w_wt_mpc(p + 1e-12, n), abs=1e-5)


# -- combiner and sweeps --------------------------------------------------------

def test_mixed_mpc():
    assert mixed_mpc(0, 0) == 0
    assert mixed_mpc(2 / 3, 0) == pytest.approx(2 / 3)
    assert mixed_mpc(0, g_1(0.65)) == pytest.approx(math.sqrt(g_1(0.65)))
    with pytest.raises(ValueError):
        mixed_mpc(-0.1, 0)
    with pytest.raises(ValueError):
        mixed_mpc(0, -0.1)


def test_sweep():
    pts = sweep("ghz-w", steps=1001)
    assert len(pts) == 1001 and pts[0].p == 0.0 and pts[-1].p == 1.0
    assert all(b.p > a.p for a, b in zip(pts, pts[1:]))
    pts = sweep("ghz-w-wt", steps=11, n=3)
    assert pts[0].n == 3


@pytest.mark.parametrize("call", [
    lambda: ghz_w_state(1.5),
    lambda: ghz_w_tangle(-0.1),
    lambda: ghz_w_wt_state(0.5, 0),
    lambda: ghz_w_wt_mpc(0.5, 1.5),
    lambda: sweep("ghz-w", steps=1),
    lambda: sweep("nope"),
])
def test_errors(call):
    with pytest.raises(ValueError):
        call()
