"""Closed-form MPC and three-tangle of two mixed three-qubit families.

* ``rho(p) = p |GHZ><GHZ| + (1-p) |W><W|``
* ``rho(p, n) = p |GHZ><GHZ| + q |W><W| + (1-p-q) |W~><W~|`` with ``q = (1-p)/n``

Both families share the same structure: the reduced two-qubit concurrence is
nonzero only below a threshold ``p0`` and the three-tangle only above ``p1``,
with a straight segment ending at ``(1, 1)`` for ``p >= p2``.  The second
family with ``n = 1`` is the first one.

Thresholds are computed from exact closed forms where those are known
(``n = 1`` and ``n = 2``) and by bracketed root finding otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .linalg import ket_to_dm
from .states import ghz, w_state, w_tilde

_CBRT2 = 2.0 ** (1.0 / 3.0)
_S465 = math.sqrt(465.0)

DEFAULT_STEPS = 1001
ROOT_XTOL = 1e-15


class Branch(str, enum.Enum):
    BELOW_P0 = "below_p0"
    P0_TO_P1 = "p0_to_p1"
    P1_TO_P2 = "p1_to_p2"
    ABOVE_P2 = "above_p2"


@dataclass(frozen=True)
class Thresholds:
    p0: float
    p1: float
    p2: float


def _check_p(p) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    return p


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _nonneg(x: float) -> float:
    # formulas are evaluated on their own branch, where only round-off can make them negative
    return x if x > 0.0 else 0.0


# -- rank-3 family, general n ------------------------------------------------

def _coefficients(n: int) -> tuple[float, float, float]:
    a = 4.0 * math.sqrt(n - 1) / n
    b = 4.0 * (n - 1) / (3.0 * n * n)
    c = 8.0 * math.sqrt(6.0 * n) * (1.0 + (n - 1) ** 1.5) / (9.0 * n * n)
    return a, b, c


def alpha_1(p: float, n: int = 2) -> float:
    """Tangle of the mixture on the curved branch (may be negative off it)."""
    a, b, c = _coefficients(_check_n(n))
    return p * p - a * p * (1 - p) - b * (1 - p) ** 2 - c * math.sqrt(p * (1 - p) ** 3)


def _alpha_1_slope(p: float, n: int) -> float:
    a, b, c = _coefficients(n)
    s = math.sqrt(p * (1 - p) ** 3)
    ds = (1 - p) ** 2 * (1 - 4 * p) / (2 * s)
    return 2 * p - a * (1 - 2 * p) + 2 * b * (1 - p) - c * ds


def alpha_2(p: float, n: int = 2) -> float:
    """Straight segment from ``(p2, alpha_1(p2))`` to ``(1, 1)``."""
    p2 = thresholds(n).p2
    return (p - p2) / (1 - p2) + (1 - p) / (1 - p2) * alpha_1(p2, n)


def xi(p: float, n: int = 2) -> float:
    """Reduced concurrence ``C_AB`` of the mixture below ``p0`` (may be negative above)."""
    n = _check_n(n)
    radicand = (2 + p * (3 * n - 2)) * (2 * (p - 1) + n * (p + 2))
    return 2.0 / 3.0 * (1 - p) - math.sqrt(max(radicand, 0.0)) / (3.0 * n)


@lru_cache(maxsize=None)
def thresholds(n: int = 2) -> Thresholds:
    """Branch points ``p0 < p1 < p2`` of the family with parameter ``n``.

    ``n = 1`` is the GHZ/W mixture.
    """
    n = _check_n(n)
    if n == 1:
        return Thresholds(7.0 - 3.0 * math.sqrt(5.0),
                          4.0 * _CBRT2 / (3.0 + 4.0 * _CBRT2),
                          0.5 + 3.0 * _S465 / 310.0)
    if n == 2:
        return Thresholds(0.25, 0.75, (2.0 + math.sqrt(3.0)) / 4.0)
    return solve_thresholds(n)


def solve_thresholds(n: int) -> Thresholds:
    """Thresholds by root finding, without using any closed form.

    ``p0`` is the zero of ``xi``, ``p1`` the zero of ``alpha_1`` and ``p2`` the
    point where the line through ``(1, 1)`` touches ``alpha_1``.
    """
    n = _check_n(n)
    p0 = brentq(lambda p: xi(p, n), 0.0, 1.0, xtol=ROOT_XTOL)
    # alpha_1 < 0 just above 0 because of the -sqrt(p) term
    p1 = brentq(lambda p: alpha_1(p, n), 1e-12, 1.0, xtol=ROOT_XTOL)

    def tangency(p):
        return _alpha_1_slope(p, n) * (1 - p) - (1 - alpha_1(p, n))

    # tangency -> 0 again at p = 1, so bracket the first sign change from a coarse scan
    grid = np.linspace(p1, 1.0, 401)[1:-1]
    vals = np.array([tangency(p) for p in grid])
    k = int(np.argmax(vals > 0.0))
    if vals[k] <= 0.0:
        raise ArithmeticError(f"no tangent point found for n={n}")
    lo = p1 if k == 0 else grid[k - 1]
    p2 = brentq(tangency, lo, grid[k], xtol=ROOT_XTOL)
    return Thresholds(p0, p1, p2)


def branch_of(p: float, n: int = 2) -> Branch:
    """Which formula applies at ``p``; the closed interval ``[p0, p1]`` is the zero branch."""
    t = thresholds(n)
    if p < t.p0:
        return Branch.BELOW_P0
    if p <= t.p1:
        return Branch.P0_TO_P1
    if p < t.p2:
        return Branch.P1_TO_P2
    return Branch.ABOVE_P2


def ghz_w_wt_state(p: float, n: int = 2) -> np.ndarray:
    """``p GHZ + q W + (1-p-q) W~`` with ``q = (1-p)/n``."""
    p = _check_p(p)
    n = _check_n(n)
    q = (1.0 - p) / n
    return (p * ket_to_dm(ghz()) + q * ket_to_dm(w_state())
            + (1.0 - p - q) * ket_to_dm(w_tilde()))


def ghz_w_wt_tangle(p: float, n: int = 2) -> float:
    p = _check_p(p)
    b = branch_of(p, n)
    if b in (Branch.BELOW_P0, Branch.P0_TO_P1):
        return 0.0
    if b is Branch.P1_TO_P2:
        return _nonneg(alpha_1(p, n))
    return _nonneg(alpha_2(p, n))


def ghz_w_wt_cab(p: float, n: int = 2) -> float:
    p = _check_p(p)
    return _nonneg(xi(p, n)) if branch_of(p, n) is Branch.BELOW_P0 else 0.0


def ghz_w_wt_mpc(p: float, n: int = 2) -> float:
    return mixed_mpc(ghz_w_wt_cab(p, n), ghz_w_wt_tangle(p, n))


# -- GHZ/W family -----------------------------------------------------------

def g_1(p: float) -> float:
    return p * p - 8.0 * math.sqrt(6.0) / 9.0 * math.sqrt(p * (1 - p) ** 3)


def g_2(p: float) -> float:
    return 1.0 - (1.0 - p) * (1.5 + _S465 / 18.0)


def ghz_w_state(p: float) -> np.ndarray:
    """``p |GHZ><GHZ| + (1-p) |W><W|``."""
    p = _check_p(p)
    return p * ket_to_dm(ghz()) + (1.0 - p) * ket_to_dm(w_state())


def ghz_w_tangle(p: float) -> float:
    p = _check_p(p)
    b = branch_of(p, 1)
    if b in (Branch.BELOW_P0, Branch.P0_TO_P1):
        return 0.0
    return _nonneg(g_1(p) if b is Branch.P1_TO_P2 else g_2(p))


def ghz_w_cab(p: float) -> float:
    p = _check_p(p)
    if branch_of(p, 1) is not Branch.BELOW_P0:
        return 0.0
    return _nonneg(2.0 / 3.0 * (1 - p) - math.sqrt(p * (2 + p) / 3.0))


def ghz_w_mpc(p: float) -> float:
    return mixed_mpc(ghz_w_cab(p), ghz_w_tangle(p))


def mixed_mpc(c_min: float, tau: float) -> float:
    """``sqrt(c_min^2 + tau)`` for a mixed state.

    ``c_min`` is the smallest reduced two-qubit concurrence and ``tau`` the
    mixed-state three-tangle.  When ``tau`` comes from a numerical convex-roof
    search it is an upper bound, and so is the result.
    """
    c_min = float(c_min)
    tau = float(tau)
    if c_min < 0.0 or tau < 0.0:
        raise ValueError(f"c_min and tau must be nonnegative, got {c_min!r}, {tau!r}")
    return math.sqrt(c_min * c_min + tau)


# -- sweeps ----------------------------------------------------------------

@dataclass(frozen=True)
class GhzWPoint:
    p: float
    tau: float
    c_ab: float
    mpc: float
    branch: Branch


@dataclass(frozen=True)
class GhzWWtPoint:
    p: float
    n: int
    tau: float
    c_ab: float
    mpc: float
    branch: Branch


FAMILIES = ("ghz-w", "ghz-w-wt")


def p_grid(steps: int = DEFAULT_STEPS) -> np.ndarray:
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    return np.linspace(0.0, 1.0, steps)


def ghz_w_point(p: float) -> GhzWPoint:
    return GhzWPoint(p=float(p), tau=ghz_w_tangle(p), c_ab=ghz_w_cab(p),
                     mpc=ghz_w_mpc(p), branch=branch_of(p, 1))


def ghz_w_wt_point(p: float, n: int = 2) -> GhzWWtPoint:
    return GhzWWtPoint(p=float(p), n=n, tau=ghz_w_wt_tangle(p, n), c_ab=ghz_w_wt_cab(p, n),
                       mpc=ghz_w_wt_mpc(p, n), branch=branch_of(p, n))


def sweep(family: str, steps: int = DEFAULT_STEPS, n: int = 2) -> list:
    """Evaluate a family on an evenly spaced grid of ``steps`` points in ``[0, 1]``."""
    grid = p_grid(steps)
    if family == "ghz-w":
        return [ghz_w_point(p) for p in grid]
    if family == "ghz-w-wt":
        n = _check_n(n)
        return [ghz_w_wt_point(p, n) for p in grid]
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_state(family: str, p: float, n: int = 2) -> np.ndarray:
    if family == "ghz-w":
        return ghz_w_state(p)
    if family == "ghz-w-wt":
        return ghz_w_wt_state(p, n)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_tangle(family: str, p: float, n: int = 2) -> float:
    if family == "ghz-w":
        return ghz_w_tangle(p)
    if family == "ghz-w-wt":
        return ghz_w_wt_tangle(p, n)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
