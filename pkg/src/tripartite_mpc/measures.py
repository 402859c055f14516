"""Entanglement measures of three-qubit pure states.

The central quantity is the minimum pairwise concurrence (MPC).  The pairwise
concurrence of qubits X and Y is ``sqrt(C_XY^2 + tau)``: the Wootters
concurrence of the reduced pair plus the three-tangle, so that the
correlation carried by the third qubit is not discarded.  GMC, concurrence
fill and GBC are provided for comparison; all three are functions of the
bipartite (one qubit vs. the rest) concurrences only.

Every measure is checked against ``[-1e-9, 1 + 1e-9]`` and then clamped to
``[0, 1]``; values further out raise :class:`NumericalConsistencyError`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import _exact
from .errors import InvalidStateError, NumericalConsistencyError
from .linalg import (
    as_pure_state,
    eigvalsh_desc,
    hermitian_eig,
    is_hermitian,
    psd_sqrt,
    singular_values,
)

SIDES = ("A", "B", "C")
PAIRS = ("AB", "AC", "BC")
CUTS = {"A": "A(BC)", "B": "B(AC)", "C": "C(AB)"}

RANGE_TOL = 1e-9
TANGLE_XCHECK_TOL = 1e-8

# sigma_y (x) sigma_y
_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)

_AXES = {"A": 0, "B": 1, "C": 2}


def _unit_interval(value: float, what: str) -> float:
    if not (-RANGE_TOL <= value <= 1.0 + RANGE_TOL):
        raise NumericalConsistencyError(f"{what} = {value!r} outside [0, 1]")
    return min(max(float(value), 0.0), 1.0)


def _pair_of(pair: str) -> str:
    p = "".join(sorted(pair.upper()))
    if p not in PAIRS:
        raise ValueError(f"pair must be one of {PAIRS}, got {pair!r}")
    return p


def _side_of(side: str) -> str:
    s = side.upper()
    if s not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    return s


def _pair_factor(psi: np.ndarray, pair: str) -> np.ndarray:
    """4x2 matrix ``M`` with ``rho_pair = M M^H``."""
    kept = [_AXES[q] for q in pair]
    traced = [q for q in range(3) if q not in kept]
    t = np.transpose(psi.reshape(2, 2, 2), kept + traced)
    return t.reshape(4, 2)


def _concurrence_from_factor(f: np.ndarray) -> float:
    # rho = F F^H  =>  Wootters' lambdas are the singular values of F^T (Y(x)Y) F
    sv = np.zeros(4)
    s = singular_values(f.T @ _YY @ f)
    sv[: s.size] = s
    return float(max(0.0, sv[0] - sv[1] - sv[2] - sv[3]))


# -- two-qubit -----------------------------------------------------------------

def pure_concurrence_2q(phi) -> float:
    """``2 |ps - qr|`` for ``phi = p|00> + q|01> + r|10> + s|11>``."""
    p, q, r, s = as_pure_state(phi, dim=4)
    return _unit_interval(2.0 * abs(p * s - q * r), "two-qubit concurrence")


def wootters_concurrence(rho, method: str = "svd") -> float:
    """Concurrence of a two-qubit density matrix.

    ``C = max(0, l1 - l2 - l3 - l4)`` with ``l_i`` the square roots of the
    eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``, ``rho~ = (Y(x)Y) rho* (Y(x)Y)``.

    Parameters
    ----------
    rho : array_like, shape (4, 4)
    method : {"svd", "product"}
        ``"svd"`` (default) obtains the ``l_i`` as singular values of
        ``sqrt(rho) (Y(x)Y) sqrt(rho)*``, whose Gram matrix is the product above;
        small ``l_i`` keep full absolute accuracy.  ``"product"`` diagonalizes
        the product directly and takes square roots, which loses about half
        the digits of near-zero ``l_i``; it is kept as an independent route.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not is_hermitian(rho):
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-10:
        raise InvalidStateError(f"density matrix has trace {tr:.15g}")
    if method == "svd":
        w, v = hermitian_eig(rho)
        if w[-1] < -1e-10:
            raise InvalidStateError(f"density matrix has negative eigenvalue {w[-1]:.3e}")
        c = _concurrence_from_factor(v * np.sqrt(np.clip(w, 0.0, None)))
    elif method == "product":
        sq = psd_sqrt(rho)
        rho_tilde = _YY @ rho.conj() @ _YY
        mu = eigvalsh_desc(sq @ rho_tilde @ sq)
        lam = np.sqrt(np.clip(mu, 0.0, None))
        c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    else:
        raise ValueError(f"unknown method {method!r}")
    return _unit_interval(c, "Wootters concurrence")


# -- three-qubit pure ---------------------------------------------------------

def bipartite_concurrence(psi, side: str) -> float:
    """Concurrence across the cut ``side | rest``.

    Equals ``sqrt(2 (1 - Tr rho_s^2)) = 2 sqrt(det rho_s)`` for the one-qubit
    reduced state ``rho_s``; the determinant is evaluated exactly.
    """
    psi = as_pure_state(psi)
    det = _exact.cut_determinant(psi, _side_of(side))
    return _unit_interval(2.0 * np.sqrt(det), f"C_{CUTS[_side_of(side)]}")


def reduced_concurrence(psi, pair: str) -> float:
    """Wootters concurrence of the two-qubit state left after tracing out the third qubit."""
    psi = as_pure_state(psi)
    pair = _pair_of(pair)
    return _unit_interval(_concurrence_from_factor(_pair_factor(psi, pair)), f"C_{pair}")


def residual_tangle(psi) -> float:
    """``C_A(BC)^2 - C_AB^2 - C_AC^2``, unclamped."""
    psi = as_pure_state(psi)
    return (bipartite_concurrence(psi, "A") ** 2
            - reduced_concurrence(psi, "AB") ** 2
            - reduced_concurrence(psi, "AC") ** 2)


def hyperdeterminant_tangle(psi) -> float:
    """``4 |Hdet(psi)|`` with the Cayley hyperdeterminant evaluated exactly."""
    psi = as_pure_state(psi)
    return 4.0 * _exact.hyperdeterminant_abs(psi)


def three_tangle(psi) -> float:
    """Three-tangle of a pure state.

    The residual ``C_A(BC)^2 - C_AB^2 - C_AC^2`` and ``4|Hdet|`` are both
    computed and must agree within 1e-8.  The hyperdeterminant value is
    returned: it is a polynomial evaluated without rounding, so it stays
    exactly zero on exactly biseparable inputs, where the residual is a
    difference of O(1) terms carrying ~1e-16 noise.
    """
    psi = as_pure_state(psi)
    return _checked_tangle(residual_tangle(psi), hyperdeterminant_tangle(psi))


def _checked_tangle(residual: float, hdet: float) -> float:
    if residual < -RANGE_TOL:
        raise NumericalConsistencyError(f"negative three-tangle residual {residual!r}")
    if abs(residual - hdet) > TANGLE_XCHECK_TOL:
        raise NumericalConsistencyError(
            f"three-tangle routes disagree: residual {residual!r} vs 4|Hdet| {hdet!r}")
    return _unit_interval(hdet, "three-tangle")


def pairwise_concurrence(psi, pair: str) -> float:
    """``sqrt(C_XY^2 + tau)`` for ``pair = "XY"``."""
    psi = as_pure_state(psi)
    c = reduced_concurrence(psi, pair)
    return _unit_interval(np.sqrt(c * c + three_tangle(psi)), f"pairwise concurrence {pair}")


def mpc(psi) -> float:
    """Minimum pairwise concurrence: ``min(C_A'B', C_A'C', C_B'C')``."""
    return measure_report(psi).mpc


def gmc(psi) -> float:
    """Genuinely multipartite concurrence: smallest bipartite concurrence."""
    psi = as_pure_state(psi)
    return min(bipartite_concurrence(psi, s) for s in SIDES)


def _fill_from_squares(a: float, b: float, c: float) -> float:
    # (16/3) Q (Q-a)(Q-b)(Q-c) with Q = (a+b+c)/2, written as a product of
    # the four Heron factors to avoid cancellation
    h = (a + b + c) * (b + c - a) * (a + c - b) * (a + b - c) / 3.0
    return float(max(h, 0.0) ** 0.25)


def concurrence_fill(psi) -> float:
    """Concurrence fill: normalized Heron area of the triangle with sides ``C^2`` of the three cuts.

    The product under the fourth root is clamped at zero.
    """
    psi = as_pure_state(psi)
    a, b, c = (bipartite_concurrence(psi, s) ** 2 for s in SIDES)
    return _unit_interval(_fill_from_squares(a, b, c), "concurrence fill")


def gbc(psi) -> float:
    """Geometric mean of the three bipartite concurrences.

    Every cut of three qubits isolates a single qubit, whose concurrence is
    at most 1, so the regularization factor is 1.
    """
    psi = as_pure_state(psi)
    prod = np.prod([bipartite_concurrence(psi, s) for s in SIDES])
    return _unit_interval(float(prod ** (1.0 / 3.0)), "GBC")


@dataclass(frozen=True)
class MeasureReport:
    """All measures of one three-qubit pure state."""

    c_a_bc: float
    c_b_ac: float
    c_c_ab: float
    c_ab: float
    c_ac: float
    c_bc: float
    tau: float
    pc_ab: float
    pc_ac: float
    pc_bc: float
    mpc: float
    gmc: float
    fill: float
    gbc: float
    mpc_pair: str
    gmc_cut: str

    def as_dict(self) -> dict:
        return asdict(self)

    def numeric_fields(self) -> dict[str, float]:
        return {k: v for k, v in asdict(self).items() if isinstance(v, float)}


def measure_report(psi) -> MeasureReport:
    """Compute every measure of ``psi`` once, sharing intermediate results."""
    psi = as_pure_state(psi)
    z = _exact.scaled(psi)
    bip = {s: _unit_interval(2.0 * np.sqrt(_exact.cut_determinant(z, s)), f"C_{CUTS[s]}")
           for s in SIDES}
    red = {p: _unit_interval(_concurrence_from_factor(_pair_factor(psi, p)), f"C_{p}")
           for p in PAIRS}
    residual = bip["A"] ** 2 - red["AB"] ** 2 - red["AC"] ** 2
    tau = _checked_tangle(residual, 4.0 * _exact.hyperdeterminant_abs(z))
    pc = {p: _unit_interval(np.sqrt(red[p] ** 2 + tau), f"pairwise concurrence {p}") for p in PAIRS}
    mpc_pair = min(PAIRS, key=lambda p: pc[p])
    gmc_side = min(SIDES, key=lambda s: bip[s])
    sq = [bip[s] ** 2 for s in SIDES]
    return MeasureReport(
        c_a_bc=bip["A"], c_b_ac=bip["B"], c_c_ab=bip["C"],
        c_ab=red["AB"], c_ac=red["AC"], c_bc=red["BC"],
        tau=tau,
        pc_ab=pc["AB"], pc_ac=pc["AC"], pc_bc=pc["BC"],
        mpc=pc[mpc_pair],
        gmc=bip[gmc_side],
        fill=_unit_interval(_fill_from_squares(*sq), "concurrence fill"),
        gbc=_unit_interval(float(np.prod(list(bip.values())) ** (1.0 / 3.0)), "GBC"),
        mpc_pair=mpc_pair,
        gmc_cut=CUTS[gmc_side],
    )
