"""Numerical upper bounds on the mixed-state three-tangle.

Every ``m``-term pure-state decomposition of ``rho`` (rank ``r``) comes from
an ``m x r`` isometry ``M`` applied to the eigen-ensemble:

    |psi~_i> = sum_j M_ij sqrt(mu_j) |e_j>,    w_i = <psi~_i|psi~_i>.

The search writes ``M = U M0`` with ``U`` a product of Givens rotations
``G(i, j; theta, phi)`` over all row pairs.  Row phases of ``U`` are omitted:
they only change global phases of the ``psi~_i``.  The average tangle is
minimized by coordinate descent over the angles, with the step halved after
every sweep that brings no improvement.

Since ``Hdet`` is homogeneous of degree four, the weighted tangle of an
unnormalized ``psi~`` is ``4 |Hdet(psi~)| / <psi~|psi~>``; the inner loop
uses that float form, and the returned estimate is recomputed
with :func:`avg_tangle`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import InvalidStateError, NumericalConsistencyError
from .linalg import hermitian_eig, validate_density_matrix
from .measures import three_tangle
from .sampling import haar_unitary, make_rng

RANK_TOL = 1e-10
ISOMETRY_TOL = 1e-10
RESIDUAL_TOL = 1e-9
WEIGHT_FLOOR = 1e-14

INITIAL_STEP = 0.3
MIN_STEP = 1e-6
MAX_SWEEPS = 5000
DEFAULT_RESTARTS = 32


@dataclass(frozen=True)
class Decomposition:
    """Weights ``w_i`` and unit kets ``psi_i`` with ``sum_i w_i |psi_i><psi_i| ~ rho``.

    States with weight below 1e-14 are stored as zero vectors.
    """

    weights: np.ndarray
    states: np.ndarray  # shape (m, 8)
    residual: float

    def __len__(self) -> int:
        return len(self.weights)

    def density_matrix(self) -> np.ndarray:
        return np.einsum("i,ia,ib->ab", self.weights, self.states, self.states.conj())


def eigen_ensemble(rho) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero eigenvalues (``> 1e-10``) and eigenvectors (columns) of ``rho``."""
    rho = validate_density_matrix(rho)
    if rho.shape != (8, 8):
        raise InvalidStateError(f"expected an 8x8 density matrix, got {rho.shape}")
    w, v = hermitian_eig(rho)
    keep = w > RANK_TOL
    return w[keep], v[:, keep]


def _ensemble_vectors(mu: np.ndarray, vecs: np.ndarray, mixing: np.ndarray) -> np.ndarray:
    # rows are the unnormalized kets psi~_i
    return mixing @ (vecs * np.sqrt(mu)).T


def decompose_from_isometry(rho, mixing) -> Decomposition:
    """Decomposition of ``rho`` induced by an ``m x r`` isometry.

    Raises
    ------
    InvalidStateError
        If ``mixing`` has the wrong number of columns or is not an isometry.
    NumericalConsistencyError
        If the decomposition does not reproduce ``rho`` within 1e-9.
    """
    rho = np.asarray(rho, dtype=complex)
    mu, vecs = eigen_ensemble(rho)
    mixing = np.atleast_2d(np.asarray(mixing, dtype=complex))
    if mixing.shape[1] != mu.size:
        raise InvalidStateError(f"mixing has {mixing.shape[1]} columns but rho has rank {mu.size}")
    gram = mixing.conj().T @ mixing
    if not np.allclose(gram, np.eye(mu.size), rtol=0.0, atol=ISOMETRY_TOL):
        raise InvalidStateError("mixing matrix is not an isometry (M^H M != I)")
    return _from_vectors(rho, _ensemble_vectors(mu, vecs, mixing))


def _from_vectors(rho: np.ndarray, tilde: np.ndarray) -> Decomposition:
    weights = np.sum(np.abs(tilde) ** 2, axis=1)
    states = np.zeros_like(tilde)
    live = weights >= WEIGHT_FLOOR
    states[live] = tilde[live] / np.sqrt(weights[live])[:, None]
    d = Decomposition(weights=weights, states=states, residual=0.0)
    residual = float(np.linalg.norm(d.density_matrix() - rho))
    if residual > RESIDUAL_TOL:
        raise NumericalConsistencyError(f"decomposition residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    return Decomposition(weights=weights, states=states, residual=residual)


def avg_tangle(d: Decomposition) -> float:
    """``sum_i w_i tau(psi_i)``, skipping terms with weight below 1e-14."""
    total = 0.0
    for w, psi in zip(d.weights, d.states):
        if w >= WEIGHT_FLOOR:
            total += float(w) * three_tangle(psi)
    return total


# -- search -------------------------------------------------------------------

@numba.njit(cache=True)
def _hdet(a):
    return (a[0] ** 2 * a[7] ** 2 + a[1] ** 2 * a[6] ** 2 + a[2] ** 2 * a[5] ** 2 + a[4] ** 2 * a[3] ** 2
            - 2 * (a[0] * a[7] * a[3] * a[4] + a[0] * a[7] * a[5] * a[2] + a[0] * a[7] * a[6] * a[1]
                   + a[3] * a[4] * a[5] * a[2] + a[3] * a[4] * a[6] * a[1] + a[5] * a[2] * a[6] * a[1])
            + 4 * (a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4]))


@numba.njit(cache=True)
def _objective(tilde):
    total = 0.0
    for i in range(tilde.shape[0]):
        norm = 0.0
        for k in range(8):
            norm += tilde[i, k].real ** 2 + tilde[i, k].imag ** 2
        if norm >= WEIGHT_FLOOR:
            total += 4.0 * abs(_hdet(tilde[i])) / norm
    return total


@numba.njit(cache=True)
def _apply_params(base, pi, pj, params):
    """Left-multiply ``base`` by the Givens rotations ``G(pi[k], pj[k]; params[2k], params[2k+1])``."""
    x = base.copy()
    for k in range(pi.size):
        i, j = pi[k], pj[k]
        c, s = np.cos(params[2 * k]), np.sin(params[2 * k])
        e = np.exp(1j * params[2 * k + 1])
        for col in range(x.shape[1]):
            xi, xj = x[i, col], x[j, col]
            x[i, col] = c * xi - e * s * xj
            x[j, col] = np.conj(e) * s * xi + c * xj
    return x


@numba.njit(cache=True)
def _descend_kernel(base, pi, pj, initial_step, min_step, max_sweeps):
    params = np.zeros(2 * pi.size)
    best = _objective(base)
    step = initial_step
    for _ in range(max_sweeps):
        if step < min_step:
            return params, best, True
        improved = False
        for k in range(params.size):
            for sign in (1.0, -1.0):
                params[k] += sign * step
                val = _objective(_apply_params(base, pi, pj, params))
                if val < best:
                    best = val
                    improved = True
                    break
                params[k] -= sign * step
        if not improved:
            step *= 0.5
    return params, best, step < min_step


def _descend(base: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, float, bool]:
    """Coordinate descent on the Givens angles starting from ``base`` (all angles zero)."""
    m = base.shape[0]
    pairs = np.array([(i, j) for i in range(m) for j in range(i + 1, m)], dtype=np.int64).reshape(-1, 2)
    pi, pj = pairs[:, 0].copy(), pairs[:, 1].copy()
    base = np.ascontiguousarray(base, dtype=np.complex128)
    params, best, ok = _descend_kernel(base, pi, pj, INITIAL_STEP, MIN_STEP, max_sweeps)
    return _apply_params(base, pi, pj, params), float(best), bool(ok)


@dataclass(frozen=True)
class RoofResult:
    estimate: float
    best: Decomposition
    converged: bool
    restarts: int


def minimize_tangle(rho, m: int | None = None, restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                    init=None, max_sweeps: int = MAX_SWEEPS) -> RoofResult:
    """Upper bound on the convex-roof three-tangle of ``rho``.

    Parameters
    ----------
    rho : array_like, shape (8, 8)
    m : int, optional
        Number of decomposition terms; defaults to ``rank + 2``.
    restarts : int
        Independent starts.  The first uses ``init`` if given, otherwise the
        eigen-ensemble; the rest use Haar-random isometries.
    seed : int
        Seed of the Philox stream used for the random starts.
    init : array_like, optional
        Starting isometry with ``rank`` columns and at most ``m`` rows;
        missing rows are zero-padded.  Starting from the best isometry of a
        smaller ``m`` makes the result monotone in ``m``.

    Returns
    -------
    RoofResult
        ``estimate`` is the smallest average tangle found (re-evaluated
        exactly), ``converged`` is False if any restart hit ``max_sweeps``.
    """
    rho = np.asarray(rho, dtype=complex)
    mu, vecs = eigen_ensemble(rho)
    r = mu.size
    m = r + 2 if m is None else int(m)
    if m < r:
        raise ValueError(f"m = {m} is below the rank {r} of rho")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rng = make_rng(seed)

    if init is None:
        first = np.eye(m, r, dtype=complex)
    else:
        init = np.atleast_2d(np.asarray(init, dtype=complex))
        if init.shape[1] != r or init.shape[0] > m:
            raise ValueError(f"init must have {r} columns and at most {m} rows, got {init.shape}")
        first = np.zeros((m, r), dtype=complex)
        first[: init.shape[0]] = init

    best_val, best_mix, converged = np.inf, None, True
    for k in range(restarts):
        mix = first if k == 0 else haar_unitary(rng, m)[:, :r]
        tilde0 = _ensemble_vectors(mu, vecs, mix)
        tilde, val, ok = _descend(tilde0, max_sweeps)
        converged &= ok
        if val < best_val:
            # recover the mixing matrix from the optimized kets: tilde = M B with B^+ exact
            best_val = val
            best_mix = tilde @ np.linalg.pinv(_ensemble_vectors(mu, vecs, np.eye(r)))
    best = decompose_from_isometry(rho, best_mix)
    return RoofResult(estimate=avg_tangle(best), best=best, converged=bool(converged),
                      restarts=restarts)


def mixing_of(rho, d: Decomposition) -> np.ndarray:
    """Isometry that generates ``d`` from the eigen-ensemble of ``rho``."""
    mu, vecs = eigen_ensemble(rho)
    tilde = d.states * np.sqrt(d.weights)[:, None]
    return tilde @ np.linalg.pinv(_ensemble_vectors(mu, vecs, np.eye(mu.size)))


__all__ = [
    "Decomposition",
    "RoofResult",
    "eigen_ensemble",
    "decompose_from_isometry",
    "avg_tangle",
    "minimize_tangle",
    "mixing_of",
]
