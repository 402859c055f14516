"""Small dense complex linear algebra for one to three qubits.

Basis ordering is fixed project-wide: qubit A is the most significant bit, so
the amplitude of ``|ijk>`` sits at index ``4*i + 2*j + k``.

The eigensolver is a cyclic Jacobi method for Hermitian matrices.  Every
spectral quantity in the package (purities aside) is routed through it, so no
general non-Hermitian eigenproblem is ever solved.
"""

from __future__ import annotations

from typing import Iterable

import numba
import numpy as np

from .errors import InvalidStateError

QUBIT_LABELS = "ABC"

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-10
CLAMP_TOL = 1e-10

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return kron(a, kron(b, c))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(np.all(np.abs(m - dagger(m)) <= tol))


def is_unitary(u: np.ndarray, tol: float = NORM_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.allclose(dagger(u) @ u, np.eye(u.shape[0]), rtol=0.0, atol=tol))


def as_pure_state(psi, dim: int = 8, tol: float = NORM_TOL) -> np.ndarray:
    """Return ``psi`` as a complex vector of length ``dim``, checking the norm.

    Raises
    ------
    InvalidStateError
        If the shape is wrong or ``| ||psi||^2 - 1 | > tol``.
    """
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape != (dim,):
        raise InvalidStateError(f"expected {dim} amplitudes, got {v.size}")
    norm2 = float(np.vdot(v, v).real)
    if abs(norm2 - 1.0) > tol:
        raise InvalidStateError(f"state is not normalized (norm^2 = {norm2:.15g})")
    return v


def normalize(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise InvalidStateError("cannot normalize the zero vector")
    return v / n


def ket_to_dm(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def purity(rho: np.ndarray) -> float:
    """``Tr rho^2`` for Hermitian ``rho``."""
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho) ** 2))


def _num_qubits(dim: int) -> int:
    n = {2: 1, 4: 2, 8: 3}.get(dim)
    if n is None:
        raise InvalidStateError(f"dimension {dim} is not 2, 4 or 8")
    return n


def validate_density_matrix(rho, tol: float = CLAMP_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return a complex copy."""
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
    _num_qubits(rho.shape[0])
    if not is_hermitian(rho, max(HERMITIAN_TOL, tol)):
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density matrix has trace {tr:.15g}")
    evals, _ = hermitian_eig(rho)
    if evals[-1] < -tol:
        raise InvalidStateError(f"density matrix has negative eigenvalue {evals[-1]:.3e}")
    return rho


def _parse_keep(keep: str | Iterable[str], n: int) -> list[int]:
    labels = QUBIT_LABELS[:n]
    if isinstance(keep, str):
        keep = list(keep)
    idx = set()
    for q in keep:
        q = q.upper()
        if q not in labels:
            raise InvalidStateError(f"unknown qubit label {q!r} for a {n}-qubit state")
        idx.add(labels.index(q))
    if not idx or len(idx) == n:
        raise InvalidStateError("keep must be a nonempty proper subset of the qubits")
    return sorted(idx)


def partial_trace(rho: np.ndarray, keep: str | Iterable[str]) -> np.ndarray:
    """Reduced density matrix on the qubits named in ``keep``.

    Parameters
    ----------
    rho : ndarray
        ``2^n x 2^n`` density matrix, ``n`` in {2, 3}.
    keep : str or iterable of str
        Labels from ``"ABC"`` (the first ``n`` of them), e.g. ``"AB"`` or ``{"C"}``.

    Examples
    --------
    >>> ghz = np.zeros(8); ghz[[0, 7]] = 2 ** -0.5
    >>> partial_trace(ket_to_dm(ghz), "A").real
    array([[0.5, 0. ],
           [0. , 0.5]])
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    n = _num_qubits(rho.shape[0])
    kept = _parse_keep(keep, n)
    t = rho.reshape((2,) * (2 * n))
    m = n
    for q in reversed(range(n)):
        if q in kept:
            continue
        t = np.trace(t, axis1=q, axis2=q + m)
        m -= 1
    d = 2 ** len(kept)
    return t.reshape(d, d)


def reduced_from_ket(psi: np.ndarray, keep: str | Iterable[str]) -> np.ndarray:
    """Reduced state of a three-qubit ket without forming the 8x8 projector."""
    kept = _parse_keep(keep, 3)
    traced = [q for q in range(3) if q not in kept]
    t = np.moveaxis(np.asarray(psi, dtype=complex).reshape(2, 2, 2), kept + traced, range(3))
    m = t.reshape(2 ** len(kept), -1)
    return m @ m.conj().T


@numba.njit(cache=True)
def _jacobi_kernel(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    scale = max(1.0, np.sqrt(scale))
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
        if np.sqrt(off) < tol * scale:
            return v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                ph = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G restricted to (p, q): [[c, s], [-s*conj(ph), c*conj(ph)]]
                g_pp = c + 0j
                g_pq = s + 0j
                g_qp = -s * np.conj(ph)
                g_qq = c * np.conj(ph)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * g_pp + akq * g_qp
                    a[k, q] = akp * g_pq + akq * g_qq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(g_pp) * apk + np.conj(g_qp) * aqk
                    a[q, k] = np.conj(g_pq) * apk + np.conj(g_qq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * g_pp + vkq * g_qp
                    v[k, q] = vkp * g_pq + vkq * g_qq
    return v, max_sweeps


def hermitian_eig(m: np.ndarray, tol: float = JACOBI_TOL,
                  max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues in descending order and the matching eigenvectors as
    columns, so that ``m == V @ diag(w) @ V^H``.  Sweeps stop once the
    off-diagonal Frobenius norm drops below ``tol`` (relative to
    ``max(1, ||m||_F)``) or after ``max_sweeps``.

    Raises
    ------
    InvalidStateError
        If ``m`` is not square and Hermitian within 1e-12.
    """
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {a.shape}")
    if not is_hermitian(a):
        raise InvalidStateError("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    v, _ = _jacobi_kernel(a, tol, max_sweeps)
    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def psd_sqrt(m: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``(-tol, 0)`` are treated as round-off and clamped to zero;
    anything more negative raises :class:`InvalidStateError`.
    """
    w, v = hermitian_eig(m)
    if w[-1] < -tol:
        raise InvalidStateError(f"matrix is not positive semidefinite (eigenvalue {w[-1]:.3e})")
    r = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def eigvalsh_desc(m: np.ndarray) -> np.ndarray:
    """Descending Jacobi eigenvalues of a matrix already known to be Hermitian.

    No validation; intended for internal hot paths.
    """
    a = np.array(m, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    _jacobi_kernel(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    return np.sort(np.diag(a).real)[::-1]


def singular_values(x: np.ndarray) -> np.ndarray:
    """Singular values of a square matrix, descending.

    Taken from the Hermitian eigenproblem ``[[0, X], [X^H, 0]]`` whose spectrum
    is ``+-sigma_i``; this keeps absolute accuracy near zero, unlike square roots
    of the eigenvalues of ``X X^H``.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    h[:n, n:] = x
    h[n:, :n] = x.conj().T
    return np.abs(eigvalsh_desc(h)[:n])
