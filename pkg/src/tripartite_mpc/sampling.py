"""Random states and local operations with reproducible streams.

All randomness comes from ``numpy.random.Philox`` (a counter-based bit
generator) keyed by an unsigned 64-bit seed, so a seed names the same stream
on every platform.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import as_pure_state
from .schmidt import LocalUnitaryTriple

SPLITS = ("A|BC", "B|AC", "C|AB")

# amplitudes of exactly biseparable samples live on this dyadic grid
_GRID_BITS = 26
_NORM_WINDOW = 1 << 17


def make_rng(seed: int) -> np.random.Generator:
    """Philox-backed generator; ``seed`` must fit in an unsigned 64-bit integer."""
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def _ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Unit vector drawn uniformly from the complex sphere in ``C^dim``."""
    v = _ginibre(rng, dim)
    return v / np.linalg.norm(v)


def haar_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-random three-qubit ket: eight complex Gaussians, normalized."""
    return haar_vector(rng, 8)


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random ``dim x dim`` unitary (QR of a Ginibre matrix with phase fix)."""
    q, r = np.linalg.qr(_ginibre(rng, (dim, dim)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(rng: np.random.Generator) -> LocalUnitaryTriple:
    return LocalUnitaryTriple(haar_unitary(rng, 2), haar_unitary(rng, 2), haar_unitary(rng, 2))


def random_local_filter(rng: np.random.Generator, qubit: str) -> tuple[np.ndarray, np.ndarray]:
    """Two-outcome measurement ``(M0, M1)`` on one qubit with ``M0^H M0 + M1^H M1 = I``.

    ``M0 = U diag(cos a, cos b) V`` and ``M1 = W diag(sin a, sin b) V`` with Haar
    ``U, V, W`` and ``a, b`` uniform in ``[0, pi/2]``.  ``qubit`` only checks the
    label; the operators are applied with :func:`apply_local`.
    """
    if qubit not in ("A", "B", "C"):
        raise ValueError(f"qubit must be A, B or C, got {qubit!r}")
    u, v, w = (haar_unitary(rng, 2) for _ in range(3))
    a, b = rng.uniform(0.0, np.pi / 2, size=2)
    m0 = u @ np.diag([np.cos(a), np.cos(b)]) @ v
    m1 = w @ np.diag([np.sin(a), np.sin(b)]) @ v
    return m0, m1


def apply_local(op: np.ndarray, qubit: str, psi: np.ndarray) -> np.ndarray:
    """Apply a 2x2 operator to one qubit of a three-qubit ket (no renormalization)."""
    axis = "ABC".index(qubit)
    t = np.moveaxis(np.asarray(psi, dtype=complex).reshape(2, 2, 2), axis, 0)
    t = np.tensordot(op, t, axes=(1, 0))
    return np.moveaxis(t, 0, axis).reshape(8)


def filter_outcomes(psi, qubit: str, filt) -> list[tuple[float, np.ndarray]]:
    """Outcome probabilities and normalized post-measurement kets.

    Outcomes with probability below 1e-14 are dropped.
    """
    out = []
    for m in filt:
        phi = apply_local(m, qubit, psi)
        prob = float(np.vdot(phi, phi).real)
        if prob >= 1e-14:
            out.append((prob, phi / math.sqrt(prob)))
    return out


# -- exactly biseparable samples ---------------------------------------------

def _grid_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Unit vector whose real and imaginary parts are multiples of ``2**-26``.

    Two coordinates are adjusted so that the squared norm is within about
    ``1e-12`` of one.  Products of two such amplitudes are then exact in
    binary64, so tensor products built from them are exactly factorized.
    """
    scale = 1 << _GRID_BITS
    target = scale * scale
    while True:
        v = haar_vector(rng, dim)
        n = np.rint(np.concatenate([v.real, v.imag]) * scale).astype(np.int64)
        # the two largest coordinates have room to absorb the correction
        i, j = np.argsort(-np.abs(n))[:2]
        rest = int(np.sum(n * n)) - int(n[i]) ** 2 - int(n[j]) ** 2
        ys = np.arange(abs(int(n[j])) - _NORM_WINDOW, abs(int(n[j])) + _NORM_WINDOW, dtype=np.int64)
        ys = ys[ys >= 0]
        rem = target - rest - ys * ys
        ok = rem > 0
        ys, rem = ys[ok], rem[ok]
        xs = np.rint(np.sqrt(rem.astype(float))).astype(np.int64)
        gap = np.abs(rem - xs * xs)
        k = int(np.argmin(gap))
        if gap[k] > 4096:
            continue
        n[i] = np.sign(n[i]) * xs[k] if n[i] != 0 else xs[k]
        n[j] = np.sign(n[j]) * ys[k] if n[j] != 0 else ys[k]
        out = (n[:dim] + 1j * n[dim:]) / scale
        return out


def biseparable_state(rng: np.random.Generator, split: str) -> np.ndarray:
    """``|phi>_X (x) |chi>_YZ`` for ``split = "X|YZ"``, in the A, B, C ordering.

    The factors are drawn Haar-randomly and snapped to a dyadic grid, so the
    product is biseparable exactly in floating point, not just to round-off.
    """
    if split not in SPLITS:
        raise ValueError(f"split must be one of {SPLITS}, got {split!r}")
    phi = _grid_unit_vector(rng, 2)
    chi = _grid_unit_vector(rng, 4)
    t = np.multiply.outer(phi, chi.reshape(2, 2))  # axes (X, Y, Z)
    single = "ABC".index(split[0])
    order = [single] + [q for q in range(3) if q != single]
    t = np.transpose(t, np.argsort(order))
    return as_pure_state(t.reshape(8))


__all__ = [
    "SPLITS",
    "make_rng",
    "haar_vector",
    "haar_pure_state",
    "haar_unitary",
    "random_local_unitary",
    "random_local_filter",
    "apply_local",
    "filter_outcomes",
    "biseparable_state",
]
