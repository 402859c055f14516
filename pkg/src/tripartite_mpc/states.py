"""Named three-qubit states used throughout the package.

Kets are plain complex numpy vectors of length 8, indexed ``4*i + 2*j + k``
for ``|ijk>``.
"""

from __future__ import annotations

import numpy as np

from .linalg import normalize

_S2 = np.sqrt(2.0)
_S3 = np.sqrt(3.0)


def basis_state(label: str) -> np.ndarray:
    """Computational basis ket, e.g. ``basis_state("101")``."""
    if len(label) != 3 or set(label) - {"0", "1"}:
        raise ValueError(f"basis label must be three bits, got {label!r}")
    v = np.zeros(8, dtype=complex)
    v[int(label, 2)] = 1.0
    return v


def ket(amplitudes: dict[str, complex]) -> np.ndarray:
    """Build a ket from ``{"000": a, "111": b, ...}``; missing labels are zero.

    The result is *not* renormalized.
    """
    v = np.zeros(8, dtype=complex)
    for label, amp in amplitudes.items():
        v[int(label, 2)] = amp
    return v


def ghz() -> np.ndarray:
    return ket({"000": 1 / _S2, "111": 1 / _S2})


def w_state() -> np.ndarray:
    return ket({"001": 1 / _S3, "010": 1 / _S3, "100": 1 / _S3})


def w_tilde() -> np.ndarray:
    """Bit-flipped W state ``(|110> + |101> + |011>)/sqrt(3)``."""
    return ket({"110": 1 / _S3, "101": 1 / _S3, "011": 1 / _S3})


def psi5() -> np.ndarray:
    """``|000>/sqrt(10) + 2|101>/sqrt(5) + |110>/sqrt(10)``; GMC 0.6, MPC 0.2."""
    return ket({"000": 1 / np.sqrt(10.0), "101": 2 / np.sqrt(5.0), "110": 1 / np.sqrt(10.0)})


def psi6() -> np.ndarray:
    """``3|000>/sqrt(20) + |101>/sqrt(10) + 3|110>/sqrt(20)``; GMC 0.6, MPC 6/sqrt(200)."""
    return ket({"000": 3 / np.sqrt(20.0), "101": 1 / np.sqrt(10.0), "110": 3 / np.sqrt(20.0)})


def product_state(a, b, c) -> np.ndarray:
    """``|a> (x) |b> (x) |c>`` from three (unnormalized) single-qubit vectors."""
    return normalize(np.kron(np.asarray(a, complex), np.kron(np.asarray(b, complex), np.asarray(c, complex))))


NAMED_STATES = {
    "ghz": ghz,
    "w": w_state,
    "w_tilde": w_tilde,
    "psi5": psi5,
    "psi6": psi6,
    "000": lambda: basis_state("000"),
}
