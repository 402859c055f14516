"""Exact evaluation of low-degree polynomial invariants of three-qubit kets.

Binary64 amplitudes are rationals with power-of-two denominators, so any
polynomial in them can be evaluated without rounding on Python integers.
Only the final conversion back to ``float`` rounds.  This matters near
biseparable states: the invariants there are differences of O(1) products
that cancel exactly, and a float evaluation leaves ~1e-17 of noise that a
subsequent square or cube root turns into ~1e-8 .. 1e-6.
"""

from __future__ import annotations

import math

import numpy as np

# 2x4 matricizations: row index is the singled-out qubit, columns run over the rest.
_CUT_AXES = {"A": (0, 1, 2), "B": (1, 0, 2), "C": (2, 0, 1)}
_CUT_INDEX = {s: np.arange(8).reshape(2, 2, 2).transpose(ax).reshape(2, 4).tolist()
              for s, ax in _CUT_AXES.items()}


def _scaled_gaussian_ints(psi: np.ndarray) -> tuple[list[tuple[int, int]], int]:
    """Write each amplitude as ``(re + i im) / 2**k`` with integer ``re``, ``im``."""
    ratios = []
    for a in np.asarray(psi, dtype=complex).reshape(-1):
        ratios.append(float(a.real).as_integer_ratio())
        ratios.append(float(a.imag).as_integer_ratio())
    k = max(den.bit_length() - 1 for _, den in ratios)
    ints = [num << (k - (den.bit_length() - 1)) for num, den in ratios]
    return [(ints[2 * i], ints[2 * i + 1]) for i in range(len(ints) // 2)], k


def _mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def _ratio_to_float(num: int, log2_den: int) -> float:
    # int / int true division is correctly rounded for arbitrary sizes
    return num / (1 << log2_den)


def scaled(psi: np.ndarray) -> tuple[list[tuple[int, int]], int]:
    """Integer form of ``psi`` that the evaluators below accept in place of the ket."""
    return _scaled_gaussian_ints(psi)


def _ints(psi):
    return psi if isinstance(psi, tuple) else _scaled_gaussian_ints(psi)


def cut_determinant(psi, side: str) -> float:
    """``det rho_side`` of the one-qubit reduced state, via Cauchy-Binet.

    Equals the sum of squared moduli of the 2x2 minors of the 2x4
    matricization, rounded once.  ``psi`` may be a ket or the output of
    :func:`scaled`.
    """
    z, k = _ints(psi)
    idx = _CUT_INDEX[side]
    total = 0
    for c1 in range(4):
        for c2 in range(c1 + 1, 4):
            p = _mul(z[idx[0][c1]], z[idx[1][c2]])
            q = _mul(z[idx[0][c2]], z[idx[1][c1]])
            re, im = p[0] - q[0], p[1] - q[1]
            total += re * re + im * im
    return _ratio_to_float(total, 4 * k)


def hyperdeterminant_abs(psi) -> float:
    """``|Hdet(psi)|`` of the 2x2x2 amplitude tensor (Cayley), rounded once."""
    z, k = _ints(psi)

    def prod(*ix):
        acc = z[ix[0]]
        for i in ix[1:]:
            acc = _mul(acc, z[i])
        return acc

    terms = (
        # (coefficient, indices)  000=0 001=1 010=2 011=3 100=4 101=5 110=6 111=7
        (1, (0, 0, 7, 7)), (1, (1, 1, 6, 6)), (1, (2, 2, 5, 5)), (1, (4, 4, 3, 3)),
        (-2, (0, 7, 3, 4)), (-2, (0, 7, 5, 2)), (-2, (0, 7, 6, 1)),
        (-2, (3, 4, 5, 2)), (-2, (3, 4, 6, 1)), (-2, (5, 2, 6, 1)),
        (4, (0, 6, 5, 3)), (4, (7, 1, 2, 4)),
    )
    re = im = 0
    for coeff, ix in terms:
        t = prod(*ix)
        re += coeff * t[0]
        im += coeff * t[1]
    return math.sqrt(_ratio_to_float(re * re + im * im, 8 * k))
