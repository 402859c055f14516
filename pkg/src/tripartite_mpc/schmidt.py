"""Generalized Schmidt decomposition of three-qubit kets and reshaped states.

Any three-qubit pure state is local-unitarily equivalent to

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

with ``l_i >= 0``, ``sum l_i^2 = 1`` and ``0 <= phi <= pi``.  The rotation on
qubit A is chosen so that the ``A = 0`` slice of the amplitude tensor becomes
rank one; that is a root of the quadratic ``det(a0 T0 + a1 T1) = 0`` in the
projective coordinate ``(a0 : a1)``.  SVD of the singular slice then fixes B
and C, and diagonal phase gates make four coefficients real.

The two roots generically lead to canonical forms with ``sin(phi)`` of
opposite sign, so the range restriction on ``phi`` selects the root; the
larger ``l0`` (then smaller ``l1``) only breaks ties on degenerate inputs.

From the canonical form, pairwise concurrences follow as concurrences of
"reshaped" two-qubit kets built from the square roots of outcome
probabilities of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFormError, InvalidStateError
from .linalg import as_pure_state, is_unitary, kron3
from .measures import PAIRS, _pair_of, pairwise_concurrence, pure_concurrence_2q

ZERO_TOL = 1e-12
FORM_RESIDUAL_TOL = 1e-7
PHI_SLACK = 1e-9
DOUBLE_ROOT_TOL = 1e-6
BC_DEGENERATE_TOL = 1e-14
RESIDUAL_TIE = 1e-12
GAUGE_TOL = 1e-9

_FORM_INDEX = (0, 4, 5, 6, 7)  # |000>, |100>, |101>, |110>, |111>
_OFF_FORM_INDEX = (1, 2, 3)  # |001>, |010>, |011>


@dataclass(frozen=True)
class SchmidtForm:
    """Coefficients ``lambda0..lambda4`` and phase ``phi`` of the canonical form."""

    lambdas: tuple[float, float, float, float, float]
    phi: float

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if lam.shape != (5,):
            raise InvalidStateError("a Schmidt form has exactly five coefficients")
        if np.any(lam < 0):
            raise InvalidStateError(f"coefficients must be nonnegative, got {self.lambdas}")
        if abs(float(np.sum(lam ** 2)) - 1.0) > 1e-10:
            raise InvalidStateError("coefficients must satisfy sum(lambda_i^2) = 1")
        if not 0.0 <= self.phi <= np.pi:
            raise InvalidStateError(f"phi must lie in [0, pi], got {self.phi!r}")
        object.__setattr__(self, "lambdas", tuple(float(x) for x in lam))
        object.__setattr__(self, "phi", float(self.phi))

    @classmethod
    def from_values(cls, l0=0.0, l1=0.0, l2=0.0, l3=0.0, l4=0.0, phi=0.0) -> "SchmidtForm":
        return cls((l0, l1, l2, l3, l4), phi)

    def __getitem__(self, i: int) -> float:
        return self.lambdas[i]

    def state(self) -> np.ndarray:
        l0, l1, l2, l3, l4 = self.lambdas
        v = np.zeros(8, dtype=complex)
        v[list(_FORM_INDEX)] = [l0, l1 * np.exp(1j * self.phi), l2, l3, l4]
        return v


@dataclass(frozen=True)
class LocalUnitaryTriple:
    u_a: np.ndarray
    u_b: np.ndarray
    u_c: np.ndarray

    def matrix(self) -> np.ndarray:
        return kron3(self.u_a, self.u_b, self.u_c)

    def apply(self, psi) -> np.ndarray:
        t = np.asarray(psi, dtype=complex).reshape(2, 2, 2)
        return np.einsum("ai,bj,ck,ijk->abc", self.u_a, self.u_b, self.u_c, t).reshape(8)

    def inverse(self) -> "LocalUnitaryTriple":
        return LocalUnitaryTriple(self.u_a.conj().T, self.u_b.conj().T, self.u_c.conj().T)

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return all(is_unitary(u, tol) for u in (self.u_a, self.u_b, self.u_c))


# -- closed forms on canonical coefficients -------------------------------------

def closed_form_bipartite(form: SchmidtForm) -> dict[str, float]:
    """Bipartite concurrences of a canonical-form state from its coefficients.

    The ``C`` cut is the ``B`` expression with ``l2`` and ``l3`` exchanged
    (swapping qubits B and C maps the form onto itself that way).
    """
    l0, l1, l2, l3, l4 = form.lambdas
    c = np.cos(form.phi)
    b = l0**2 * (l3**2 + l4**2) + l1**2 * l4**2 + l2**2 * l3**2 - 2 * l1 * l2 * l3 * l4 * c
    cc = l0**2 * (l2**2 + l4**2) + l1**2 * l4**2 + l2**2 * l3**2 - 2 * l1 * l2 * l3 * l4 * c
    return {
        "A": 2 * l0 * np.sqrt(l2**2 + l3**2 + l4**2),
        "B": 2 * np.sqrt(max(b, 0.0)),
        "C": 2 * np.sqrt(max(cc, 0.0)),
    }


def closed_form_pairwise_ab(form: SchmidtForm) -> float:
    l0, _, _, l3, l4 = form.lambdas
    return 2 * l0 * np.sqrt(l3**2 + l4**2)


# -- decomposition ---------------------------------------------------------------

def _quadratic_roots(a: complex, b: complex, c: complex) -> list[complex]:
    """Roots of ``a z^2 + b z + c`` with ``a != 0``.

    When the roots nearly coincide their midpoint ``-b/2a`` is appended: float
    round-off splits a true double root by ~1e-8, and the midpoint is then the
    better estimate.  Which candidate is right is decided downstream by the
    reconstruction residual.
    """
    disc = np.sqrt(complex(b * b - 4 * a * c))
    if abs(b + disc) < abs(b - disc):
        disc = -disc
    q = -0.5 * (b + disc)
    z1 = q / a
    z2 = c / q if q != 0 else z1
    roots = [z1, z2]
    if abs(z1 - z2) <= DOUBLE_ROOT_TOL * max(1.0, abs(z1), abs(z2)):
        roots.append(-b / (2 * a))
    return roots


def _a_rotation_candidates(t0: np.ndarray, t1: np.ndarray) -> list[np.ndarray]:
    """First rows ``(a0, a1)`` of U_A making ``a0 T0 + a1 T1`` singular."""
    d0 = np.linalg.det(t0)
    d1 = np.linalg.det(t1)
    mid = t0[0, 0] * t1[1, 1] + t1[0, 0] * t0[1, 1] - t0[0, 1] * t1[1, 0] - t1[0, 1] * t0[1, 0]
    scale = max(abs(d0), abs(d1), abs(mid))
    rows = []
    if scale <= ZERO_TOL:
        # every combination is singular: take the one carrying the most weight
        u, _, _ = np.linalg.svd(np.vstack([t0.reshape(-1), t1.reshape(-1)]))
        rows += [u[:, 0].conj(), u[:, 1].conj(), np.array([1, 0]), np.array([0, 1])]
    elif max(abs(d0), abs(d1)) <= ZERO_TOL * scale:
        # linear pencil: one root at a finite point, the other at infinity
        rows += [np.array([mid, -d0]), np.array([0, 1])]
    elif abs(d1) >= abs(d0):
        # a = (1, y):  d0 + mid y + d1 y^2 = 0
        rows += [np.array([1, y]) for y in _quadratic_roots(d1, mid, d0)]
    else:
        # a = (x, 1):  d0 x^2 + mid x + d1 = 0
        rows += [np.array([x, 1]) for x in _quadratic_roots(d0, mid, d1)]
    return [np.asarray(r, dtype=complex) / np.linalg.norm(r) for r in rows]


def _gauge(c: np.ndarray) -> np.ndarray:
    """Phases ``(a, dA, dB, dC)`` making |000>, |101>, |110>, |111> real nonnegative.

    The phase picked up by ``|ijk>`` is ``a + i dA + j dB + k dC``.  Vanishing
    coefficients drop their constraint, and the freed direction is then used
    to make the |100> coefficient real as well.  "Vanishing" means below
    ``GAUGE_TOL``: ill-conditioned inputs leave ~1e-12 debris whose phase is
    noise and must not decide the range of ``phi``.
    """
    rows = {0: (1, 0, 0, 0), 5: (1, 1, 0, 1), 6: (1, 1, 1, 0), 7: (1, 1, 1, 1), 4: (1, 1, 0, 0)}
    a_rows, b = [], []
    for idx in (0, 5, 6, 7, 4):
        if abs(c[idx]) <= GAUGE_TOL:
            continue
        trial = a_rows + [rows[idx]]
        if np.linalg.matrix_rank(np.array(trial, dtype=float)) == len(trial):
            a_rows = trial
            b.append(-np.angle(c[idx]))
    if not a_rows:
        return np.zeros(4)
    g, *_ = np.linalg.lstsq(np.array(a_rows, dtype=float), np.array(b), rcond=None)
    return g


def _form_from_row(t: np.ndarray, row: np.ndarray):
    a0, a1 = row
    u_a = np.array([[a0, a1], [-np.conj(a1), np.conj(a0)]])
    tp = np.einsum("ai,ijk->ajk", u_a, t)
    u, sv, vh = np.linalg.svd(tp[0])
    if sv[0] <= ZERO_TOL:
        # lambda0 = 0 (A factorizes off): diagonalize the other slice instead,
        # which leaves only |100> and |111> and frees the phase
        u, _, vh = np.linalg.svd(tp[1])
    u_b = u.conj().T
    u_c = vh.conj()
    c = np.einsum("ajk,bj,ck->abc", tp, u_b, u_c).reshape(8)
    residual = float(np.linalg.norm(c[list(_OFF_FORM_INDEX)]))
    g = _gauge(c)
    a, da, db, dc = g
    u_a = np.diag([np.exp(1j * a), np.exp(1j * (a + da))]) @ u_a
    u_b = np.diag([1.0, np.exp(1j * db)]) @ u_b
    u_c = np.diag([1.0, np.exp(1j * dc)]) @ u_c
    ph = np.array([a + i * da + j * db + k * dc for i in (0, 1) for j in (0, 1) for k in (0, 1)])
    c = c * np.exp(1j * ph)
    lam = np.abs(c[list(_FORM_INDEX)])
    phi = float(np.angle(c[4]) % (2 * np.pi)) if lam[1] > GAUGE_TOL else 0.0
    return lam, phi, residual, LocalUnitaryTriple(u_a, u_b, u_c)


def schmidt_decompose(psi) -> tuple[SchmidtForm, LocalUnitaryTriple]:
    """Canonical form of ``psi`` and local unitaries mapping ``psi`` onto it.

    ``unitaries.apply(psi)`` reproduces ``form.state()`` up to round-off.

    Raises
    ------
    DegenerateFormError
        If no candidate rotation yields a valid form with ``phi`` in ``[0, pi]``.
    """
    psi = as_pure_state(psi)
    t = psi.reshape(2, 2, 2)
    valid = []
    for row in _a_rotation_candidates(t[0], t[1]):
        lam, phi, residual, lu = _form_from_row(t, row)
        if residual > FORM_RESIDUAL_TOL:
            continue
        if phi > np.pi + PHI_SLACK and phi < 2 * np.pi - PHI_SLACK:
            continue
        phi = min(phi, np.pi) if phi <= np.pi + PHI_SLACK else 0.0
        valid.append((residual, lam, phi, lu))
    best = None
    if valid:
        # most accurate candidates first; lambda0 / lambda1 only break ties among them
        cutoff = max(RESIDUAL_TIE, 100.0 * min(v[0] for v in valid))
        for residual, lam, phi, lu in valid:
            if residual > cutoff:
                continue
            key = (lam[0], -lam[1])
            if best is None or _better(key, best[0]):
                best = (key, lam, phi, lu)
    if best is None:
        raise DegenerateFormError("no rotation of qubit A yields a canonical form")
    _, lam, phi, lu = best
    lam = lam / np.linalg.norm(lam)
    return SchmidtForm(tuple(lam), phi), lu


def _better(key, incumbent) -> bool:
    if abs(key[0] - incumbent[0]) >= ZERO_TOL:
        return key[0] > incumbent[0]
    return key[1] > incumbent[1] + ZERO_TOL


def reconstruction_fidelity(psi, form: SchmidtForm, unitaries: LocalUnitaryTriple) -> float:
    """``|<form|U psi>|`` for a decomposition returned by :func:`schmidt_decompose`."""
    return float(abs(np.vdot(form.state(), unitaries.apply(psi))))


# -- reshaped states ---------------------------------------------------------------

def transform_bc(form: SchmidtForm) -> tuple[LocalUnitaryTriple, np.ndarray]:
    """Local unitaries moving the canonical form to ``l0|000> + l1|010> + l2|011> + l3|110> + l4|111>``.

    Returns the unitaries and the transformed ket, whose amplitudes are
    written out in closed form (not obtained by applying the unitaries).

    Raises
    ------
    DegenerateFormError
        If ``lambda3 = lambda4 = 0``, where the C rotation is undefined.
    """
    l0, l1, l2, l3, l4 = form.lambdas
    n2 = l3 * l3 + l4 * l4
    if n2 < BC_DEGENERATE_TOL:
        raise DegenerateFormError("lambda3 = lambda4 = 0: the BC transform is undefined")
    n = np.sqrt(n2)
    e = np.exp(1j * form.phi)
    u_a = np.array([[0, 1], [1, 0]], dtype=complex)
    u_b = np.array([[0, -1], [1, 0]], dtype=complex)
    u_c = (-1.0 / n) * np.array([[l3, l4], [l4, -l3]], dtype=complex)
    psi1 = np.zeros(8, dtype=complex)
    psi1[0b000] = n
    psi1[0b010] = -(l1 * l3 * e + l2 * l4) / n
    psi1[0b011] = (l2 * l3 - l1 * l4 * e) / n
    psi1[0b110] = -l0 * l3 / n
    psi1[0b111] = -l0 * l4 / n
    return LocalUnitaryTriple(u_a, u_b, u_c), psi1


def reshaped_state(form: SchmidtForm, pair: str) -> np.ndarray:
    """Two-qubit ket ``(p, q, r, s)`` whose concurrence is the pairwise concurrence of ``pair``."""
    l0, l1, l2, l3, l4 = form.lambdas
    pair = _pair_of(pair)
    if pair == "AB":
        v = (l0, 0.0, np.hypot(l1, l2), np.hypot(l3, l4))
    elif pair == "AC":
        v = (l0, 0.0, np.hypot(l1, l3), np.hypot(l2, l4))
    else:
        _, psi1 = transform_bc(form)
        l = np.abs(psi1[[0b000, 0b010, 0b011, 0b110, 0b111]])
        v = (l[0], 0.0, np.hypot(l[1], l[3]), np.hypot(l[2], l[4]))
    return np.asarray(v, dtype=float)


def pairwise_via_reshape(psi, pair: str, form: SchmidtForm | None = None) -> float:
    """Pairwise concurrence computed from the reshaped state of the canonical form.

    Pass ``form`` to reuse an existing decomposition of ``psi``.  When
    ``lambda3 = lambda4 = 0`` the BC reshaping is unavailable and the
    reduced-concurrence-plus-tangle value is returned instead.
    """
    psi = as_pure_state(psi)
    pair = _pair_of(pair)
    if form is None:
        form, _ = schmidt_decompose(psi)
    if pair == "BC" and form[3] ** 2 + form[4] ** 2 < BC_DEGENERATE_TOL:
        return pairwise_concurrence(psi, pair)
    return pure_concurrence_2q(reshaped_state(form, pair))


def pairwise_all_via_reshape(psi) -> dict[str, float]:
    """All three reshaped pairwise concurrences from a single decomposition."""
    psi = as_pure_state(psi)
    form, _ = schmidt_decompose(psi)
    return {p: pairwise_via_reshape(psi, p, form) for p in PAIRS}


__all__ = [
    "PAIRS",
    "SchmidtForm",
    "LocalUnitaryTriple",
    "schmidt_decompose",
    "reconstruction_fidelity",
    "transform_bc",
    "reshaped_state",
    "pairwise_via_reshape",
    "pairwise_all_via_reshape",
    "closed_form_bipartite",
    "closed_form_pairwise_ab",
]
