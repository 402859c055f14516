import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from tripartite_mpc.errors import DegenerateFormError, InvalidStateError
from tripartite_mpc.measures import bipartite_concurrence, pairwise_concurrence, pure_concurrence_2q
from tripartite_mpc.schmidt import (
    LocalUnitaryTriple,
    SchmidtForm,
    closed_form_bipartite,
    closed_form_pairwise_ab,
    pairwise_all_via_reshape,
    pairwise_via_reshape,
    reconstruction_fidelity,
    reshaped_state,
    schmidt_decompose,
    transform_bc,
)
from tripartite_mpc.states import NAMED_STATES, basis_state, ghz, psi5, psi6, w_state

from .conftest import kets, random_ket, random_unitary


@st.composite
def forms(draw, zeros=True):
    seed = draw(st.integers(0, 2**32 - 1))
    r = np.random.default_rng(seed)
    lam = np.abs(r.standard_normal(5))
    if not zeros:
        return SchmidtForm(tuple(lam / np.linalg.norm(lam)), r.uniform(0, np.pi))
    mask = draw(st.lists(st.booleans(), min_size=5, max_size=5))
    if any(mask):
        lam = lam * np.array(mask)  # structured zeros, e.g. W-class or GHZ-like forms
    phi = r.uniform(0, np.pi) if draw(st.booleans()) else draw(st.sampled_from([0.0, np.pi]))
    return SchmidtForm(tuple(lam / np.linalg.norm(lam)), phi)


def check_decomposition(psi):
    form, lu = schmidt_decompose(psi)
    assert lu.is_unitary()
    assert 0.0 <= form.phi <= np.pi
    assert min(form.lambdas) >= 0.0
    assert sum(x * x for x in form.lambdas) == pytest.approx(1.0, abs=1e-10)
    assert reconstruction_fidelity(psi, form, lu) >= 1 - 1e-9
    return form, lu


def test_ghz_form():
    form, _ = check_decomposition(ghz())
    assert_allclose(form.lambdas, [2**-0.5, 0, 0, 0, 2**-0.5], atol=1e-12)


def test_psi6_form():
    form, _ = check_decomposition(psi6())
    assert_allclose(form.lambdas, [3 / np.sqrt(20), 0, 1 / np.sqrt(10), 3 / np.sqrt(20), 0], atol=1e-12)


def test_psi5_form():
    form, _ = check_decomposition(psi5())
    assert_allclose(form.lambdas, [1 / np.sqrt(10), 0, 2 / np.sqrt(5), 1 / np.sqrt(10), 0], atol=1e-12)


@pytest.mark.parametrize("name", sorted(NAMED_STATES))
def test_named_states_round_trip(name, rng):
    psi = NAMED_STATES[name]()
    check_decomposition(psi)
    # near-double roots: the same states behind random local unitaries
    lu = LocalUnitaryTriple(*(random_unitary(rng) for _ in range(3)))
    check_decomposition(lu.apply(psi))


@given(psi=kets())
def test_round_trip_haar(psi):
    check_decomposition(psi)


@pytest.mark.parametrize("order", [(0, 1, 2), (1, 0, 2), (1, 2, 0)])
def test_biseparable_inputs_decompose(order, rng):
    for _ in range(50):
        t = np.multiply.outer(random_ket(rng, 2), random_ket(rng, 4).reshape(2, 2))
        check_decomposition(np.transpose(t, order).reshape(8))


def test_lambda0_zero_when_a_factorizes(rng):
    t = np.multiply.outer(random_ket(rng, 2), random_ket(rng, 4).reshape(2, 2))
    form, _ = check_decomposition(t.reshape(8))
    assert form[0] == pytest.approx(0.0, abs=1e-8)


@given(psi=kets(), seed=st.integers(0, 2**32 - 1))
def test_lambdas_are_local_unitary_invariant(psi, seed):
    r = np.random.default_rng(seed)
    lu = LocalUnitaryTriple(*(random_unitary(r) for _ in range(3)))
    a, _ = schmidt_decompose(psi)
    b, _ = schmidt_decompose(lu.apply(psi))
    assert_allclose(a.lambdas, b.lambdas, atol=1e-8)
    assert a.phi == pytest.approx(b.phi, abs=1e-6)


@given(form=forms(zeros=False))
def test_generic_form_decomposes_to_itself(form):
    got, _ = schmidt_decompose(form.state())
    assert_allclose(got.lambdas, form.lambdas, atol=1e-8)


def form_invariants(form):
    c = closed_form_bipartite(form)
    return [c["A"], c["B"], c["C"], 4 * form[0] ** 2 * form[4] ** 2]


@given(form=forms(), seed=st.integers(0, 2**32 - 1))
def test_structured_forms(form, seed):
    # with vanishing coefficients the canonical form need not be the input
    # (|111> and |000> are equivalent), but it must describe the same orbit
    psi = form.state()
    a, _ = check_decomposition(psi)
    r = np.random.default_rng(seed)
    lu = LocalUnitaryTriple(*(random_unitary(r) for _ in range(3)))
    b, _ = check_decomposition(lu.apply(psi))
    assert_allclose(form_invariants(a), form_invariants(form), atol=1e-8)
    assert_allclose(form_invariants(b), form_invariants(form), atol=1e-8)
    # near tau = 0 the two candidate rotations merge and the coefficients are
    # only determined to ~sqrt(eps); away from it they are stable
    if 4 * form[0] ** 2 * form[4] ** 2 > 1e-4:
        assert_allclose(a.lambdas, b.lambdas, atol=1e-8)


@given(form=forms())
def test_bipartite_closed_forms(form):
    psi = form.state()
    closed = closed_form_bipartite(form)
    for s in "ABC":
        assert closed[s] == pytest.approx(bipartite_concurrence(psi, s), abs=1e-9)
    assert closed_form_pairwise_ab(form) == pytest.approx(pairwise_concurrence(psi, "AB"), abs=1e-9)


@given(psi=kets())
def test_reshape_equivalence(psi):
    got = pairwise_all_via_reshape(psi)
    for pair, value in got.items():
        assert value == pytest.approx(pairwise_concurrence(psi, pair), abs=1e-8)
        assert pairwise_via_reshape(psi, pair) == value


@given(form=forms())
def test_transform_bc(form):
    assume(form[3] ** 2 + form[4] ** 2 > 1e-14)  # undefined otherwise, see test_bc_degenerate_form
    lu, psi1 = transform_bc(form)
    assert lu.is_unitary()
    assert_allclose(lu.apply(form.state()), psi1, atol=1e-12)
    assert_allclose(psi1[[1, 4, 5]], 0, atol=1e-15)


def test_reshaped_states_are_real_nonnegative(rng):
    form, _ = schmidt_decompose(random_ket(rng))
    for pair in ("AB", "AC", "BC"):
        v = reshaped_state(form, pair)
        assert v.shape == (4,) and np.all(v >= 0) and v[1] == 0
        assert np.sum(v**2) == pytest.approx(1.0, abs=1e-12)
        assert pure_concurrence_2q(v) >= 0


def test_bc_degenerate_form():
    form = SchmidtForm((0.6, 0.0, 0.8, 0.0, 0.0), 0.0)
    with pytest.raises(DegenerateFormError):
        transform_bc(form)
    psi = form.state()
    assert pairwise_via_reshape(psi, "BC") == pytest.approx(pairwise_concurrence(psi, "BC"), abs=1e-12)


def test_product_and_w_forms():
    form, _ = check_decomposition(basis_state("000"))
    assert_allclose(form.lambdas, [1, 0, 0, 0, 0], atol=1e-12)
    form, _ = check_decomposition(w_state())
    assert form[4] == pytest.approx(0.0, abs=1e-8)


@pytest.mark.parametrize("lam,phi", [
    ((1, 0, 0, 0), 0.0),
    ((-0.6, 0.8, 0, 0, 0), 0.0),
    ((1, 1, 0, 0, 0), 0.0),
    ((1, 0, 0, 0, 0), 4.0),
])
def test_schmidt_form_validation(lam, phi):
    with pytest.raises(InvalidStateError):
        SchmidtForm(lam, phi)
