import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# acceptance results, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_ket(rng, dim=8):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim=2):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@st.composite
def kets(draw, dim=8):
    """Normalized complex vectors built from a drawn seed (keeps shrinking cheap)."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_ket(np.random.default_rng(seed), dim)


@st.composite
def unitaries(draw, dim=2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_unitary(np.random.default_rng(seed), dim)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)
