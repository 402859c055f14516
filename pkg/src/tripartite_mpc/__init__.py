"""Minimum pairwise concurrence and related entanglement measures for three qubits."""

from .errors import DegenerateFormError, InvalidStateError, MPCError, NumericalConsistencyError
from .families import (
    ghz_w_cab,
    ghz_w_mpc,
    ghz_w_state,
    ghz_w_tangle,
    ghz_w_wt_cab,
    ghz_w_wt_mpc,
    ghz_w_wt_state,
    ghz_w_wt_tangle,
    mixed_mpc,
    thresholds,
)
from .linalg import hermitian_eig, ket_to_dm, partial_trace
from .measures import (
    MeasureReport,
    bipartite_concurrence,
    concurrence_fill,
    gbc,
    gmc,
    measure_report,
    mpc,
    pairwise_concurrence,
    reduced_concurrence,
    three_tangle,
    wootters_concurrence,
)
from .props import run_property_suite
from .roof import Decomposition, avg_tangle, decompose_from_isometry, minimize_tangle
from .sampling import biseparable_state, haar_pure_state, make_rng, random_local_filter, random_local_unitary
from .schmidt import LocalUnitaryTriple, SchmidtForm, pairwise_via_reshape, schmidt_decompose
from .states import ghz, psi5, psi6, w_state, w_tilde

__version__ = "0.1.0"
