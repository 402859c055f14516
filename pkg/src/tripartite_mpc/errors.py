"""Exception hierarchy shared by the library and the command line."""


class MPCError(Exception):
    """Base class for all errors raised by :mod:`tripartite_mpc`."""


class InvalidStateError(MPCError, ValueError):
    """Input is not a valid pure state or density matrix (norm, shape, trace, positivity)."""


class NumericalConsistencyError(MPCError, ArithmeticError):
    """A computed quantity fell outside its admissible range by more than round-off."""


class DegenerateFormError(MPCError, ValueError):
    """A canonical-form construction is undefined for the given coefficients."""
